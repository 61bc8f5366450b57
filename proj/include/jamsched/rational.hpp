#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jamsched {

/// Exact rational arithmetic. All ratios, throughput values and derived
/// constants stay rational end to end; floats never enter the data path.
using Rat = boost::rational<long long>;

inline long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return a / std::gcd(a, b) * b;
}

/// Parses "p/q" or "p" (both with optional sign) into a Rat.
inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return Rat(v);
    }
    size_t pos = 0;
    long long num = std::stoll(s.substr(0, slash), &pos);
    if (pos != slash) throw std::invalid_argument(s);
    long long den = std::stoll(s.substr(slash + 1), &pos);
    if (pos != s.size() - slash - 1) throw std::invalid_argument(s);
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rational out of range: " + s);
  }
}

/// Serializes a Rat as "p/q", or "p" when the denominator is 1.
inline std::string format_rational(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline long long floor_rat(const Rat& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

}  // namespace jamsched
