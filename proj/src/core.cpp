#include "jamsched/core.hpp"

#include <algorithm>

namespace jamsched {

LengthSystem build_length_system(const std::vector<Rat>& raw) {
  if (raw.size() < 2) throw InvalidLengths("need at least 2 packet lengths");
  long long denom_lcm = 1;
  for (const auto& r : raw) {
    if (r <= Rat(0)) throw InvalidLengths("packet lengths must be positive");
    denom_lcm = lcm_ll(denom_lcm, r.denominator());
  }
  LengthSystem ls;
  ls.lengths_.reserve(raw.size());
  for (const auto& r : raw) {
    Rat scaled = r * Rat(denom_lcm);
    ls.lengths_.push_back(scaled.numerator());  // denominator is 1 by construction
  }
  for (size_t i = 1; i < ls.lengths_.size(); ++i) {
    if (ls.lengths_[i] <= ls.lengths_[i - 1])
      throw InvalidLengths("packet lengths must be strictly increasing");
  }
  ls.divisible_ = true;
  for (size_t i = 1; i < ls.lengths_.size(); ++i) {
    if (ls.lengths_[i] % ls.lengths_[i - 1] != 0) {
      ls.divisible_ = false;
      break;
    }
  }
  return ls;
}

Rat upper_bound_gamma(const LengthSystem& ls) {
  Rat best(1);
  bool first = true;
  for (int i = 2; i <= ls.k(); ++i) {
    for (int j = 1; j < i; ++j) {
      Rat rho = ls.ratio(i, j);
      long long fl = floor_rat(rho);
      Rat v = Rat(fl) / (Rat(fl) + rho);
      if (first || v < best) {
        best = v;
        first = false;
      }
    }
  }
  return best;
}

std::vector<long long> f_constants(const LengthSystem& ls) {
  std::vector<long long> f;
  f.reserve(ls.k());
  f.push_back(ls.l_max());
  for (int i = 1; i < ls.k(); ++i)
    f.push_back(f.back() + 3 * ls.length(i + 1) + ls.length(i) + ls.l_max());
  return f;
}

AuxConstants aux_constants(const LengthSystem& ls) {
  AuxConstants out{Rat(0), Rat(0)};
  bool first = true;
  for (int i = 2; i <= ls.k(); ++i) {
    for (int j = 1; j < i; ++j) {
      Rat rho = ls.ratio(i, j);
      Rat d = rho / Rat(floor_rat(rho));
      if (first || d > out.delta) out.delta = d;
      first = false;
    }
  }
  first = true;
  for (int i = 2; i <= ls.k(); ++i) {
    Rat rho_i = ls.ratio(i, i - 1);
    Rat e = (rho_i - Rat(1)) / (Rat(2) * rho_i - Rat(1));
    if (first || e < out.eta) out.eta = e;
    first = false;
  }
  return out;
}

long long queue_volume(const QueueState& q, const LengthSystem& ls, const Selector& sel) {
  if (sel.kind != Selector::Kind::All && (sel.index < 1 || sel.index > ls.k()))
    throw InvalidSelector("selector index out of range");
  long long total = 0;
  for (int i = 1; i <= ls.k(); ++i)
    if (sel.matches(i)) total += ls.length(i) * q.count(i);
  return total;
}

}  // namespace jamsched
