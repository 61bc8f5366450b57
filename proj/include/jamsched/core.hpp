#pragma once

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <vector>

#include "jamsched/rational.hpp"

namespace jamsched {

/// Integer tick count. One tick equals the base time unit divided by the
/// per-scenario resolution factor, chosen so that every packet duration
/// (including the speed-up division) and every event time is exact.
using Tick = std::int64_t;

struct InvalidLengths : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidSelector : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedLengthSystem : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The k packet lengths, rescaled to integers, with their pairwise ratios.
/// Immutable after construction; length indices are 1-based throughout the
/// public API to match the usual l_1 < ... < l_k convention.
class LengthSystem {
 public:
  LengthSystem() = default;

  int k() const { return static_cast<int>(lengths_.size()); }
  long long length(int i) const { return lengths_.at(i - 1); }
  long long l_min() const { return lengths_.front(); }
  long long l_max() const { return lengths_.back(); }
  bool divisible() const { return divisible_; }

  /// rho_{i,j} = l_i / l_j for i > j.
  Rat ratio(int i, int j) const { return Rat(length(i), length(j)); }
  /// rho = l_max / l_min.
  Rat rho() const { return Rat(l_max(), l_min()); }

  const std::vector<long long>& lengths() const { return lengths_; }

  friend LengthSystem build_length_system(const std::vector<Rat>& raw);

 private:
  std::vector<long long> lengths_;
  bool divisible_ = false;
};

/// Rescales user-supplied rational lengths to integers (multiplying by the
/// LCM of denominators) and validates strict monotonicity. Throws
/// InvalidLengths for fewer than two lengths, non-positive entries, or a
/// non-increasing sequence.
LengthSystem build_length_system(const std::vector<Rat>& raw);

inline LengthSystem build_length_system(const std::vector<long long>& raw) {
  std::vector<Rat> r(raw.begin(), raw.end());
  return build_length_system(r);
}

/// gamma = min over pairs i > j of floor(rho_{i,j}) / (floor(rho_{i,j}) + rho_{i,j}).
/// Always in (1/3, 1/2]; equals 1/2 exactly when the system is divisible.
Rat upper_bound_gamma(const LengthSystem& ls);

/// f_1 = l_k, f_{i+1} = f_i + 3 l_{i+1} + l_i + l_k. Additive slack constants
/// used by the greedy audits.
std::vector<long long> f_constants(const LengthSystem& ls);

struct AuxConstants {
  Rat delta;  ///< max over pairs of rho_{i,j} / floor(rho_{i,j})
  Rat eta;    ///< min over i in [2,k] of (rho_i - 1) / (2 rho_i - 1), rho_i = l_i/l_{i-1}
};

AuxConstants aux_constants(const LengthSystem& ls);

/// Queue selector: a single index, a one-sided range of indices, or all.
struct Selector {
  enum class Kind { Exact, Less, LessEq, GreaterEq, All };
  Kind kind = Kind::All;
  int index = 0;

  static Selector all() { return {Kind::All, 0}; }
  static Selector exact(int i) { return {Kind::Exact, i}; }
  static Selector less(int i) { return {Kind::Less, i}; }
  static Selector less_eq(int i) { return {Kind::LessEq, i}; }
  static Selector greater_eq(int i) { return {Kind::GreaterEq, i}; }

  bool matches(int i) const {
    switch (kind) {
      case Kind::Exact: return i == index;
      case Kind::Less: return i < index;
      case Kind::LessEq: return i <= index;
      case Kind::GreaterEq: return i >= index;
      case Kind::All: return true;
    }
    return false;
  }
};

/// Pending packets per length index, FIFO within a length class.
class QueueState {
 public:
  QueueState() = default;
  explicit QueueState(int k) : fifo_(k) {}

  int k() const { return static_cast<int>(fifo_.size()); }
  long long count(int i) const { return static_cast<long long>(fifo_.at(i - 1).size()); }

  void push(int i, int packet_id) { fifo_.at(i - 1).push_back(packet_id); }

  /// Front packet of class i; the packet a transmission of l_i would carry.
  int front(int i) const {
    if (fifo_.at(i - 1).empty()) throw std::logic_error("empty queue class");
    return fifo_[i - 1].front();
  }

  int pop(int i) {
    int id = front(i);
    fifo_[i - 1].pop_front();
    return id;
  }

  bool empty() const {
    for (const auto& q : fifo_)
      if (!q.empty()) return false;
    return true;
  }

  std::vector<long long> counts() const {
    std::vector<long long> c;
    c.reserve(fifo_.size());
    for (const auto& q : fifo_) c.push_back(static_cast<long long>(q.size()));
    return c;
  }

 private:
  std::vector<std::deque<int>> fifo_;
};

/// Sum of l_i * n_i over the selected indices (q_A(i,t), q_A(<i,t), ...).
long long queue_volume(const QueueState& q, const LengthSystem& ls, const Selector& sel);

}  // namespace jamsched
