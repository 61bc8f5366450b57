#include "jamsched/policies.hpp"

#include <cassert>
#include <charconv>

namespace jamsched {

Action ShortestFirstPolicy::decide(Tick, const QueueState& q) {
  for (int i = 1; i <= ls_.k(); ++i)
    if (q.count(i) > 0) return Action::send(i);
  return Action::idle();
}

Action LongestFirstPolicy::decide(Tick, const QueueState& q) {
  for (int i = ls_.k(); i >= 1; --i)
    if (q.count(i) > 0) return Action::send(i);
  return Action::idle();
}

// ---------------------------------------------------------------------------
// Greedy / cover variant

GreedyPolicy::GreedyPolicy(const LengthSystem& ls, bool cover) : ls_(ls), cover_(cover) {
  if (!cover && !ls.divisible())
    throw UnsupportedLengthSystem("greedy requires a divisible length system");
}

Action GreedyPolicy::decide(Tick, const QueueState& q) {
  assert(in_flight_ == 0);
  if (stack_.empty()) {
    if (queue_volume(q, ls_, Selector::all()) < ls_.l_max()) return Action::idle();
    stack_.push_back(Frame{ls_.k()});
  }
  // Descend until the top frame has to transmit. The entry condition of a
  // frame is re-evaluated at every decision point until it descends.
  for (;;) {
    Frame& f = stack_.back();
    int j = f.level;
    if (j > 1 && queue_volume(q, ls_, Selector::less(j)) >= ls_.length(j)) {
      f.descended = true;
      if (cover_) {
        f.acc = 0;
      } else {
        f.children_left = ls_.length(j) / ls_.length(j - 1);
      }
      stack_.push_back(Frame{j - 1});
      continue;
    }
    in_flight_ = j;
    return Action::send(j);
  }
}

void GreedyPolicy::on_result(Tick, int length_index, bool success) {
  assert(in_flight_ == length_index);
  in_flight_ = 0;
  if (!success) return;  // retry loop: condition re-checked at next decide()
  // The transmitting frame returns, with value l_j in cover mode.
  long long value = ls_.length(length_index);
  stack_.pop_back();
  while (!stack_.empty()) {
    Frame& parent = stack_.back();
    if (cover_) {
      parent.acc += value;
      if (parent.acc <= ls_.length(parent.level) - ls_.length(parent.level - 1)) {
        stack_.push_back(Frame{parent.level - 1});
        return;
      }
      value = parent.acc;
    } else {
      if (--parent.children_left > 0) {
        stack_.push_back(Frame{parent.level - 1});
        return;
      }
      value = ls_.length(parent.level);
    }
    stack_.pop_back();
  }
}

// ---------------------------------------------------------------------------
// MGreedy

MGreedyPolicy::MGreedyPolicy(const LengthSystem& ls, long long c) : c_(c), ls_(ls) {
  if (c < 1) throw std::invalid_argument("mgreedy requires c >= 1");
  candidates_.assign(ls_.k() + 1, false);
}

std::string MGreedyPolicy::id() const { return "mgreedy:c=" + std::to_string(c_); }

void MGreedyPolicy::refresh_candidates(const QueueState& q) {
  // C only grows within a stage; i* = min(C) can therefore only decrease.
  for (int i = 1; i <= ls_.k(); ++i)
    if (q.count(i) * ls_.length(i) >= threshold()) candidates_[i] = true;
  for (int i = 1; i <= ls_.k(); ++i) {
    if (candidates_[i]) {
      if (interesting_ == 0 || i < interesting_) interesting_ = i;
      break;
    }
  }
}

void MGreedyPolicy::note_transmission(int length_index) {
  auto& call = stage_log_.back().calls.back();
  if (call.first_length == 0)
    call.first_length = length_index;
  else if (call.first_length != length_index)
    call.single_length = false;
}

Action MGreedyPolicy::decide(Tick, const QueueState& q) {
  assert(in_flight_ == 0);
  for (;;) {
    if (!in_stage_) {
      // Stage start: candidate set recomputed from scratch.
      std::fill(candidates_.begin(), candidates_.end(), false);
      interesting_ = 0;
      refresh_candidates(q);
      if (interesting_ == 0) return Action::idle();
      in_stage_ = true;
      calls_left_ = c_ * ls_.k();
      stage_log_.push_back(StageRecord{static_cast<long long>(stage_log_.size()), c_});
    }
    // C grows within the stage as arrivals push classes over the threshold.
    refresh_candidates(q);
    if (stack_.empty()) {
      if (calls_left_ == 0) {
        // Stage complete: flag uniform calls before closing the record.
        auto& stage = stage_log_.back();
        stage.completed = true;
        for (size_t a = 1; a < stage.calls.size(); ++a) {
          auto& cur = stage.calls[a];
          const auto& prev = stage.calls[a - 1];
          cur.uniform = cur.single_length && prev.single_length &&
                        cur.first_length == prev.first_length && cur.first_length != 0;
        }
        in_stage_ = false;
        on_stage_end();
        continue;
      }
      --calls_left_;
      stage_log_.back().calls.push_back(CallRecord{stage_log_.back().index});
      stack_.push_back(Frame{ls_.k()});
    }
    Frame& f = stack_.back();
    // while l <= l_j - l_{i*}, evaluated against the current i*.
    if (f.acc > ls_.length(f.level) - ls_.length(interesting_)) {
      long long value = f.acc;
      stack_.pop_back();
      if (!stack_.empty()) stack_.back().acc += value;
      continue;
    }
    if (f.level > interesting_) {
      stack_.push_back(Frame{f.level - 1});
      continue;
    }
    if (q.count(f.level) == 0) {
      // The stage machinery assumed a supply of interesting packets that is
      // no longer there; abandon the stage and re-select candidates.
      stack_.clear();
      in_stage_ = false;
      continue;
    }
    in_flight_ = f.level;
    note_transmission(f.level);
    return Action::send(f.level);
  }
}

void MGreedyPolicy::on_result(Tick, int length_index, bool success) {
  assert(in_flight_ == length_index);
  in_flight_ = 0;
  if (success) {
    stack_.back().acc += ls_.length(length_index);
    transmitted_total_ += ls_.length(length_index);
  }
  // i* updated after every transmission, successful or not. The queue is not
  // available here; the engine consults decide() next, but candidate growth
  // must be observed before the next while-check, so re-check lazily: decide()
  // refreshes via the queue it receives.
}

MGreedyAdaptivePolicy::MGreedyAdaptivePolicy(const LengthSystem& ls, long long c0, long long W)
    : MGreedyPolicy(ls, c0), ls_(ls), w_(W) {
  if (W < 1) throw std::invalid_argument("mgreedy-adaptive requires W >= 1");
}

std::string MGreedyAdaptivePolicy::id() const {
  return "mgreedy-adaptive:c0=" + std::to_string(c_) + ",W=" + std::to_string(w_);
}

void MGreedyAdaptivePolicy::on_stage_end() {
  long long since = transmitted_total_ - sent_at_last_doubling_;
  if (since >= w_ * c_ * c_ * ls_.k() * ls_.l_max()) {
    c_ *= 2;
    sent_at_last_doubling_ = transmitted_total_;
  }
}

// ---------------------------------------------------------------------------
// Prudent

PrudentPolicy::PrudentPolicy(const LengthSystem& ls) : ls_(ls) {
  if (!ls.divisible())
    throw UnsupportedLengthSystem("prudent requires a divisible length system");
}

Action PrudentPolicy::decide(Tick, const QueueState& q) {
  for (;;) {
    switch (mode_) {
      case Mode::PhaseStart: {
        int i = 0;
        for (int c = 1; c <= ls_.k(); ++c) {
          if (q.count(c) * ls_.length(c) >= ls_.l_max()) {
            i = c;
            break;
          }
        }
        if (i == 0) return Action::idle();
        sent_ = 0;
        if (i == ls_.k()) {
          mode_ = Mode::LongestLoop;
          continue;
        }
        mode_ = Mode::Preamble;
        block_length_ = i;
        block_left_ = ls_.length(i + 1) / ls_.length(i);
        continue;
      }
      case Mode::Preamble: {
        if (block_left_ > 0) {
          if (q.count(block_length_) == 0) {
            // Supply for the block ran out; credit what actually went through
            // and fall through to re-selecting the next block.
            long long quota = ls_.length(block_length_ + 1) / ls_.length(block_length_);
            sent_ += (quota - block_left_) * ls_.length(block_length_);
            block_left_ = 0;
          } else {
            return Action::send(block_length_);
          }
        } else {
          sent_ += ls_.length(block_length_ + 1);
        }
        if (sent_ >= ls_.l_max()) {
          mode_ = Mode::LongestLoop;
          continue;
        }
        // Growth rule: largest j whose queue can still cover the remainder of
        // l_k and whose length is already amortized by this phase.
        int j = 0;
        for (int c = ls_.k(); c >= 1; --c) {
          if (q.count(c) * ls_.length(c) >= ls_.l_max() - sent_ && ls_.length(c) <= sent_) {
            j = c;
            break;
          }
        }
        if (j == 0) {
          mode_ = Mode::LongestLoop;
          continue;
        }
        block_length_ = j;
        block_left_ = ls_.length(j + 1) / ls_.length(j);
        continue;
      }
      case Mode::LongestLoop: {
        for (int i = ls_.k(); i >= 1; --i)
          if (q.count(i) > 0) return Action::send(i);
        return Action::idle();
      }
    }
  }
}

void PrudentPolicy::on_result(Tick, int length_index, bool success) {
  if (!success) {
    // A jam ends the phase.
    mode_ = Mode::PhaseStart;
    sent_ = 0;
    block_length_ = 0;
    block_left_ = 0;
    return;
  }
  if (mode_ == Mode::Preamble) --block_left_;
}

// ---------------------------------------------------------------------------

namespace {

long long parse_ll(const std::string& s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw UnknownPolicy("bad integer in policy id: " + s);
  return v;
}

}  // namespace

std::unique_ptr<Policy> make_policy(const std::string& id, const LengthSystem& ls) {
  if (id == "sl") return std::make_unique<ShortestFirstPolicy>(ls);
  if (id == "ll") return std::make_unique<LongestFirstPolicy>(ls);
  if (id == "greedy") return std::make_unique<GreedyPolicy>(ls, false);
  if (id == "greedy-cover") return std::make_unique<GreedyPolicy>(ls, true);
  if (id == "prudent") return std::make_unique<PrudentPolicy>(ls);
  if (id.rfind("mgreedy:c=", 0) == 0)
    return std::make_unique<MGreedyPolicy>(ls, parse_ll(id.substr(10)));
  if (id.rfind("mgreedy-adaptive:", 0) == 0) {
    std::string rest = id.substr(17);
    auto comma = rest.find(',');
    if (comma == std::string::npos || rest.rfind("c0=", 0) != 0 ||
        rest.compare(comma + 1, 2, "W=") != 0)
      throw UnknownPolicy("expected mgreedy-adaptive:c0=<int>,W=<int>: " + id);
    long long c0 = parse_ll(rest.substr(3, comma - 3));
    long long W = parse_ll(rest.substr(comma + 3));
    return std::make_unique<MGreedyAdaptivePolicy>(ls, c0, W);
  }
  throw UnknownPolicy("unknown policy id: " + id);
}

}  // namespace jamsched
