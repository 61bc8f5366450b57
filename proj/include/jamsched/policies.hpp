#pragma once

#include <vector>

#include "jamsched/policy.hpp"

namespace jamsched {

/// Shortest pending length first; work-conserving.
class ShortestFirstPolicy final : public Policy {
 public:
  explicit ShortestFirstPolicy(const LengthSystem& ls) : ls_(ls) {}
  Action decide(Tick, const QueueState& q) override;
  std::string id() const override { return "sl"; }
  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<ShortestFirstPolicy>(*this);
  }

 private:
  LengthSystem ls_;
};

/// Longest pending length first; work-conserving.
class LongestFirstPolicy final : public Policy {
 public:
  explicit LongestFirstPolicy(const LengthSystem& ls) : ls_(ls) {}
  Action decide(Tick, const QueueState& q) override;
  std::string id() const override { return "ll"; }
  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<LongestFirstPolicy>(*this);
  }

 private:
  LengthSystem ls_;
};

/// The recursive group transmitter, reified as an explicit frame stack so it
/// can be driven one decision at a time. Shared by the greedy family.
///
/// Divisible mode (quota): entering level j's descend branch schedules
/// exactly l_j / l_{j-1} child groups. Cover mode: level j keeps opening
/// child groups while the length successfully transmitted inside the current
/// execution is still <= l_j - l_{j-1}.
class GreedyPolicy final : public Policy {
 public:
  /// cover=false requires a divisible length system (throws
  /// UnsupportedLengthSystem otherwise); cover=true accepts any system.
  GreedyPolicy(const LengthSystem& ls, bool cover);

  Action decide(Tick now, const QueueState& q) override;
  void on_result(Tick now, int length_index, bool success) override;
  std::string id() const override { return cover_ ? "greedy-cover" : "greedy"; }
  std::unique_ptr<Policy> clone() const override { return std::make_unique<GreedyPolicy>(*this); }

 private:
  struct Frame {
    int level;
    bool descended = false;
    long long children_left = 0;  // quota mode
    long long acc = 0;            // cover mode: length transmitted in this execution
  };

  LengthSystem ls_;
  bool cover_;
  std::vector<Frame> stack_;
  int in_flight_ = 0;  // length index of the attempt awaiting a result, 0 if none
};

/// MGreedy: stages of ck top-level group calls, restricted to the current
/// interesting length i* = min of the candidate set C = {i | n_i l_i >= c k l_k}.
/// C only grows within a stage, so i* only decreases.
class MGreedyPolicy : public Policy {
 public:
  MGreedyPolicy(const LengthSystem& ls, long long c);

  Action decide(Tick now, const QueueState& q) override;
  void on_result(Tick now, int length_index, bool success) override;
  std::string id() const override;
  std::unique_ptr<Policy> clone() const override { return std::make_unique<MGreedyPolicy>(*this); }

  long long stage_parameter() const { return c_; }

  /// Instrumentation: one record per top-level Transmit-group call, with
  /// stage markers for the audit of the uniform-call guarantee.
  struct CallRecord {
    long long stage;
    long long first_length = 0;  // l index of first transmission in the call
    bool single_length = true;   // whole call used one fixed length
    bool uniform = false;        // single_length and same length as previous call
  };
  struct StageRecord {
    long long index;
    long long c;  // parameter in force during this stage
    bool completed = false;
    std::vector<CallRecord> calls;
  };
  const std::vector<StageRecord>& stage_log() const { return stage_log_; }

 protected:
  /// Hook between stages; the adaptive variant doubles c here.
  virtual void on_stage_end() {}

  long long c_;
  long long transmitted_total_ = 0;  // successful length since construction

 private:
  struct Frame {
    int level;
    long long acc = 0;
  };

  long long threshold() const { return c_ * ls_.k() * ls_.l_max(); }
  void refresh_candidates(const QueueState& q);
  void note_transmission(int length_index);

  LengthSystem ls_;
  bool in_stage_ = false;
  long long calls_left_ = 0;  // top-level calls remaining in the stage
  std::vector<bool> candidates_;
  int interesting_ = 0;  // 0 = undetermined
  std::vector<Frame> stack_;
  int in_flight_ = 0;
  std::vector<StageRecord> stage_log_;
};

/// MGreedy that doubles c between stages once the successfully transmitted
/// length since the last doubling exceeds W * c^2 * k * l_k.
class MGreedyAdaptivePolicy final : public MGreedyPolicy {
 public:
  MGreedyAdaptivePolicy(const LengthSystem& ls, long long c0, long long W);
  std::string id() const override;
  std::unique_ptr<Policy> clone() const override {
    return std::make_unique<MGreedyAdaptivePolicy>(*this);
  }

 protected:
  void on_stage_end() override;

 private:
  LengthSystem ls_;
  long long w_;
  long long sent_at_last_doubling_ = 0;
};

/// Prudent: phase-structured policy for the speed-up setting. A phase is the
/// period between two consecutive jams; within a phase it sends a preamble of
/// blocks whose lengths never exceed what the phase already delivered, then
/// loops on the longest pending packet. Requires a divisible length system.
class PrudentPolicy final : public Policy {
 public:
  explicit PrudentPolicy(const LengthSystem& ls);

  Action decide(Tick now, const QueueState& q) override;
  void on_result(Tick now, int length_index, bool success) override;
  std::string id() const override { return "prudent"; }
  std::unique_ptr<Policy> clone() const override { return std::make_unique<PrudentPolicy>(*this); }

 private:
  enum class Mode { PhaseStart, Preamble, LongestLoop };

  LengthSystem ls_;
  Mode mode_ = Mode::PhaseStart;
  long long sent_ = 0;        // L_sent within the phase
  int block_length_ = 0;      // length index of the running preamble block
  long long block_left_ = 0;  // packets remaining in the block
};

}  // namespace jamsched
