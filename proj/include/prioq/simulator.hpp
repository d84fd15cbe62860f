#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "prioq/distribution.hpp"
#include "prioq/protocol.hpp"
#include "prioq/rng.hpp"

namespace prioq {

// How the executed task was chosen in one step of a Barabasi-protocol queue.
//   r_comp  - priority selection (probability p)
//   r_new   - random selection picked the task that just arrived
//   r_old   - random selection picked the oldest task (a renewal for L = 2)
//   r_other - random selection picked a task in between (only when L > 2)
enum class EventCode : std::uint8_t { r_new, r_old, r_comp, r_other };

struct Task {
  double priority;
  std::uint64_t arrival_step;  // first step in which the task is on the list
};

// Queue between two steps: the L - 1 tasks that survived the last step,
// oldest first. During a step the new arrival joins them, so the list has
// exactly L entries when a task is selected.
struct QueueState {
  std::vector<Task> residents;
  std::uint64_t step_index = 0;  // number of completed steps
};

struct StepResult {
  double executed_priority;
  std::uint64_t waiting_time;  // departure - arrival + 1; 1 = executed on arrival
  double arrived_priority;
  std::optional<EventCode> event;  // Barabasi protocol only
};

// Exact discrete-time simulation of the priority list.
//
// L = 2 accepts any protocol: the new task (priority x) is executed with
// probability v(x, y) against the old task y. L > 2 requires the Barabasi
// protocol: with probability p the highest priority is executed, otherwise
// a uniformly chosen task.
class QueueSimulator {
 public:
  // Throws UnsupportedConfiguration for L < 2 or L > 2 with a non-Barabasi
  // protocol. The initial L - 1 residents are drawn from `dist`.
  QueueSimulator(SelectionProtocol protocol, PriorityDistribution dist,
                 std::size_t buffer_length, Rng rng);

  StepResult step();

  const QueueState& state() const { return state_; }
  std::size_t buffer_length() const { return buffer_length_; }
  // Sum of resident times of the tasks still on the list after the last step.
  std::uint64_t residual_sum() const;

 private:
  SelectionProtocol protocol_;
  PriorityDistribution dist_;
  std::size_t buffer_length_;
  Rng rng_;
  QueueState state_;
  std::vector<Task> scratch_;
};

struct WaitingTimeHistogram {
  std::map<std::uint64_t, std::uint64_t> counts;  // k >= 1 -> executions
  std::uint64_t total_executed = 0;
  std::vector<std::uint64_t> residuals;  // resident times at the final step

  double mean() const;
  double probability(std::uint64_t k) const;
  void merge(const WaitingTimeHistogram& other);
};

struct EventCounts {
  std::uint64_t r_new = 0, r_old = 0, r_comp = 0, r_other = 0;
};

struct SimulationConfig {
  std::size_t buffer_length = 2;
  SelectionProtocol protocol = SelectionProtocol::barabasi(0.5);
  PriorityDistribution dist = PriorityDistribution::uniform();
  std::uint64_t steps = 1'000'000;
  std::uint64_t burnin = 10'000;
  std::uint64_t seed = 1;
  bool keep_samples = true;
  bool keep_event_trace = true;
};

struct RunResult {
  WaitingTimeHistogram histogram;        // executions after burn-in
  std::vector<double> old_priority_samples;  // residents before each post-burn-in step
  std::vector<EventCode> events;         // every step, if kept
  EventCounts event_counts;              // every step
  std::uint64_t renewals = 0;            // see renewal_count()
  std::uint64_t steps = 0;
  std::size_t buffer_length = 0;
  std::uint64_t tau_sum_all = 0;         // every execution, burn-in included
  std::uint64_t residual_sum = 0;

  // sum of tau over all executions + sum of residual times == L * steps
  bool accounting_holds() const;
};

// Deterministic in config.seed; uses substream 0 of that seed.
RunResult run(const SimulationConfig& config);

// Replica i uses substream i of config.seed, so replica 0 equals run(config)
// and results do not depend on `threads`.
std::vector<RunResult> run_replicas(const SimulationConfig& config,
                                    std::size_t replicas, std::size_t threads = 0);

// (sum of resident times at the final step) / (final step index).
double residual_fraction(const RunResult& result);

// Number of steps at which L - 1 consecutive r_old events begin
// (overlapping runs counted at each start index).
std::uint64_t renewal_count(std::span<const EventCode> trace, std::size_t buffer_length);

// min(Y_1, ..., Y_X), Y_i ~ dist i.i.d., X ~ Geometric((1 - p) / (1 + p)) on
// {1, 2, ...}. For the Barabasi protocol with L = 2 this is the stationary
// law of the old task's priority. Throws DivergenceError for p = 1.
double min_of_geometric_sample(double p, const PriorityDistribution& dist, Rng& rng);

}  // namespace prioq
