#include "prioq/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "prioq/error.hpp"

namespace prioq {

QueueSimulator::QueueSimulator(SelectionProtocol protocol, PriorityDistribution dist,
                               std::size_t buffer_length, Rng rng)
    : protocol_(std::move(protocol)),
      dist_(std::move(dist)),
      buffer_length_(buffer_length),
      rng_(std::move(rng)) {
  if (buffer_length_ < 2)
    throw UnsupportedConfiguration("buffer length L must be at least 2");
  if (buffer_length_ > 2 && protocol_.kind() != ProtocolKind::barabasi)
    throw UnsupportedConfiguration(
        "L > 2 is only defined for the barabasi protocol (got " +
        protocol_.describe() + ")");
  state_.residents.reserve(buffer_length_ - 1);
  for (std::size_t i = 0; i + 1 < buffer_length_; ++i)
    state_.residents.push_back(Task{dist_.sample(rng_), 1});
  scratch_.reserve(buffer_length_);
}

StepResult QueueSimulator::step() {
  const std::uint64_t t = ++state_.step_index;
  const Task arrived{dist_.sample(rng_), t};
  auto& residents = state_.residents;

  if (protocol_.kind() != ProtocolKind::barabasi) {
    Task& old = residents.front();
    if (rng_.uniform() < protocol_(arrived.priority, old.priority))
      return {arrived.priority, 1, arrived.priority, std::nullopt};
    const Task leaving = old;
    old = arrived;
    return {leaving.priority, t - leaving.arrival_step + 1, arrived.priority,
            std::nullopt};
  }

  // Candidates in arrival order: residents (oldest first), then the new task.
  scratch_.assign(residents.begin(), residents.end());
  scratch_.push_back(arrived);
  std::size_t pick;
  EventCode code;
  if (rng_.bernoulli(protocol_.p())) {
    pick = static_cast<std::size_t>(
        std::max_element(scratch_.begin(), scratch_.end(),
                         [](const Task& a, const Task& b) { return a.priority < b.priority; }) -
        scratch_.begin());
    code = EventCode::r_comp;
  } else {
    pick = rng_.index(scratch_.size());
    code = pick == 0                       ? EventCode::r_old
           : pick + 1 == scratch_.size()   ? EventCode::r_new
                                           : EventCode::r_other;
  }
  const Task leaving = scratch_[pick];
  scratch_.erase(scratch_.begin() + static_cast<std::ptrdiff_t>(pick));
  residents.assign(scratch_.begin(), scratch_.end());
  return {leaving.priority, t - leaving.arrival_step + 1, arrived.priority, code};
}

std::uint64_t QueueSimulator::residual_sum() const {
  std::uint64_t sum = 0;
  for (const Task& task : state_.residents)
    sum += state_.step_index - task.arrival_step + 1;
  return sum;
}

double WaitingTimeHistogram::mean() const {
  if (total_executed == 0) return std::numeric_limits<double>::quiet_NaN();
  long double s = 0.0L;
  for (const auto& [k, n] : counts) s += static_cast<long double>(k) * n;
  return static_cast<double>(s / total_executed);
}

double WaitingTimeHistogram::probability(std::uint64_t k) const {
  if (total_executed == 0) return 0.0;
  auto it = counts.find(k);
  return it == counts.end() ? 0.0
                            : static_cast<double>(it->second) /
                                  static_cast<double>(total_executed);
}

void WaitingTimeHistogram::merge(const WaitingTimeHistogram& other) {
  for (const auto& [k, n] : other.counts) counts[k] += n;
  total_executed += other.total_executed;
  residuals.insert(residuals.end(), other.residuals.begin(), other.residuals.end());
}

bool RunResult::accounting_holds() const {
  return tau_sum_all + residual_sum == buffer_length * steps;
}

namespace {

RunResult run_stream(const SimulationConfig& config, std::uint64_t stream) {
  if (!(config.steps > config.burnin))
    throw ContractError("run: steps must exceed burnin");
  QueueSimulator sim(config.protocol, config.dist, config.buffer_length,
                     Rng(config.seed, stream));
  const std::size_t L = config.buffer_length;

  RunResult out;
  out.steps = config.steps;
  out.buffer_length = L;
  if (config.keep_samples)
    out.old_priority_samples.reserve((config.steps - config.burnin) * (L - 1));
  if (config.keep_event_trace && config.protocol.kind() == ProtocolKind::barabasi)
    out.events.reserve(config.steps);

  // Renewal detection runs online so it works without a stored trace.
  std::size_t old_run = 0;

  for (std::uint64_t i = 0; i < config.steps; ++i) {
    const bool sampling = i >= config.burnin;
    if (sampling && config.keep_samples)
      for (const Task& task : sim.state().residents)
        out.old_priority_samples.push_back(task.priority);

    const StepResult r = sim.step();
    out.tau_sum_all += r.waiting_time;
    if (sampling) {
      ++out.histogram.counts[r.waiting_time];
      ++out.histogram.total_executed;
    }
    if (r.event) {
      switch (*r.event) {
        case EventCode::r_new: ++out.event_counts.r_new; break;
        case EventCode::r_old: ++out.event_counts.r_old; break;
        case EventCode::r_comp: ++out.event_counts.r_comp; break;
        case EventCode::r_other: ++out.event_counts.r_other; break;
      }
      old_run = *r.event == EventCode::r_old ? old_run + 1 : 0;
      if (old_run >= L - 1) ++out.renewals;
      if (config.keep_event_trace) out.events.push_back(*r.event);
    }
  }

  out.residual_sum = sim.residual_sum();
  for (const Task& task : sim.state().residents)
    out.histogram.residuals.push_back(sim.state().step_index - task.arrival_step + 1);
  return out;
}

}  // namespace

RunResult run(const SimulationConfig& config) { return run_stream(config, 0); }

std::vector<RunResult> run_replicas(const SimulationConfig& config,
                                    std::size_t replicas, std::size_t threads) {
  std::vector<RunResult> results(replicas);
  if (replicas == 0) return results;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, replicas);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < replicas; i = next++) {
      try {
        results[i] = run_stream(config, i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

double residual_fraction(const RunResult& result) {
  if (result.steps == 0) return 0.0;
  return static_cast<double>(result.residual_sum) / static_cast<double>(result.steps);
}

std::uint64_t renewal_count(std::span<const EventCode> trace, std::size_t buffer_length) {
  if (buffer_length < 2) throw DomainError("renewal_count: L must be at least 2");
  const std::size_t need = buffer_length - 1;
  std::uint64_t count = 0;
  std::size_t run = 0;
  // A window of `need` r_old codes ending at index i begins at i - need + 1.
  for (EventCode code : trace) {
    run = code == EventCode::r_old ? run + 1 : 0;
    if (run >= need) ++count;
  }
  return count;
}

double min_of_geometric_sample(double p, const PriorityDistribution& dist, Rng& rng) {
  if (p == 1.0)
    throw DivergenceError("min_of_geometric: p = 1 has no geometric count", p);
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("min_of_geometric: p must lie in [0,1)");
  const std::uint64_t draws = rng.geometric((1.0 - p) / (1.0 + p));
  double best = dist.sample(rng);
  for (std::uint64_t i = 1; i < draws; ++i) best = std::min(best, dist.sample(rng));
  return best;
}

}  // namespace prioq
