#include "alache/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "agdalache.h"
#include "alache/c_export.hpp"
#include "alache/runtime.hpp"

namespace alache::bench {

namespace {

using Clock = std::chrono::steady_clock;

// Long enough that no tick happens before the interrupt arrives.
constexpr std::int32_t kLongRunSeconds = 3600;
constexpr auto kSettle = std::chrono::microseconds(200);

std::int64_t elapsed_ns(Clock::time_point start, Clock::time_point end) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(end - start).count();
}

void expect(bool condition, const char* what) {
  if (!condition) throw std::runtime_error(what);
}

// Forks a long sleeping run and lets its threads park before returning.
void fork_sleeper(AlHandle app, AlHandle future[2]) {
  expect(ec_increase_async(app, kLongRunSeconds, future) == AL_STATUS_OK, "ec_increase_async failed");
  std::this_thread::sleep_for(kSettle);
}

std::int64_t time_fast_interrupt(AlHandle app) {
  AlHandle future[2] = {nullptr, nullptr};
  fork_sleeper(app, future);
  const auto start = Clock::now();
  const int32_t filled = al_future_try_put_interrupt(future[0]);
  const auto end = Clock::now();
  expect(filled == 1, "fast interrupt did not fill the interrupt cell");
  std::int64_t ignored;
  expect(al_future_get_int(future, &ignored) == AL_STATUS_INTERRUPTED, "fast path: future not interrupted");
  expect(al_handle_free(future[1]) == AL_STATUS_OK, "fast path: result handle free failed");
  return elapsed_ns(start, end);
}

std::int64_t time_full_interrupt(AlHandle app) {
  AlHandle future[2] = {nullptr, nullptr};
  fork_sleeper(app, future);
  const auto start = Clock::now();
  const int32_t filled = ec_interrupt_full(future);
  const auto end = Clock::now();
  expect(filled == 1, "full interrupt did not fill the interrupt cell");
  std::int64_t ignored;
  expect(al_future_get_int(future, &ignored) == AL_STATUS_INTERRUPTED, "full path: future not interrupted");
  expect(al_handle_free(future[1]) == AL_STATUS_OK, "full path: result handle free failed");
  return elapsed_ns(start, end);
}

}  // namespace

BenchReport summarize(std::string scenario, std::vector<std::int64_t> samples_ns) {
  if (samples_ns.empty()) throw std::invalid_argument("no samples");
  std::sort(samples_ns.begin(), samples_ns.end());
  const std::size_t n = samples_ns.size();
  // Nearest rank: the smallest sample with at least p% of samples <= it.
  const auto rank = [n](std::size_t percent) {
    const std::size_t r = (percent * n + 99) / 100;
    return std::max<std::size_t>(r, 1) - 1;
  };
  BenchReport report;
  report.scenario = std::move(scenario);
  report.iterations = n;
  report.median_ns = samples_ns[rank(50)];
  report.p99_ns = samples_ns[rank(99)];
  return report;
}

InterruptReports bench_interrupt_latency(std::size_t iterations) {
  if (iterations < kMinInterruptIterations)
    throw std::invalid_argument("interrupt benchmark needs at least 100 iterations");
  Runtime::instance().require_initialized();

  const AlHandle app = ec_init_app();
  expect(app != nullptr, "ec_init_app failed");

  std::vector<std::int64_t> fast;
  std::vector<std::int64_t> full;
  fast.reserve(iterations);
  full.reserve(iterations);
  TaskTracker& tasks = Runtime::instance().tasks();
  for (std::size_t i = 0; i < iterations; ++i) {
    // Alternate which path goes first so neither always sees a warmer cache.
    if (i % 2 == 0) {
      fast.push_back(time_fast_interrupt(app));
      tasks.wait_idle();
      full.push_back(time_full_interrupt(app));
    } else {
      full.push_back(time_full_interrupt(app));
      tasks.wait_idle();
      fast.push_back(time_fast_interrupt(app));
    }
    tasks.wait_idle();
  }
  al_handle_free(app);
  return {summarize("interrupt_fast", std::move(fast)), summarize("interrupt_full", std::move(full))};
}

BenchReport bench_fork_join(std::size_t iterations) {
  if (iterations == 0) throw std::invalid_argument("fork/join benchmark needs at least 1 iteration");
  Runtime::instance().require_initialized();
  const std::uint64_t baseline = al_handle_live_count();

  std::vector<std::int64_t> samples;
  samples.reserve(iterations);
  for (std::size_t i = 0; i < iterations; ++i) {
    const auto expected_value = static_cast<std::int64_t>(i);
    const auto start = Clock::now();
    AlHandle future[2] = {nullptr, nullptr};
    fork_future_c([expected_value](CancelToken) { return expected_value; }, future);
    std::int64_t value = -1;
    const int32_t status = al_future_get_int(future, &value);
    al_handle_free(future[0]);
    al_handle_free(future[1]);
    samples.push_back(elapsed_ns(start, Clock::now()));
    expect(status == AL_STATUS_OK && value == expected_value, "fork/join: future did not complete");
  }
  expect(al_handle_live_count() == baseline, "fork/join: handles leaked");
  return summarize("forkjoin", std::move(samples));
}

std::string csv_header() { return "scenario,iterations,median_ns,p99_ns"; }

std::string to_csv(std::span<const BenchReport> reports) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const auto& r : reports)
    out << r.scenario << ',' << r.iterations << ',' << r.median_ns << ',' << r.p99_ns << '\n';
  return out.str();
}

}  // namespace alache::bench
