#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace alache::bench {

struct BenchReport {
  std::string scenario;
  std::size_t iterations = 0;
  std::int64_t median_ns = 0;
  std::int64_t p99_ns = 0;
};

/// Nearest-rank statistics over raw samples.  Throws std::invalid_argument
/// on an empty sample set.
BenchReport summarize(std::string scenario, std::vector<std::int64_t> samples_ns);

inline constexpr std::size_t kMinInterruptIterations = 100;

struct InterruptReports {
  BenchReport fast;  // al_future_try_put_interrupt
  BenchReport full;  // ec_interrupt_full
};

/// Times one interrupt per freshly forked long-running future, alternating
/// between the non-blocking fast path and the dispatched full-call path.
/// Requires an initialized runtime and iterations >= kMinInterruptIterations
/// (std::invalid_argument otherwise).
InterruptReports bench_interrupt_latency(std::size_t iterations);

/// Times fork + get + free of constant-task futures through the C interface.
/// Throws std::runtime_error if a future does not complete or handles leak.
BenchReport bench_fork_join(std::size_t iterations);

std::string csv_header();
std::string to_csv(std::span<const BenchReport> reports);

}  // namespace alache::bench
