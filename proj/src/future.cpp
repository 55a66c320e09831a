#include "alache/future.hpp"

#include <thread>

#include "alache/runtime.hpp"

namespace alache::detail {

void launch_future(std::shared_ptr<InterruptCell> interrupt_cell,
                   std::function<void(CancelToken)> compute,
                   std::function<void(CancelSource&)> watch) {
  Runtime& runtime = Runtime::instance();
  runtime.require_initialized();
  TaskTracker& tracker = runtime.tasks();

  std::weak_ptr<InterruptCell> weak_cell = interrupt_cell;
  const auto id = tracker.begin(
      [weak_cell] {
        if (auto cell = weak_cell.lock()) cell->try_put(Unit{});
      },
      2);

  CancelSource source;
  CancelToken token = source.token();

  try {
    std::thread([&tracker, watch = std::move(watch), source]() mutable {
      watch(source);
      tracker.thread_exited();
    }).detach();
  } catch (...) {
    tracker.forget(id);
    tracker.thread_exited();
    tracker.thread_exited();
    throw;
  }

  try {
    std::thread([&tracker, id, compute = std::move(compute), token = std::move(token)]() mutable {
      compute(std::move(token));
      tracker.forget(id);
      tracker.thread_exited();
    }).detach();
  } catch (...) {
    // Release the watcher, which then publishes Interrupted.
    interrupt_cell->try_put(Unit{});
    tracker.forget(id);
    tracker.thread_exited();
    throw;
  }
}

}  // namespace alache::detail
