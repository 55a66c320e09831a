#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "alache/handle_registry.hpp"

namespace alache {

class RuntimeNotInitialized : public std::logic_error {
 public:
  RuntimeNotInitialized() : std::logic_error("runtime not initialized") {}
};

/// Bookkeeping for future threads, so that shutdown can interrupt every
/// outstanding future and wait for its threads to finish.
class TaskTracker {
 public:
  using TaskId = std::uint64_t;

  /// Registers a future whose `threads` threads are about to be started.
  TaskId begin(std::function<void()> interrupter, std::size_t threads);
  /// The future can no longer be interrupted through the tracker.
  void forget(TaskId id);
  /// Called by each future thread as the last thing it does.
  void thread_exited();

  std::size_t active_threads() const;
  void wait_idle() const;
  /// Interrupts every registered future, then waits until all threads exit.
  void interrupt_all_and_wait();

 private:
  mutable std::mutex mutex_;
  mutable std::condition_variable idle_cv_;
  std::unordered_map<TaskId, std::function<void()>> interrupters_;
  TaskId next_id_ = 1;
  std::size_t threads_ = 0;
};

/// Single worker thread executing posted jobs in order.  Every call pays a
/// queue handoff and a cross-thread wakeup in both directions.
class Dispatcher {
 public:
  Dispatcher() = default;
  Dispatcher(const Dispatcher&) = delete;
  Dispatcher& operator=(const Dispatcher&) = delete;
  ~Dispatcher();

  void start();
  void stop();
  bool running() const;

  /// Runs job on the dispatch thread and blocks until it has finished.
  /// Throws RuntimeNotInitialized if the dispatcher is not running.
  void call(std::function<void()> job);

 private:
  void run();

  mutable std::mutex mutex_;
  std::condition_variable work_cv_;
  std::deque<std::function<void()>> queue_;
  bool stopping_ = false;
  bool running_ = false;
  std::thread worker_;
};

/// Process-wide runtime: the handle registry, future thread tracking and the
/// dispatch thread.  init() and shutdown() are idempotent and must not race
/// each other; everything else may be used from any thread.
class Runtime {
 public:
  static Runtime& instance();

  void init();
  void shutdown();
  bool initialized() const { return initialized_.load(std::memory_order_acquire); }
  /// Throws RuntimeNotInitialized.
  void require_initialized() const;

  HandleRegistry& registry() { return registry_; }
  TaskTracker& tasks() { return tasks_; }
  Dispatcher& dispatcher() { return dispatcher_; }

 private:
  Runtime() = default;

  std::atomic<bool> initialized_{false};
  HandleRegistry registry_;
  TaskTracker tasks_;
  Dispatcher dispatcher_;
};

/// Initializes the runtime for a scope and shuts it down afterwards.
class RuntimeScope {
 public:
  RuntimeScope() { Runtime::instance().init(); }
  ~RuntimeScope() { Runtime::instance().shutdown(); }
  RuntimeScope(const RuntimeScope&) = delete;
  RuntimeScope& operator=(const RuntimeScope&) = delete;
};

}  // namespace alache
