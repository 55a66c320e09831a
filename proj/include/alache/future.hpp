#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>

#include "alache/cancel_token.hpp"
#include "alache/one_shot_cell.hpp"

namespace alache {

/// Payload of futures that produce no value.
using Unit = std::monostate;

/// Completed(value) or Interrupted.
template <typename T>
class FutureResult {
 public:
  static FutureResult completed(T value) { return FutureResult(std::move(value)); }
  static FutureResult interrupted() { return FutureResult(); }

  bool is_completed() const { return value_.has_value(); }
  bool is_interrupted() const { return !value_.has_value(); }

  /// Throws std::logic_error on an interrupted result.
  const T& value() const {
    if (!value_) throw std::logic_error("future was interrupted");
    return *value_;
  }

  friend bool operator==(const FutureResult&, const FutureResult&) = default;

 private:
  FutureResult() = default;
  explicit FutureResult(T value) : value_(std::move(value)) {}

  std::optional<T> value_;
};

using InterruptCell = OneShotCell<Unit>;
template <typename T>
using ResultCell = OneShotCell<FutureResult<T>>;

namespace detail {

/// Starts the computation and watcher threads of a future and registers the
/// future with the runtime so shutdown can interrupt it.  Throws
/// RuntimeNotInitialized.
void launch_future(std::shared_ptr<InterruptCell> interrupt_cell,
                   std::function<void(CancelToken)> compute,
                   std::function<void(CancelSource&)> watch);

}  // namespace detail

/// Shared handle to a running computation: an interrupt cell and a result
/// cell.  Copies refer to the same computation; every member is callable from
/// any thread.
template <typename T>
class Future {
 public:
  using value_type = T;

  Future(std::shared_ptr<InterruptCell> interrupt_cell, std::shared_ptr<ResultCell<T>> result_cell)
      : state_(std::make_shared<State>()) {
    state_->interrupt_cell = std::move(interrupt_cell);
    state_->result_cell = std::move(result_cell);
  }

  /// Blocks until the result is available.  Repeatable.
  FutureResult<T> get() const {
    const auto& result = state_->result_cell->read();
    state_->queried.store(true, std::memory_order_relaxed);
    return result;
  }

  std::optional<FutureResult<T>> try_get() const { return state_->result_cell->try_read(); }

  /// Never blocks.  True iff this call filled the interrupt cell; false once
  /// it is filled, whether by an earlier interrupt or by task completion.
  /// A published result counts as completion even before the task has
  /// released the watcher.
  bool interrupt() const {
    if (state_->result_cell->filled()) return false;
    const bool first = state_->interrupt_cell->try_put(Unit{});
    if (first) state_->interrupted.store(true, std::memory_order_relaxed);
    return first;
  }

  bool queried() const { return state_->queried.load(std::memory_order_relaxed); }
  bool interrupted() const { return state_->interrupted.load(std::memory_order_relaxed); }

  const std::shared_ptr<InterruptCell>& interrupt_cell() const { return state_->interrupt_cell; }
  const std::shared_ptr<ResultCell<T>>& result_cell() const { return state_->result_cell; }

 private:
  struct State {
    std::shared_ptr<InterruptCell> interrupt_cell;
    std::shared_ptr<ResultCell<T>> result_cell;
    std::atomic<bool> queried{false};
    std::atomic<bool> interrupted{false};
  };
  std::shared_ptr<State> state_;
};

/// Runs task(token) on a new thread and returns at once.
///
/// The task publishes Completed(result) and then fills the interrupt cell,
/// which releases the watcher.  The watcher thread waits on the interrupt
/// cell; if it wakes while the result cell is still empty it publishes
/// Interrupted and then requests a stop on the token, so waiters are released
/// without waiting for the task to reach a checkpoint.  Whatever the task
/// returns afterwards is discarded.
///
/// A task that throws is treated as interrupted.  Throws
/// RuntimeNotInitialized.
template <typename Task>
auto fork_future(Task task) -> Future<std::invoke_result_t<Task&, CancelToken>> {
  using T = std::invoke_result_t<Task&, CancelToken>;
  static_assert(!std::is_void_v<T>, "use Unit as the payload of value-less tasks");

  auto interrupt_cell = std::make_shared<InterruptCell>();
  auto result_cell = std::make_shared<ResultCell<T>>();

  auto compute = [task = std::move(task), interrupt_cell, result_cell](CancelToken token) mutable {
    try {
      result_cell->try_put(FutureResult<T>::completed(task(token)));
    } catch (...) {
      // Leave the result empty; the watcher will publish Interrupted.
    }
    interrupt_cell->try_put(Unit{});
  };
  auto watch = [interrupt_cell, result_cell](CancelSource& source) {
    interrupt_cell->read();
    if (result_cell->filled()) return;
    // Publish before stopping: a task woken by the stop must not get to
    // write its own (partial) result first.
    if (result_cell->try_put(FutureResult<T>::interrupted())) source.request_stop();
  };

  detail::launch_future(interrupt_cell, std::move(compute), std::move(watch));
  return Future<T>(std::move(interrupt_cell), std::move(result_cell));
}

}  // namespace alache
