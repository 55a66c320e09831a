#pragma once

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <optional>

#include "alache/handle_registry.hpp"

namespace alache {

/// Type-erased view of a cell, enough to wait for it without knowing the
/// payload type.
class CellBase : public Managed {
 public:
  virtual bool filled() const = 0;
  virtual void wait() const = 0;
};

/// Write-once cell (an MVar that is never emptied again).  The first put
/// wins; later puts fail and change nothing.  Reads block until the cell is
/// filled and may be repeated by any number of threads.
template <typename T>
class OneShotCell final : public CellBase {
 public:
  OneShotCell() = default;
  OneShotCell(const OneShotCell&) = delete;
  OneShotCell& operator=(const OneShotCell&) = delete;

  /// Never blocks.  Returns true iff this call filled the cell.
  bool try_put(T value) {
    {
      std::lock_guard lock(mutex_);
      if (value_) return false;
      value_.emplace(std::move(value));
    }
    filled_cv_.notify_all();
    return true;
  }

  /// The returned reference stays valid for the cell's lifetime: a filled
  /// cell is never modified.
  const T& read() const {
    std::unique_lock lock(mutex_);
    filled_cv_.wait(lock, [this] { return value_.has_value(); });
    return *value_;
  }

  std::optional<T> try_read() const {
    std::lock_guard lock(mutex_);
    return value_;
  }

  template <typename Rep, typename Period>
  bool wait_for(std::chrono::duration<Rep, Period> timeout) const {
    std::unique_lock lock(mutex_);
    return filled_cv_.wait_for(lock, timeout, [this] { return value_.has_value(); });
  }

  bool filled() const override {
    std::lock_guard lock(mutex_);
    return value_.has_value();
  }

  void wait() const override { read(); }

 private:
  mutable std::mutex mutex_;
  mutable std::condition_variable filled_cv_;
  std::optional<T> value_;
};

}  // namespace alache
