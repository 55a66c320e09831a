#pragma once

// Helpers for exporting C++ objects through the C interface in agdalache.h.

#include <cstdint>
#include <memory>

#include "agdalache.h"
#include "alache/future.hpp"
#include "alache/handle_registry.hpp"
#include "alache/runtime.hpp"

namespace alache {

inline AlHandle to_c_handle(StableHandle h) {
  return reinterpret_cast<AlHandle>(static_cast<std::uintptr_t>(h.raw()));
}

inline StableHandle from_c_handle(AlHandle h) {
  return StableHandle(static_cast<std::uint64_t>(reinterpret_cast<std::uintptr_t>(h)));
}

/// Registers both cells of `future` and writes interrupt/result handles to
/// slots 0 and 1.
template <typename T>
void export_future(const Future<T>& future, AlHandle slots[2]) {
  HandleRegistry& registry = Runtime::instance().registry();
  const StableHandle interrupt = registry.add(future.interrupt_cell());
  StableHandle result;
  try {
    result = registry.add(future.result_cell());
  } catch (...) {
    registry.free(interrupt);
    throw;
  }
  slots[0] = to_c_handle(interrupt);
  slots[1] = to_c_handle(result);
}

/// forkFutureC analog: forks `task` and exports the future to `slots`.
template <typename Task>
auto fork_future_c(Task task, AlHandle slots[2]) {
  auto future = fork_future(std::move(task));
  try {
    export_future(future, slots);
  } catch (...) {
    future.interrupt();
    throw;
  }
  return future;
}

}  // namespace alache
