// Exported C surface.  No exception may escape an extern "C" function; every
// failure is reported as a status code.

#include <climits>
#include <cstdio>
#include <exception>
#include <mutex>

#include "agdalache.h"
#include "alache/c_export.hpp"
#include "alache/even_counter.hpp"
#include "alache/future.hpp"
#include "alache/runtime.hpp"

namespace alache {
namespace {

namespace ec = even_counter;

int32_t status_of(HandleErrorKind kind) {
  switch (kind) {
    case HandleErrorKind::NullHandle:
      return AL_STATUS_NULL_HANDLE;
    case HandleErrorKind::StaleHandle:
      return AL_STATUS_STALE_HANDLE;
    case HandleErrorKind::WrongKind:
      return AL_STATUS_WRONG_HANDLE_KIND;
  }
  return AL_STATUS_INTERNAL;
}

template <typename Body>
int32_t guarded(Body&& body) noexcept {
  try {
    Runtime::instance().require_initialized();
    return body();
  } catch (const HandleError& e) {
    return status_of(e.kind());
  } catch (const RuntimeNotInitialized&) {
    return AL_STATUS_NOT_INITIALIZED;
  } catch (...) {
    return AL_STATUS_INTERNAL;
  }
}

HandleRegistry& registry() { return Runtime::instance().registry(); }

// Ticks from background runs go to stdout, one line each.
void print_counter(std::int64_t value) {
  static std::mutex stdout_mutex;
  std::lock_guard lock(stdout_mutex);
  std::printf("counter = %lld\n", static_cast<long long>(value));
  std::fflush(stdout);
}

template <typename T>
FutureResult<T> read_result(AlHandle future[2]) {
  auto cell = registry().resolve_as<ResultCell<T>>(from_c_handle(future[1]));
  // Block without holding any registry lock; cell keeps the result alive.
  return cell->read();
}

}  // namespace
}  // namespace alache

using namespace alache;

extern "C" {

void al_init(void) { Runtime::instance().init(); }

void al_exit(void) { Runtime::instance().shutdown(); }

AlHandle ec_init_app(void) {
  try {
    Runtime::instance().require_initialized();
    return to_c_handle(registry().add(ec::init_app_state(0)));
  } catch (...) {
    return nullptr;
  }
}

int32_t ec_increment(AlHandle app, int64_t delta, int64_t* out) {
  return guarded([&]() -> int32_t {
    auto state = registry().resolve_as<ec::AppState>(from_c_handle(app));
    if (!out) return AL_STATUS_NULL_ARGUMENT;
    const ec::AddOutcome outcome = state->increment(delta);
    if (!outcome.ok()) return static_cast<int32_t>(outcome.error().code);
    *out = outcome.value();
    return AL_STATUS_OK;
  });
}

int32_t ec_read(AlHandle app, int64_t* out) {
  return guarded([&]() -> int32_t {
    auto state = registry().resolve_as<ec::AppState>(from_c_handle(app));
    if (!out) return AL_STATUS_NULL_ARGUMENT;
    *out = state->read();
    return AL_STATUS_OK;
  });
}

int32_t ec_increase_async(AlHandle app, int32_t duration_s, AlHandle future_out[2]) {
  return guarded([&]() -> int32_t {
    auto state = registry().resolve_as<ec::AppState>(from_c_handle(app));
    if (!future_out) return AL_STATUS_NULL_ARGUMENT;
    fork_future_c(
        [state, duration_s](CancelToken token) -> std::int64_t {
          return ec::increase_continuously(*state, duration_s, token, print_counter);
        },
        future_out);
    return AL_STATUS_OK;
  });
}

int32_t al_future_get_int(AlHandle future[2], int64_t* out) {
  return guarded([&]() -> int32_t {
    if (!future || !out) return AL_STATUS_NULL_ARGUMENT;
    const auto result = read_result<std::int64_t>(future);
    if (result.is_interrupted()) return AL_STATUS_INTERRUPTED;
    *out = result.value();
    return AL_STATUS_OK;
  });
}

int32_t al_future_get_unit(AlHandle future[2]) {
  return guarded([&]() -> int32_t {
    if (!future) return AL_STATUS_NULL_ARGUMENT;
    return read_result<Unit>(future).is_interrupted() ? AL_STATUS_INTERRUPTED : AL_STATUS_OK;
  });
}

int32_t al_future_get_ptr(AlHandle future[2], void** out) {
  return guarded([&]() -> int32_t {
    if (!future || !out) return AL_STATUS_NULL_ARGUMENT;
    const auto result = read_result<void*>(future);
    if (result.is_interrupted()) return AL_STATUS_INTERRUPTED;
    *out = result.value();
    return AL_STATUS_OK;
  });
}

int32_t al_future_try_put_interrupt(AlHandle interrupt_handle) {
  const int32_t status = guarded([&]() -> int32_t {
    auto cell = registry().take_as<InterruptCell>(from_c_handle(interrupt_handle));
    return cell->try_put(Unit{}) ? 1 : 0;
  });
  return status <= 1 ? status : -status;
}

int32_t ec_interrupt_full(AlHandle future[2]) {
  const int32_t status = guarded([&]() -> int32_t {
    if (!future) return AL_STATUS_NULL_ARGUMENT;
    const AlHandle interrupt_handle = future[0];
    const AlHandle result_handle = future[1];
    int32_t filled = 0;
    Runtime::instance().dispatcher().call([&] {
      auto result = registry().resolve_as<CellBase>(from_c_handle(result_handle));
      auto cell = registry().take_as<InterruptCell>(from_c_handle(interrupt_handle));
      filled = cell->try_put(Unit{}) ? 1 : 0;
      // Rendezvous: return only once the watcher (or the task) has resolved
      // the future.
      result->wait();
    });
    return filled;
  });
  return status <= 1 ? status : -status;
}

int32_t al_handle_free(AlHandle h) {
  return guarded([&]() -> int32_t {
    registry().free(from_c_handle(h));
    return AL_STATUS_OK;
  });
}

uint64_t al_handle_live_count(void) { return Runtime::instance().registry().live_count(); }

const char* al_error_message(int32_t code) {
  if (code < 0 && code != INT32_MIN) code = -code;
  switch (code) {
    case AL_STATUS_OK:
      return "ok";
    case AL_STATUS_FIRST_ODD:
      return "first parameter is odd";
    case AL_STATUS_SECOND_ODD:
      return "second parameter is odd";
    case AL_STATUS_OVERFLOW:
      return "integer overflow";
    case AL_STATUS_NULL_HANDLE:
      return "null handle";
    case AL_STATUS_STALE_HANDLE:
      return "stale handle";
    case AL_STATUS_NOT_INITIALIZED:
      return "runtime not initialized";
    case AL_STATUS_WRONG_HANDLE_KIND:
      return "handle refers to a different kind of object";
    case AL_STATUS_NULL_ARGUMENT:
      return "null argument";
    case AL_STATUS_INTERNAL:
      return "internal error";
    default:
      return "unknown error";
  }
}

}  // extern "C"
