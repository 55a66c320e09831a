#include "alache/even_counter.hpp"

#include <string>

namespace alache::even_counter {

std::string_view AddError::message() const {
  switch (code) {
    case AddErrorCode::FirstOdd:
      return kFirstOddMessage;
    case AddErrorCode::SecondOdd:
      return kSecondOddMessage;
    case AddErrorCode::Overflow:
      return kOverflowMessage;
  }
  return "unknown error";
}

AddOutcome either_add_integer(std::int64_t x, std::int64_t y) {
  if (!is_even_integer(x)) return AddError{AddErrorCode::FirstOdd};
  if (!is_even_integer(y)) return AddError{AddErrorCode::SecondOdd};
  std::int64_t sum;
  if (__builtin_add_overflow(x, y, &sum)) return AddError{AddErrorCode::Overflow};
  return sum;
}

OddInitialValue::OddInitialValue(std::int64_t n)
    : std::invalid_argument("initial counter value " + std::to_string(n) + " is odd") {}

AppState::AppState(std::int64_t initial) : counter_(initial) {
  if (!is_even_integer(initial)) throw OddInitialValue(initial);
}

AddOutcome AppState::increment(std::int64_t x) {
  std::int64_t current = counter_.load(std::memory_order_acquire);
  for (;;) {
    AddOutcome outcome = either_add_integer(current, x);
    if (!outcome.ok()) return outcome;
    if (counter_.compare_exchange_weak(current, outcome.value(), std::memory_order_acq_rel,
                                       std::memory_order_acquire))
      return outcome;
  }
}

std::shared_ptr<AppState> init_app_state(std::int64_t n) { return std::make_shared<AppState>(n); }

std::int64_t increase_continuously(AppState& state, std::int64_t duration, const CancelToken& token,
                                   const CounterObserver& observer,
                                   std::chrono::microseconds period) {
  for (; duration > 0; --duration) {
    if (cancellable_sleep(token, period) == Flow::Stop) break;
    AddOutcome outcome = state.increment(2);
    // Only overflow can fail here; stop rather than spin on it.
    if (!outcome.ok()) break;
    if (observer) observer(outcome.value());
  }
  return state.read();
}

}  // namespace alache::even_counter
