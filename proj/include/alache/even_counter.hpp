#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string_view>
#include <variant>

#include "alache/cancel_token.hpp"
#include "alache/handle_registry.hpp"

namespace alache::even_counter {

enum class AddErrorCode { FirstOdd = 1, SecondOdd = 2, Overflow = 3 };

struct AddError {
  AddErrorCode code;

  std::string_view message() const;
  friend bool operator==(AddError, AddError) = default;
};

inline constexpr std::string_view kFirstOddMessage = "first parameter is odd";
inline constexpr std::string_view kSecondOddMessage = "second parameter is odd";
inline constexpr std::string_view kOverflowMessage = "integer overflow";

/// Either an error (left) or the new value (right).
class AddOutcome {
 public:
  AddOutcome(std::int64_t value) : data_(value) {}  // NOLINT: implicit by design of Either
  AddOutcome(AddError error) : data_(error) {}      // NOLINT

  bool ok() const { return std::holds_alternative<std::int64_t>(data_); }
  std::int64_t value() const { return std::get<std::int64_t>(data_); }
  AddError error() const { return std::get<AddError>(data_); }

  friend bool operator==(const AddOutcome&, const AddOutcome&) = default;

 private:
  std::variant<std::int64_t, AddError> data_;
};

/// Mathematical parity, so negative evens are even.
constexpr bool is_even_integer(std::int64_t x) { return x % 2 == 0; }

/// Adds two even integers.  x is checked first.  A sum outside the int64
/// range is reported as AddErrorCode::Overflow instead of wrapping.
AddOutcome either_add_integer(std::int64_t x, std::int64_t y);

class OddInitialValue : public std::invalid_argument {
 public:
  explicit OddInitialValue(std::int64_t n);
};

/// The application's model object: a counter that only ever holds even
/// values.  Safe to share between threads.
class AppState : public Managed {
 public:
  /// Throws OddInitialValue.
  explicit AppState(std::int64_t initial);

  std::int64_t read() const { return counter_.load(std::memory_order_acquire); }

  /// Atomically adds x.  On error the counter is left unchanged.
  AddOutcome increment(std::int64_t x);

 private:
  std::atomic<std::int64_t> counter_;
};

std::shared_ptr<AppState> init_app_state(std::int64_t n);

using CounterObserver = std::function<void(std::int64_t)>;

inline constexpr std::chrono::microseconds kTickPeriod{1'000'000};

/// Every `period`, for `duration` periods: sleep, add 2, report the new value
/// to observer.  The sleep comes first, so a stop during the first period
/// leaves the counter untouched.  Returns the counter value at exit, whether
/// the loop finished or was cancelled.
std::int64_t increase_continuously(AppState& state, std::int64_t duration, const CancelToken& token,
                                   const CounterObserver& observer,
                                   std::chrono::microseconds period = kTickPeriod);

}  // namespace alache::even_counter
