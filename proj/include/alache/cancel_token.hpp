#pragma once

#include <chrono>
#include <cstdint>
#include <stop_token>
#include <utility>

namespace alache {

enum class Flow { Continue, Stop };

/// Cooperative cancellation flag handed to a future's task.  Once a stop has
/// been requested it stays requested.
class CancelToken {
 public:
  CancelToken() = default;
  explicit CancelToken(std::stop_token token) : token_(std::move(token)) {}

  bool stop_requested() const noexcept { return token_.stop_requested(); }
  const std::stop_token& stop_token() const noexcept { return token_; }

 private:
  std::stop_token token_;
};

/// Owner side of a CancelToken.
class CancelSource {
 public:
  CancelToken token() const { return CancelToken(source_.get_token()); }
  /// Returns true iff this call made the request.
  bool request_stop() noexcept { return source_.request_stop(); }
  bool stop_requested() const noexcept { return source_.stop_requested(); }

 private:
  std::stop_source source_;
};

/// Cancellation point.
inline Flow checkpoint(const CancelToken& token) noexcept {
  return token.stop_requested() ? Flow::Stop : Flow::Continue;
}

/// Sleeps for `duration`, waking early with Flow::Stop as soon as a stop is
/// requested.  A zero or negative duration only checks the token.
Flow cancellable_sleep(const CancelToken& token, std::chrono::microseconds duration);

inline Flow cancellable_sleep(const CancelToken& token, std::int64_t micros) {
  return cancellable_sleep(token, std::chrono::microseconds(micros));
}

}  // namespace alache
