#include "alache/cancel_token.hpp"

#include <condition_variable>
#include <mutex>

namespace alache {

Flow cancellable_sleep(const CancelToken& token, std::chrono::microseconds duration) {
  if (duration <= std::chrono::microseconds::zero()) return checkpoint(token);
  // condition_variable_any registers a stop callback, so a stop request wakes
  // the sleeper immediately rather than at the next poll.
  std::mutex mutex;
  std::condition_variable_any cv;
  std::unique_lock lock(mutex);
  const auto deadline = std::chrono::steady_clock::now() + duration;
  cv.wait_until(lock, token.stop_token(), deadline, [] { return false; });
  return checkpoint(token);
}

}  // namespace alache
