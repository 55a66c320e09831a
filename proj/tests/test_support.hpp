#pragma once

#include <chrono>
#include <cstdint>
#include <random>

#include "agdalache.h"
#include "alache/runtime.hpp"

namespace alache::testing {

using Clock = std::chrono::steady_clock;
using namespace std::chrono_literals;

inline double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

inline double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Fixed seed so failures reproduce.
inline std::mt19937_64 make_rng(std::uint64_t salt = 0) {
  return std::mt19937_64(0xA1AC4E5EEDULL ^ salt);
}

inline void ensure_runtime() { al_init(); }

}  // namespace alache::testing
