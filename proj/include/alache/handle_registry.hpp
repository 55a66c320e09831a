#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace alache {

/// Base of every object that can be pinned behind a stable handle.
class Managed {
 public:
  virtual ~Managed() = default;
};

/// Opaque 64-bit token: slot index in the high half, slot generation in the
/// low half.  Generations start at 1, so a valid handle is never 0.
class StableHandle {
 public:
  constexpr StableHandle() = default;
  constexpr explicit StableHandle(std::uint64_t raw) : raw_(raw) {}
  constexpr StableHandle(std::uint32_t index, std::uint32_t generation)
      : raw_((static_cast<std::uint64_t>(index) << 32) | generation) {}

  constexpr std::uint64_t raw() const { return raw_; }
  constexpr std::uint32_t index() const { return static_cast<std::uint32_t>(raw_ >> 32); }
  constexpr std::uint32_t generation() const { return static_cast<std::uint32_t>(raw_); }
  constexpr bool is_null() const { return raw_ == 0; }
  constexpr explicit operator bool() const { return raw_ != 0; }

  friend constexpr bool operator==(StableHandle, StableHandle) = default;

 private:
  std::uint64_t raw_ = 0;
};

enum class HandleErrorKind { NullHandle, StaleHandle, WrongKind };

class HandleError : public std::runtime_error {
 public:
  HandleError(HandleErrorKind kind, StableHandle handle);

  HandleErrorKind kind() const { return kind_; }
  StableHandle handle() const { return handle_; }

 private:
  HandleErrorKind kind_;
  StableHandle handle_;
};

/// Generation-tagged slot table.  Freed slots go on a free list and get a new
/// generation when reused, so stale and double-freed handles are detected
/// instead of aliasing whatever now occupies the slot.
///
/// All members are safe to call concurrently from any thread.
class HandleRegistry {
 public:
  HandleRegistry() = default;
  HandleRegistry(const HandleRegistry&) = delete;
  HandleRegistry& operator=(const HandleRegistry&) = delete;

  StableHandle add(std::shared_ptr<Managed> object);

  /// Throws HandleError (NullHandle or StaleHandle).
  std::shared_ptr<Managed> resolve(StableHandle h) const;

  /// Throws HandleError; WrongKind if the object is not a T.
  template <typename T>
  std::shared_ptr<T> resolve_as(StableHandle h) const {
    auto typed = std::dynamic_pointer_cast<T>(resolve(h));
    if (!typed) throw HandleError(HandleErrorKind::WrongKind, h);
    return typed;
  }

  /// Throws HandleError (NullHandle or StaleHandle, including double free).
  void free(StableHandle h);

  /// Resolves and frees in one step.  On WrongKind nothing is freed.
  template <typename T>
  std::shared_ptr<T> take_as(StableHandle h) {
    auto object = take_if(h, [](const Managed& m) { return dynamic_cast<const T*>(&m) != nullptr; });
    return std::static_pointer_cast<T>(std::move(object));
  }

  std::size_t live_count() const;

  /// Frees every live handle; returns how many there were.
  std::size_t clear();

 private:
  struct Slot {
    std::uint32_t generation = 1;
    std::shared_ptr<Managed> occupant;
  };

  template <typename Pred>
  std::shared_ptr<Managed> take_if(StableHandle h, Pred accepts) {
    std::shared_ptr<Managed> object;
    {
      std::lock_guard lock(mutex_);
      Slot& slot = checked_slot(h);
      if (!accepts(*slot.occupant)) throw HandleError(HandleErrorKind::WrongKind, h);
      object = release_slot(h.index());
    }
    return object;
  }

  // Callers hold mutex_.
  const Slot& checked_slot(StableHandle h) const;
  Slot& checked_slot(StableHandle h);
  std::shared_ptr<Managed> release_slot(std::uint32_t index);

  mutable std::mutex mutex_;
  std::vector<Slot> slots_;
  std::vector<std::uint32_t> free_list_;
  std::size_t live_ = 0;
};

}  // namespace alache
