#include "alache/handle_registry.hpp"

#include <limits>
#include <string>
#include <utility>

namespace alache {

namespace {

std::string describe(HandleErrorKind kind, StableHandle h) {
  std::string what;
  switch (kind) {
    case HandleErrorKind::NullHandle:
      return "null handle";
    case HandleErrorKind::StaleHandle:
      what = "stale handle";
      break;
    case HandleErrorKind::WrongKind:
      what = "handle refers to a different kind of object";
      break;
  }
  return what + " (slot " + std::to_string(h.index()) + ", generation " +
         std::to_string(h.generation()) + ")";
}

}  // namespace

HandleError::HandleError(HandleErrorKind kind, StableHandle handle)
    : std::runtime_error(describe(kind, handle)), kind_(kind), handle_(handle) {}

StableHandle HandleRegistry::add(std::shared_ptr<Managed> object) {
  std::lock_guard lock(mutex_);
  std::uint32_t index;
  if (!free_list_.empty()) {
    index = free_list_.back();
    free_list_.pop_back();
  } else {
    if (slots_.size() >= std::numeric_limits<std::uint32_t>::max())
      throw std::length_error("handle registry is full");
    index = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  Slot& slot = slots_[index];
  slot.occupant = std::move(object);
  ++live_;
  return StableHandle(index, slot.generation);
}

std::shared_ptr<Managed> HandleRegistry::resolve(StableHandle h) const {
  std::lock_guard lock(mutex_);
  return checked_slot(h).occupant;
}

void HandleRegistry::free(StableHandle h) {
  std::shared_ptr<Managed> object;
  {
    std::lock_guard lock(mutex_);
    checked_slot(h);
    object = release_slot(h.index());
  }
  // object may be destroyed here, outside the lock.
}

std::size_t HandleRegistry::live_count() const {
  std::lock_guard lock(mutex_);
  return live_;
}

std::size_t HandleRegistry::clear() {
  std::vector<std::shared_ptr<Managed>> released;
  {
    std::lock_guard lock(mutex_);
    for (std::uint32_t i = 0; i < slots_.size(); ++i) {
      if (slots_[i].occupant) released.push_back(release_slot(i));
    }
  }
  return released.size();
}

const HandleRegistry::Slot& HandleRegistry::checked_slot(StableHandle h) const {
  if (h.is_null()) throw HandleError(HandleErrorKind::NullHandle, h);
  if (h.index() >= slots_.size()) throw HandleError(HandleErrorKind::StaleHandle, h);
  const Slot& slot = slots_[h.index()];
  if (!slot.occupant || slot.generation != h.generation())
    throw HandleError(HandleErrorKind::StaleHandle, h);
  return slot;
}

HandleRegistry::Slot& HandleRegistry::checked_slot(StableHandle h) {
  return const_cast<Slot&>(std::as_const(*this).checked_slot(h));
}

std::shared_ptr<Managed> HandleRegistry::release_slot(std::uint32_t index) {
  Slot& slot = slots_[index];
  auto object = std::move(slot.occupant);
  slot.occupant.reset();
  // Generation 0 would let a handle encode as the null token.
  if (++slot.generation == 0) slot.generation = 1;
  free_list_.push_back(index);
  --live_;
  return object;
}

}  // namespace alache
