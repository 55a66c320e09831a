#include <atomic>
#include <memory>
#include <set>
#include <thread>
#include <vector>

#include "alache/handle_registry.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace alache;

namespace {

struct Box : Managed {
  explicit Box(int v) : value(v) {}
  int value;
};

struct Other : Managed {};

HandleErrorKind error_kind(auto&& fn) {
  try {
    fn();
  } catch (const HandleError& e) {
    return e.kind();
  }
  FAIL("expected HandleError");
  return HandleErrorKind::NullHandle;
}

}  // namespace

TEST_CASE("register then resolve returns the same object") {
  HandleRegistry registry;
  auto box = std::make_shared<Box>(7);
  const StableHandle h = registry.add(box);
  CHECK(h.raw() != 0);
  CHECK(registry.resolve(h).get() == box.get());
  CHECK(registry.resolve_as<Box>(h)->value == 7);
}

TEST_CASE("registering the same object twice gives distinct handles") {
  HandleRegistry registry;
  auto box = std::make_shared<Box>(1);
  const StableHandle h1 = registry.add(box);
  const StableHandle h2 = registry.add(box);
  CHECK(h1 != h2);
  CHECK(registry.live_count() == 2);
}

TEST_CASE("live count follows registrations") {
  HandleRegistry registry;
  CHECK(registry.live_count() == 0);

  SUBCASE("1000 registrations") {
    std::size_t oracle = registry.live_count();
    for (int i = 0; i < 1000; ++i) {
      registry.add(std::make_shared<Box>(i));
      ++oracle;
    }
    CHECK(registry.live_count() == oracle);
    CHECK(oracle == 1000);
  }
  SUBCASE("3 registers, 1 free") {
    const auto a = registry.add(std::make_shared<Box>(1));
    registry.add(std::make_shared<Box>(2));
    registry.add(std::make_shared<Box>(3));
    registry.free(a);
    CHECK(registry.live_count() == 2);
  }
  SUBCASE("balanced register/free cycles") {
    std::size_t oracle = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto h = registry.add(std::make_shared<Box>(i));
      ++oracle;
      registry.free(h);
      --oracle;
    }
    CHECK(registry.live_count() == oracle);
    CHECK(oracle == 0);
  }
}

TEST_CASE("resolve errors") {
  HandleRegistry registry;
  CHECK(error_kind([&] { registry.resolve(StableHandle{}); }) == HandleErrorKind::NullHandle);

  const auto h = registry.add(std::make_shared<Box>(3));
  registry.free(h);
  CHECK(error_kind([&] { registry.resolve(h); }) == HandleErrorKind::StaleHandle);

  // Out-of-range slot index.
  CHECK(error_kind([&] { registry.resolve(StableHandle(9999, 1)); }) == HandleErrorKind::StaleHandle);
}

TEST_CASE("resolve_as rejects a different object kind") {
  HandleRegistry registry;
  const auto h = registry.add(std::make_shared<Other>());
  CHECK(error_kind([&] { registry.resolve_as<Box>(h); }) == HandleErrorKind::WrongKind);
}

TEST_CASE("double free is reported and leaves other handles intact") {
  HandleRegistry registry;
  const auto h = registry.add(std::make_shared<Box>(1));
  const auto keep = registry.add(std::make_shared<Box>(2));
  registry.free(h);
  CHECK(error_kind([&] { registry.free(h); }) == HandleErrorKind::StaleHandle);
  CHECK(error_kind([&] { registry.free(StableHandle{}); }) == HandleErrorKind::NullHandle);
  CHECK(registry.resolve_as<Box>(keep)->value == 2);
  CHECK(registry.live_count() == 1);
}

TEST_CASE("a freed handle stays dead after its slot is reused") {
  HandleRegistry registry;
  const auto old = registry.add(std::make_shared<Box>(1));
  registry.free(old);
  std::vector<StableHandle> fresh;
  for (int i = 0; i < 100; ++i) fresh.push_back(registry.add(std::make_shared<Box>(100 + i)));

  // The slot was reused (LIFO free list) under a new generation.
  CHECK(fresh.front().index() == old.index());
  CHECK(fresh.front().generation() != old.generation());
  CHECK(error_kind([&] { registry.resolve(old); }) == HandleErrorKind::StaleHandle);
  CHECK(error_kind([&] { registry.free(old); }) == HandleErrorKind::StaleHandle);
  CHECK(registry.resolve_as<Box>(fresh.front())->value == 100);
}

TEST_CASE("take_as frees exactly once and respects the kind") {
  HandleRegistry registry;
  const auto h = registry.add(std::make_shared<Box>(5));
  const auto other = registry.add(std::make_shared<Other>());

  CHECK(error_kind([&] { registry.take_as<Box>(other); }) == HandleErrorKind::WrongKind);
  CHECK(registry.live_count() == 2);

  auto box = registry.take_as<Box>(h);
  CHECK(box->value == 5);
  CHECK(registry.live_count() == 1);
  CHECK(error_kind([&] { registry.take_as<Box>(h); }) == HandleErrorKind::StaleHandle);
}

TEST_CASE("freeing releases the registry's reference") {
  HandleRegistry registry;
  auto box = std::make_shared<Box>(1);
  std::weak_ptr<Box> weak = box;
  const auto h = registry.add(std::move(box));
  CHECK_FALSE(weak.expired());
  registry.free(h);
  CHECK(weak.expired());
}

TEST_CASE("clear frees everything") {
  HandleRegistry registry;
  for (int i = 0; i < 10; ++i) registry.add(std::make_shared<Box>(i));
  CHECK(registry.clear() == 10);
  CHECK(registry.live_count() == 0);
}

TEST_CASE("property: random register/free sequences conserve the live count") {
  auto rng = alache::testing::make_rng(1);
  HandleRegistry registry;
  std::vector<std::pair<StableHandle, int>> live;
  std::vector<StableHandle> dead;
  std::size_t registers = 0;
  std::size_t frees = 0;
  for (int step = 0; step < 20000; ++step) {
    const auto choice = rng() % 3;
    if (choice == 0 || live.empty()) {
      const int value = static_cast<int>(rng() % 1'000'000);
      live.emplace_back(registry.add(std::make_shared<Box>(value)), value);
      ++registers;
    } else if (choice == 1) {
      const std::size_t i = rng() % live.size();
      registry.free(live[i].first);
      ++frees;
      dead.push_back(live[i].first);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
    } else if (!dead.empty()) {
      const StableHandle h = dead[rng() % dead.size()];
      CHECK(error_kind([&] { registry.free(h); }) == HandleErrorKind::StaleHandle);
    }
    REQUIRE(registry.live_count() == registers - frees);
  }
  for (const auto& [h, value] : live) CHECK(registry.resolve_as<Box>(h)->value == value);
}

TEST_CASE("concurrent register/resolve/free from many threads") {
  HandleRegistry registry;
  constexpr int kThreads = 8;
  constexpr int kPerThread = 2000;
  std::atomic<int> mismatches{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < kPerThread; ++i) {
        const int value = t * kPerThread + i;
        const auto h = registry.add(std::make_shared<Box>(value));
        if (registry.resolve_as<Box>(h)->value != value) ++mismatches;
        registry.free(h);
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(mismatches.load() == 0);
  CHECK(registry.live_count() == 0);
}
