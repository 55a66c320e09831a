#include <atomic>
#include <thread>
#include <vector>

#include "alache/one_shot_cell.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace alache;
using namespace std::chrono_literals;

TEST_CASE("first put wins, later puts change nothing") {
  OneShotCell<int> cell;
  CHECK_FALSE(cell.filled());
  CHECK_FALSE(cell.try_read().has_value());
  CHECK(cell.try_put(1));
  CHECK_FALSE(cell.try_put(2));
  CHECK(cell.read() == 1);
  CHECK(cell.read() == 1);
  CHECK(cell.try_read() == 1);
}

TEST_CASE("read blocks until the cell is filled") {
  OneShotCell<int> cell;
  std::atomic<bool> returned{false};
  std::thread reader([&] {
    CHECK(cell.read() == 9);
    returned = true;
  });
  std::this_thread::sleep_for(50ms);
  CHECK_FALSE(returned.load());
  cell.try_put(9);
  reader.join();
  CHECK(returned.load());
}

TEST_CASE("wait_for times out on an empty cell") {
  OneShotCell<int> cell;
  CHECK_FALSE(cell.wait_for(10ms));
  cell.try_put(0);
  CHECK(cell.wait_for(0ms));
}

TEST_CASE("concurrent putters: exactly one succeeds, every reader sees its value") {
  for (int trial = 0; trial < 200; ++trial) {
    OneShotCell<int> cell;
    std::atomic<int> winners{0};
    std::vector<int> seen(4, -1);
    std::vector<std::thread> threads;
    for (int i = 0; i < 4; ++i) {
      threads.emplace_back([&, i] {
        if (cell.try_put(i)) ++winners;
        seen[i] = cell.read();
      });
    }
    for (auto& t : threads) t.join();
    REQUIRE(winners.load() == 1);
    for (int v : seen) CHECK(v == cell.read());
  }
}
