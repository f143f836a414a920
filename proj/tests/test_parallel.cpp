#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "massforge/exactnum.hpp"
#include "massforge/parallel.hpp"

using namespace massforge;

namespace {

// Deliberately uneven per-item work so dynamic scheduling actually reorders
// execution.
Integer busy(std::size_t i) {
  Integer acc = 1;
  std::uint64_t state = i * 2654435761u + 1;
  long rounds = 1 + static_cast<long>(state % 97);
  for (long r = 0; r < rounds; ++r) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    acc = acc * Integer(state % 1000 + 1) + Integer(i);
  }
  return acc;
}

}  // namespace

TEST_CASE("thread cap is sane") { CHECK(thread_cap() >= 1); }

TEST_CASE("ordered map keeps order under threading") {
  auto ser = ordered_serial_map<Integer>(1000, busy);
  auto par = ordered_parallel_map<Integer>(1000, busy);
  REQUIRE(ser.size() == par.size());
  CHECK(ser == par);
  CHECK(ordered_parallel_map<Integer>(0, busy).empty());
}

TEST_CASE("counters agree") {
  auto pred = [](std::size_t i) { return busy(i) % 7 == 0; };
  CHECK(serial_count(2000, pred) == parallel_count(2000, pred));
  CHECK(parallel_count(0, pred) == 0);
}

TEST_CASE("exceptions cross the thread boundary") {
  auto boom = [](std::size_t i) -> int {
    if (i == 613) throw DomainError("613");
    return static_cast<int>(i);
  };
  CHECK_THROWS_AS(ordered_parallel_map<int>(1000, boom), DomainError);
  auto pboom = [](std::size_t i) -> bool {
    if (i == 401) throw std::runtime_error("401");
    return i % 2 == 0;
  };
  CHECK_THROWS_AS(parallel_count(1000, pboom), std::runtime_error);
}
