#include <doctest.h>

#include <cmath>

#include "patricia_lab/bounds.hpp"
#include "test_support.hpp"

using namespace patricia_lab;
using test_support::error_code_of;

TEST_CASE("chernoff examples") {
  CHECK(bounds::chernoff_enk(100, 3, 0.1) == doctest::Approx(8 * std::exp(-5.0)));
  CHECK(bounds::chernoff_enk(100, 3, 0.1) == doctest::Approx(0.05390).epsilon(1e-3));
  CHECK(bounds::chernoff_enk(1000, 3, 0.2) == doctest::Approx(2.98e-43).epsilon(1e-2));
  CHECK(bounds::chernoff_enk(1, 10, 0.01) == 1.0);  // clamped
  CHECK(error_code_of([] { bounds::chernoff_enk(10, 1, 0.0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("okamoto examples") {
  CHECK(bounds::okamoto(100, 10).value == doctest::Approx(0.006738).epsilon(1e-3));
  CHECK(bounds::okamoto(4096, 64).value == doctest::Approx(1.27e-14).epsilon(1e-2));
  CHECK(bounds::okamoto(4096, 64).in_regime);
  CHECK_FALSE(bounds::okamoto(100, 4).in_regime);
  CHECK(error_code_of([] { bounds::okamoto(100, 0); }) == ErrorCode::invalid_argument);
}

TEST_CASE("devroye examples") {
  CHECK(bounds::devroye_tail(100, 0) == 1.0);
  CHECK(bounds::devroye_tail(2, 2) == doctest::Approx(std::exp(-1.0)));
  CHECK(bounds::devroye_tail(64, 16) == doctest::Approx(std::exp(-2.0)));
  CHECK(error_code_of([] { bounds::devroye_tail(10, -1); }) == ErrorCode::invalid_argument);
}

TEST_CASE("distinct lower bound examples") {
  CHECK(bounds::distinct_lower(50, 100).value == 49.875);
  CHECK(bounds::distinct_lower(1, 1).value == 0.5);
  for (std::uint64_t n : {1ULL, 7ULL, 1000ULL}) {
    const auto b = bounds::distinct_lower(n, n);
    CHECK(b.value == doctest::Approx(static_cast<double>(n) - 0.5));
    CHECK(b.value >= static_cast<double>(n) - 1);
    CHECK(b.in_regime);
  }
  CHECK_FALSE(bounds::distinct_lower(20, 4).in_regime);
}

TEST_CASE("mixture height floor examples") {
  CHECK(bounds::mixture_height_floor(4096, 64) == 64);
  CHECK(bounds::mixture_height_floor(1000000, 1000) == 1000);
  CHECK(bounds::mixture_height_floor(500, 500) == 1);
  CHECK(error_code_of([] { bounds::mixture_height_floor(10, 0); }) == ErrorCode::invalid_argument);
}
