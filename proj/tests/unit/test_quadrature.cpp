#include "rda/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace rda;

TEST_CASE("finite interval") {
  const auto r = quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, {1e-13, 0.0, 200});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(quad::integrate([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
  CHECK(quad::integrate([](double) { return 1.0; }, 3.0, 3.0).value == 0.0);
}

TEST_CASE("hints resolve narrow peaks") {
  auto spike = [](double x) { return std::exp(-1e4 * (x - 0.3137) * (x - 0.3137)); };
  const double want = std::sqrt(std::numbers::pi / 1e4);
  const auto r = quad::integrate(spike, -5.0, 5.0, {1e-14, 1e-10, 2000}, {0.3137});
  CHECK(r.value == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("infinite ranges") {
  const auto a = quad::integrate_real_line([](double x) { return std::exp(-x * x); }, 0.0, 1.0, {1e-13, 1e-13, 2000});
  CHECK(a.value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
  const auto b = quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 1.0, {1e-13, 1e-13, 2000});
  CHECK(b.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-convergence reports the achieved tolerance") {
  try {
    quad::integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.123456)); }, 0.0, 1.0, {1e-15, 0.0, 10});
    FAIL("expected a quadrature error");
  } catch (const quad::QuadratureError& e) {
    CHECK(e.achieved() > e.requested());
  }
}
