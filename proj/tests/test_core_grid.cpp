#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ref/reference.hpp"
#include "test_util.hpp"
#include "wptv/grid.hpp"

using namespace wptv;
using testutil::max_abs_diff;
using testutil::random_field;

TEST_CASE("Field2D rejects degenerate shapes and non-finite data") {
  CHECK_THROWS_AS(Field2D(1, 5), ContractError);
  CHECK_THROWS_AS(Field2D(5, 1), ContractError);
  CHECK_THROWS_AS(Field2D(0, 0), ContractError);
  CHECK_THROWS_AS(Field2D::from_data(2, 2, {1.0, 2.0, 3.0}), ContractError);
  CHECK_THROWS_AS(
      Field2D::from_data(2, 2, {1.0, 2.0, 3.0, std::nan("")}), ContractError);
  CHECK_THROWS_AS(
      Field2D::from_data(2, 2, {1.0, 2.0, 3.0, INFINITY}), ContractError);
  const Field2D f = Field2D::from_data(2, 2, {1.0, 2.0, 3.0, 4.0});
  CHECK(f(1, 0) == 3.0);
}

TEST_CASE("sample_with_neumann mirrors the edge one ghost layer out") {
  Field2D f(6, 8);
  f(0, 0) = 3.0;
  f(5, 5) = 7.5;
  f(2, 2) = -1.25;
  CHECK(sample_with_neumann(f, -1, 0) == 3.0);
  CHECK(sample_with_neumann(f, 6, 5) == 7.5);
  CHECK(sample_with_neumann(f, 2, 2) == -1.25);
  CHECK(sample_with_neumann(f, 0, -1) == 3.0);
  f(5, 7) = 9.0;
  CHECK(sample_with_neumann(f, 5, 8) == 9.0);

  CHECK_THROWS_AS(sample_with_neumann(f, -2, 0), ContractError);
  CHECK_THROWS_AS(sample_with_neumann(f, 7, 0), ContractError);
  CHECK_THROWS_AS(sample_with_neumann(f, 0, 9), ContractError);
}

TEST_CASE("grad_magnitudes on a constant field is identically zero") {
  const GradMagnitudes g = grad_magnitudes(Field2D(5, 7, 4.2));
  CHECK(max_abs_diff(g.g_e, Field2D(5, 7)) == 0.0);
  CHECK(max_abs_diff(g.g_w, Field2D(5, 7)) == 0.0);
  CHECK(max_abs_diff(g.g_n, Field2D(5, 7)) == 0.0);
  CHECK(max_abs_diff(g.g_s, Field2D(5, 7)) == 0.0);
}

TEST_CASE("grad_magnitudes on a row ramp has unit east magnitude") {
  Field2D f(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) f(i, j) = static_cast<double>(i);
  }
  const GradMagnitudes g = grad_magnitudes(f);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(g.g_e(i, j) == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  for (int j = 0; j < 4; ++j) {
    CHECK(g.g_e(3, j) == 0.0);  // ghost zeroes the forward difference
  }
}

TEST_CASE("grad_magnitudes matches the scalar oracle on random fields") {
  const Field2D f = random_field(5, 5, 42, -2.0, 2.0);
  const GradMagnitudes got = grad_magnitudes(f);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const ref::MagsAt want = ref::grad_magnitudes_at(f, i, j);
      CHECK(got.g_e(i, j) == doctest::Approx(want.e).epsilon(1e-14));
      CHECK(got.g_w(i, j) == doctest::Approx(want.w).epsilon(1e-14));
      CHECK(got.g_n(i, j) == doctest::Approx(want.n).epsilon(1e-14));
      CHECK(got.g_s(i, j) == doctest::Approx(want.s).epsilon(1e-14));
      CHECK(got.g_e(i, j) >= 0.0);
      CHECK(got.g_w(i, j) >= 0.0);
      CHECK(got.g_n(i, j) >= 0.0);
      CHECK(got.g_s(i, j) >= 0.0);
    }
  }
}

TEST_CASE("grad_magnitudes and curvature are translation invariant") {
  const Field2D f = random_field(6, 5, 7, -1.0, 1.0);
  Field2D shifted = f;
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 5; ++j) shifted(i, j) += 3.75;
  }
  const GradMagnitudes a = grad_magnitudes(f);
  const GradMagnitudes b = grad_magnitudes(shifted);
  CHECK(max_abs_diff(a.g_e, b.g_e) < 1e-14);
  CHECK(max_abs_diff(a.g_w, b.g_w) < 1e-14);
  CHECK(max_abs_diff(a.g_n, b.g_n) < 1e-14);
  CHECK(max_abs_diff(a.g_s, b.g_s) < 1e-14);
  CHECK(max_abs_diff(curvature(f, 0.01), curvature(shifted, 0.01)) < 1e-12);
}

TEST_CASE("curvature of a constant field is zero") {
  CHECK(max_abs_diff(curvature(Field2D(6, 6, -2.5), 0.001), Field2D(6, 6)) ==
        0.0);
}

TEST_CASE("curvature of a row ramp vanishes at interior pixels") {
  Field2D f(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) f(i, j) = static_cast<double>(i);
  }
  const Field2D k = curvature(f, 0.001);
  // East and west fluxes share the same magnitude on a constant-gradient
  // field, so they cancel exactly.
  for (int i = 1; i < 5; ++i) {
    for (int j = 1; j < 5; ++j) {
      CHECK(k(i, j) == 0.0);
    }
  }
}

TEST_CASE("curvature matches the boundary-zeroing oracle on random fields") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Field2D f = random_field(6, 6, seed, -2.0, 2.0);
    const Field2D got = curvature(f, 0.01);
    const Field2D want = ref::curvature(f, 0.01);
    CHECK(testutil::max_rel_diff(got, want) < 1e-13);
  }
}

TEST_CASE("curvature rejects non-positive beta") {
  CHECK_THROWS_AS(curvature(Field2D(4, 4, 1.0), 0.0), ContractError);
  CHECK_THROWS_AS(curvature(Field2D(4, 4, 1.0), -1.0), ContractError);
}

TEST_CASE("curvature sums to zero over the grid (discrete divergence theorem)") {
  for (std::uint64_t seed : {11u, 12u}) {
    const Field2D f = random_field(9, 7, seed, -3.0, 3.0);
    const Field2D k = curvature(f, 0.001);
    double total = 0.0;
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 7; ++j) total += k(i, j);
    }
    CHECK(std::fabs(total) < 1e-10 * 9 * 7);
  }
}
