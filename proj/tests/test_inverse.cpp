#include <doctest.h>

#include <cmath>

#include "cypoise/inverse.hpp"
#include "cypoise/model.hpp"
#include "cypoise/regime.hpp"
#include "support.hpp"

using namespace cypoise;
using namespace cypoise::inverse;
using cypoise::testing::Draws;

namespace {
const EvalSettings kDefault{};
}

TEST_CASE("admissible_branch") {
  const InverseBranch mono = admissible_branch(FluidParams(0.5, 1, 0.5, 1), kDefault);
  CHECK_FALSE(mono.bounded_zeta());
  CHECK_FALSE(mono.bounded_flux());

  const InverseBranch unit = admissible_branch(FluidParams(-3, 2, 1, 1), kDefault);
  CHECK(unit.upper_zeta == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(unit.upper_flux == doctest::Approx(0.3248).epsilon(1e-3));

  const InverseBranch sup = admissible_branch(FluidParams(0, 2, 1, 2), kDefault);
  CHECK(sup.upper_flux == 0.5);
  CHECK(sup.flux_is_supremum);
  CHECK_FALSE(sup.bounded_zeta());
  CHECK(model::flux(FluidParams(0, 2, 1, 2), 1e7) == doctest::Approx(0.5).epsilon(1e-9));

  // degenerate inflection keeps the whole half-line
  CHECK_FALSE(admissible_branch(FluidParams(-3, 2, 0.8, 1), kDefault).bounded_zeta());
  const InverseBranch two = admissible_branch(FluidParams(-3, 2, 0.9, 1), kDefault);
  CHECK(two.upper_zeta == doctest::Approx(0.6671625825345063).epsilon(1e-12));
}

TEST_CASE("branch is strictly increasing (property)") {
  Draws draws(21);
  for (int i = 0; i < 30; ++i) {
    const FluidParams p = i % 2 ? draws.two_root() : FluidParams(draws.uniform(-8, -0.2), draws.uniform(0.5, 8), 1.0, draws.uniform(0.2, 4));
    const InverseBranch br = admissible_branch(p, kDefault);
    REQUIRE(br.bounded_zeta());
    CHECK(br.upper_flux == model::flux(p, br.upper_zeta));
    double prev = 0.0;
    for (int k = 1; k <= 1000; ++k) {
      const double v = model::flux(p, br.upper_zeta * k / 1000.0);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("invert_flux values") {
  const FluidParams unit(-10, 10, 1, 1);
  const InverseBranch br = admissible_branch(unit, kDefault);
  CHECK(invert_flux(unit, br, 0.0, kDefault) == 0.0);
  // the quoted 0.7153 rounds F(zeta1) = 0.715267 up, so it needs the loose equality band
  EvalSettings loose;
  loose.eq_tol = 1e-4;
  CHECK_THROWS_AS(invert_flux(unit, br, 0.7153, kDefault), OutOfRangeError);
  CHECK(invert_flux(unit, br, 0.7153, loose) == doctest::Approx(0.7943).epsilon(1e-3));
  CHECK(invert_flux(unit, br, 0.7152, kDefault) == doctest::Approx(0.7943).epsilon(1e-2));

  // F(zeta) - 0.4 ~ 0.2 (zeta - 1)^3 here, so the rounding of 0.8 and 0.4 to
  // double alone moves the exact root to 1.0000065230724808 (40-digit bisection
  // on the double-rounded inputs).
  const FluidParams deg(-3, 2, 0.8, 1);
  const double z0 = invert_flux(deg, admissible_branch(deg, kDefault), 0.4, kDefault);
  CHECK(std::abs(z0 - 1.0000065230724808) <= 1e-6);
  CHECK(std::abs(z0 - 1.0) <= 1e-5);

  const FluidParams two(-3, 2, 0.9, 1);
  CHECK(invert_flux(two, admissible_branch(two, kDefault), 0.25, kDefault) ==
        doctest::Approx(0.2882917143598235).epsilon(1e-12));
}

TEST_CASE("invert_flux range handling") {
  const FluidParams p(-3, 2, 1, 1);
  const InverseBranch br = admissible_branch(p, kDefault);
  CHECK_THROWS_AS(invert_flux(p, br, 0.5, kDefault), OutOfRangeError);
  CHECK_THROWS_AS(invert_flux(p, br, -0.1, kDefault), DomainError);
  // a hair above F(zeta1) clamps onto the branch end
  const double just_above = br.upper_flux * (1.0 + 0.5 * kDefault.eq_tol);
  CHECK(at_branch_end(br, just_above, kDefault));
  CHECK(invert_flux(p, br, just_above, kDefault) == br.upper_zeta);
  CHECK(invert_flux(p, br, br.upper_flux, kDefault) == br.upper_zeta);

  const FluidParams sup_p(0, 2, 1, 2);
  const InverseBranch sup = admissible_branch(sup_p, kDefault);
  CHECK_THROWS_AS(invert_flux(sup_p, sup, 0.5, kDefault), OutOfRangeError);
  const double big = invert_flux(sup_p, sup, 0.49999, kDefault);
  CHECK(model::flux(sup_p, big) == doctest::Approx(0.49999).epsilon(1e-12));
}

TEST_CASE("Newtonian inverse is the identity") {
  const FluidParams p(-3, 2, 0.0, 1);
  const InverseBranch br = admissible_branch(p, kDefault);
  Draws draws(1);
  for (int i = 0; i < 100; ++i) {
    const double x = draws.uniform(0, 100);
    CHECK(std::abs(invert_flux(p, br, x, kDefault) - x) <= 1e-12);
  }
}

TEST_CASE("round trip and monotonicity (property)") {
  Draws draws(606);
  for (int i = 0; i < 200; ++i) {
    FluidParams p = draws.thinning();
    switch (i % 3) {
      case 0: p = draws.two_root(); break;
      case 1: p = FluidParams(draws.uniform(-8, -0.2), draws.uniform(0.5, 8), 1.0, draws.uniform(0.2, 4)); break;
      default: break;
    }
    const InverseBranch br = admissible_branch(p, kDefault);
    const double top = br.bounded_zeta() ? br.upper_zeta : 20.0;
    const double z = draws.uniform(0.0, top * (1 - 1e-6));
    const double back = invert_flux(p, br, model::flux(p, z), kDefault);
    const bool near_end = br.bounded_zeta() && top - z < 1e-3;
    CHECK(std::abs(back - z) <= (near_end ? 1e-3 : 1e-6 * std::max(1.0, z)));

    const double x1 = draws.uniform(0.0, model::flux(p, top));
    const double x2 = draws.uniform(0.0, model::flux(p, top));
    const double z1 = invert_flux(p, br, std::min(x1, x2), kDefault);
    const double z2 = invert_flux(p, br, std::max(x1, x2), kDefault);
    CHECK(z1 <= z2);
  }
}

TEST_CASE("inverse residual meets its tolerance") {
  Draws draws(88);
  EvalSettings s;
  for (int i = 0; i < 100; ++i) {
    const FluidParams p = draws.two_root();
    const InverseBranch br = admissible_branch(p, s);
    const double x = draws.uniform(0.0, br.upper_flux);
    const double z = invert_flux(p, br, x, s);
    CHECK(z <= br.upper_zeta);
    CHECK(std::abs(model::flux(p, z) - x) <= std::max(s.abs_tol, s.rel_tol * x));
  }
}
