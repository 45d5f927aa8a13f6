#include <doctest.h>

#include <cmath>

#include "cypoise/model.hpp"
#include "cypoise/regime.hpp"
#include "support.hpp"

using namespace cypoise;
using namespace cypoise::regime;
using cypoise::testing::Draws;

namespace {
const EvalSettings kDefault{};
}

TEST_CASE("zeta_naught") {
  CHECK(zeta_naught(FluidParams(-3, 2, 0.5, 1)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zeta_naught(FluidParams(-10, 10, 1, 1)) == doctest::Approx(1.009576582776887).epsilon(1e-14));
  CHECK(zeta_naught(FluidParams(-1, 1, 0.5, 2)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(zeta_naught(FluidParams(0.0, 1, 0.5, 2)), DomainError);
  CHECK_THROWS_AS(zeta_naught(FluidParams(-1, 1, 0.5, 0)), DomainError);

  // F'' changes sign there
  const FluidParams p(-10, 10, 1, 1);
  const double z0 = zeta_naught(p);
  CHECK(model::flux_second(p, 0.99 * z0) < 0.0);
  CHECK(model::flux_second(p, 1.01 * z0) > 0.0);
}

TEST_CASE("discriminant") {
  const Discriminant below = discriminant(FluidParams(-3, 2, 0.5, 1), kDefault);
  CHECK(below.comparison == Comparison::Below);
  CHECK(below.lhs == doctest::Approx(0.125));
  CHECK(below.rhs == doctest::Approx(0.5));
  CHECK(discriminant(FluidParams(-3, 2, 0.8, 1), kDefault).comparison == Comparison::Equal);
  const Discriminant above = discriminant(FluidParams(-3, 2, 0.9, 1), kDefault);
  CHECK(above.comparison == Comparison::Above);
  CHECK(above.rhs == doctest::Approx(1.0 / 18.0));
  CHECK_THROWS_AS(discriminant(FluidParams(0.5, 2, 0.9, 1), kDefault), DomainError);
  CHECK_THROWS_AS(discriminant(FluidParams(-3, 2, 1.0, 1), kDefault), DomainError);
}

TEST_CASE("find_zeta_roots: golden and derived values") {
  CHECK(*find_zeta_roots(FluidParams(-10, 10, 1, 1), kDefault).zeta1 ==
        doctest::Approx(0.7943).epsilon(1e-3));
  CHECK(*find_zeta_roots(FluidParams(-5, 3.9, 1, 1), kDefault).zeta1 ==
        doctest::Approx(0.662).epsilon(1e-3));
  const ZetaRoots r = find_zeta_roots(FluidParams(-3, 2, 0.9, 1), kDefault);
  CHECK(*r.zeta1 == doctest::Approx(0.6671625825345063).epsilon(1e-12));
  CHECK(*r.zeta2 == doctest::Approx(1.8222611465394431).epsilon(1e-12));

  const ZetaRoots unit = find_zeta_roots(FluidParams(-3, 2, 1, 1), kDefault);
  CHECK_FALSE(unit.zeta2);
  const ZetaRoots sup = find_zeta_roots(FluidParams(0, 2, 1, 2), kDefault);
  CHECK_FALSE(sup.zeta1);
  CHECK(*sup.flux_supremum == 0.5);

  CHECK_THROWS_AS(find_zeta_roots(FluidParams(-3, 2, 0.5, 1), kDefault), NoRootError);
  CHECK_THROWS_AS(find_zeta_roots(FluidParams(0.5, 2, 0.5, 1), kDefault), NoRootError);
  CHECK_THROWS_AS(find_zeta_roots(FluidParams(0.5, 2, 1.0, 1), kDefault), NoRootError);
}

TEST_CASE("non-convergence is reported") {
  EvalSettings tight;
  tight.max_iter = 2;
  tight.rel_tol = 1e-15;
  tight.abs_tol = 1e-300;
  CHECK_THROWS_AS(find_zeta_roots(FluidParams(-3, 2, 0.9, 1), tight), ConvergenceError);
}

TEST_CASE("root ordering and sign structure of F' (property)") {
  Draws draws(99);
  for (int i = 0; i < 50; ++i) {
    const FluidParams p = draws.two_root();
    const ZetaRoots r = find_zeta_roots(p, kDefault);
    const double z0 = zeta_naught(p);
    REQUIRE(r.zeta1);
    REQUIRE(r.zeta2);
    CHECK(0.0 < *r.zeta1);
    CHECK(*r.zeta1 < z0);
    CHECK(z0 < *r.zeta2);
    CHECK(std::abs(model::flux_prime(p, *r.zeta1)) <= 1e-9);
    CHECK(std::abs(model::flux_prime(p, *r.zeta2)) <= 1e-9);
    for (int k = 0; k < 200; ++k) {
      const double t = (k + 0.5) / 200.0;
      CHECK(model::flux_prime(p, t * *r.zeta1 * (1 - 1e-6)) > 0.0);
      CHECK(model::flux_prime(p, *r.zeta1 + t * (*r.zeta2 - *r.zeta1) * (1 - 1e-6) + 1e-9 * z0) < 0.0);
      CHECK(model::flux_prime(p, *r.zeta2 * (1 + 1e-6) + t * 9.0 * *r.zeta2) > 0.0);
    }
  }
}

TEST_CASE("closed-form zeta1 for c = 1 agrees with bracketing") {
  Draws draws(8);
  for (int i = 0; i < 50; ++i) {
    const FluidParams p(draws.uniform(-12, -0.2), draws.uniform(0.3, 10), 1.0, draws.uniform(0.2, 5));
    const double closed = *find_zeta_roots(p, kDefault).zeta1;
    CHECK(testing::rel_err(first_root_bracketed(p, kDefault), closed) <= 1e-10);
  }
}

TEST_CASE("classify: golden cases with c = 1") {
  const RegimeReport i = classify(FluidParams(-10, 10, 1, 1), FlowParams(1, 1), kDefault);
  CHECK(i.regime == Regime::ClassicalSmooth);
  CHECK(*i.existence_margin == doctest::Approx(0.7153 - 0.5).epsilon(1e-3));
  CHECK(*i.critical.y_singular == doctest::Approx(1.4305).epsilon(1e-3));

  const RegimeReport none = classify(FluidParams(-3, 2, 1, 1), FlowParams(1, 1), kDefault);
  CHECK(none.regime == Regime::NoClassicalSolution);
  CHECK(*none.critical.y_singular == doctest::Approx(0.65).epsilon(1e-3));
  CHECK(*none.critical.f_at_zeta1 == doctest::Approx(0.325).epsilon(1e-3));
  CHECK(*none.existence_margin < 0.0);

  // F(zeta1) = 0.499988: strictly below bR/2 unless eq_tol covers the gap
  const FluidParams boundary(-5, 3.9, 1, 1);
  CHECK(classify(boundary, FlowParams(1, 1), kDefault).regime == Regime::NoClassicalSolution);
  EvalSettings loose;
  loose.eq_tol = 1e-4;
  const RegimeReport boundary_rep = classify(boundary, FlowParams(1, 1), loose);
  CHECK(boundary_rep.regime == Regime::ClassicalBoundarySingular);
  CHECK(boundary_rep.equality_detected);
}

TEST_CASE("classify: c = 1, n >= 0") {
  CHECK(classify(FluidParams(0.5, 2, 1, 1), FlowParams(100, 1), kDefault).regime ==
        Regime::ClassicalSmooth);
  CHECK(classify(FluidParams(0, 2, 1, 2), FlowParams(0.5, 1), kDefault).regime ==
        Regime::ClassicalSmooth);
  CHECK(classify(FluidParams(0, 2, 1, 2), FlowParams(1, 1), kDefault).regime ==
        Regime::ClassicalBoundarySingular);
  const RegimeReport none = classify(FluidParams(0, 2, 1, 2), FlowParams(2, 1), kDefault);
  CHECK(none.regime == Regime::NoClassicalSolution);
  CHECK(*none.critical.y_singular == doctest::Approx(0.5));
}

TEST_CASE("classify: c in (0, 1) decision tree") {
  CHECK(classify(FluidParams(-3, 2, 0.5, 1), FlowParams(1, 1), kDefault).regime ==
        Regime::ClassicalSmooth);
  CHECK(classify(FluidParams(0.3, 2, 0.5, 1), FlowParams(1, 1), kDefault).regime ==
        Regime::ClassicalSmooth);

  const RegimeReport gen = classify(FluidParams(-3, 2, 0.8, 1), FlowParams(1, 1), kDefault);
  CHECK(gen.regime == Regime::GeneralizedInteriorSingular);
  CHECK(*gen.critical.y_singular == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(gen.critical.y_singular > 0.0);
  CHECK(gen.critical.y_singular < 1.0);
  CHECK(gen.equality_detected);
  // F(zeta0) = 0.4: bR/2 = 0.4 is the wall-singular edge, below it smooth
  CHECK(classify(FluidParams(-3, 2, 0.8, 1), FlowParams(0.8, 1), kDefault).regime ==
        Regime::ClassicalBoundarySingular);
  CHECK(classify(FluidParams(-3, 2, 0.8, 1), FlowParams(0.5, 1), kDefault).regime ==
        Regime::ClassicalSmooth);

  // c = 0.9: F(zeta1) = 0.3542 against bR/2
  CHECK(classify(FluidParams(-3, 2, 0.9, 1), FlowParams(1, 1), kDefault).regime ==
        Regime::NoClassicalSolution);
  CHECK(classify(FluidParams(-3, 2, 0.9, 1), FlowParams(0.5, 1), kDefault).regime ==
        Regime::ClassicalSmooth);
}

TEST_CASE("classify: Newtonian and trivial") {
  CHECK(classify(FluidParams(-3, 2, 0, 1), FlowParams(1, 1), kDefault).regime == Regime::Newtonian);
  CHECK(classify(FluidParams(-3, 2, 0.5, 0), FlowParams(1, 1), kDefault).regime == Regime::Newtonian);
  CHECK(classify(FluidParams(1, 2, 0.5, 1), FlowParams(1, 1), kDefault).regime == Regime::Newtonian);
  CHECK(classify(FluidParams(-3, 2, 0.9, 1), FlowParams(0, 1), kDefault).regime ==
        Regime::TrivialZeroGradient);
}

TEST_CASE("classify is antisymmetric in b (property)") {
  Draws draws(4);
  for (int i = 0; i < 100; ++i) {
    const FluidParams p = i % 2 ? draws.two_root() : draws.thinning();
    const double b = draws.uniform(0.05, 3.0);
    const double r = draws.uniform(0.2, 2.0);
    const RegimeReport pos = classify(p, FlowParams(b, r), kDefault);
    const RegimeReport neg = classify(p, FlowParams(-b, r), kDefault);
    CHECK(pos.regime == neg.regime);
    CHECK(neg.sign == -1);
    CHECK(pos.sign == 1);
  }
}

TEST_CASE("report invariants over random draws (property)") {
  Draws draws(31);
  for (int i = 0; i < 200; ++i) {
    const FluidParams p = i % 3 == 0 ? draws.two_root() : draws.thinning();
    const RegimeReport rep = classify(p, FlowParams(draws.uniform(0.05, 4.0), draws.uniform(0.2, 2.0)), kDefault);
    if (rep.regime == Regime::NoClassicalSolution) {
      CHECK(*rep.existence_margin < 0.0);
    }
    if (rep.regime == Regime::GeneralizedInteriorSingular) {
      CHECK(*rep.critical.y_singular > 0.0);
    }
    if (rep.critical.zeta1 && rep.critical.zeta2) {
      CHECK(*rep.critical.zeta1 < *rep.critical.zeta0);
      CHECK(*rep.critical.zeta0 < *rep.critical.zeta2);
    }
  }
}

TEST_CASE("singular_radius") {
  CHECK(singular_radius(FluidParams(-3, 2, 0.8, 1), FlowParams(1, 1), SingularKind::InteriorY0,
                        kDefault) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(singular_radius(FluidParams(-5, 3.9, 1, 1), FlowParams(1, 1), SingularKind::BranchEndY1,
                        kDefault) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(singular_radius(FluidParams(-10, 10, 1, 1), FlowParams(1, 1), SingularKind::BranchEndY1,
                        kDefault) == doctest::Approx(1.4305).epsilon(1e-3));
  CHECK_THROWS_AS(singular_radius(FluidParams(-3, 2, 0.9, 1), FlowParams(1, 1),
                                  SingularKind::InteriorY0, kDefault),
                  RegimeMismatchError);
  CHECK_THROWS_AS(singular_radius(FluidParams(-3, 2, 0.5, 1), FlowParams(1, 1),
                                  SingularKind::BranchEndY1, kDefault),
                  RegimeMismatchError);

  // closed-form Y0 equals 2 F(zeta0) / b on degenerate-inflection draws
  Draws draws(15);
  for (int i = 0; i < 50; ++i) {
    const double n = draws.uniform(-8, -0.5);
    const double a = draws.uniform(0.5, 6);
    const double d = std::pow(1.0 - (a + 1.0) / n, (n - 1.0 - a) / a);
    const FluidParams p(n, a, 1.0 / (1.0 + a * d), draws.uniform(0.3, 3));
    const double b = draws.uniform(0.1, 3);
    const double y0 = singular_radius(p, FlowParams(b, 1), SingularKind::InteriorY0, kDefault);
    CHECK(testing::rel_err(y0, 2.0 * model::flux(p, zeta_naught(p)) / b) <= 1e-12);
  }
}
