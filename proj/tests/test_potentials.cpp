// Unit tests for grids, the potential registry, the ring-step profile, and
// the sampled Hölder estimate.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "spinring/grid.hpp"
#include "spinring/potential.hpp"

using namespace spinring;

TEST_CASE("wrap_angle maps into [0, 2pi)") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kTwoPi) == 0.0);
  CHECK(wrap_angle(-0.5) == doctest::Approx(kTwoPi - 0.5).epsilon(1e-15));
  CHECK(wrap_angle(7.0 * kPi) == doctest::Approx(kPi).epsilon(1e-12));
  for (double x : {-123.456, -1e-9, 0.25, 6.28, 100.0}) {
    const double w = wrap_angle(x);
    CHECK(w >= 0.0);
    CHECK(w < kTwoPi);
    CHECK(std::fabs(std::sin(w) - std::sin(x)) < 1e-9);
  }
}

TEST_CASE("circle_distance is a metric bounded by pi") {
  CHECK(circle_distance(0.0, 0.0) == 0.0);
  CHECK(circle_distance(0.1, kTwoPi - 0.1) == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(circle_distance(0.0, kPi) == doctest::Approx(kPi));
  CHECK(circle_distance(1.0, 2.5) == doctest::Approx(1.5));
  // symmetry and triangle inequality on a few triples
  const double a = 0.3, b = 4.0, c = 6.0;
  CHECK(circle_distance(a, b) == circle_distance(b, a));
  CHECK(circle_distance(a, c) <= circle_distance(a, b) + circle_distance(b, c) + 1e-15);
}

TEST_CASE("CircleGrid nodes, weights, nearest node") {
  CHECK_THROWS_AS(CircleGrid(1), std::invalid_argument);
  const CircleGrid g(8);
  CHECK(g.size() == 8);
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(4) == doctest::Approx(kPi));
  CHECK(g.spacing() == doctest::Approx(kTwoPi / 8));
  CHECK(g.weight() == doctest::Approx(0.125));
  CHECK(g.nearest_node(0.01) == 0);
  CHECK(g.nearest_node(kTwoPi - 0.01) == 0);  // wraps
  CHECK(g.nearest_node(kPi + 0.3) == 4);
  // grid_integral of a constant is the constant
  std::vector<double> ones(8, 3.0);
  CHECK(grid_integral(ones) == doctest::Approx(3.0));
}

TEST_CASE("cosine_xy evaluates its closed form") {
  const auto p = TwoSitePotential::cosine_xy(0.0, 0.0);
  CHECK(p.evaluate(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(p.evaluate(0.0, kPi) == doctest::Approx(-1.0));
  const auto q = TwoSitePotential::cosine_xy(0.7, 0.3);
  for (double x : {0.0, 1.1, 4.4}) {
    for (double y : {0.2, 2.8, 5.9}) {
      CHECK(q.evaluate(x, y) ==
            doctest::Approx(std::cos(y - x - 0.7) + 0.3 * std::cos(2.0 * x))
                .epsilon(1e-15));
    }
  }
  CHECK(q.is_analytic());
  CHECK(q.is_continuous());
  CHECK_FALSE(q.is_translation_invariant());
  CHECK(TwoSitePotential::cosine_xy(0.7, 0.0).is_translation_invariant());
}

TEST_CASE("symmetric_u uses the registered profile of x - y") {
  CircleFunction u;
  u.name = "cos";
  const auto p = TwoSitePotential::symmetric_u(u);
  for (double x : {0.0, 1.0, 3.0}) {
    for (double y : {0.5, 2.0, 6.0}) {
      CHECK(p.evaluate(x, y) == doctest::Approx(std::cos(x - y)).epsilon(1e-15));
      CHECK(p.evaluate(x, y) == doctest::Approx(p.evaluate(y, x)).epsilon(1e-15));
    }
  }
  CHECK(p.is_translation_invariant());

  CircleFunction f;
  f.name = "fourier";
  f.cos_coeffs = {0.5, 0.25};
  f.sin_coeffs = {0.0, -1.0};
  const auto pf = TwoSitePotential::symmetric_u(f);
  const double t = 1.3;
  CHECK(pf.evaluate(t, 0.0) ==
        doctest::Approx(0.5 * std::cos(t) + 0.25 * std::cos(2 * t) - std::sin(2 * t))
            .epsilon(1e-15));

  CircleFunction bad;
  bad.name = "sawtooth";
  CHECK_THROWS_AS(TwoSitePotential::symmetric_u(bad), std::invalid_argument);
}

TEST_CASE("non-finite evaluation points are rejected") {
  const auto p = TwoSitePotential::cosine_xy(0.0, 0.0);
  CHECK_THROWS_AS(p.evaluate(std::nan(""), 0.0), std::domain_error);
  CHECK_THROWS_AS(p.evaluate(0.0, std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

// ---------------------------------------------------------------------------
// Ring-step profile
// ---------------------------------------------------------------------------

TEST_CASE("step profile: centers, rings, background at eps = 0.1") {
  const double eps = 0.1;
  // centers carry the limit level 1/2
  CHECK(step_u_value(0.0, eps) == 0.5);
  CHECK(step_u_value(kPi, eps) == 0.5);
  // ring 1 around pi: d in [eps^27/2, eps^3/2) -> level 1/4
  CHECK(step_u_value(kPi - 1e-4, eps) == doctest::Approx(0.25));
  CHECK(step_u_value(kPi + 1e-4, eps) == doctest::Approx(0.25));
  // ring 2 around 0: d in [eps^81/2, eps^9/2) -> level 3/8
  CHECK(step_u_value(1e-10, eps) == doctest::Approx(0.375));
  CHECK(step_u_value(-1e-10, eps) == doctest::Approx(0.375));
  // ring 4 around 0: d in [eps^729/2, eps^81/2) -> level 15/32.  Its inner
  // edge eps^729/2 ~ 5e-730 lies below the smallest subnormal double, so
  // every representable positive offset inside eps^81/2 lands in ring 4.
  CHECK(step_u_value(1e-82, eps) == doctest::Approx(0.46875));
  CHECK(step_u_value(1e-200, eps) == doctest::Approx(0.46875));
  // outside the outermost rings: background 0
  CHECK(step_u_value(0.03, eps) == 0.0);
  CHECK(step_u_value(1.0, eps) == 0.0);
  CHECK(step_u_value(kPi - 0.01, eps) == 0.0);
  // levels increase toward 1/2 with depth
  CHECK(step_u_value(kPi - 1e-4, eps) < step_u_value(1e-10, eps));
}

TEST_CASE("step potential tabulated on an 8-node grid") {
  // With eps = 0.1 the finest structure is far below the grid spacing; the
  // only nodes meeting a ring are the centers themselves, so the table is
  // 1/2 on the diagonal (t = 0) and at |i-j| = 4 (t = pi), else 0.
  const auto p = TwoSitePotential::step_vanenter(0.1);
  const CircleGrid g(8);
  const DenseMatrix t = p.tabulate(g);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int d = std::min((i - j + 8) % 8, (j - i + 8) % 8);
      const double expected = (d == 0 || d == 4) ? 0.5 : 0.0;
      CHECK(t.at(i, j) == expected);
    }
  }
  CHECK(p.max_abs_on_grid(g) == 0.5);
  CHECK_FALSE(p.is_continuous());
  CHECK(p.is_translation_invariant());
  CHECK_FALSE(p.is_analytic());
}

TEST_CASE("step potential epsilon domain") {
  CHECK_THROWS_AS(TwoSitePotential::step_vanenter(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TwoSitePotential::step_vanenter(0.5), std::invalid_argument);
  CHECK_THROWS_AS(TwoSitePotential::step_vanenter(-0.1), std::invalid_argument);
  CHECK_NOTHROW(TwoSitePotential::step_vanenter(0.49));
}

// ---------------------------------------------------------------------------
// Tabulated potentials
// ---------------------------------------------------------------------------

TEST_CASE("tabulated bilinear interpolation with wrap-around") {
  DenseMatrix t(2, 2);
  t.at(0, 0) = 0.0;
  t.at(0, 1) = 1.0;
  t.at(1, 0) = 2.0;
  t.at(1, 1) = 3.0;
  const auto p = TwoSitePotential::tabulated(t);
  // node values are exact
  CHECK(p.evaluate(0.0, 0.0) == 0.0);
  CHECK(p.evaluate(0.0, kPi) == 1.0);
  CHECK(p.evaluate(kPi, 0.0) == 2.0);
  CHECK(p.evaluate(kPi, kPi) == 3.0);
  // midpoints average the neighbors, including across the wrap
  CHECK(p.evaluate(kPi / 2, 0.0) == doctest::Approx(1.0));
  CHECK(p.evaluate(3 * kPi / 2, 0.0) == doctest::Approx(1.0));
  CHECK(p.evaluate(kPi / 2, kPi / 2) == doctest::Approx(1.5));
  // arbitrary off-grid points interpolate (never error)
  CHECK_NOTHROW(p.evaluate(6.2831, 6.2831));
  CHECK_NOTHROW(p.evaluate(-10.0, 100.0));

  // tabulate() on the matching grid returns the table unchanged
  const CircleGrid g(2);
  const DenseMatrix back = p.tabulate(g);
  CHECK(back.data == t.data);
}

TEST_CASE("tabulated validation") {
  DenseMatrix bad(2, 3);
  CHECK_THROWS_AS(TwoSitePotential::tabulated(bad), std::invalid_argument);
  DenseMatrix tiny(1, 1);
  CHECK_THROWS_AS(TwoSitePotential::tabulated(tiny), std::invalid_argument);
  DenseMatrix nan2(2, 2);
  nan2.at(1, 1) = std::nan("");
  CHECK_THROWS_AS(TwoSitePotential::tabulated(nan2), std::invalid_argument);
}

TEST_CASE("tabulated CSV round trip") {
  const std::string path = "test_pot_roundtrip.csv";
  {
    std::ofstream out(path);
    out << "3\n0,0.5,-1\n2,3,4\n-0.25,6,7\n";
  }
  const auto p = TwoSitePotential::tabulated_from_csv(path);
  const CircleGrid g(3);
  const DenseMatrix t = p.tabulate(g);
  CHECK(t.at(0, 1) == 0.5);
  CHECK(t.at(1, 2) == 4.0);
  CHECK(t.at(2, 0) == -0.25);
  std::remove(path.c_str());

  CHECK_THROWS(TwoSitePotential::tabulated_from_csv("no_such_file.csv"));
  {
    std::ofstream out(path);
    out << "3\n0,1,2\n3,4\n5,6,7\n";  // short row
  }
  CHECK_THROWS(TwoSitePotential::tabulated_from_csv(path));
  std::remove(path.c_str());
}

TEST_CASE("JSON registry constructs every kind and rejects unknowns") {
  using nlohmann::json;
  const auto c = TwoSitePotential::from_json(
      json{{"kind", "cosine_xy"}, {"alpha", 0.5}, {"gamma", 0.25}});
  CHECK(c.evaluate(0.0, 0.5) == doctest::Approx(1.25));

  const auto s = TwoSitePotential::from_json(
      json{{"kind", "symmetric_u"}, {"name", "cos2t"}});
  CHECK(s.evaluate(0.3, 0.0) == doctest::Approx(std::cos(0.6)));

  const auto v = TwoSitePotential::from_json(
      json{{"kind", "step_vanenter"}, {"epsilon", 0.1}});
  CHECK(v.kind() == PotentialKind::StepVanEnter);

  const std::string path = "test_pot_json.csv";
  {
    std::ofstream out(path);
    out << "2\n0,1\n2,3\n";
  }
  const auto t =
      TwoSitePotential::from_json(json{{"kind", "tabulated"}, {"path", path}});
  CHECK(t.evaluate(kPi, kPi) == 3.0);
  std::remove(path.c_str());

  CHECK_THROWS(TwoSitePotential::from_json(json{{"kind", "unknown_kind"}}));
  CHECK_THROWS(TwoSitePotential::from_json(json{{"alpha", 1.0}}));
  CHECK_THROWS(TwoSitePotential::from_json(json{{"kind", "symmetric_u"}}));
}

// ---------------------------------------------------------------------------
// Sampled Hölder data
// ---------------------------------------------------------------------------

TEST_CASE("holder estimate: Lipschitz constant of cos(x - y)") {
  const auto p = TwoSitePotential::cosine_xy(0.0, 0.0);
  const CircleGrid g(32);
  const HolderEstimate est = holder_estimate(p, g, 1.0);
  CHECK(est.holder);
  // |cos a - cos b| <= |a - b| and the l1 metric dominates the difference of
  // (x - y), so the quotient never exceeds 1; near the steepest secant it
  // approaches 1 from below.
  CHECK(est.constant <= 1.0 + 1e-12);
  CHECK(est.constant > 0.9);
}

TEST_CASE("holder estimate scales linearly with the potential") {
  DenseMatrix t(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      t.at(i, j) = std::sin(0.7 * i) * std::cos(1.3 * j);
  DenseMatrix t2 = t;
  for (double& v : t2.data) v *= 2.0;
  const CircleGrid g(8);
  const auto e1 = holder_estimate(TwoSitePotential::tabulated(t), g, 0.5);
  const auto e2 = holder_estimate(TwoSitePotential::tabulated(t2), g, 0.5);
  CHECK(e2.constant == doctest::Approx(2.0 * e1.constant).epsilon(1e-12));
}

TEST_CASE("holder estimate: smaller alpha raises the constant on fine grids") {
  const auto p = TwoSitePotential::cosine_xy(0.0, 0.0);
  const CircleGrid g(64);
  const auto lip = holder_estimate(p, g, 1.0);
  const auto half = holder_estimate(p, g, 0.5);
  // d < 1 for neighboring pairs, so dividing by d^0.5 >= d inflates quotients
  CHECK(half.constant > lip.constant);
}

TEST_CASE("holder estimate rejects bad exponents and flags step potentials") {
  const auto p = TwoSitePotential::cosine_xy(0.0, 0.0);
  const CircleGrid g(8);
  CHECK_THROWS_AS(holder_estimate(p, g, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(holder_estimate(p, g, 1.5), std::invalid_argument);

  const auto v = TwoSitePotential::step_vanenter(0.1);
  const HolderEstimate est = holder_estimate(v, g, 0.5);
  CHECK_FALSE(est.holder);
  CHECK(std::isinf(est.constant));
}
