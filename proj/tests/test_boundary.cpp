#include <catch_amalgamated.hpp>

#include <cmath>

#include "leray/boundary.hpp"
#include "leray/random.hpp"

using namespace leray;
using Catch::Approx;

TEST_CASE("model lifts") {
  const auto q = lift_model(DomainSpec::model_quad(), {0.1, 0.2, 0.3});
  CHECK(std::abs(q.z1 - cplx{0.1, 0.2}) < 1e-15);
  CHECK(std::abs(q.z2 - cplx{0.3, 0.005}) < 1e-15);
  const auto o = lift_model(DomainSpec::model_quad(), {0, 0, 0});
  CHECK(std::abs(o.z1) + std::abs(o.z2) == 0.0);
  const auto p = lift_model(DomainSpec::model_power(1.5), {0.1, 0, 0});
  CHECK(p.z2.imag() == Approx(0.0158114).margin(1e-7));
  CHECK_THROWS_AS(lift_model(DomainSpec::bounded_quad(), {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("scaled lifts") {
  CHECK(lift_scaled(DomainSpec::scaled_quad(0.1), {1, 0, 0}).z2.imag() == Approx(0.501256).margin(1e-6));
  CHECK(lift_scaled(DomainSpec::scaled_quad(1e-8), {1, 0, 0}).z2.imag() == Approx(0.5).margin(1e-14));
  const auto o = lift_scaled(DomainSpec::scaled_quad(0.1), {0, 0, 0});
  CHECK(std::abs(o.z1) + std::abs(o.z2) == 0.0);
  CHECK_THROWS_AS(lift_scaled(DomainSpec::model_quad(), {0, 0, 0}), std::invalid_argument);
  // 1 - eps^2 (t1^2 + eps^2 t3^2) < 0 at t1 = 20, eps = 0.1
  CHECK_THROWS_AS(lift_scaled(DomainSpec::scaled_quad(0.1), {20, 0, 0}), ChartRangeError);
}

TEST_CASE("bounded atlas") {
  const auto charts = atlas_bounded(DomainSpec::bounded_quad());
  REQUIRE(charts.size() == 2);
  CHECK(charts[0].height({0, 0, 0}) == 0.0);
  CHECK(charts[1].height({0, 0, 0}) == 2.0);
  CHECK_THROWS_AS(atlas_bounded(DomainSpec::model_quad()), std::invalid_argument);
  CHECK_THROWS_AS(Chart(DomainSpec::bounded_quad(), ChartSide::Model), std::invalid_argument);
  CHECK_THROWS_AS(Chart(DomainSpec::model_quad(), ChartSide::Lower), std::invalid_argument);
}

TEST_CASE("embedded chart points lie on the boundary") {
  Rng rng(1);
  std::vector<Chart> charts{Chart(DomainSpec::model_quad(), ChartSide::Model),
                            Chart(DomainSpec::model_power(1.5), ChartSide::Model),
                            Chart(DomainSpec::scaled_quad(0.2), ChartSide::Model),
                            Chart(DomainSpec::scaled_power(1.5, 0.2), ChartSide::Model)};
  for (const auto& s : {DomainSpec::bounded_quad(), DomainSpec::bounded_power(1.5)})
    for (const auto& c : atlas_bounded(s)) charts.push_back(c);
  for (const auto& c : charts) {
    INFO(to_string(c.spec().family) << " side " << static_cast<int>(c.side()));
    double worst = 0.0;
    int n = 0;
    while (n < 10000) {
      const ChartPoint t{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
      if (!c.contains(t)) continue;
      worst = std::max(worst, std::abs(rho(c.spec(), c.embed(t))));
      ++n;
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("chart frame is the derivative of the embedding") {
  Rng rng(2);
  const std::vector<Chart> charts{Chart(DomainSpec::model_power(1.5), ChartSide::Model),
                                  Chart(DomainSpec::scaled_quad(0.3), ChartSide::Model),
                                  Chart(DomainSpec::bounded_quad(), ChartSide::Lower),
                                  Chart(DomainSpec::bounded_power(1.5), ChartSide::Upper)};
  for (const auto& c : charts) {
    for (int n = 0; n < 200; ++n) {
      ChartPoint t{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)};
      if (std::abs(t.t1) < 0.05) t.t1 = 0.3;
      // stay away from the equator of the bounded charts, where the height has a square-root edge
      if (c.base(t) > 0.8) continue;
      const auto f = c.frame(t);
      for (int k = 0; k < 3; ++k) {
        ChartPoint p = t, m = t;
        (k == 0 ? p.t1 : k == 1 ? p.t2 : p.t3) += 1e-6;
        (k == 0 ? m.t1 : k == 1 ? m.t2 : m.t3) -= 1e-6;
        const CPoint2 d = c.embed(p) - c.embed(m);
        CHECK(std::abs(d.z1 / 2e-6 - f[k][0]) < 1e-7);
        CHECK(std::abs(d.z2 / 2e-6 - f[k][1]) < 1e-6);
      }
    }
  }
}

TEST_CASE("polar parameterization of the bounded quartic boundary") {
  Rng rng(3);
  const PolarChart pc;
  for (int n = 0; n < 1000; ++n) {
    const std::array<double, 3> p{rng.uniform(-pi / 2, pi / 2), rng.uniform(-pi / 2, pi / 2), rng.uniform(0, 2 * pi)};
    CHECK(std::abs(rho(pc.spec(), pc.embed(p))) < 1e-13);
    const auto f = pc.frame(p);
    for (int k = 0; k < 3; ++k) {
      auto a = p, b = p;
      a[k] += 1e-6;
      b[k] -= 1e-6;
      const CPoint2 d = pc.embed(a) - pc.embed(b);
      CHECK(std::abs(d.z1 / 2e-6 - f[k][0]) < 1e-6);
      CHECK(std::abs(d.z2 / 2e-6 - f[k][1]) < 1e-6);
    }
  }
}

TEST_CASE("scaled height deviates from the model height at the expected order") {
  auto worst = [](const DomainSpec& s, double m) {
    const Chart c(s, ChartSide::Model);
    double w = 0.0;
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j)
        for (int k = 0; k <= 20; ++k) {
          const ChartPoint t{-1 + 0.1 * i, -1 + 0.1 * j, -1 + 0.1 * k};
          w = std::max(w, std::abs(c.height(t) - 0.5 * std::pow(std::abs(t.t1), m)));
        }
    return w;
  };
  for (double eps : {0.1, 0.05}) {
    const double r = worst(DomainSpec::scaled_quad(eps), 2.0) / worst(DomainSpec::scaled_quad(eps / 2), 2.0);
    CHECK(r == Approx(4.0).epsilon(0.1));
  }
  for (double m : {1.5, 1.3}) {
    const double r =
        worst(DomainSpec::scaled_power(m, 0.01), m) / worst(DomainSpec::scaled_power(m, 0.005), m);
    CHECK(r == Approx(std::pow(2.0, std::min(m, 2.0 - m))).epsilon(0.15));
  }
}

TEST_CASE("parameter boxes") {
  const auto [s, sp] = make_boxes(BoxFamily::Quad, 0.1);
  CHECK(s.h1 == Approx(8.3333e-4).margin(1e-8));
  CHECK(s.h2 == 0.5);
  CHECK(s.h3 == Approx(8.3333e-4).margin(1e-8));
  CHECK(sp.cells().size() == 2);
  CHECK(boxes_disjoint(s, sp));

  const auto [ps, psp] = make_boxes(BoxFamily::Power, 0.1, 1.0 / 12.0, 1.5);
  CHECK(ps.h1 == Approx(8.3333e-4).margin(1e-8));
  CHECK(ps.h2 == Approx(0.316228).margin(1e-6));
  CHECK(ps.h3 == Approx(2.6352e-3).margin(1e-7));
  CHECK(psp.h2 == ps.h2);
  CHECK(psp.h3 == ps.h3);

  CHECK_THROWS_AS(make_boxes(BoxFamily::Quad, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(make_boxes(BoxFamily::Quad, 0.1, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(make_boxes(BoxFamily::Power, 0.1), std::invalid_argument);
  for (double d : {0.2, 0.1, 0.05, 0.025}) {
    const auto [a, b] = make_boxes(BoxFamily::Quad, d);
    CHECK(boxes_disjoint(a, b));
    const auto [c, e] = make_boxes(BoxFamily::Power, d, 1.0 / 12.0, 1.5);
    CHECK(boxes_disjoint(c, e));
    CHECK(b.contains({1.5 * d, 0.0, 0.0}));
    CHECK(b.contains({-1.5 * d, 0.0, 0.0}));
    CHECK_FALSE(b.contains({0.5 * d, 0.0, 0.0}));
  }
}
