#include <catch_amalgamated.hpp>

#include <cmath>

#include "leray/transform.hpp"

using namespace leray;
using Catch::Approx;

namespace {

// Dense midpoint sum of chi_S Delta_0^-2 / (4 pi^2) over S, using the closed-form kernel.
cplx midpoint_oracle(const ParamBox& s, const ChartPoint& z, int n) {
  cplx sum{};
  const double hx = 2 * s.h1 / n, hy = 2 * s.h2 / n, hz = 2 * s.h3 / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const ChartPoint w{-s.h1 + (i + 0.5) * hx, -s.h2 + (j + 0.5) * hy, -s.h3 + (k + 0.5) * hz};
        const cplx d = delta0_quad_closed(w, z);
        sum += 1.0 / (d * d);
      }
  return sum * hx * hy * hz / (4.0 * pi * pi);
}

RuleOptions rule(int n) {
  RuleOptions o;
  o.order = {n, n, n};
  return o;
}

}  // namespace

TEST_CASE("transform of a box indicator against a midpoint oracle") {
  const auto spec = DomainSpec::model_quad();
  const auto [s, sp] = make_boxes(BoxFamily::Quad, 0.1);
  const auto f = BoundaryFunction::indicator(s);
  const auto ll = MeasureKind::leray_levi();

  const ChartPoint near{0.1, 0, 0};
  const auto v = cauchy_leray(spec, f, lift_model(spec, near), ll, rule(16));
  const cplx o = midpoint_oracle(s, near, 128);
  CHECK(v.value.real() > 0.0);
  CHECK(std::abs(v.value - o) <= 1e-4 * std::abs(o));

  const ChartPoint far{10, 0, 0};
  const auto vf = cauchy_leray(spec, f, lift_model(spec, far), ll, rule(16));
  const cplx of = midpoint_oracle(s, far, 128);
  CHECK(std::abs(vf.value - of) <= 1e-4 * std::abs(of));
  // crude bound lambda(S) min|Delta|^-2
  const double lam = std::pow(2 * s.h1, 2) / (4 * pi * pi);
  CHECK(std::abs(vf.value) <= lam / (vf.min_abs_delta * vf.min_abs_delta) * (1 + 1e-12));
  CHECK(vf.min_abs_delta > 49.0);
}

TEST_CASE("empty support and invalid evaluation points") {
  const auto spec = DomainSpec::model_quad();
  const auto empty = BoundaryFunction::indicator(Region{});
  const auto v = cauchy_leray(spec, empty, lift_model(spec, {0.1, 0, 0}), MeasureKind::leray_levi(), rule(4));
  CHECK(v.value == cplx{});

  const auto [s, sp] = make_boxes(BoxFamily::Quad, 0.1);
  const auto f = BoundaryFunction::indicator(s);
  CHECK_THROWS_AS(cauchy_leray(spec, f, lift_model(spec, {0, 0, 0}), MeasureKind::leray_levi(), rule(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cauchy_leray(spec, BoundaryFunction::holomorphic(HoloPoly::One), {cplx{}, cplx{0, 1}},
                               MeasureKind::leray_levi(), rule(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(cauchy_leray(DomainSpec::bounded_quad(), BoundaryFunction::holomorphic(HoloPoly::One),
                               {cplx{}, cplx{0, -1}}, MeasureKind::leray_levi(), rule(4)),
                  std::invalid_argument);
}

TEST_CASE("kernel singularity guard") {
  const auto spec = DomainSpec::model_quad();
  const CPoint2 w = lift_model(spec, {0.2, 0.1, 0.0});
  const KernelSamples one{{w, holo_gradient(spec, w), cplx{1.0}}};
  CHECK_THROWS_AS(evaluate(one, w), SingularityError);
  // z on the degenerate variety of w: Delta vanishes although z != w
  const CPoint2 o{};
  const KernelSamples at0{{o, holo_gradient(spec, o), cplx{1.0}}};
  CHECK_THROWS_AS(evaluate(at0, lift_model(spec, {0, 0.3, 0})), SingularityError);
  const auto ok = evaluate(one, lift_model(spec, {0.5, 0.1, 0.0}));
  CHECK(std::isfinite(ok.value.real()));
  CHECK(ok.min_abs_delta > 0.0);
}

TEST_CASE("L^p norms") {
  const Chart q(DomainSpec::model_quad(), ChartSide::Model);
  const auto [s, sp] = make_boxes(BoxFamily::Quad, 0.1);
  const auto opt = rule(8);
  const double sig = box_measure(sp.cells(), q, MeasureKind::sigma(), opt).value.real();
  CHECK(lp_norm([](const ChartPoint&) { return 1.0; }, sp.cells(), 2.0, q, MeasureKind::sigma(), opt) ==
        Approx(std::sqrt(sig)).epsilon(1e-13));
  for (double p : {1.0, 3.0, 4.5}) {
    const double n = lp_norm([](const ChartPoint&) { return cplx{0.0, -2.5}; }, sp.cells(), p, q,
                             MeasureKind::sigma(), opt);
    CHECK(n == Approx(2.5 * std::pow(sig, 1.0 / p)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(lp_norm([](const ChartPoint&) { return 1.0; }, sp.cells(), 0.5, q, MeasureKind::sigma(), opt),
                  std::invalid_argument);
  CHECK_THROWS_AS(lp_norm([](const ChartPoint&) { return 1.0; }, sp.cells(), INFINITY, q, MeasureKind::sigma(), opt),
                  std::invalid_argument);
}

TEST_CASE("blow-up ratio grows like delta^(-1/p)") {
  const BlowupConfig cfg{};
  const auto q1 = blowup_ratio(DomainSpec::model_quad(), 0.1, {2.0}, 0.0, cfg);
  const auto q2 = blowup_ratio(DomainSpec::model_quad(), 0.05, {2.0}, 0.0, cfg);
  CHECK(q2.ratio[0] / q1.ratio[0] == Approx(std::sqrt(2.0)).epsilon(0.15));
  CHECK(q1.min_re > 0.0);
  CHECK(q1.err_est[0] < 1e-2 * q1.ratio[0]);
  CHECK(q1.ratio[0] == Approx(q1.num[0] / q1.den[0]).epsilon(1e-15));

  const auto p1 = blowup_ratio(DomainSpec::model_power(1.5), 0.1, {2.0}, 0.0, cfg);
  const auto p2 = blowup_ratio(DomainSpec::model_power(1.5), 0.05, {2.0}, 0.0, cfg);
  CHECK(p2.ratio[0] / p1.ratio[0] == Approx(std::sqrt(2.0)).epsilon(0.2));

  CHECK_THROWS_AS(blowup_ratio(DomainSpec::model_quad(), 0.1, {0.5}, 0.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(blowup_ratio(DomainSpec::bounded_quad(), 0.1, {2.0}, 0.0, cfg), std::invalid_argument);
}

TEST_CASE("blow-up ratio does not depend on the thread count") {
  BlowupConfig one{12, 6, 10, 1};
  BlowupConfig three = one;
  three.threads = 3;
  const auto a = blowup_ratio(DomainSpec::model_power(1.5), 0.1, {1.0, 2.0, 4.0}, 1.0 / 3.0, one);
  const auto b = blowup_ratio(DomainSpec::model_power(1.5), 0.1, {1.0, 2.0, 4.0}, 1.0 / 3.0, three);
  for (std::size_t i = 0; i < a.ratio.size(); ++i) {
    CHECK(a.ratio[i] == b.ratio[i]);
    CHECK(a.err_est[i] == b.err_est[i]);
  }
  CHECK(a.min_re == b.min_re);
  CHECK(a.max_abs == b.max_abs);
  CHECK(a.kernel_evals == b.kernel_evals);
}

TEST_CASE("holomorphic test polynomials") {
  const CPoint2 z{cplx{0.3, 0.2}, cplx{0.1, 1.1}};
  CHECK(eval(HoloPoly::One, z) == cplx{1.0});
  CHECK(eval(HoloPoly::Z1, z) == z.z1);
  CHECK(eval(HoloPoly::Z2, z) == z.z2);
  CHECK(eval(HoloPoly::Z1Z2, z) == z.z1 * z.z2);
  CHECK(eval(HoloPoly::Z1Sq, z) == z.z1 * z.z1);
  CHECK(rho(DomainSpec::bounded_quad(), z) == Approx(-0.8884).margin(1e-12));
}

TEST_CASE("the whole-boundary rule reproduces holomorphic data") {
  const auto spec = DomainSpec::bounded_quad();
  const PolarRule pr{24, 24, 32};
  const CPoint2 c{cplx{}, cplx{0, 1}};
  const auto one = cauchy_leray(spec, BoundaryFunction::holomorphic(HoloPoly::One), c, MeasureKind::leray_levi(), {}, pr);
  CHECK(std::abs(one.value - 1.0) < 1e-2);
  const auto z1 = cauchy_leray(spec, BoundaryFunction::holomorphic(HoloPoly::Z1), c, MeasureKind::leray_levi(), {}, pr);
  CHECK(std::abs(z1.value) < 1e-2);
  const CPoint2 z{cplx{0.3, 0.2}, cplx{0.1, 1.1}};
  const auto z2 = cauchy_leray(spec, BoundaryFunction::holomorphic(HoloPoly::Z2), z, MeasureKind::leray_levi(), {}, pr);
  CHECK(std::abs(z2.value - z.z2) < 1e-2);
}
