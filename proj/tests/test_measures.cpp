#include <catch_amalgamated.hpp>

#include <cmath>

#include "leray/measures.hpp"
#include "leray/random.hpp"

using namespace leray;
using Catch::Approx;

namespace {

constexpr double kLL = 1.0 / (4.0 * pi * pi);

// t1 part of a model-chart box integral, by the substitution t = h u^q and a fine midpoint rule.
template <class F>
double oracle_t1(double h, double gamma, const F& f) {
  const double q = 1.0 / (1.0 + gamma);
  const int n = 400000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) / n;
    const double t = h * std::pow(u, q);
    s += f(t) * h * q * std::pow(u, q - 1.0);
  }
  return 2.0 * s / n;  // symmetric in t1
}

double sqrt_antideriv(double t) { return 0.5 * (t * std::sqrt(1.0 + t * t) + std::asinh(t)); }

}  // namespace

TEST_CASE("sigma density") {
  const Chart q(DomainSpec::model_quad(), ChartSide::Model);
  CHECK(sigma_density(q, {0, 0.4, -2}) == Approx(1.0).margin(1e-15));
  CHECK(sigma_density(q, {1, 0, 0}) == Approx(1.4142136).margin(1e-7));
  const Chart lower(DomainSpec::bounded_quad(), ChartSide::Lower);
  CHECK(sigma_density(lower, {0, 0, 0}) == Approx(1.0).margin(1e-15));
  CHECK_THROWS_AS(sigma_density(lower, {2, 0, 0}), ChartRangeError);
}

TEST_CASE("Leray-Levi density") {
  const Chart q(DomainSpec::model_quad(), ChartSide::Model);
  Rng rng(11);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const ChartPoint t{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    worst = std::max(worst, std::abs(leray_levi_density(q, t) - kLL));
  }
  CHECK(worst < 1e-12);
  CHECK(kLL == Approx(0.0253303).margin(1e-7));

  const Chart p(DomainSpec::model_power(1.5), ChartSide::Model);
  CHECK(leray_levi_density(p, {0.01, 0, 0}) == Approx(0.094988).margin(1e-6));
  for (double m : {1.2, 1.5, 1.8})
    for (double t1 : {-0.3, 0.02, 0.7}) {
      const Chart c(DomainSpec::model_power(m), ChartSide::Model);
      const double closed = m * (m - 1.0) * std::pow(std::abs(t1), m - 2.0) / (8.0 * pi * pi);
      CHECK(leray_levi_density(c, {t1, 0.3, -0.2}) == Approx(closed).epsilon(1e-12));
    }

  const Chart lower(DomainSpec::bounded_quad(), ChartSide::Lower);
  CHECK(leray_levi_density(lower, {0, 0, 0}) == Approx(kLL).epsilon(1e-12));
  // both sheets of a bounded boundary carry a positive density
  const Chart upper(DomainSpec::bounded_quad(), ChartSide::Upper);
  for (int i = 0; i < 200; ++i) {
    const ChartPoint t{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)};
    if (!lower.contains(t)) continue;
    CHECK(leray_levi_density(lower, t) > 0.0);
    CHECK(leray_levi_density(upper, t) > 0.0);
  }
}

TEST_CASE("mu_a density") {
  Rng rng(12);
  const Chart q(DomainSpec::model_quad(), ChartSide::Model);
  const Chart p(DomainSpec::model_power(1.5), ChartSide::Model);
  for (int i = 0; i < 100; ++i) {
    const ChartPoint t{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    CHECK(mu_a_density(q, t, 0.0) == sigma_density(q, t));
    CHECK(mu_a_density(p, t, 0.0) == sigma_density(p, t));
    CHECK(mu_a_density(q, t, 1.0) == Approx(4.0 * pi * pi * leray_levi_density(q, t)).epsilon(1e-13));
    CHECK(mu_a_density(p, t, 1.0) == Approx(4.0 * pi * pi * leray_levi_density(p, t)).epsilon(1e-13));
    // quadratic model: 4 pi^2 lambda = 1, so mu_a = sigma^(1 - a)
    CHECK(mu_a_density(q, t, 1.0 / 3.0) == Approx(std::pow(sigma_density(q, t), 2.0 / 3.0)).epsilon(1e-13));
  }
}

TEST_CASE("transport normalization exponents") {
  CHECK(transport_normalization(DomainSpec::scaled_quad(0.1), MeasureKind::transported_ll(0.1)) == 4.0);
  CHECK(transport_normalization(DomainSpec::scaled_quad(0.1), MeasureKind::transported_mu(0.5, 0.1)) == 4.0);
  CHECK(transport_normalization(DomainSpec::scaled_power(1.5, 0.1), MeasureKind::transported_ll(0.1)) == 3.0);
  CHECK(transport_normalization(DomainSpec::scaled_power(1.5, 0.1), MeasureKind::transported_mu(1.0 / 3.0, 0.1)) ==
        Approx(3.5 - 0.5 / 3.0));
}

TEST_CASE("transported densities approach the model densities") {
  const ChartPoint t{0.3, 0.2, 0.1};
  const auto sq = DomainSpec::scaled_quad(1e-4);
  CHECK(transported_density(sq, t, MeasureKind::transported_ll(1e-4)) == Approx(kLL).epsilon(1e-6));
  CHECK(transported_density(sq, {0, 0, 0}, MeasureKind::transported_ll(1e-4)) == Approx(kLL).epsilon(1e-12));
  CHECK(transported_density(sq, t, MeasureKind::transported_mu(0.0, 1e-4)) == Approx(1.0).epsilon(1e-6));

  // the y1 term of the power family decays only like eps^(2 - m)
  const double m = 1.5;
  const auto sp = DomainSpec::scaled_power(m, 1e-10);
  const Chart model(DomainSpec::model_power(m), ChartSide::Model);
  CHECK(transported_density(sp, t, MeasureKind::transported_ll(1e-10)) ==
        Approx(leray_levi_density(model, t)).epsilon(1e-4));
  // the sigma factor flattens to 1 in the limit; the Levi factor survives
  CHECK(transported_density(sp, t, MeasureKind::transported_mu(1.0 / 3.0, 1e-10)) ==
        Approx(std::pow(4.0 * pi * pi * leray_levi_density(model, t), 1.0 / 3.0)).epsilon(1e-4));

  CHECK_THROWS_AS(transported_density(DomainSpec::model_quad(), t, MeasureKind::transported_ll(0.1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(transported_density(sq, t, MeasureKind::leray_levi()), std::invalid_argument);
  CHECK_THROWS_AS(transported_density(sq, t, MeasureKind::transported_ll(0.2)), std::invalid_argument);
}

TEST_CASE("box measures on the quadratic model") {
  const Chart q(DomainSpec::model_quad(), ChartSide::Model);
  const double a = 1.0 / 12.0;
  for (double d : {0.2, 0.1, 0.05, 0.025}) {
    const auto [s, sp] = make_boxes(BoxFamily::Quad, d, a);
    const double lam = box_measure(s, q, MeasureKind::leray_levi()).value.real();
    CHECK(lam == Approx((2 * a * d * d) * (2 * a * d * d) / (4 * pi * pi)).epsilon(1e-12));
    CHECK(lam / std::pow(d, 4) == Approx(a * a / (pi * pi)).epsilon(1e-12));

    const double sig = box_measure(s, q, MeasureKind::sigma()).value.real();
    CHECK(sig == Approx(2 * s.h3 * 2 * s.h2 * 2 * sqrt_antideriv(s.h1)).epsilon(1e-12));

    const double sigp = box_measure(sp, q, MeasureKind::sigma()).value.real();
    const double exact = 2.0 * (2 * sp.h3) * (2 * sp.h2) * (sqrt_antideriv(2 * d) - sqrt_antideriv(d));
    CHECK(sigp == Approx(exact).epsilon(1e-12));
  }
  const auto [s, sp] = make_boxes(BoxFamily::Quad, 0.1, a);
  CHECK(box_measure(s, q, MeasureKind::leray_levi()).value.real() == Approx(7.0364e-8).epsilon(1e-4));
  // slab volume 3.3333e-4; the sqrt(1 + t1^2) factor adds about 1.2 %
  const double sigp = box_measure(sp, q, MeasureKind::sigma()).value.real();
  CHECK(sigp / 3.3333e-4 == Approx(1.0117).margin(5e-4));
}

TEST_CASE("box measures on the power model") {
  const double m = 1.5, a = 1.0 / 12.0;
  const Chart p(DomainSpec::model_power(m), ChartSide::Model);
  std::vector<double> scaled;
  for (double d : {0.2, 0.1, 0.05, 0.025}) {
    const auto [s, sp] = make_boxes(BoxFamily::Power, d, a, m);
    const double lam = box_measure(s, p, MeasureKind::leray_levi()).value.real();
    // lambda = m (m - 1) |t1|^(m - 2) / (8 pi^2): integral over |t1| <= h1 is 2 h1^(m - 1) m / (8 pi^2)
    const double exact = 2.0 * m * std::pow(s.h1, m - 1.0) / (8.0 * pi * pi) * (2 * s.h2) * (2 * s.h3);
    CHECK(lam == Approx(exact).epsilon(1e-10));
    scaled.push_back(lam / std::pow(d, 2 * m));

    for (double am : {1.0 / 3.0, 1.0}) {
      const double gamma = (m - 2.0) * am;
      const double v = box_measure(s, p, MeasureKind::mu(am)).value.real();
      const double o = oracle_t1(s.h1, gamma, [&](double t) {
                         const double g = 0.5 * m * std::pow(t, m - 1.0);
                         const double sig = std::sqrt(1.0 + g * g);
                         return std::pow(0.5 * m * (m - 1.0) * std::pow(t, m - 2.0) / sig, am) * sig;
                       }) *
                       (2 * s.h2) * (2 * s.h3);
      INFO("delta = " << d << ", a = " << am);
      CHECK(v == Approx(o).epsilon(1e-6));
    }
  }
  for (double v : scaled) CHECK(v == Approx(scaled.front()).epsilon(0.1));

  const auto [s, sp] = make_boxes(BoxFamily::Power, 0.1, a, m);
  // a = 2 makes |t1|^(2 (m - 2)) = |t1|^-1 non-integrable
  CHECK_THROWS_AS(box_measure(s, p, MeasureKind::mu(2.0)), std::domain_error);
}

TEST_CASE("measure kind bookkeeping") {
  CHECK(MeasureKind::sigma().levi_power() == 0.0);
  CHECK(MeasureKind::leray_levi().levi_power() == 1.0);
  CHECK(MeasureKind::mu(0.25).levi_power() == 0.25);
  CHECK(MeasureKind::transported_mu(0.25, 0.1).base().kind == MeasureKind::Kind::MuA);
  CHECK(MeasureKind::transported_ll(0.1).base().kind == MeasureKind::Kind::LerayLevi);
  CHECK(MeasureKind::transported_ll(0.1).name() == "transported-leray-levi");
}
