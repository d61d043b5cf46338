#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "astronet/gap_junction.hpp"
#include "astronet/params.hpp"


using namespace astronet;

namespace {

const GapJunctionParams kGj = preset(Scenario::Healthy).gj;

// Stationary point of the two balance equations by Cramer's rule:
//   (b1 + a1) x + b1 y = b1
//   b2 x + (b2 + a2) y = b2
GjProbabilities cramer_stationary(double v, const GapJunctionParams& p) {
  const auto r = gj_rates(v, p);
  const double a11 = r.beta1 + r.alpha1, a12 = r.beta1, a21 = r.beta2, a22 = r.beta2 + r.alpha2;
  const double det = a11 * a22 - a12 * a21;
  const double x = (r.beta1 * a22 - a12 * r.beta2) / det;
  const double y = (a11 * r.beta2 - a21 * r.beta1) / det;
  return {1.0 - x - y, x, y};
}

}  // namespace

TEST_SUITE("gap_junction") {
  TEST_CASE("rates at the reference voltages") {
    const auto at_v0 = gj_rates(kGj.v0, kGj);
    CHECK(at_v0.alpha1 == doctest::Approx(kGj.lambda));
    CHECK(at_v0.beta1 == doctest::Approx(kGj.lambda));
    const auto at_minus = gj_rates(-kGj.v0, kGj);
    CHECK(at_minus.alpha2 == doctest::Approx(kGj.lambda));
    CHECK(at_minus.beta2 == doctest::Approx(kGj.lambda));
    GapJunctionParams flat = kGj;
    flat.a_alpha = flat.a_beta = 0.0;
    for (double v : {-80.0, 0.0, 35.0}) {
      const auto r = gj_rates(v, flat);
      CHECK(r.alpha1 == flat.lambda);
      CHECK(r.alpha2 == flat.lambda);
      CHECK(r.beta1 == flat.lambda);
      CHECK(r.beta2 == flat.lambda);
    }
  }

  TEST_CASE("rates are positive and log-linear in the junctional voltage") {
    const auto ref = gj_rates(kGj.v0, kGj);
    for (double v = -100.0; v <= 100.0; v += 12.5) {
      const auto r = gj_rates(v, kGj);
      CHECK(r.alpha1 > 0.0);
      CHECK(r.alpha2 > 0.0);
      CHECK(r.beta1 > 0.0);
      CHECK(r.beta2 > 0.0);
      CHECK(std::log(r.alpha1) - std::log(ref.alpha1) == doctest::Approx(-kGj.a_alpha * (v - kGj.v0)));
      CHECK(std::log(r.beta1) - std::log(ref.beta1) == doctest::Approx(kGj.a_beta * (v - kGj.v0)));
    }
  }

  TEST_CASE("stationary point matches the linear solve and is fixed under stepping") {
    for (double v : {-60.0, -10.0, 0.0, 25.0, 90.0}) {
      const auto s = gj_stationary(v, kGj);
      const auto c = cramer_stationary(v, kGj);
      CHECK(s.p_hh == doctest::Approx(c.p_hh).epsilon(1e-12));
      CHECK(s.p_hl == doctest::Approx(c.p_hl).epsilon(1e-12));
      CHECK(s.p_lh == doctest::Approx(c.p_lh).epsilon(1e-12));
      const auto next = gj_step(s, v, 0.37, kGj);
      CHECK(std::abs(next.p_hh - s.p_hh) < 1e-9);
      CHECK(std::abs(next.p_hl - s.p_hl) < 1e-9);
      CHECK(std::abs(next.p_lh - s.p_lh) < 1e-9);
    }
  }

  TEST_CASE("zero step is the identity") {
    const GjProbabilities p{0.5, 0.3, 0.2};
    CHECK(gj_step(p, 40.0, 0.0, kGj) == p);
  }

  TEST_CASE("one Euler sub-step from fully open") {
    const double v = 10.0;
    const auto r = gj_rates(v, kGj);
    const double fastest = std::max({r.alpha1, r.alpha2, r.beta1 + r.beta2});
    const double h = 0.25 / fastest;
    const auto out = gj_step({1.0, 0.0, 0.0}, v, h, kGj);
    CHECK(out.p_hl == doctest::Approx(r.beta1 * h).epsilon(1e-12));
    CHECK(out.p_lh == doctest::Approx(r.beta2 * h).epsilon(1e-12));
    CHECK(out.p_hh == doctest::Approx(1.0 - (r.beta1 + r.beta2) * h).epsilon(1e-12));
  }

  TEST_CASE("stepping preserves normalization for any voltage and step") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
      const double a = u(rng), b = u(rng) * (1.0 - a);
      const GjProbabilities p{1.0 - a - b, a, b};
      const double v = -100.0 + 200.0 * u(rng);
      const double dt = std::pow(10.0, -4.0 + 5.0 * u(rng));
      const auto q = gj_step(p, v, dt, kGj);
      CHECK(std::abs(q.p_hh + q.p_hl + q.p_lh - 1.0) <= 1e-9);
      for (double x : {q.p_hh, q.p_hl, q.p_lh}) {
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
      }
    }
  }

  TEST_CASE("iterated steps converge to the stationary distribution") {
    for (double v : {-50.0, 0.0, 60.0}) {
      GjProbabilities p{1.0, 0.0, 0.0};
      const auto r = gj_rates(v, kGj);
      const double slowest = std::min({r.alpha1, r.alpha2});
      const double horizon = 40.0 / slowest;
      for (int i = 0; i < 400; ++i) p = gj_step(p, v, horizon / 400.0, kGj);
      const auto c = cramer_stationary(v, kGj);
      CHECK(std::abs(p.p_hl - c.p_hl) < 1e-9);
      CHECK(std::abs(p.p_lh - c.p_lh) < 1e-9);
    }
  }

  TEST_CASE("sampling a degenerate distribution") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) CHECK(gj_sample({1.0, 0.0, 0.0}, rng) == GjState::HH);
    CHECK(gj_sample({0.0, 1.0, 0.0}, 0.0) == GjState::HL);
    CHECK(gj_sample({0.0, 0.0, 1.0}, 0.999) == GjState::LH);
  }

  TEST_CASE("uniform sampling frequencies within three binomial sigma") {
    std::mt19937_64 rng(2024);
    const GjProbabilities p{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    constexpr int n = 100000;
    std::array<int, 3> counts{};
    for (int i = 0; i < n; ++i) ++counts[static_cast<int>(gj_sample(p, rng))];
    const double sigma = std::sqrt(n * (1.0 / 3.0) * (2.0 / 3.0));
    for (int c : counts) CHECK(std::abs(c - n / 3.0) < 3.0 * sigma);
  }

  TEST_CASE("seeded sampling is reproducible") {
    const GjProbabilities p{0.6, 0.25, 0.15};
    std::mt19937_64 a(99), b(99);
    for (int i = 0; i < 500; ++i) CHECK(gj_sample(p, a) == gj_sample(p, b));
  }
}
