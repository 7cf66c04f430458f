#include <cmath>

#include "doctest.h"
#include "ginibre/finite_n.hpp"
#include "ginibre/quadrature.hpp"
#include "ginibre/specfun.hpp"

using namespace ginibre;
using namespace ginibre::finite_n;
using specfun::pi;

namespace {

// real one-point density of finite-N GinOE (droplet radius 1)
double real_density(int N, double x) {
  using namespace specfun;
  const double t = N * x * x;
  double v = std::sqrt(N / (2 * pi)) * reg_gamma_q(N - 1.0, t);
  if (x != 0)
    v += std::exp(0.5 * N * std::log(double(N)) - 0.5 * N * std::log(2.0) - ln_gamma(0.5 * N) - 0.5 * t +
                  (N - 1) * std::log(std::abs(x))) *
         reg_gamma_p(0.5 * (N - 1), 0.5 * t);
  return v;
}

// complex one-point density, full plane, w.r.t. d^2z / pi
double complex_density(int N, double x, double y) {
  using namespace specfun;
  const double ay = std::abs(y);
  return std::sqrt(2 * N * pi) * N * ay * erfc_scaled(std::sqrt(2.0 * N) * ay) *
         reg_gamma_q(N - 1.0, N * (x * x + y * y));
}

double real_mean_oracle(int N, double a) {
  quad::QuadSpec s{1e-13, 1e-12};
  return 2 * quad::integrate_1d([N](double x) { return real_density(N, x); }, 0, a, s).value;
}

double complex_mean_oracle(int N, double a) {
  quad::QuadSpec s{1e-12, 1e-11};
  // polar, upper half plane doubled; angle integral first
  auto r = quad::integrate_2d(
      [N](double r, double phi) { return r * complex_density(N, r * std::cos(phi), r * std::sin(phi)); }, 0, a, 0, pi, s);
  return 2 * r.value / pi;
}

}  // namespace

TEST_CASE("GinUE finite mean") {
  CHECK(mean_disc_ginue(7, 0).value == 0.0);
  CHECK(mean_disc_ginue(2, 1).value == doctest::Approx(2 - 4 * std::exp(-2.0)).epsilon(1e-14));
  CHECK(mean_disc_ginue(9, INFINITY).value == doctest::Approx(9).epsilon(1e-15));
  double worst = 0;
  for (int N : {2, 10, 50})
    for (int i = 0; i <= 20; ++i) {
      const double a = 0.1 * i;
      worst = std::max(worst, std::abs(mean_disc_ginue(N, a).value - mean_disc_ginue_closed(N, a)));
    }
  CHECK(worst <= 1e-10);
}

TEST_CASE("GinSE finite mean") {
  CHECK(mean_disc_ginse(4, 0).value == 0.0);
  CHECK(mean_disc_ginse(3, 10).value == doctest::Approx(3).epsilon(1e-12));
  CHECK(std::abs(mean_disc_ginse(5, 0.7).value - mean_disc_ginse_via_ginue(5, 0.7)) <= 1e-12);
  for (int N : {1, 5, 20})
    for (double a : {0.2, 0.7, 1.0, 1.3}) {
      auto h = mean_disc_ginse_hypergeometric(N, a);
      REQUIRE(h.has_value());
      CHECK(std::abs(*h - mean_disc_ginse(N, a).value) <= 1e-10);
    }
  CHECK_FALSE(mean_disc_ginse_hypergeometric(200, 2.0).has_value());
}

TEST_CASE("GinOE real mean against quadrature of the one-point density") {
  for (double a : {0.3, 1.6}) CHECK(mean_interval_ginoe_real(1, a) == doctest::Approx(std::erf(a / std::sqrt(2.0))).epsilon(1e-14));
  for (int N : {2, 3, 6, 11, 40})
    for (double a : {0.3, 0.8, 1.0, 1.6}) {
      INFO("N=" << N << " a=" << a);
      CHECK(std::abs(mean_interval_ginoe_real(N, a) - real_mean_oracle(N, a)) < 1e-10);
    }
}

TEST_CASE("GinOE complex mean against quadrature of the one-point density") {
  for (int N : {2, 3, 8, 25})
    for (double a : {0.4, 1.0, 1.5}) {
      INFO("N=" << N << " a=" << a);
      CHECK(std::abs(mean_disc_ginoe_complex(N, a) - complex_mean_oracle(N, a)) < 1e-8);
    }
}

TEST_CASE("GinOE full-plane counts") {
  CHECK(mean_interval_ginoe_real(2, INFINITY) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(mean_interval_ginoe_real(3, INFINITY) == doctest::Approx(1 + std::sqrt(2.0) / 2).epsilon(1e-12));
  for (int N : {2, 3, 4, 7, 10, 31, 50, 151}) {
    INFO("N=" << N);
    CHECK(std::abs(mean_interval_ginoe_real(N, INFINITY) - ginoe_expected_reals(N)) < 1e-10);
    const auto m = mean_disc_ginoe(N, INFINITY);
    CHECK(std::abs(m.value - N) < 1e-8);
    CHECK(std::abs(m.breakdown->real_part + m.breakdown->complex_part - m.value) < 1e-10);
  }
}

TEST_CASE("P2gamma identity") {
  for (int N : {2, 3, 6, 17, 100})
    for (double a : {0.3, 0.8, 1.2}) CHECK(std::abs(ginoe_real_leading_sum(N, a) - ginoe_real_leading_sum_gamma(N, a)) <= 1e-11);
}

TEST_CASE("GinOE asymptotics") {
  for (double a : {0.5, 2.0}) {
    const double r = mean_interval_ginoe_real(400, a) / std::sqrt(400.0);
    CHECK(r == doctest::Approx(std::sqrt(2 / pi) * std::min(a, 1.0)).epsilon(0.05));
  }
  const int N = 200;
  const double corr = 1.5 * std::sqrt(2 / pi) / std::sqrt(double(N));
  const double dev = (1 - corr) - mean_disc_ginoe_complex(N, 1) / N;
  CHECK(std::abs(dev) <= 0.15 * corr);
}

TEST_CASE("monotone in a") {
  for (auto k : {EnsembleKind::GinOE, EnsembleKind::GinUE, EnsembleKind::GinSE}) {
    double prev = -1;
    for (int i = 0; i <= 30; ++i) {
      const double v = mean_disc(k, 12, 0.05 * i).value;
      CHECK(v >= prev - 1e-12);
      CHECK(v <= 12 + 1e-9);
      prev = v;
    }
  }
}

TEST_CASE("deficit outside the droplet") {
  for (auto k : {EnsembleKind::GinOE, EnsembleKind::GinUE, EnsembleKind::GinSE}) {
    double prev_gap = 1e9;
    double ratio = 0;
    for (int N : {50, 100, 200, 400}) {
      ratio = deficit_outside(N, k) / deficit_asymptote(N, k);
      const double gap = std::abs(ratio - 1);
      CHECK(gap <= prev_gap);
      prev_gap = gap;
    }
    CHECK(ratio == doctest::Approx(1).epsilon(0.10));
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(mean_disc_ginue(0, 1), DomainError);
  CHECK_THROWS_AS(mean_disc_ginoe_complex(1, 1), DomainError);
  CHECK_THROWS_AS(mean_disc_ginse(3, -1), DomainError);
}
