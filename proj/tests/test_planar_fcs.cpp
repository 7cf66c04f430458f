#include <cmath>

#include "doctest.h"
#include "ginibre/expr.hpp"
#include "ginibre/origin.hpp"
#include "ginibre/planar_fcs.hpp"
#include "ginibre/specfun.hpp"

using namespace ginibre;
using namespace ginibre::planar;
using specfun::pi;

TEST_CASE("expression parser") {
  CHECK(Expression::parse("2*r^2")(3) == 18);
  CHECK(Expression::parse("-r^2")(2) == -4);
  CHECK(Expression::parse("2^3^2")(0) == 512);
  CHECK(Expression::parse(" exp( log(r) * 2 ) - 1/4 ")(3) == doctest::Approx(8.75));
  CHECK(Expression::parse("(1+r)*(1-r)")(0.5) == 0.75);
  CHECK(Expression::parse("1.5e1 + .5")(0) == 15.5);
  CHECK_THROWS_AS(Expression::parse("2*x"), DomainError);
  CHECK_THROWS_AS(Expression::parse("(r+1"), DomainError);
  CHECK_THROWS_AS(Expression::parse("r r"), DomainError);
  CHECK_THROWS_AS(Expression::parse(""), DomainError);
}

TEST_CASE("builtin potentials") {
  const auto g = ginse_gaussian();
  CHECK(g.g(1, 10) == 2);
  CHECK(g.g_prime(1, 10) == 4);
  CHECK(g.quarter_laplacian(0.5, 10) == 2);
  CHECK(suitability_warnings(g, 10).empty());
  CHECK_FALSE(suitability_warnings(ginue_gaussian(), 10).empty());  // g'(1) = 2

  const auto tu = truncated_unitary(0.2);
  CHECK(tu.support_cutoff == doctest::Approx(std::sqrt(1.2)));
  CHECK(std::isinf(tu.g(std::sqrt(1.2), 5)));
  CHECK(tu.g_prime(1, 5) == doctest::Approx(4));
  CHECK(tu.quarter_laplacian(1, 5) == doctest::Approx(2 * 1.2 / 0.2));
  CHECK(suitability_warnings(tu, 5).empty());

  const auto ml = mittag_leffler(2, 1, 0);
  for (double r : {0.1, 0.7, 1.3}) {
    CHECK(ml.g(r, 7) == doctest::Approx(g.g(r, 7)));
    CHECK(ml.quarter_laplacian(r, 7) == doctest::Approx(2));
  }
  // log term is harmonic
  const auto ml2 = mittag_leffler(2, 1, 0.5);
  CHECK(ml2.quarter_laplacian(0.6, 9) == doctest::Approx(2).epsilon(1e-12));

  CHECK_THROWS_AS(mittag_leffler(0, 1, 0), DomainError);
  CHECK_THROWS_AS(mittag_leffler(1, 1, -1), DomainError);
  CHECK_THROWS_AS(truncated_unitary(0), DomainError);
  CHECK_THROWS_AS(builtin_potential("nope"), DomainError);

  const auto cu = custom_potential("2*r^2", "4*r", "4");
  CHECK(cu.g(1.5, 3) == 4.5);
}

TEST_CASE("Gaussian moment table against the regularised gamma") {
  const int N = 10;
  const double a = 0.6;
  const auto t = moment_table(ginse_gaussian(), N, 4, a);
  for (int j = 0; j < N; ++j) {
    INFO("j=" << j);
    CHECK(std::abs(t.L[j] - specfun::reg_gamma_p(2 * j + 2.0, 2.0 * N * a * a)) <= 1e-10);
    CHECK(std::abs(t.L[j] + t.M[j] - 1) <= 1e-12);
    // h_j = Gamma(k+1) / (2N)^(k+1) with k = 2j+1
    const int k = t.index[j];
    CHECK(t.log_h[j] == doctest::Approx(specfun::ln_gamma(k + 1.0) - (k + 1) * std::log(2.0 * N)).epsilon(1e-12));
  }
  for (int j = 1; j < N; ++j) CHECK(t.L[j] <= t.L[j - 1]);
  // far tails keep relative accuracy
  const auto tt = moment_table(ginse_gaussian(), 40, 4, 0.2);
  CHECK(tt.L[39] == doctest::Approx(specfun::reg_gamma_p(80.0, 2.0 * 40 * 0.04)).epsilon(1e-9));
  const auto tb = moment_table(ginue_gaussian(), 30, 2, 0.9);
  for (int j = 0; j < 30; ++j) CHECK(std::abs(tb.L[j] - specfun::reg_gamma_p(j + 1.0, 30 * 0.81)) <= 1e-10);
}

TEST_CASE("moment table limits") {
  const auto z = moment_table(ginse_gaussian(), 6, 4, 0);
  CHECK(z.L.maxCoeff() == 0.0);
  CHECK(z.M.minCoeff() == 1.0);
  const auto f = moment_table(ginse_gaussian(), 6, 4, INFINITY);
  CHECK(f.L.minCoeff() == 1.0);
  const auto tu = moment_table(truncated_unitary(0.2), 6, 4, 2.0);
  CHECK(tu.L.minCoeff() == 1.0);
  CHECK(tu.M.maxCoeff() == 0.0);
  CHECK_THROWS_AS(moment_table(ginse_gaussian(), 0, 4, 1), DomainError);
  CHECK_THROWS_AS(moment_table(ginse_gaussian(), 3, 3, 1), DomainError);
}

TEST_CASE("Mittag-Leffler(2,1,0) reproduces the Gaussian table") {
  for (int N : {5, 40})
    for (double a : {0.3, 0.9, 1.1}) {
      const auto g = moment_table(ginse_gaussian(), N, 4, a);
      const auto m = moment_table(mittag_leffler(2, 1, 0), N, 4, a);
      CHECK((g.L - m.L).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((g.log_h - m.log_h).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(std::abs(scaled_cumulant(ginse_gaussian(), N, a, 2).value -
                     scaled_cumulant(mittag_leffler(2, 1, 0), N, a, 2).value) <= 1e-10);
    }
}

TEST_CASE("truncated unitary respects the wall") {
  const auto tu = truncated_unitary(0.2);
  const auto t = moment_table(tu, 20, 4, 1.0);
  for (int j = 0; j < 20; ++j) CHECK(std::abs(t.L[j] + t.M[j] - 1) <= 1e-12);
  // custom potential written out by hand gives the same table
  const auto cu = custom_potential("-0.4*log(1 - r^2/1.2)", "0.8*r/(1.2 - r^2)", "0.8*(1.2 + r^2)/(1.2 - r^2)^2",
                                   std::sqrt(1.2));
  const auto tc = moment_table(cu, 20, 4, 1.0);
  CHECK((t.L - tc.L).cwiseAbs().maxCoeff() <= 1e-11);
}

TEST_CASE("mgf") {
  const auto t = moment_table(ginse_gaussian(), 8, 4, 0.5);
  CHECK(mgf(t, 0) == 1.0);
  const double h = 1e-4;
  const double d = (log_mgf(t, h) - log_mgf(t, -h)) / (2 * h);
  CHECK(std::abs(d - t.L.sum()) <= 1e-6);

  // exhaustive Bernoulli lattice, N = 3
  const auto s = moment_table(ginse_gaussian(), 3, 4, 0.8);
  double brute = 0;
  for (int mask = 0; mask < 8; ++mask) {
    double pr = 1;
    int n = 0;
    for (int j = 0; j < 3; ++j) {
      const bool in = mask >> j & 1;
      pr *= in ? s.L[j] : s.M[j];
      n += in;
    }
    brute += pr * std::exp(1.0 * n);
  }
  CHECK(mgf(s, 1.0) == doctest::Approx(brute).epsilon(1e-14));
}

TEST_CASE("cumulants from the mgf") {
  const auto t = moment_table(ginse_gaussian(), 12, 4, 0.7);
  // Richardson on central differences of log mgf
  auto deriv = [&](int p, double h) {
    auto K = [&](double u) { return log_mgf(t, u); };
    switch (p) {
      case 1: return (K(h) - K(-h)) / (2 * h);
      case 2: return (K(h) - 2 * K(0) + K(-h)) / (h * h);
      case 3: return (K(2 * h) - 2 * K(h) + 2 * K(-h) - K(-2 * h)) / (2 * h * h * h);
      default: return (K(2 * h) - 4 * K(h) + 6 * K(0) - 4 * K(-h) + K(-2 * h)) / (h * h * h * h);
    }
  };
  for (int p = 1; p <= 4; ++p) {
    const double h = 1e-3 * (p > 2 ? 8 : 1);
    const double rich = (4 * deriv(p, h / 2) - deriv(p, h)) / 3;
    const double k = cumulant_finite(t, p).value;
    INFO("p=" << p);
    CHECK(std::abs(rich - k) <= 1e-5 * std::abs(k));
  }
}

TEST_CASE("finite-N cumulant identities") {
  const auto t = moment_table(ginse_gaussian(), 20, 4, 0.7);
  CHECK(std::abs(cumulant_finite(t, 2).value - t.L.cwiseProduct(t.M).sum()) <= 1e-12);
  CHECK(cumulant_finite(t, 1).value == doctest::Approx(t.L.sum()));
  const auto f = moment_table(ginse_gaussian(), 20, 4, INFINITY);
  CHECK(cumulant_finite(f, 3).value == 0.0);
  CHECK(cumulant_finite(f, 1).value == 20.0);
  const auto s = moment_table(ginse_gaussian(), 5, 4, 0.02);
  const double k1 = cumulant_finite(s, 1).value;
  for (int p = 2; p <= 4; ++p) CHECK(cumulant_finite(s, p).value / k1 == doctest::Approx(1).epsilon(0.05));
  // boundary case L = 1 contributes nothing
  const auto tu = moment_table(truncated_unitary(0.2), 4, 4, 5.0);
  for (int p = 2; p <= 5; ++p) CHECK(cumulant_finite(tu, p).value == 0.0);
}

TEST_CASE("beta = 2 Gaussian variance against the GinUE series") {
  const int N = 200;
  const double R = 1, a = R / std::sqrt(double(N));
  const auto t = moment_table(ginue_gaussian(), N, 2, a);
  double s = 0;
  for (int j = 1; j <= N; ++j) s += specfun::reg_gamma_p(j, R * R) * specfun::reg_gamma_q(j, R * R);
  CHECK(std::abs(cumulant_finite(t, 2).value - s) <= 1e-8);
  CHECK(std::abs(cumulant_finite(t, 2).value - origin::var_origin_ginue(R)) <= 1e-8);
}

TEST_CASE("bulk and edge limits") {
  CHECK(cumulant_bulk_limit(2) == doctest::Approx(1 / std::sqrt(2 * pi)).epsilon(1e-12));
  for (int p : {3, 5, 7}) CHECK(std::abs(cumulant_bulk_limit(p)) <= 1e-12);
  for (int p : {2, 3, 4, 5})
    for (double x : {0.3, 1.7, 5.0}) CHECK(limit_integrand(p, x) == doctest::Approx((p % 2 ? -1 : 1) * limit_integrand(p, -x)).epsilon(1e-12));
  CHECK(std::abs(cumulant_edge_limit(2, 8) - cumulant_bulk_limit(2)) <= 1e-8);
  CHECK(std::abs(cumulant_edge_limit(4, 8) - cumulant_bulk_limit(4)) <= 1e-8);
  CHECK(std::abs(cumulant_edge_limit(3, -9)) <= 1e-10);
  // envelope used for truncation
  for (int p = 2; p <= 6; ++p)
    for (double x = 4; x <= 10; x += 0.25)
      for (double y : {x, -x}) {
        INFO("p=" << p << " x=" << y);
        CHECK(std::abs(limit_integrand(p, y)) <= 2 * std::erfc(x) * std::tgamma(p));
      }
}

TEST_CASE("scaled cumulants approach the universal limits") {
  const auto g = ginse_gaussian();
  const auto k2 = scaled_cumulant(g, 400, 0.5, 2);
  CHECK(k2.value / *k2.limit == doctest::Approx(1).epsilon(0.05));
  CHECK(k2.scale_factor == doctest::Approx(std::sqrt(2.0 / (400 * 2))));
  const auto k4 = scaled_cumulant(g, 400, 0.5, 4);
  CHECK(k4.value / *k4.limit == doctest::Approx(1).epsilon(0.10));
  const auto tu = scaled_cumulant(truncated_unitary(0.2), 200, 0.5, 2);
  CHECK(tu.value / *tu.limit == doctest::Approx(1).epsilon(0.10));
  const auto e = scaled_cumulant_edge(g, 400, 1.0, 2);
  CHECK(e.value / *e.limit == doctest::Approx(1).epsilon(0.05));
  CHECK(edge_radius(g, 400, 0) == 1.0);
}

TEST_CASE("GinSE origin cumulants") {
  CHECK(std::abs(cumulant_origin_ginse(1, 2) - origin::var_origin_ginse(1)) <= 1e-10);
  CHECK(std::abs(cumulant_origin_ginse(2.5, 2) - origin::var_origin_ginse(2.5)) <= 1e-10);
  CHECK(std::abs(cumulant_origin_ginse(1.3, 1) - origin::mean_origin(EnsembleKind::GinSE, 1.3).value) <= 1e-10);
  const double k1 = cumulant_origin_ginse(0.05, 1);
  for (int p = 2; p <= 4; ++p) CHECK(cumulant_origin_ginse(0.05, p) / k1 == doctest::Approx(1).epsilon(0.05));
  CHECK(cumulant_origin_ginse(0, 3) == 0.0);
}
