#include "ginibre/verify.hpp"

#include <cmath>
#include <functional>

#include "ginibre/finite_n.hpp"
#include "ginibre/origin.hpp"
#include "ginibre/planar_fcs.hpp"
#include "ginibre/specfun.hpp"

namespace ginibre::verify {

using namespace specfun;

namespace {

// worst |f| over the points; a thrown error counts as a failure
double worst(const std::vector<double>& pts, const std::function<double(double)>& f) {
  double w = 0;
  for (double x : pts) w = std::max(w, std::abs(f(x)));
  return w;
}

std::vector<double> grid(double lo, double step, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(lo + step * i);
  return v;
}

}  // namespace

std::vector<Check> identity_suite(const Options& opt) {
  std::vector<Check> out;
  auto add = [&](const std::string& name, double tol, const std::function<double()>& residual) {
    Check c{name, NAN, tol, false};
    try {
      c.residual = residual();
      c.pass = c.residual <= tol;
    } catch (const std::exception&) {
      c.pass = false;
    }
    out.push_back(c);
  };

  const auto R_fine = grid(0.1, 0.1, 100);
  const double d = opt.perturb_i1;
  auto ginue_closed = [d](double R) {
    const double x = 2 * R * R;
    return R * R * (bessel_i_scaled(0, x) + bessel_i_scaled(1, x) * (1 + d));
  };

  add("ginue_origin_variance_series_vs_closed", 1e-10, [&] {
    return worst(R_fine, [&](double R) { return origin::var_origin_ginue_series(R) - ginue_closed(R); });
  });
  add("ginue_origin_variance_shirai_vs_closed", 1e-9, [&] {
    return worst({0.5, 1, 3}, [&](double R) { return origin::var_origin_ginue_shirai(R) - ginue_closed(R); });
  });
  add("ginue_origin_variance_derivative", 1e-5, [&] {
    const double h = 1e-5;
    return worst({0.5, 1, 3}, [&](double R) {
      return (ginue_closed(R + h) - ginue_closed(R - h)) / (2 * h) - origin::var_origin_ginue_derivative(R);
    });
  });
  add("ginue_origin_variance_ode", 1e-5, [&] {
    const double h = 1e-4;
    return worst({0.5, 1, 2}, [&](double R) {
      const double c = ginue_closed(R);
      const double d1 = (ginue_closed(R + h) - ginue_closed(R - h)) / (2 * h);
      const double d2 = (ginue_closed(R + h) - 2 * c + ginue_closed(R - h)) / (h * h);
      return c - (d2 / 8 + (R - 1 / (8 * R)) * d1);
    });
  });
  add("ginse_origin_variance_series_vs_bessel", 1e-9, [&] {
    return worst(R_fine, [](double R) { return origin::var_origin_ginse_series(R) - origin::var_origin_ginse(R); });
  });
  add("ginse_origin_variance_series_vs_struve", 1e-9, [&] {
    return worst(R_fine, [](double R) { return origin::var_origin_ginse_series(R) - origin::var_origin_ginse_struve(R); });
  });
  add("ginse_origin_variance_bessel_vs_struve", 1e-9, [&] {
    return worst(R_fine, [](double R) { return origin::var_origin_ginse(R) - origin::var_origin_ginse_struve(R); });
  });
  add("ginse_odd_pair_cross_identity", 1e-9, [&] {
    return worst({0.3, 0.5, 1, 2, 4}, [](double R) { return origin::ginse_odd_pair_series(R) - origin::ginse_odd_pair_closed(R); });
  });
  add("ginoe_real_leading_sum_gamma_form", 1e-11, [] {
    return finite_n::ginoe_real_leading_sum(6, 0.8) - finite_n::ginoe_real_leading_sum_gamma(6, 0.8);
  });
  add("ginse_finite_mean_via_ginue", 1e-12, [] {
    return finite_n::mean_disc_ginse(5, 0.7).value - finite_n::mean_disc_ginse_via_ginue(5, 0.7);
  });
  add("ginse_finite_mean_hypergeometric", 1e-10, [] {
    return *finite_n::mean_disc_ginse_hypergeometric(20, 0.9) - finite_n::mean_disc_ginse(20, 0.9).value;
  });
  add("ginue_finite_mean_closed_form", 1e-10, [] {
    return worst({0.3, 0.8, 1.0, 1.4}, [](double a) {
      return finite_n::mean_disc_ginue(50, a).value - finite_n::mean_disc_ginue_closed(50, a);
    });
  });
  add("ginoe_expected_reals", 1e-10, [] {
    return worst({2, 3, 10, 31}, [](double N) {
      return finite_n::mean_interval_ginoe_real(int(N), INFINITY) - finite_n::ginoe_expected_reals(int(N));
    });
  });
  add("ginoe_full_plane_count", 1e-8, [] {
    return worst({4, 9}, [](double N) { return finite_n::mean_disc_ginoe(int(N), INFINITY).value - N; });
  });
  add("ginoe_real_variance_kernel_oracle", 1e-7, [] {
    return worst({0.5, 1, 2}, [](double R) {
      return origin::var_origin_ginoe_real(R) - origin::ginoe_origin_kernel_oracle(R, origin::KernelCheck::RealReal);
    });
  });
  add("ginoe_complex_connected_kernel_oracle", 1e-6, [] {
    return origin::ginoe_origin_kernel_oracle(1, origin::KernelCheck::ComplexConnected) -
           4 * origin::ginoe_pair_integrals(1).connected();
  });
  add("ginoe_variance_decomposition", 1e-9, [] {
    return worst({0.5, 2}, [](double R) {
      const auto v = origin::var_origin_ginoe(R);
      return v.total - (v.var_real + 2 * v.covariance + v.var_complex);
    });
  });
  add("bulk_kappa2", 1e-8, [] { return planar::cumulant_bulk_limit(2) - 1 / std::sqrt(2 * pi); });
  add("bulk_kappa3_vanishes", 1e-12, [] { return planar::cumulant_bulk_limit(3); });
  add("ginse_origin_cumulant2_vs_variance", 1e-10, [] {
    return planar::cumulant_origin_ginse(1, 2) - origin::var_origin_ginse(1);
  });
  add("beta2_gaussian_kappa2_vs_ginue_origin", 1e-8, [&] {
    const int N = 200;
    const auto t = planar::moment_table(planar::ginue_gaussian(), N, 2, 1 / std::sqrt(double(N)));
    return planar::cumulant_finite(t, 2).value - ginue_closed(1);
  });
  return out;
}

}  // namespace ginibre::verify
