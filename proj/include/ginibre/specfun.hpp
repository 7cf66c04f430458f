#pragma once

#include <cstddef>

namespace ginibre::specfun {

struct SeriesPolicy {
  double rel_tol = 1e-15;
  std::size_t max_terms = 10000;
};

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double sqrt_pi = 1.772453850905516027298167483341145182;
inline constexpr double sqrt2 = 1.414213562373095048801688724209698079;

double ln_gamma(double x);
double double_factorial(int n);
double ln_double_factorial(int n);

// log of x^s e^{-x} / Gamma(s), stable for large s
double ln_gamma_prefactor(double s, double x);

double reg_gamma_p(double s, double x);
double reg_gamma_q(double s, double x);

double erfc_scaled(double x);

// e^{-x} I_nu(x), nu in {0,1}
double bessel_i_scaled(int nu, double x);
double bessel_j(int nu, double x);
double struve_h(int nu, double x);

double hyp1f2(double a1, double b1, double b2, double z, const SeriesPolicy& policy = {});

// Li_{-m}(x)
double polylog_negorder(int m, double x);

}  // namespace ginibre::specfun
