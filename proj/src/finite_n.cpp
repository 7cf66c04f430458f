#include "ginibre/finite_n.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ginibre/quadrature.hpp"
#include "ginibre/specfun.hpp"

namespace ginibre::finite_n {

using namespace specfun;

namespace {

constexpr double ln2 = 0.693147180559945309417232121458176568;

void require_n(int N, int min) {
  if (N < min) throw DomainError("finite_n: N must be >= " + std::to_string(min));
}

void require_a(double a) {
  if (!(a >= 0)) throw DomainError("finite_n: a must be >= 0");
}

double ginue_series(int N, double a) {
  const double x = N * a * a;
  double s = 0;
  for (int k = 0; k < N; ++k) s += reg_gamma_p(k + 1.0, x);
  return s;
}

}  // namespace

double mean_disc_ginue_closed(int N, double a) {
  require_n(N, 1);
  require_a(a);
  const double x = N * a * a;
  if (std::isinf(x)) return N;
  const double tail = x == 0 ? 0.0 : std::exp(ln_gamma_prefactor(N, x));
  return x + N * (1 - a * a) * reg_gamma_p(N, x) - tail;
}

FiniteMeanResult mean_disc_ginue(int N, double a) {
  require_n(N, 1);
  require_a(a);
  const double v = ginue_series(N, a);
  const double x = N * a * a;
  if (x < 1e6) {
    const double c = mean_disc_ginue_closed(N, a);
    if (std::abs(c - v) > 1e-10 * std::max(1.0, x))
      throw ConsistencyError("mean_disc_ginue: series and closed form disagree");
  }
  return {v, std::nullopt};
}

FiniteMeanResult mean_disc_ginse(int N, double a) {
  require_n(N, 1);
  require_a(a);
  const double y = 2.0 * N * a * a;
  double s = 0;
  for (int k = 0; k < N; ++k) s += reg_gamma_p(2 * k + 2.0, y);
  if (auto h = mean_disc_ginse_hypergeometric(N, a)) {
    if (std::abs(*h - s) > 1e-9 * std::max(1.0, y))
      throw ConsistencyError("mean_disc_ginse: series and hypergeometric form disagree");
  }
  return {s, std::nullopt};
}

double mean_disc_ginse_via_ginue(int N, double a) {
  require_n(N, 1);
  require_a(a);
  const double y = 2.0 * N * a * a;
  double tail = 0;
  if (y > 0 && std::isfinite(y))
    for (int k = 0; k < N; ++k) tail += std::exp(ln_gamma_prefactor(2 * k + 1.0, y)) / (2 * k + 1.0);
  return 0.5 * ginue_series(2 * N, a) - 0.5 * tail;
}

std::optional<double> mean_disc_ginse_hypergeometric(int N, double a) {
  require_n(N, 1);
  require_a(a);
  const double y = 2.0 * N * a * a;
  if (y > 600) return std::nullopt;
  if (y == 0) return 0.0;
  const double sinh_part = -0.5 * std::expm1(-2 * y);  // e^{-y} sinh y
  const double lead = std::exp(ln_gamma_prefactor(2 * N + 1.0, y)) / (2 * N + 1.0);
  const double F = hyp1f2(1, N + 1.0, N + 1.5, 0.25 * y * y);
  return 0.5 * ginue_series(2 * N, a) - 0.5 * (sinh_part - lead * F);
}

double mean_disc_ginoe_complex(int N, double a) {
  require_n(N, 2);
  require_a(a);
  const double x = N * a * a;
  double s = 0;
  for (int k = 0; k <= N - 2; ++k) s += reg_gamma_p(k + 1.0, x);
  if (a == 0) return 0;
  const double r_cut = std::sqrt(N + 12 * std::sqrt(double(N)) + 60);
  const double upper = std::min(std::sqrt(double(N)) * a, r_cut);
  auto f = [N](double r) { return r * erfc_scaled(sqrt2 * r) * reg_gamma_q(N - 1.0, r * r); };
  const double knee = std::sqrt(N - 1.0);
  double integral;
  if (knee < upper)
    integral = quad::integrate_1d(f, 0, knee).value + quad::integrate_1d(f, knee, upper).value;
  else
    integral = quad::integrate_1d(f, 0, upper).value;
  return s - 2 * integral;
}

double ginoe_real_leading_sum(int N, double a) {
  require_n(N, 1);
  require_a(a);
  const double x = N * a * a;
  double s = 0;
  for (int k = 0; k <= N - 2; ++k) {
    // (2k-1)!!/(2k)!! = Gamma(k+1/2)/(sqrt(pi) k!)
    const double c = std::exp(ln_gamma(k + 0.5) - ln_gamma(k + 1.0)) / sqrt_pi;
    s += c * reg_gamma_p(k + 0.5, x);
  }
  return s / sqrt2;
}

double ginoe_real_leading_sum_gamma(int N, double a) {
  require_n(N, 2);
  require_a(a);
  const double x = N * a * a;
  const double upper = std::isinf(a) ? 0.0 : a * std::sqrt(double(N)) * reg_gamma_q(N - 1.0, x);
  const double lower = reg_gamma_p(N - 0.5, x) * std::exp(ln_gamma(N - 0.5) - ln_gamma(N - 1.0));
  return std::sqrt(2 / pi) * (upper + lower);
}

double mean_interval_ginoe_real(int N, double a) {
  require_n(N, 1);
  require_a(a);
  if (a == 0) return 0;
  const double x = N * a * a;
  double v = ginoe_real_leading_sum(N, a);
  const double hN = 0.5 * N;
  if (N % 2 == 1) {
    v += reg_gamma_p(hN, 0.5 * x);
    double s = 0;
    for (int k = 0; k <= (N - 3) / 2; ++k) {
      const double c = std::exp(ln_gamma(hN + k) - ln_gamma(hN) - (k + hN) * ln2 - ln_gamma(k + 1.0));
      s += c * reg_gamma_p(hN + k, x);
    }
    v -= s;
  } else {
    const double ln_df = (hN - 1) * ln2 + ln_gamma(hN);  // ln (N-2)!!
    const double peak = std::sqrt(N - 1.0);
    const double upper = std::min(std::sqrt(double(N)) * a, peak + 40);
    auto f = [N, ln_df](double t) {
      if (t <= 0) return 0.0;
      return std::exp((N - 1) * std::log(t) - 0.5 * t * t - ln_df) * std::erf(t / sqrt2);
    };
    double integral;
    if (peak < upper)
      integral = quad::integrate_1d(f, 0, peak).value + quad::integrate_1d(f, peak, upper).value;
    else
      integral = quad::integrate_1d(f, 0, upper).value;
    v += integral;
    double s = 0;
    for (int k = 1; k <= N / 2 - 1; ++k) {
      const double c = std::exp(ln_gamma(0.5 * (N - 1) + k) - ln_gamma(hN) - 0.5 * (N - 1) * ln2 -
                                0.5 * std::log(pi) - ln_double_factorial(2 * k - 1));
      s += c * reg_gamma_p(0.5 * (N - 1) + k, x);
    }
    v -= s;
  }
  return v;
}

double ginoe_expected_reals(int N) {
  require_n(N, 1);
  auto ratio = [](int odd, int even) { return std::exp(ln_double_factorial(odd) - ln_double_factorial(even)); };
  double s = 0;
  if (N % 2 == 1) {
    for (int k = 1; k <= (N - 1) / 2; ++k) s += ratio(4 * k - 3, 4 * k - 2);
    return 1 + sqrt2 * s;
  }
  for (int k = 0; k <= N / 2 - 1; ++k) s += ratio(4 * k - 1, 4 * k);
  return sqrt2 * s;
}

FiniteMeanResult mean_disc_ginoe(int N, double a) {
  require_n(N, 2);
  const double c = mean_disc_ginoe_complex(N, a);
  const double r = mean_interval_ginoe_real(N, a);
  return {c + r, MeanBreakdown{r, c}};
}

FiniteMeanResult mean_disc(EnsembleKind kind, int N, double a) {
  switch (kind) {
    case EnsembleKind::GinOE: return mean_disc_ginoe(N, a);
    case EnsembleKind::GinUE: return mean_disc_ginue(N, a);
    case EnsembleKind::GinSE: return mean_disc_ginse(N, a);
  }
  throw DomainError("mean_disc: bad ensemble");
}

double deficit_outside(int N, EnsembleKind kind) { return N - mean_disc(kind, N, 1.0).value; }

double deficit_asymptote(int N, EnsembleKind kind) {
  if (kind == EnsembleKind::GinSE) return std::sqrt(double(N)) / (2 * sqrt_pi);
  return std::sqrt(N / (2 * pi));
}

}  // namespace ginibre::finite_n
