#include "ginibre/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ginibre/common.hpp"

namespace ginibre::specfun {

namespace {

constexpr double ln_sqrt_2pi = 0.918938533204672741780329736405617640;

// lnGamma(x) - Stirling leading part, x >= 10
double stirling_tail(double x) {
  const double r = 1.0 / x, r2 = r * r;
  return r * (1.0 / 12 +
              r2 * (-1.0 / 360 +
                    r2 * (1.0 / 1260 +
                          r2 * (-1.0 / 1680 +
                                r2 * (1.0 / 1188 + r2 * (-691.0 / 360360 + r2 * (1.0 / 156)))))));
}

double stirlerr(double s) {
  if (s >= 10) return stirling_tail(s);
  return ln_gamma(s) - ((s - 0.5) * std::log(s) - s + ln_sqrt_2pi);
}

// 20-point Gauss-Legendre on [-1,1], built once by Newton on P_20
struct GaussLegendre20 {
  std::array<double, 20> x{}, w{};
  GaussLegendre20() {
    constexpr int n = 20;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2 / ((1 - z * z) * dp * dp);
    }
  }
};

const GaussLegendre20& gl20() {
  static const GaussLegendre20 rule;
  return rule;
}

template <class F>
double composite_gl(F&& f, double a, double b, int panels) {
  const auto& q = gl20();
  const double h = (b - a) / panels;
  double total = 0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h, mid = lo + 0.5 * h;
    double s = 0;
    for (int i = 0; i < 20; ++i) s += q.w[i] * f(mid + 0.5 * h * q.x[i]);
    total += 0.5 * h * s;
  }
  return total;
}

void gamma_pq(double s, double x, double& P, double& Q) {
  if (!(s > 0) || !(x >= 0)) throw DomainError("reg_gamma: need s > 0 and x >= 0");
  if (x == 0) {
    P = 0;
    Q = 1;
    return;
  }
  if (std::isinf(x)) {
    P = 1;
    Q = 0;
    return;
  }
  const double lp = ln_gamma_prefactor(s, x);
  constexpr int max_iter = 100000;
  if (x < s + 1) {
    double term = 1 / s, sum = term;
    int n = 1;
    for (; n < max_iter; ++n) {
      term *= x / (s + n);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    if (n == max_iter) throw NonConvergence("reg_gamma series");
    P = std::exp(lp) * sum;
    if (P > 1) P = 1;
    Q = 1 - P;
  } else {
    constexpr double tiny = 1e-300;
    double b = x + 1 - s, c = 1 / tiny, d = 1 / b, h = d;
    int i = 1;
    for (; i < max_iter; ++i) {
      const double an = -i * (i - s);
      b += 2;
      d = an * d + b;
      if (std::abs(d) < tiny) d = tiny;
      c = b + an / c;
      if (std::abs(c) < tiny) c = tiny;
      d = 1 / d;
      const double del = d * c;
      h *= del;
      if (std::abs(del - 1) < 1e-16) break;
    }
    if (i == max_iter) throw NonConvergence("reg_gamma continued fraction");
    Q = std::exp(lp) * h;
    if (Q > 1) Q = 1;
    P = 1 - Q;
  }
}

double j_series(int nu, double x) {
  const double h2 = -0.25 * x * x;
  double term = nu == 0 ? 1.0 : 0.5 * x, sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= h2 / (k * double(k + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double j_miller(int nu, double x) {
  int m = 2 * ((static_cast<int>(x) + 40) / 2);
  double jp = 0, j = 1e-30, sum = 0, j0 = 0, j1 = 0;
  for (int k = m; k >= 1; --k) {
    const double jm = 2.0 * k / x * j - jp;
    jp = j;
    j = jm;
    // j now holds J_{k-1}
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp *= 1e-250;
      sum *= 1e-250;
      j1 *= 1e-250;
    }
    if (k - 1 == 1) j1 = j;
    if (k - 1 > 0 && (k - 1) % 2 == 0) sum += 2 * j;
  }
  j0 = j;
  sum += j0;
  return (nu == 0 ? j0 : j1) / sum;
}

double j_hankel(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double P = 0, Q = 0, t = 1, prev = 2;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) t *= (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * x);
    if (std::abs(t) > prev) break;
    prev = std::abs(t);
    switch (k % 4) {
      case 0: P += t; break;
      case 1: Q += t; break;
      case 2: P -= t; break;
      case 3: Q -= t; break;
    }
    if (std::abs(t) < 1e-18) break;
  }
  const double c = std::cos(x), s = std::sin(x);
  double cchi, schi;
  if (nu == 0) {
    cchi = (c + s) / sqrt2;
    schi = (s - c) / sqrt2;
  } else {
    cchi = (s - c) / sqrt2;
    schi = -(s + c) / sqrt2;
  }
  return std::sqrt(2 / (pi * x)) * (P * cchi - Q * schi);
}

double struve_series(int nu, double x) {
  // sum_k (-1)^k (x/2)^{2k+nu+1} / (Gamma(k+3/2) Gamma(k+nu+3/2))
  const double h = 0.5 * x, h2 = h * h;
  double term = std::pow(h, nu + 1) / (std::tgamma(1.5) * std::tgamma(nu + 1.5)), sum = term;
  for (int k = 1; k < 300; ++k) {
    term *= -h2 / ((k + 0.5) * (k + nu + 0.5));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double integral_j0(double X) {
  if (X <= 0) return 0;
  const int panels = static_cast<int>(std::ceil(X / 2)) + 1;
  return composite_gl([](double s) { return bessel_j(0, s); }, 0, X, panels);
}

// Eulerian numbers A(m, k), k = 0..m-1
std::vector<double> eulerian_row(int m) {
  static const std::array<std::vector<double>, 7> small = {{
      {},
      {1},
      {1, 1},
      {1, 4, 1},
      {1, 11, 11, 1},
      {1, 26, 66, 26, 1},
      {1, 57, 302, 302, 57, 1},
  }};
  if (m <= 6) return small[m];
  std::vector<double> row = small[6];
  for (int n = 7; n <= m; ++n) {
    std::vector<double> next(n, 0.0);
    for (int k = 0; k < n; ++k) {
      const double a = k < n - 1 ? row[k] : 0.0;
      const double b = k >= 1 ? row[k - 1] : 0.0;
      next[k] = (k + 1) * a + (n - k) * b;
    }
    row = std::move(next);
  }
  return row;
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0)) throw DomainError("ln_gamma: need x > 0");
  if (std::isinf(x)) return x;
  double shift = 0;
  double prod = 1;
  while (x < 10) {
    prod *= x;
    x += 1;
  }
  if (prod != 1) shift = std::log(prod);
  return (x - 0.5) * std::log(x) - x + ln_sqrt_2pi + stirling_tail(x) - shift;
}

double double_factorial(int n) {
  if (n < -1) throw DomainError("double_factorial: n < -1");
  double r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

double ln_double_factorial(int n) {
  if (n < -1) throw DomainError("ln_double_factorial: n < -1");
  if (n <= 0) return 0;
  if (n % 2 == 0) return (n / 2) * std::log(2.0) + ln_gamma(n / 2 + 1.0);
  return ln_gamma(n + 1.0) - ((n - 1) / 2) * std::log(2.0) - ln_gamma((n + 1) / 2.0);
}

double ln_gamma_prefactor(double s, double x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  if (s < 10) return s * std::log(x) - x - ln_gamma(s);
  const double u = (x - s) / s;
  const double d = u - std::log1p(u);
  return -s * d + 0.5 * std::log(s) - ln_sqrt_2pi - stirlerr(s);
}

double reg_gamma_p(double s, double x) {
  double P, Q;
  gamma_pq(s, x, P, Q);
  return P;
}

double reg_gamma_q(double s, double x) {
  double P, Q;
  gamma_pq(s, x, P, Q);
  return Q;
}

double erfc_scaled(double x) {
  if (std::isnan(x)) return x;
  if (x < 0) {
    if (x < -26.5) throw std::overflow_error("erfc_scaled: result overflows");
    const double hi = x * x, lo = std::fma(x, x, -hi);
    return 2 * std::exp(hi) * (1 + lo) - erfc_scaled(-x);
  }
  if (x < 26) {
    const double hi = x * x, lo = std::fma(x, x, -hi);
    return std::exp(hi) * (1 + lo) * std::erfc(x);
  }
  // asymptotic tail, 1/(sqrt(pi) x) * sum (-1)^k (2k-1)!!/(2x^2)^k
  const double r = 1 / (2 * x * x);
  double term = 1, sum = 1;
  for (int k = 1; k < 12; ++k) {
    term *= -(2 * k - 1) * r;
    sum += term;
  }
  return sum / (sqrt_pi * x);
}

double bessel_i_scaled(int nu, double x) {
  if (nu != 0 && nu != 1) throw DomainError("bessel_i_scaled: nu must be 0 or 1");
  if (!(x >= 0)) throw DomainError("bessel_i_scaled: x < 0");
  if (x == 0) return nu == 0 ? 1.0 : 0.0;
  if (x <= 25) {
    const double h2 = 0.25 * x * x;
    double term = nu == 0 ? 1.0 : 0.5 * x, sum = term;
    for (int k = 1; k < 500; ++k) {
      term *= h2 / (k * double(k + nu));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    return std::exp(-x) * sum;
  }
  const double mu = 4.0 * nu * nu;
  double term = 1, sum = 1, prev = 1;
  for (int k = 1; k < 200; ++k) {
    term *= -(mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * x);
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    sum += term;
    if (prev < 1e-18) break;
  }
  return sum / std::sqrt(2 * pi * x);
}

double bessel_j(int nu, double x) {
  if (nu != 0 && nu != 1) throw DomainError("bessel_j: nu must be 0 or 1");
  if (!(x >= 0)) throw DomainError("bessel_j: x < 0");
  if (x == 0) return nu == 0 ? 1.0 : 0.0;
  if (x <= 4) return j_series(nu, x);
  if (x < 25) return j_miller(nu, x);
  return j_hankel(nu, x);
}

double struve_h(int nu, double x) {
  if (nu < -1 || nu > 1) throw DomainError("struve_h: nu must be -1, 0 or 1");
  if (!(x >= 0)) throw DomainError("struve_h: x < 0");
  if (nu == -1) {
    if (x <= 8) {
      // sum_k (-1)^k (x/2)^{2k} / (Gamma(k+3/2) Gamma(k+1/2))
      const double h2 = 0.25 * x * x;
      double term = 1 / (std::tgamma(1.5) * sqrt_pi), sum = term;
      for (int k = 1; k < 300; ++k) {
        term *= -h2 / ((k + 0.5) * (k - 0.5));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      }
      return sum;
    }
    return 2 / pi - struve_h(1, x);
  }
  if (x == 0) return 0;
  if (x <= 4) return struve_series(nu, x);
  const int panels = static_cast<int>(std::ceil(x / 3)) + 2;
  if (nu == 0)
    return 2 / pi * composite_gl([x](double t) { return std::sin(x * std::cos(t)); }, 0, pi / 2, panels);
  return 2 * x / pi * composite_gl([x](double t) {
           const double s = std::sin(t);
           return s * s * std::sin(x * std::cos(t));
         }, 0, pi / 2, panels);
}

double hyp1f2(double a1, double b1, double b2, double z, const SeriesPolicy& policy) {
  auto bad = [](double b) { return b <= 0 && b == std::floor(b); };
  if (bad(b1) || bad(b2)) throw DomainError("hyp1f2: b1, b2 must not be nonpositive integers");
  if (z == 0) return 1;
  if (z < -4 && a1 == 0.5 && b1 == 1 && b2 == 1.5) {
    const double X = 2 * std::sqrt(-z);
    return integral_j0(X) / X;
  }
  double term = 1, sum = 1, peak = 1;
  for (std::size_t k = 0; k < policy.max_terms; ++k) {
    term *= (a1 + k) / ((b1 + k) * (b2 + k)) * z / (k + 1.0);
    sum += term;
    peak = std::max(peak, std::abs(term));
    if (std::abs(term) <= policy.rel_tol * std::abs(sum) || term == 0) {
      if (peak > 1e8 * std::abs(sum)) throw NonConvergence("hyp1f2: cancellation in alternating series");
      return sum;
    }
  }
  throw NonConvergence("hyp1f2: max_terms exceeded");
}

double polylog_negorder(int m, double x) {
  if (m < 0) throw DomainError("polylog_negorder: order must be >= 0");
  if (x == 1) throw DomainError("polylog_negorder: pole at x = 1");
  if (m == 0) return x / (1 - x);
  if (std::abs(x) > 1) {
    const double v = polylog_negorder(m, 1 / x);
    return (m - 1) % 2 == 0 ? v : -v;
  }
  const auto row = eulerian_row(m);
  double poly = 0;
  for (int k = m - 1; k >= 0; --k) poly = poly * x + row[k];
  return x * poly / std::pow(1 - x, m + 1);
}

}  // namespace ginibre::specfun
