#include "ginibre/origin.hpp"

#include <cmath>
#include <complex>

#include "ginibre/specfun.hpp"

namespace ginibre::origin {

using namespace specfun;

namespace {

void require_r(double R) {
  if (!(R >= 0)) throw DomainError("origin: R must be >= 0");
}

// sum_j P(j,x) Q(j,x) over j = first, first+step, ...
double pq_series(double x, int first, int step) {
  double s = 0;
  const int cap = 10 * static_cast<int>(std::ceil(x)) + 200;
  for (int j = first, n = 0; n < cap; j += step, ++n) {
    double P = reg_gamma_p(j, x);
    s += P * (1 - P);
    if (j > x && P < 1e-18) break;
  }
  return s;
}

}  // namespace

finite_n::FiniteMeanResult mean_origin(EnsembleKind kind, double R) {
  require_r(R);
  switch (kind) {
    case EnsembleKind::GinUE: return {R * R, std::nullopt};
    case EnsembleKind::GinSE: return {R * R - 0.25 * (-std::expm1(-4 * R * R)), std::nullopt};
    case EnsembleKind::GinOE: {
      const double re = std::sqrt(2 / pi) * R;
      const double cx = R * R - re + 0.5 - 0.5 * erfc_scaled(sqrt2 * R);
      return {re + cx, finite_n::MeanBreakdown{re, cx}};
    }
  }
  throw DomainError("mean_origin: bad ensemble");
}

double radial_density_origin(EnsembleKind kind, double r) {
  require_r(r);
  switch (kind) {
    case EnsembleKind::GinUE: return 1;
    case EnsembleKind::GinSE: return -std::expm1(-4 * r * r);
    case EnsembleKind::GinOE: return 1 - erfc_scaled(sqrt2 * r);
  }
  throw DomainError("radial_density_origin: bad ensemble");
}

double var_origin_ginue(double R) {
  require_r(R);
  const double x = 2 * R * R;
  return R * R * (bessel_i_scaled(0, x) + bessel_i_scaled(1, x));
}

double var_origin_ginue_series(double R) {
  require_r(R);
  if (R == 0) return 0;
  return pq_series(R * R, 1, 1);
}

double var_origin_ginue_shirai(double R) {
  require_r(R);
  if (R == 0) return 0;
  // x = 4R^2 sin^2(t) turns the endpoint singularities into a smooth integrand
  const double c = 4 * R * R;
  auto f = [c](double t) {
    const double s = std::sin(t), co = std::cos(t);
    return co * co * std::exp(-c * s * s);
  };
  quad::QuadSpec spec{1e-15, 1e-13};
  return c / pi * quad::integrate_1d(f, 0, pi / 2, spec).value;
}

double var_origin_ginue_derivative(double R) {
  require_r(R);
  return 2 * R * bessel_i_scaled(0, 2 * R * R);
}

double var_origin_ginse(double R) {
  require_r(R);
  const double X = 4 * R * R;
  const double hyp = R == 0 ? 0.0 : std::exp(-X) * R * R * hyp1f2(0.5, 1, 1.5, -4 * std::pow(R, 4));
  return R * R * (bessel_i_scaled(0, X) + bessel_i_scaled(1, X)) - hyp;
}

double var_origin_ginse_series(double R) {
  require_r(R);
  if (R == 0) return 0;
  return pq_series(2 * R * R, 2, 2);
}

double var_origin_ginse_struve(double R) {
  require_r(R);
  if (R == 0) return 0;
  const double X = 4 * R * R;
  const double jh = bessel_j(0, X) * struve_h(-1, X) + bessel_j(1, X) * struve_h(0, X);
  return R * R * (bessel_i_scaled(0, X) + bessel_i_scaled(1, X) - std::exp(-X) * 0.5 * pi * jh);
}

double ginse_odd_pair_series(double R) {
  require_r(R);
  if (R == 0) return 0;
  return pq_series(2 * R * R, 1, 2);
}

double ginse_odd_pair_closed(double R) {
  require_r(R);
  const double X = 4 * R * R;
  const double hyp = R == 0 ? 0.0 : std::exp(-X) * hyp1f2(0.5, 1, 1.5, -4 * std::pow(R, 4));
  return R * R * (bessel_i_scaled(0, X) + bessel_i_scaled(1, X) + hyp);
}

double var_origin_ginoe_real(double R) {
  require_r(R);
  const double e2 = std::erf(sqrt2 * R);
  return 2 * std::sqrt(2 / pi) * R - 2 / sqrt_pi * R * std::erf(2 * R) - 0.5 * e2 + 0.25 * e2 * e2 +
         (-std::expm1(-4 * R * R)) / pi;
}

double cov_origin_ginoe(double R) {
  require_r(R);
  if (R == 0) return 0;
  auto f = [R](double t) {
    const double v = R * std::sin(t), ah = R * std::cos(t);
    const double m = ah - R, p = ah + R;
    const double bracket = std::exp(-m * m) - std::exp(-p * p) + sqrt_pi * (m * std::erf(m) - p * std::erf(p));
    // erfc(sqrt2 v) v e^{v^2} = erfcx(sqrt2 v) v e^{-v^2}; dv = ah dt
    return erfc_scaled(sqrt2 * v) * v * std::exp(-v * v) * bracket * ah;
  };
  quad::QuadSpec spec{1e-13, 1e-11};
  return 2 / pi * quad::integrate_1d(f, 0, pi / 2, spec).value;
}

double PairIntegrals::connected() const {
  double s = 0;
  for (int k = 0; k < 4; ++k) s += minus[k] - plus[k];
  return s;
}

namespace {

// integrand of I_{sign,k} in angular variables, symmetric under t1 <-> t2
double pair_integrand(double R, int sign, int k, double t1, double t2) {
  const double y1 = R * std::sin(t1), y2 = R * std::sin(t2);
  const double a = R * std::cos(t1), b = R * std::cos(t2);
  const double w = y1 + sign * y2;
  const double c = w * w;
  const double F = erfc_scaled(sqrt2 * y1) * erfc_scaled(sqrt2 * y2) * std::exp(c - 2 * y1 * y1 - 2 * y2 * y2);
  const double jac = a * b;
  double g;
  switch (k) {
    case 0: g = std::exp(-(a + b) * (a + b)) * (1 + c) / (2 * pi); break;
    case 1: g = -std::exp(-(a - b) * (a - b)) * (1 + c) / (2 * pi); break;
    case 2: g = (a + b) * std::erf(a + b) * (1 + 2 * c) / (4 * sqrt_pi); break;
    default: g = -(a - b) * std::erf(a - b) * (1 + 2 * c) / (4 * sqrt_pi); break;
  }
  return F * g * jac;
}

double pair_total_integrand(double R, double t1, double t2) {
  double s = 0;
  for (int k = 0; k < 4; ++k) s += pair_integrand(R, -1, k, t1, t2) - pair_integrand(R, +1, k, t1, t2);
  return s;
}

// 2 * int_0^{pi/2} dt1 int_0^{t1} dt2, using the t1 <-> t2 symmetry
template <class F>
double triangle(F&& f, const quad::QuadSpec& spec) {
  quad::QuadSpec inner = spec;
  inner.rel_tol = 0.1 * spec.rel_tol;
  inner.abs_tol = 0.1 * spec.abs_tol;
  auto outer = [&](double t1) {
    if (t1 == 0) return 0.0;
    return quad::integrate_1d([&](double t2) { return f(t1, t2); }, 0, t1, inner).value;
  };
  return 2 * quad::integrate_1d(outer, 0, pi / 2, spec).value;
}

}  // namespace

PairIntegrals ginoe_pair_integrals(double R, const quad::QuadSpec& spec) {
  require_r(R);
  PairIntegrals out;
  if (R == 0) return out;
  for (int k = 0; k < 4; ++k) {
    out.plus[k] = triangle([&](double t1, double t2) { return pair_integrand(R, +1, k, t1, t2); }, spec);
    out.minus[k] = triangle([&](double t1, double t2) { return pair_integrand(R, -1, k, t1, t2); }, spec);
  }
  return out;
}

double var_origin_ginoe_complex(double R) {
  require_r(R);
  if (R == 0) return 0;
  const double Ec = mean_origin(EnsembleKind::GinOE, R).breakdown->complex_part;
  quad::QuadSpec spec{1e-13, 1e-11};
  const double conn = triangle([R](double t1, double t2) { return pair_total_integrand(R, t1, t2); }, spec);
  return 2 * Ec + 4 * conn;
}

VarianceBreakdown var_origin_ginoe(double R) {
  VarianceBreakdown v;
  v.var_real = var_origin_ginoe_real(R);
  v.var_complex = var_origin_ginoe_complex(R);
  v.covariance = cov_origin_ginoe(R);
  v.total = v.var_real + v.var_complex + 2 * v.covariance;
  return v;
}

double var_origin(EnsembleKind kind, double R) {
  switch (kind) {
    case EnsembleKind::GinUE: return var_origin_ginue(R);
    case EnsembleKind::GinSE: return var_origin_ginse(R);
    case EnsembleKind::GinOE: return var_origin_ginoe(R).total;
  }
  throw DomainError("var_origin: bad ensemble");
}

std::optional<Asymptote> asymptote(Quantity q, Regime r) {
  const double s2p = std::sqrt(2 / pi);
  const double k = (2 * sqrt2 - 2) / sqrt_pi;
  if (r == Regime::Small) {
    switch (q) {
      case Quantity::MeanGinUE:
      case Quantity::VarGinUE: return Asymptote{1, 2};
      case Quantity::MeanGinSE:
      case Quantity::VarGinSE: return Asymptote{2, 4};
      case Quantity::MeanGinOEReal:
      case Quantity::VarGinOEReal:
      case Quantity::MeanGinOE:
      case Quantity::VarGinOE: return Asymptote{s2p, 1};
      case Quantity::MeanGinOEComplex: return Asymptote{4.0 / 3 * s2p, 3};
      // conjugate pairs enter together
      case Quantity::VarGinOEComplex: return Asymptote{8.0 / 3 * s2p, 3};
      // -E_R E_C
      case Quantity::CovGinOE: return Asymptote{-8 / (3 * pi), 4};
    }
  } else {
    switch (q) {
      case Quantity::MeanGinUE:
      case Quantity::MeanGinSE:
      case Quantity::MeanGinOEComplex:
      case Quantity::MeanGinOE: return Asymptote{1, 2};
      case Quantity::MeanGinOEReal: return Asymptote{s2p, 1};
      case Quantity::VarGinUE: return Asymptote{1 / sqrt_pi, 1};
      case Quantity::VarGinSE: return Asymptote{1 / std::sqrt(2 * pi), 1};
      case Quantity::VarGinOEReal: return Asymptote{k, 1};
      case Quantity::VarGinOEComplex: return Asymptote{2 * sqrt2 / sqrt_pi, 1};
      case Quantity::CovGinOE: return Asymptote{-k, 1};
      case Quantity::VarGinOE: return Asymptote{2 / sqrt_pi, 1};
    }
  }
  return std::nullopt;
}

double universal_slope(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::GinOE: return 1;
    case EnsembleKind::GinUE: return 2;
    case EnsembleKind::GinSE: return 2 * sqrt2;
  }
  return 0;
}

double edge_profile_f(double S) {
  // integrand ~ erfc(|t|)/2 drops below 1e-18 before t = -7
  const double lo = std::min(-7.0, S - 1.0);
  if (S <= lo) return 0;
  auto g = [](double t) { return 0.25 * std::erfc(t) * std::erfc(-t); };
  quad::QuadSpec spec{1e-15, 1e-12};
  return std::sqrt(2 * pi) * quad::integrate_1d(g, lo, S, spec).value;
}

namespace {

using cplx = std::complex<double>;

// kernel entries of the real block
double s_real(double u) { return std::exp(-0.5 * u * u) / std::sqrt(2 * pi); }
double d_real(double u) { return -u * std::exp(-0.5 * u * u) / std::sqrt(2 * pi); }
double i_real(double u) {
  const double sg = u > 0 ? 1.0 : (u < 0 ? -1.0 : 0.0);
  return -0.5 * std::erf(u / sqrt2) + 0.5 * sg;
}

double real_real_oracle(double R) {
  auto f = [](double x, double y) {
    const double u = x - y, s = s_real(u);
    return s * s + i_real(u) * d_real(u);
  };
  quad::QuadSpec spec{1e-14, 1e-12};
  auto outer = [&](double x) {
    return quad::integrate_1d([&](double y) { return f(x, y); }, -R, x, spec).value +
           quad::integrate_1d([&](double y) { return f(x, y); }, x, R, spec).value;
  };
  const double two_point = quad::integrate_1d(outer, -R, R, spec).value;
  return std::sqrt(2 / pi) * R - two_point;
}

// |S(z,w)|^2 erfc(sqrt2 Im z) erfc(sqrt2 Im w) from the complex kernel entry
double weighted_abs2(cplx z, cplx w, double y1, double y2) {
  const cplx d = z - w;
  const cplx d2 = d * d;
  // |exp(-d^2/2)|^2 = exp(-Re d^2); Gaussian factors of erfc folded into erfcx
  const double mag = std::norm(d) / (8 * pi);
  return mag * std::exp(-d2.real() - 2 * y1 * y1 - 2 * y2 * y2) * erfc_scaled(sqrt2 * y1) * erfc_scaled(sqrt2 * y2);
}

double complex_connected_oracle(double R) {
  // R_2 - R_1 R_1 = (2 pi i)^2 erfc erfc (-S(z1b,z2b) S(z1,z2) + S(z1b,z2) S(z1,z2b))
  auto conn = [](double r1, double p1, double r2, double p2) {
    const cplx z1 = std::polar(r1, p1), z2 = std::polar(r2, p2);
    const double y1 = z1.imag(), y2 = z2.imag();
    return 4 * pi * pi * (weighted_abs2(z1, z2, y1, y2) - weighted_abs2(z1, std::conj(z2), y1, y2));
  };
  quad::QuadSpec spec{1e-12, 1e-10};
  auto inner2 = [&](double r1, double p1) {
    return quad::integrate_2d([&](double r2, double p2) { return r2 * conn(r1, p1, r2, p2); }, 0, R, 0, pi, spec).value;
  };
  const double total = quad::integrate_2d([&](double r1, double p1) { return r1 * inner2(r1, p1); }, 0, R, 0, pi, spec).value;
  return 4 * total / (pi * pi);
}

}  // namespace

double ginoe_origin_kernel_oracle(double R, KernelCheck which) {
  require_r(R);
  if (R == 0) return 0;
  return which == KernelCheck::RealReal ? real_real_oracle(R) : complex_connected_oracle(R);
}

}  // namespace ginibre::origin
