#include "ginibre/planar_fcs.hpp"

#include <cmath>
#include <sstream>

#include "ginibre/common.hpp"
#include "ginibre/expr.hpp"
#include "ginibre/parallel.hpp"
#include "ginibre/specfun.hpp"

namespace ginibre::planar {

using specfun::polylog_negorder;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double logsumexp(double x, double y) {
  if (x == -inf) return y;
  if (y == -inf) return x;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(std::min(x, y) - m));
}

// log of int e^{phi} over one monotone piece whose maximum sits at `top`
template <class Phi>
double log_piece(const Phi& phi, double top, double far, double step) {
  if (top == far) return -inf;
  const double m = phi(top);
  if (m == -inf) return -inf;
  const double dir = far > top ? 1 : -1;
  double h = step, end = far;
  for (int it = 0; it < 2000; ++it) {
    const double x = top + dir * h;
    if ((far - x) * dir <= 0) break;
    if (phi(x) < m - 80) {
      end = x;
      break;
    }
    h *= 2;
  }
  if (std::isinf(end)) throw NonConvergence("moment_table: weight does not decay");
  auto f = [&](double r) {
    const double v = phi(r) - m;
    return v == -inf ? 0.0 : std::exp(v);
  };
  const quad::QuadSpec spec{0.0, 1e-13};
  const auto res = quad::integrate_1d(f, std::min(top, end), std::max(top, end), spec);
  if (!(res.value > 0)) return -inf;
  return m + std::log(res.value);
}

struct Moment {
  double log_h, L, M;
};

Moment moment(const RadialPotential& pot, int N, int k, double a) {
  const double n = 2.0 * k + 1;
  const double cut = pot.support_cutoff;
  auto phi = [&](double r) {
    if (r <= 0 || r >= cut) return -inf;
    const double g = pot.g(r, N);
    if (std::isinf(g)) return -inf;
    return n * std::log(r) - N * g;
  };
  // peak: n = N r g'(r)
  auto h = [&](double r) { return n - N * r * pot.g_prime(r, N); };
  double lo = 0, hi = 1;
  while (h(hi) > 0) {
    if (std::isfinite(cut) && hi >= cut) break;
    hi *= 2;
    if (std::isfinite(cut)) hi = std::min(hi, cut);
    if (hi > 1e150) throw DomainError("moment_table: no weight maximum found (" + pot.label + ")");
  }
  if (std::isfinite(cut) && hi >= cut) hi = std::nextafter(cut, 0.0);
  for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0 ? lo : hi) = mid;
  }
  const double peak = 0.5 * (lo + hi);
  double curv = n / (peak * peak) + N * pot.g_second(peak, N);
  double step = curv > 0 && std::isfinite(curv) ? 1 / std::sqrt(curv) : 0.1 * peak;
  if (std::isfinite(cut)) step = std::min(step, 0.5 * (cut - peak));
  const double top_end = std::isfinite(cut) ? cut : inf;

  double in, out;
  if (a <= peak) {
    in = log_piece(phi, a, 0.0, step);
    out =logsumexp(log_piece(phi, peak, a, step), log_piece(phi, peak, top_end, step));
  } else {
    in = logsumexp(log_piece(phi, peak, 0.0, step), log_piece(phi, peak, std::min(a, top_end), step));
    out = a >= top_end ? -inf : log_piece(phi, a, top_end, step);
  }
  const double tot = logsumexp(in, out);
  Moment m;
  m.log_h = std::log(2.0) + tot;
  m.L = in == -inf ? 0.0 : 1 / (1 + std::exp(out - in));
  m.M = out == -inf ? 0.0 : 1 / (1 + std::exp(in - out));
  return m;
}

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

RadialPotential ginse_gaussian() {
  return {[](double r, int) { return 2 * r * r; }, [](double r, int) { return 4 * r; }, [](double, int) { return 4.0; },
          inf, "ginse_gaussian"};
}

RadialPotential ginue_gaussian() {
  return {[](double r, int) { return r * r; }, [](double r, int) { return 2 * r; }, [](double, int) { return 2.0; }, inf,
          "ginue_gaussian"};
}

RadialPotential mittag_leffler(double alpha, double b, double c) {
  require(alpha > 0 && b > 0 && c > -1, "mittag_leffler: need alpha > 0, b > 0, c > -1");
  std::ostringstream os;
  os << "mittag_leffler(" << alpha << "," << b << "," << c << ")";
  return {[=](double r, int N) { return alpha * std::pow(r, 2 * b) - 2 * c / N * std::log(r); },
          [=](double r, int N) { return 2 * b * alpha * std::pow(r, 2 * b - 1) - 2 * c / (N * r); },
          [=](double r, int N) { return 2 * b * (2 * b - 1) * alpha * std::pow(r, 2 * b - 2) + 2 * c / (N * r * r); },
          inf, os.str()};
}

RadialPotential truncated_unitary(double ct) {
  require(ct > 0, "truncated_unitary: need c > 0");
  std::ostringstream os;
  os << "truncated_unitary(" << ct << ")";
  const double wall = std::sqrt(1 + ct);
  return {[=](double r, int) { return r >= wall ? inf : -2 * ct * std::log1p(-r * r / (1 + ct)); },
          [=](double r, int) { return 4 * ct * r / (1 + ct - r * r); },
          [=](double r, int) {
            const double d = 1 + ct - r * r;
            return 4 * ct * (1 + ct + r * r) / (d * d);
          },
          wall, os.str()};
}

RadialPotential custom_potential(const std::string& g, const std::string& gp, const std::string& gpp, double cutoff) {
  const auto e0 = Expression::parse(g), e1 = Expression::parse(gp), e2 = Expression::parse(gpp);
  require(cutoff > 0, "custom_potential: cutoff must be positive");
  return {[e0](double r, int) { return e0(r); }, [e1](double r, int) { return e1(r); },
          [e2](double r, int) { return e2(r); }, cutoff, "custom(" + g + ")"};
}

RadialPotential builtin_potential(const std::string& name, const std::vector<double>& p) {
  if (name == "ginse_gaussian") return ginse_gaussian();
  if (name == "ginue_gaussian") return ginue_gaussian();
  if (name == "mittag_leffler") {
    require(p.size() == 3, "mittag_leffler takes (alpha, b, c)");
    return mittag_leffler(p[0], p[1], p[2]);
  }
  if (name == "truncated_unitary") {
    require(p.size() == 1, "truncated_unitary takes (c)");
    return truncated_unitary(p[0]);
  }
  throw DomainError("unknown potential '" + name + "'");
}

std::vector<std::string> suitability_warnings(const RadialPotential& pot, int N) {
  std::vector<std::string> w;
  const double rmax = std::isfinite(pot.support_cutoff) ? pot.support_cutoff * (1 - 1e-9) : 10.0;
  double prev = -inf;
  bool mono = true;
  for (int i = 0; i <= 400; ++i) {
    const double r = 1e-6 * std::pow(rmax / 1e-6, i / 400.0);
    const double v = r * pot.g_prime(r, N);
    if (v < prev - 1e-12 * std::abs(prev)) mono = false;
    prev = v;
  }
  if (!mono) w.push_back("r g'(r) is not nondecreasing");
  const double small = 1e-6 * pot.g_prime(1e-6, N);
  if (!(std::abs(small) < 1e-3)) w.push_back("r g'(r) does not vanish at r -> 0 (value " + std::to_string(small) + ")");
  const double g1 = pot.g_prime(1.0, N);
  if (std::abs(g1 - 4) > 1e-6) w.push_back("g'(1) = " + std::to_string(g1) + ", not 4");
  return w;
}

MomentTable moment_table(const RadialPotential& pot, int N, int beta, double a, unsigned threads) {
  require(N >= 1, "moment_table: N must be >= 1");
  require(beta == 2 || beta == 4, "moment_table: beta must be 2 or 4");
  require(a >= 0, "moment_table: a must be >= 0");
  MomentTable t;
  t.N = N;
  t.beta = beta;
  t.a = a;
  t.index.resize(N);
  t.log_h.resize(N);
  t.L.resize(N);
  t.M.resize(N);
  for (int j = 0; j < N; ++j) t.index[j] = beta == 4 ? 2 * j + 1 : j;
  parallel_for(
      std::size_t(N),
      [&](std::size_t j) {
        const auto m = moment(pot, N, t.index[j], a);
        t.log_h[j] = m.log_h;
        t.L[j] = m.L;
        t.M[j] = m.M;
      },
      threads);
  return t;
}

double log_mgf(const MomentTable& t, double u) {
  const double e = std::expm1(u);
  double s = 0;
  for (Eigen::Index j = 0; j < t.L.size(); ++j) s += std::log1p(e * t.L[j]);
  return s;
}

double mgf(const MomentTable& t, double u) { return std::exp(log_mgf(t, u)); }

CumulantResult cumulant_finite(const MomentTable& t, int p) {
  require(p >= 1, "cumulant_finite: p must be >= 1");
  CumulantResult r;
  r.p = p;
  if (p == 1) {
    r.value = t.L.sum();
    return r;
  }
  double s = 0;
  for (Eigen::Index j = 0; j < t.L.size(); ++j) {
    if (t.L[j] < 1e-300) continue;
    s += polylog_negorder(p - 1, -t.M[j] / t.L[j]);
  }
  r.value = (p % 2 == 0 ? -1 : 1) * s;
  return r;
}

double limit_integrand(int p, double x) {
  require(p >= 2, "limit_integrand: p must be >= 2");
  const int m = p - 1;
  const double sign = p % 2 == 0 ? -1 : 1;
  if (x <= 0) {
    // erfc(x) in [1, 2]
    const double w = -std::erfc(-x) / std::erfc(x);
    return sign * polylog_negorder(m, w);
  }
  // Li_{-m}(w) = (-1)^{m+1} Li_{-m}(1/w)
  const double winv = -specfun::erfc_scaled(x) * std::exp(-x * x) / std::erfc(-x);
  return sign * (m % 2 == 0 ? -1 : 1) * polylog_negorder(m, winv);
}

double cumulant_bulk_limit(int p, const quad::QuadSpec& spec) {
  require(p >= 2, "cumulant_bulk_limit: p must be >= 2");
  auto f = [p](double x) { return limit_integrand(p, x) + limit_integrand(p, -x); };
  return quad::integrate_1d(f, 0, 10, spec).value;
}

double cumulant_edge_limit(int p, double S, const quad::QuadSpec& spec) {
  require(p >= 2, "cumulant_edge_limit: p must be >= 2");
  auto f = [p](double x) { return limit_integrand(p, x); };
  const double lo = std::min(-10.0, S - 10);
  const double hi = std::min(S, 10.0);
  if (hi <= 0) return quad::integrate_1d(f, lo, hi, spec).value;
  return quad::integrate_1d(f, lo, 0, spec).value + quad::integrate_1d(f, 0, hi, spec).value;
}

CumulantResult scaled_cumulant(const RadialPotential& pot, int N, double a, int p) {
  require(a > 0, "scaled_cumulant: a must be > 0");
  const auto t = moment_table(pot, N, 4, a);
  auto r = cumulant_finite(t, p);
  r.regime = Regime::Bulk;
  r.scale_factor = std::sqrt(2 / (N * pot.quarter_laplacian(a, N)));
  r.value *= r.scale_factor;
  if (p >= 2 && a < 1) r.limit = a * cumulant_bulk_limit(p);
  return r;
}

double edge_radius(const RadialPotential& pot, int N, double S) {
  return 1 - S / std::sqrt(2 * pot.quarter_laplacian(1.0, N) * N);
}

CumulantResult scaled_cumulant_edge(const RadialPotential& pot, int N, double S, int p) {
  const double a = edge_radius(pot, N, S);
  require(a >= 0, "scaled_cumulant_edge: S too large for this N");
  const auto t = moment_table(pot, N, 4, a);
  auto r = cumulant_finite(t, p);
  r.regime = Regime::Edge;
  r.scale_factor = std::sqrt(2 / (N * pot.quarter_laplacian(1.0, N)));
  r.value *= r.scale_factor;
  if (p >= 2) r.limit = cumulant_edge_limit(p, S);
  return r;
}

double cumulant_origin_ginse(double R, int p) {
  require(p >= 1, "cumulant_origin_ginse: p must be >= 1");
  require(R >= 0, "cumulant_origin_ginse: R must be >= 0");
  if (R == 0) return 0;
  const double x = 2 * R * R;
  const int cap = 10 * int(std::ceil(x)) + 200;
  double s = 0;
  for (int j = 0; j < cap; ++j) {
    const double P = specfun::reg_gamma_p(2 * j + 2.0, x);
    if (P < 1e-300) break;
    if (p == 1)
      s += P;
    else
      s += polylog_negorder(p - 1, -specfun::reg_gamma_q(2 * j + 2.0, x) / P);
    if (2 * j + 2 > x && P < 1e-20) break;
  }
  return p == 1 ? s : (p % 2 == 0 ? -1 : 1) * s;
}

}  // namespace ginibre::planar
