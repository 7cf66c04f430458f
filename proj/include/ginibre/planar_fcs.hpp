#pragma once

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ginibre/quadrature.hpp"

namespace ginibre::planar {

// W(z) = g(|z|); g may depend on N (Mittag-Leffler log term)
struct RadialPotential {
  std::function<double(double r, int N)> g, g_prime, g_second;
  double support_cutoff = std::numeric_limits<double>::infinity();
  std::string label;

  // Delta W with Delta a quarter of the Laplacian
  double quarter_laplacian(double a, int N) const { return 0.25 * (g_second(a, N) + g_prime(a, N) / a); }
};

RadialPotential ginse_gaussian();
RadialPotential ginue_gaussian();
RadialPotential mittag_leffler(double alpha, double b, double c);
RadialPotential truncated_unitary(double c_tilde);
// g, g', g'' given as expressions in r
RadialPotential custom_potential(const std::string& g, const std::string& gp, const std::string& gpp,
                                 double cutoff = std::numeric_limits<double>::infinity());
// "ginse_gaussian", "ginue_gaussian", "mittag_leffler", "truncated_unitary" with params
RadialPotential builtin_potential(const std::string& name, const std::vector<double>& params = {});

// numeric probes of the suitability conditions; empty when nothing looks off
std::vector<std::string> suitability_warnings(const RadialPotential& pot, int N);

struct MomentTable {
  int N = 0;
  int beta = 4;
  double a = 0;
  Eigen::VectorXi index;  // j of h_j
  Eigen::VectorXd log_h, L, M;
};

MomentTable moment_table(const RadialPotential& pot, int N, int beta, double a, unsigned threads = 0);

double mgf(const MomentTable& t, double u);
double log_mgf(const MomentTable& t, double u);

enum class Regime { FiniteN, Origin, Bulk, Edge };

struct CumulantResult {
  int p = 1;
  double value = 0;
  Regime regime = Regime::FiniteN;
  double scale_factor = 1;
  std::optional<double> limit;  // predicted large-N value, when one exists
};

CumulantResult cumulant_finite(const MomentTable& t, int p);

double cumulant_bulk_limit(int p, const quad::QuadSpec& spec = {1e-13, 1e-12});
double cumulant_edge_limit(int p, double S, const quad::QuadSpec& spec = {1e-13, 1e-12});
// integrand of the bulk/edge limits, sign included
double limit_integrand(int p, double x);

// sqrt(2/(N dW(a))) kappa_p, with a kappa_bulk as limit
CumulantResult scaled_cumulant(const RadialPotential& pot, int N, double a, int p);
// a = 1 - S / sqrt(2 dW(1) N), limit kappa_edge(S)
CumulantResult scaled_cumulant_edge(const RadialPotential& pot, int N, double S, int p);
double edge_radius(const RadialPotential& pot, int N, double S);

double cumulant_origin_ginse(double R, int p);

}  // namespace ginibre::planar
