#pragma once

#include <array>
#include <optional>

#include "ginibre/common.hpp"
#include "ginibre/finite_n.hpp"
#include "ginibre/quadrature.hpp"

namespace ginibre::origin {

struct VarianceBreakdown {
  double var_real = 0;
  double var_complex = 0;
  double covariance = 0;
  double total = 0;
};

// means in the origin limit; GinOE carries the real/complex split
finite_n::FiniteMeanResult mean_origin(EnsembleKind kind, double R);
// radial density rho with E(R) = int_0^R 2 r rho(r) dr (GinOE: complex part)
double radial_density_origin(EnsembleKind kind, double r);

double var_origin_ginue(double R);
double var_origin_ginue_series(double R);
double var_origin_ginue_shirai(double R);
// derivative of var_origin_ginue, 2R e^{-2R^2} I0(2R^2)
double var_origin_ginue_derivative(double R);

double var_origin_ginse(double R);         // Bessel I and 1F2
double var_origin_ginse_series(double R);  // sum P(2k)Q(2k)
double var_origin_ginse_struve(double R);  // Bessel J and Struve
// sum_k P(2k+1, 2R^2) Q(2k+1, 2R^2), and its closed form
double ginse_odd_pair_series(double R);
double ginse_odd_pair_closed(double R);

double var_origin_ginoe_real(double R);
double cov_origin_ginoe(double R);
double var_origin_ginoe_complex(double R);
VarianceBreakdown var_origin_ginoe(double R);

// I_{+,k} (index 0..3) and I_{-,k} (index 4..7)
struct PairIntegrals {
  std::array<double, 4> plus{}, minus{};
  double connected() const;  // I_- - I_+
};
PairIntegrals ginoe_pair_integrals(double R, const quad::QuadSpec& spec = {});

double var_origin(EnsembleKind kind, double R);

enum class Quantity {
  MeanGinUE,
  MeanGinSE,
  MeanGinOEReal,
  MeanGinOEComplex,
  MeanGinOE,
  VarGinUE,
  VarGinSE,
  VarGinOEReal,
  VarGinOEComplex,
  CovGinOE,
  VarGinOE,
};
enum class Regime { Small, Large };

struct Asymptote {
  double coefficient;
  int power;
};

// leading behaviour c R^p; empty where no closed leading term is tabulated
std::optional<Asymptote> asymptote(Quantity q, Regime r);

double universal_slope(EnsembleKind kind);
double edge_profile_f(double S);

enum class KernelCheck { RealReal, ComplexConnected };
double ginoe_origin_kernel_oracle(double R, KernelCheck which);

}  // namespace ginibre::origin
