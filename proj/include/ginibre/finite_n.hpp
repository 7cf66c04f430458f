#pragma once

#include <optional>

#include "ginibre/common.hpp"

namespace ginibre::finite_n {

struct MeanBreakdown {
  double real_part = 0;
  double complex_part = 0;
};

struct FiniteMeanResult {
  double value = 0;
  std::optional<MeanBreakdown> breakdown;
};

// GinUE: sum_{k<N} P(k+1, N a^2)
FiniteMeanResult mean_disc_ginue(int N, double a);
double mean_disc_ginue_closed(int N, double a);

// GinSE: sum_{k<N} P(2k+2, 2N a^2)
FiniteMeanResult mean_disc_ginse(int N, double a);
// half the GinUE(2N) mean minus the odd-power exponential tail
double mean_disc_ginse_via_ginue(int N, double a);
// same with the tail summed into a 1F2; empty when it would overflow
std::optional<double> mean_disc_ginse_hypergeometric(int N, double a);

double mean_disc_ginoe_complex(int N, double a);
double mean_interval_ginoe_real(int N, double a);
FiniteMeanResult mean_disc_ginoe(int N, double a);

// (1/sqrt2) sum_{k<=N-2} (2k-1)!!/(2k)!! P(k+1/2, N a^2), two ways
double ginoe_real_leading_sum(int N, double a);
double ginoe_real_leading_sum_gamma(int N, double a);

// E_{N,R}(infinity) from the double-factorial sums
double ginoe_expected_reals(int N);

FiniteMeanResult mean_disc(EnsembleKind kind, int N, double a);

double deficit_outside(int N, EnsembleKind kind);
double deficit_asymptote(int N, EnsembleKind kind);

}  // namespace ginibre::finite_n
