#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ginibre/common.hpp"
#include "ginibre/planar_fcs.hpp"
#include "ginibre/stats.hpp"

namespace ginibre::sampler {

// xoshiro256++, seeded through splitmix64
class Rng {
 public:
  using result_type = std::uint64_t;
  explicit Rng(std::uint64_t seed);
  // stream for sample `index` of a campaign with master seed `seed`
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  double uniform();  // [0, 1), 53 bits
  double normal();

 private:
  std::uint64_t s_[4];
  std::optional<double> spare_;
};

struct EigenSample {
  EnsembleKind kind = EnsembleKind::GinUE;
  int N = 0;
  std::vector<double> reals;
  // Im > 0 for GinOE/GinSE; every eigenvalue for GinUE
  std::vector<std::complex<double>> uppers;
  int redraws = 0;
};

EigenSample sample_matrix(EnsembleKind kind, int N, Rng& rng);

struct Classified {
  std::vector<double> reals;
  std::vector<std::complex<double>> uppers;
};
// threshold classification of a real matrix's spectrum from a complex solver
Classified classify_real(const std::vector<std::complex<double>>& eigs);

enum class Scale { FiniteN, Origin };

stats::CountVector count_in_discs(const EigenSample& s, const std::vector<double>& radii, Scale scale);

// sum of independent Bernoulli(L_j); one uniform per j shared across the tables
void sample_counts_bernoulli(const std::vector<planar::MomentTable>& tables, Rng& rng, stats::CountVector& out);
std::uint32_t sample_counts_bernoulli(const planar::RadialPotential& pot, int N, int beta, double a, Rng& rng);

struct SimConfig {
  EnsembleKind kind = EnsembleKind::GinUE;
  int N = 1;
  std::vector<double> radii;
  Scale scale = Scale::FiniteN;
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  bool fast_bernoulli = false;
  std::optional<planar::RadialPotential> potential;  // Bernoulli path; Gaussian by default
  std::uint64_t batch_size = 0;                      // 0: ceil(sqrt(samples))
  unsigned threads = 0;
};

struct CampaignResult {
  stats::MomentAccumulator acc;
  std::uint64_t failed = 0;
  std::uint64_t redraws = 0;
};

CampaignResult run_campaign(const SimConfig& cfg);

}  // namespace ginibre::sampler
