#include "ginibre/sampler.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ginibre/parallel.hpp"

namespace ginibre::sampler {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

using cd = std::complex<double>;

EigenSample ginoe(int N, Rng& rng) {
  const double sd = 1 / std::sqrt(double(N));
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::MatrixXd A(N, N);
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) A(i, j) = sd * rng.normal();
    Eigen::RealSchur<Eigen::MatrixXd> schur(A, false);
    if (schur.info() != Eigen::Success) continue;
    const auto& T = schur.matrixT();
    EigenSample s;
    s.kind = EnsembleKind::GinOE;
    s.N = N;
    s.redraws = attempt;
    for (int i = 0; i < N;) {
      if (i + 1 < N && T(i + 1, i) != 0) {
        // 2x2 block; Eigen splits blocks with real spectrum
        const double a = T(i, i), b = T(i, i + 1), c = T(i + 1, i), d = T(i + 1, i + 1);
        const double p = 0.5 * (a - d), disc = p * p + b * c;
        if (disc < 0) {
          s.uppers.emplace_back(0.5 * (a + d), std::sqrt(-disc));
        } else {
          s.reals.push_back(0.5 * (a + d) + std::sqrt(disc));
          s.reals.push_back(0.5 * (a + d) - std::sqrt(disc));
        }
        i += 2;
      } else {
        s.reals.push_back(T(i, i));
        ++i;
      }
    }
    if (int(s.reals.size()) % 2 != N % 2) throw ConsistencyError("GinOE sample: real count parity differs from N");
    return s;
  }
  throw SampleError("GinOE sample: real Schur decomposition failed twice");
}

EigenSample ginue(int N, Rng& rng) {
  const double sd = std::sqrt(0.5 / N);
  for (int attempt = 0; attempt < 2; ++attempt) {
    Eigen::MatrixXcd A(N, N);
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i) {
        const double re = rng.normal(), im = rng.normal();
        A(i, j) = cd(sd * re, sd * im);
      }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    if (es.info() != Eigen::Success) continue;
    EigenSample s;
    s.kind = EnsembleKind::GinUE;
    s.N = N;
    s.redraws = attempt;
    const auto& ev = es.eigenvalues();
    s.uppers.assign(ev.data(), ev.data() + N);
    return s;
  }
  throw SampleError("GinUE sample: eigensolver failed twice");
}

EigenSample ginse(int N, Rng& rng) {
  const double sd = std::sqrt(0.25 / N);
  int failures = 0;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::MatrixXcd A(2 * N, 2 * N);
    for (int q = 0; q < N; ++q)
      for (int p = 0; p < N; ++p) {
        const double a1 = rng.normal(), a2 = rng.normal(), b1 = rng.normal(), b2 = rng.normal();
        const cd al(sd * a1, sd * a2), be(sd * b1, sd * b2);
        A(2 * p, 2 * q) = al;
        A(2 * p, 2 * q + 1) = be;
        A(2 * p + 1, 2 * q) = -std::conj(be);
        A(2 * p + 1, 2 * q + 1) = std::conj(al);
      }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    if (es.info() != Eigen::Success) {
      if (++failures >= 2) break;
      continue;
    }
    EigenSample s;
    s.kind = EnsembleKind::GinSE;
    s.N = N;
    s.redraws = attempt;
    bool ok = true;
    for (const cd& z : es.eigenvalues()) {
      if (std::abs(z.imag()) < 1e-12) ok = false;
      if (z.imag() > 0) s.uppers.push_back(z);
    }
    if (ok && int(s.uppers.size()) == N) return s;
  }
  throw SampleError("GinSE sample: no usable spectrum");
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  for (auto& w : s_) w = splitmix64(seed);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t k = index;
  return Rng(seed ^ splitmix64(k));
}

Rng::result_type Rng::operator()() {
  const std::uint64_t r = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return r;
}

double Rng::uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  // Marsaglia polar
  double u, v, q;
  do {
    u = 2 * uniform() - 1;
    v = 2 * uniform() - 1;
    q = u * u + v * v;
  } while (q >= 1 || q == 0);
  const double f = std::sqrt(-2 * std::log(q) / q);
  spare_ = v * f;
  return u * f;
}

EigenSample sample_matrix(EnsembleKind kind, int N, Rng& rng) {
  if (N < 1) throw DomainError("sample_matrix: N must be >= 1");
  switch (kind) {
    case EnsembleKind::GinOE: return ginoe(N, rng);
    case EnsembleKind::GinUE: return ginue(N, rng);
    case EnsembleKind::GinSE: return ginse(N, rng);
  }
  throw DomainError("sample_matrix: bad ensemble");
}

Classified classify_real(const std::vector<cd>& eigs) {
  Classified c;
  std::vector<cd> lowers;
  for (const cd& z : eigs) {
    if (std::abs(z.imag()) < 1e-8 * std::max(1.0, std::abs(z)))
      c.reals.push_back(z.real());
    else if (z.imag() > 0)
      c.uppers.push_back(z);
    else
      lowers.push_back(z);
  }
  if (lowers.size() != c.uppers.size()) throw PairingError("classify_real: unequal numbers of upper and lower eigenvalues");
  std::vector<bool> used(lowers.size(), false);
  for (const cd& u : c.uppers) {
    std::size_t best = lowers.size();
    double bd = 1e-6;
    for (std::size_t i = 0; i < lowers.size(); ++i)
      if (!used[i] && std::abs(std::conj(u) - lowers[i]) <= bd) {
        bd = std::abs(std::conj(u) - lowers[i]);
        best = i;
      }
    if (best == lowers.size()) throw PairingError("classify_real: eigenvalue without conjugate partner");
    used[best] = true;
  }
  std::sort(c.reals.begin(), c.reals.end());
  return c;
}

stats::CountVector count_in_discs(const EigenSample& s, const std::vector<double>& radii, Scale scale) {
  if (!std::is_sorted(radii.begin(), radii.end())) throw DomainError("count_in_discs: radii must be sorted");
  const double f = scale == Scale::Origin ? std::sqrt(double(s.N)) : 1.0;
  std::vector<double> re, cx;
  re.reserve(s.reals.size());
  cx.reserve(s.uppers.size());
  for (double x : s.reals) re.push_back(f * std::abs(x));
  for (const cd& z : s.uppers) cx.push_back(f * std::abs(z));
  std::sort(re.begin(), re.end());
  std::sort(cx.begin(), cx.end());
  // a non-real GinOE eigenvalue brings its conjugate along
  const std::uint32_t w = s.kind == EnsembleKind::GinOE ? 2 : 1;
  stats::CountVector c(radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    c.n_real[i] = std::uint32_t(std::upper_bound(re.begin(), re.end(), radii[i]) - re.begin());
    c.n_complex[i] = w * std::uint32_t(std::upper_bound(cx.begin(), cx.end(), radii[i]) - cx.begin());
    c.n_total[i] = c.n_real[i] + c.n_complex[i];
  }
  return c;
}

void sample_counts_bernoulli(const std::vector<planar::MomentTable>& tables, Rng& rng, stats::CountVector& out) {
  const std::size_t nr = tables.size();
  if (nr == 0) return;
  const int N = tables[0].N;
  std::vector<std::uint32_t> hits(nr + 1, 0);
  std::vector<double> thr(nr);
  for (int j = 0; j < N; ++j) {
    const double u = rng.uniform();
    // thresholds nondecreasing in radius (running max guards quadrature noise)
    double m = 0;
    for (std::size_t r = 0; r < nr; ++r) thr[r] = m = std::max(m, tables[r].L[j]);
    // first radius whose disc captures index j
    const std::size_t first = std::size_t(std::upper_bound(thr.begin(), thr.end(), u) - thr.begin());
    ++hits[first];
  }
  std::uint32_t run = 0;
  for (std::size_t r = 0; r < nr; ++r) {
    run += hits[r];
    out.n_total[r] = run;
    out.n_complex[r] = run;
    out.n_real[r] = 0;
  }
}

std::uint32_t sample_counts_bernoulli(const planar::RadialPotential& pot, int N, int beta, double a, Rng& rng) {
  std::vector<planar::MomentTable> t{planar::moment_table(pot, N, beta, a)};
  stats::CountVector c({a});
  sample_counts_bernoulli(t, rng, c);
  return c.n_total[0];
}

CampaignResult run_campaign(const SimConfig& cfg) {
  if (cfg.samples < 1) throw DomainError("run_campaign: samples must be >= 1");
  if (cfg.N < 1) throw DomainError("run_campaign: N must be >= 1");
  if (cfg.fast_bernoulli && cfg.kind == EnsembleKind::GinOE)
    throw DomainError("run_campaign: the Bernoulli path needs beta = 2 or 4");
  if (!std::is_sorted(cfg.radii.begin(), cfg.radii.end())) throw DomainError("run_campaign: radii must be sorted");
  const std::uint64_t b =
      cfg.batch_size ? cfg.batch_size : std::uint64_t(std::ceil(std::sqrt(double(cfg.samples))));
  const std::uint64_t nblocks = (cfg.samples + b - 1) / b;

  std::vector<planar::MomentTable> tables;
  if (cfg.fast_bernoulli) {
    const int beta = beta_of(cfg.kind);
    const auto pot = cfg.potential ? *cfg.potential
                                   : (beta == 4 ? planar::ginse_gaussian() : planar::ginue_gaussian());
    const double f = cfg.scale == Scale::Origin ? 1 / std::sqrt(double(cfg.N)) : 1.0;
    for (double r : cfg.radii) tables.push_back(planar::moment_table(pot, cfg.N, beta, f * r, cfg.threads));
  }

  std::vector<stats::MomentAccumulator> blocks(nblocks);
  std::vector<std::uint64_t> failed(nblocks, 0), redraws(nblocks, 0);
  parallel_for(
      nblocks,
      [&](std::size_t k) {
        stats::MomentAccumulator acc(cfg.radii, b);
        stats::CountVector c(cfg.radii);
        const std::uint64_t lo = k * b, hi = std::min(cfg.samples, lo + b);
        for (std::uint64_t s = lo; s < hi; ++s) {
          Rng rng = Rng::stream(cfg.seed, s);
          if (cfg.fast_bernoulli) {
            sample_counts_bernoulli(tables, rng, c);
            acc.accumulate(c);
            continue;
          }
          try {
            const auto smp = sample_matrix(cfg.kind, cfg.N, rng);
            redraws[k] += smp.redraws;
            acc.accumulate(count_in_discs(smp, cfg.radii, cfg.scale));
          } catch (const SampleError&) {
            ++failed[k];
          }
        }
        blocks[k] = std::move(acc);
      },
      cfg.threads);

  CampaignResult res{stats::MomentAccumulator(cfg.radii, b), 0, 0};
  for (std::size_t k = 0; k < nblocks; ++k) {
    res.acc.merge(blocks[k]);
    res.failed += failed[k];
    res.redraws += redraws[k];
  }
  if (res.failed * 1000 > cfg.samples)
    throw SampleError("run_campaign: " + std::to_string(res.failed) + " of " + std::to_string(cfg.samples) +
                      " samples failed");
  return res;
}

}  // namespace ginibre::sampler
