#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ginibre::stats {

struct CountVector {
  std::vector<double> radii;
  std::vector<std::uint32_t> n_total, n_real, n_complex;

  explicit CountVector(std::vector<double> r = {})
      : radii(std::move(r)), n_total(radii.size()), n_real(radii.size()), n_complex(radii.size()) {}
};

// exact integer power sums over a run of samples
struct PowerSums {
  std::uint64_t n = 0;
  // per radius: total S1..S4, real S1..S4, complex S1..S4, sum real*complex
  std::vector<__int128> s;

  static constexpr int stride = 13;
  void resize(std::size_t radii) { s.assign(radii * stride, 0); }
  void add(const CountVector& c);
  PowerSums& operator+=(const PowerSums& o);
  bool operator<(const PowerSums& o) const;
  bool operator==(const PowerSums& o) const { return n == o.n && s == o.s; }
};

class MomentAccumulator {
 public:
  MomentAccumulator() = default;
  MomentAccumulator(std::vector<double> radii, std::uint64_t batch_size);

  void accumulate(const CountVector& c);
  // exact; commutative and associative
  void merge(const MomentAccumulator& o);

  std::uint64_t n() const;
  const std::vector<double>& radii() const { return radii_; }
  std::uint64_t batch_size() const { return batch_; }
  PowerSums totals() const;
  // closed batches plus the open one, canonical order
  std::vector<PowerSums> batches() const;

  std::string serialize() const;
  static MomentAccumulator deserialize(const std::string& blob);

  bool operator==(const MomentAccumulator& o) const;

 private:
  void close_current();

  std::vector<double> radii_;
  std::uint64_t batch_ = 1;
  std::vector<PowerSums> closed_;
  PowerSums current_;
};

enum class Channel { Total = 0, Real = 1, Complex = 2 };

struct ChannelStats {
  double mean = 0, var = 0, k3 = 0, k4 = 0;
  double se_mean = 0, se_var = 0, se_k3 = 0, se_k4 = 0;
};

struct RadiusReport {
  double radius = 0;
  ChannelStats total, real, complex;
  double cov_rc = 0, se_cov = 0;
  const ChannelStats& channel(Channel c) const { return c == Channel::Total ? total : c == Channel::Real ? real : complex; }
};

struct Report {
  std::uint64_t n = 0;
  std::vector<RadiusReport> rows;
};

// mean, k-statistics k2..k4, covariance from one set of power sums
struct Estimates {
  double mean, k2, k3, k4;
};
Estimates estimates(const PowerSums& p, std::size_t radius, Channel c);
double covariance(const PowerSums& p, std::size_t radius);

Report report(const MomentAccumulator& acc);

}  // namespace ginibre::stats
