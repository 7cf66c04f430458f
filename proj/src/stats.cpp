#include "ginibre/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include "ginibre/common.hpp"

namespace ginibre::stats {

namespace {

using i128 = __int128;
using ld = long double;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

constexpr char kMagic[8] = {'G', 'N', 'B', 'M', 'A', 'C', 'C', '\0'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}
void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

struct Reader {
  const std::string& b;
  std::size_t pos = 0;
  std::uint64_t u(int bytes) {
    if (pos + bytes > b.size()) throw DomainError("accumulator blob truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t(static_cast<unsigned char>(b[pos + i])) << (8 * i);
    pos += bytes;
    return v;
  }
};

void put_sums(std::string& out, const PowerSums& p) {
  put_u64(out, p.n);
  for (i128 v : p.s) {
    const auto w = static_cast<unsigned __int128>(v);
    put_u64(out, std::uint64_t(w));
    put_u64(out, std::uint64_t(w >> 64));
  }
}

PowerSums get_sums(Reader& r, std::size_t nr) {
  PowerSums p;
  p.n = r.u(8);
  p.resize(nr);
  for (auto& v : p.s) {
    const std::uint64_t lo = r.u(8), hi = r.u(8);
    v = static_cast<i128>((static_cast<unsigned __int128>(hi) << 64) | lo);
  }
  return p;
}

i128 rounded_div(i128 a, i128 n) {
  i128 q = a / n, rem = a % n;
  if (2 * (rem < 0 ? -rem : rem) >= n) q += rem < 0 ? -1 : 1;
  return q;
}

}  // namespace

void PowerSums::add(const CountVector& c) {
  ++n;
  for (std::size_t r = 0; r < c.radii.size(); ++r) {
    i128* q = &s[r * stride];
    const std::uint32_t x[3] = {c.n_total[r], c.n_real[r], c.n_complex[r]};
    for (int ch = 0; ch < 3; ++ch) {
      const i128 v = x[ch];
      q[4 * ch] += v;
      q[4 * ch + 1] += v * v;
      q[4 * ch + 2] += v * v * v;
      q[4 * ch + 3] += v * v * v * v;
    }
    q[12] += i128(x[1]) * x[2];
  }
}

PowerSums& PowerSums::operator+=(const PowerSums& o) {
  if (s.empty()) s.assign(o.s.size(), 0);
  n += o.n;
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += o.s[i];
  return *this;
}

bool PowerSums::operator<(const PowerSums& o) const {
  if (n != o.n) return n < o.n;
  return std::lexicographical_compare(s.begin(), s.end(), o.s.begin(), o.s.end());
}

MomentAccumulator::MomentAccumulator(std::vector<double> radii, std::uint64_t batch_size)
    : radii_(std::move(radii)), batch_(std::max<std::uint64_t>(1, batch_size)) {
  if (!std::is_sorted(radii_.begin(), radii_.end())) throw DomainError("accumulator: radii must be sorted");
  current_.resize(radii_.size());
}

void MomentAccumulator::close_current() {
  if (current_.n == 0) return;
  closed_.push_back(std::move(current_));
  current_ = PowerSums{};
  current_.resize(radii_.size());
}

void MomentAccumulator::accumulate(const CountVector& c) {
  if (c.radii != radii_) throw GridMismatch("accumulate: radius grid differs from the accumulator's");
  current_.add(c);
  if (current_.n >= batch_) {
    close_current();
    // keep canonical order so equal states compare equal
    std::sort(closed_.begin(), closed_.end());
  }
}

void MomentAccumulator::merge(const MomentAccumulator& o) {
  if (o.radii_ != radii_) throw GridMismatch("merge: radius grid differs");
  close_current();
  for (const auto& b : o.closed_) closed_.push_back(b);
  if (o.current_.n > 0) closed_.push_back(o.current_);
  std::sort(closed_.begin(), closed_.end());
}

std::uint64_t MomentAccumulator::n() const {
  std::uint64_t t = current_.n;
  for (const auto& b : closed_) t += b.n;
  return t;
}

PowerSums MomentAccumulator::totals() const {
  PowerSums t;
  t.resize(radii_.size());
  for (const auto& b : closed_) t += b;
  t += current_;
  return t;
}

std::vector<PowerSums> MomentAccumulator::batches() const {
  auto v = closed_;
  if (current_.n > 0) v.push_back(current_);
  std::sort(v.begin(), v.end());
  return v;
}

bool MomentAccumulator::operator==(const MomentAccumulator& o) const {
  return radii_ == o.radii_ && batch_ == o.batch_ && batches() == o.batches();
}

std::string MomentAccumulator::serialize() const {
  std::string out(kMagic, 8);
  put_u32(out, kVersion);
  put_u32(out, PowerSums::stride);
  put_u64(out, radii_.size());
  for (double r : radii_) put_u64(out, std::bit_cast<std::uint64_t>(r));
  put_u64(out, batch_);
  put_u64(out, closed_.size());
  for (const auto& b : closed_) put_sums(out, b);
  put_sums(out, current_);
  return out;
}

MomentAccumulator MomentAccumulator::deserialize(const std::string& blob) {
  if (blob.size() < 8 || std::memcmp(blob.data(), kMagic, 8) != 0) throw DomainError("accumulator blob: bad magic");
  Reader r{blob, 8};
  if (r.u(4) != kVersion) throw DomainError("accumulator blob: unsupported version");
  if (r.u(4) != PowerSums::stride) throw DomainError("accumulator blob: layout mismatch");
  const std::uint64_t nr = r.u(8);
  if (nr > blob.size()) throw DomainError("accumulator blob: corrupt radius count");
  std::vector<double> radii(nr);
  for (auto& x : radii) x = std::bit_cast<double>(r.u(8));
  MomentAccumulator a(std::move(radii), r.u(8));
  const std::uint64_t nb = r.u(8);
  if (nb > blob.size()) throw DomainError("accumulator blob: corrupt batch count");
  for (std::uint64_t i = 0; i < nb; ++i) a.closed_.push_back(get_sums(r, nr));
  a.current_ = get_sums(r, nr);
  if (r.pos != blob.size()) throw DomainError("accumulator blob: trailing bytes");
  return a;
}

Estimates estimates(const PowerSums& p, std::size_t radius, Channel c) {
  const i128* q = &p.s[radius * PowerSums::stride + 4 * int(c)];
  const i128 n = p.n;
  if (n == 0) return {nan, nan, nan, nan};
  const ld nl = ld(p.n);
  Estimates e{double(ld(q[0]) / nl), nan, nan, nan};
  if (n < 2) return e;
  e.k2 = double(ld(n * q[1] - q[0] * q[0]) / (nl * (nl - 1)));
  // shift to the nearest integer of the mean; sums stay exact
  const i128 s = rounded_div(q[0], n);
  const i128 T1 = q[0] - n * s;
  const i128 T2 = q[1] - 2 * s * q[0] + n * s * s;
  const i128 T3 = q[2] - 3 * s * q[1] + 3 * s * s * q[0] - n * s * s * s;
  const i128 T4 = q[3] - 4 * s * q[2] + 6 * s * s * q[1] - 4 * s * s * s * q[0] + n * s * s * s * s;
  const ld d = ld(T1) / nl;
  const ld M2 = ld(T2) - nl * d * d;
  const ld M3 = ld(T3) - 3 * d * ld(T2) + 2 * nl * d * d * d;
  const ld M4 = ld(T4) - 4 * d * ld(T3) + 6 * d * d * ld(T2) - 3 * nl * d * d * d * d;
  if (n >= 3) e.k3 = double(nl * M3 / ((nl - 1) * (nl - 2)));
  if (n >= 4) e.k4 = double((nl * (nl + 1) * M4 - 3 * (nl - 1) * M2 * M2) / ((nl - 1) * (nl - 2) * (nl - 3)));
  return e;
}

double covariance(const PowerSums& p, std::size_t radius) {
  const i128* q = &p.s[radius * PowerSums::stride];
  const i128 n = p.n;
  if (n < 2) return nan;
  const ld nl = ld(p.n);
  return double(ld(n * q[12] - q[4] * q[8]) / (nl * (nl - 1)));
}

Report report(const MomentAccumulator& acc) {
  const PowerSums tot = acc.totals();
  if (tot.n < 16) throw InsufficientSamples("report: need at least 16 samples, have " + std::to_string(tot.n));
  std::vector<PowerSums> bs;
  std::uint64_t used = 0;
  for (auto& b : acc.batches())
    if (b.n >= 4) {
      used += b.n;
      bs.push_back(std::move(b));
    }
  // weighted batch-means standard error
  auto se = [&](auto&& stat) {
    if (bs.size() < 2) return nan;
    ld wm = 0;
    for (const auto& b : bs) wm += ld(b.n) * stat(b);
    wm /= ld(used);
    ld ss = 0;
    for (const auto& b : bs) {
      const ld d = stat(b) - wm;
      ss += ld(b.n) * d * d;
    }
    return double(std::sqrt(ss / (ld(bs.size() - 1) * ld(used))));
  };

  Report rep;
  rep.n = tot.n;
  for (std::size_t r = 0; r < acc.radii().size(); ++r) {
    RadiusReport row;
    row.radius = acc.radii()[r];
    for (Channel c : {Channel::Total, Channel::Real, Channel::Complex}) {
      const auto e = estimates(tot, r, c);
      ChannelStats cs{e.mean, e.k2, e.k3, e.k4};
      cs.se_mean = se([&](const PowerSums& b) { return estimates(b, r, c).mean; });
      cs.se_var = se([&](const PowerSums& b) { return estimates(b, r, c).k2; });
      cs.se_k3 = se([&](const PowerSums& b) { return estimates(b, r, c).k3; });
      cs.se_k4 = se([&](const PowerSums& b) { return estimates(b, r, c).k4; });
      (c == Channel::Total ? row.total : c == Channel::Real ? row.real : row.complex) = cs;
    }
    row.cov_rc = covariance(tot, r);
    row.se_cov = se([&](const PowerSums& b) { return covariance(b, r); });
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ginibre::stats
