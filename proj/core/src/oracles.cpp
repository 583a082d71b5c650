#include "maxvar/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "maxvar/error.hpp"
#include "maxvar/parallel.hpp"

namespace maxvar {
namespace {

/// Piecewise-linear evaluation straight from the knot list.
class KnotTable {
 public:
  explicit KnotTable(const RadialProfile& p) {
    for (const Knot& k : p.knots()) {
      t_.push_back(k.t);
      left_.push_back(k.left);
      right_.push_back(k.right);
    }
    // Integral of F over [0, t_i].
    cum_.assign(t_.size(), 0.0);
    for (std::size_t i = 1; i < t_.size(); ++i) {
      cum_[i] = cum_[i - 1] + 0.5 * (right_[i - 1] + left_[i]) * (t_[i] - t_[i - 1]);
    }
  }

  double value(double t) const {
    if (t >= t_.back()) return 0.0;
    const std::size_t i = segment(t);
    const double w = (t - t_[i]) / (t_[i + 1] - t_[i]);
    return right_[i] + w * (left_[i + 1] - right_[i]);
  }

  /// Integral of F over [0, t], t >= 0.
  double primitive(double t) const {
    if (t >= t_.back()) return cum_.back();
    const std::size_t i = segment(t);
    const double h = t - t_[i];
    return cum_[i] + h * (right_[i] + 0.5 * h * (left_[i + 1] - right_[i]) / (t_[i + 1] - t_[i]));
  }

  /// Integral of f(u) = F(|u|) over [0, u], odd in u.
  double odd_primitive(double u) const { return u >= 0 ? primitive(u) : -primitive(-u); }

  double support() const { return t_.back(); }

 private:
  std::size_t segment(double t) const {
    // Last index with t_i <= t, skipping zero-width jump segments.
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
    while (i + 1 < t_.size() && t_[i + 1] == t_[i]) ++i;
    return i;
  }

  std::vector<double> t_, left_, right_, cum_;
};

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** seeded from splitmix64.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) {
    for (auto& w : s_) w = splitmix64(seed);
  }
  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }
  /// Uniform in (0, 1).
  double open_unit() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u = open_unit(), v = open_unit();
    const double rad = std::sqrt(-2.0 * std::log(u));
    spare_ = rad * std::sin(2.0 * std::numbers::pi * v);
    has_spare_ = true;
    return rad * std::cos(2.0 * std::numbers::pi * v);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

Oracle1dResult oracle_1d_maximal(const RadialProfile& profile, double x, double beta,
                                 int resolution) {
  if (resolution < 3) throw ParameterError("oracle resolution must be at least 3");
  if (!(beta > 0.0 && beta < 1.0)) throw ParameterError("n = 1 needs beta in (0, 1)");
  const KnotTable f(profile);
  const double L = std::abs(x) + f.support();
  const int N = resolution;
  const double h = 2.0 * L / (N - 1);
  std::vector<double> node(N), prim(N);
  for (int i = 0; i < N; ++i) {
    node[i] = -L + i * h;
    prim[i] = f.odd_primitive(node[i]);
  }
  // value = 2^-beta len^(beta - 1) * integral; len = k h on the grid.
  std::vector<double> weight(N);
  for (int k = 1; k < N; ++k) weight[k] = std::pow(0.5, beta) * std::pow(k * h, beta - 1.0);

  auto value = [&](double a, double b) {
    if (!(b > a)) return 0.0;
    return std::pow(0.5, beta) * std::pow(b - a, beta - 1.0) *
           (f.odd_primitive(b) - f.odd_primitive(a));
  };

  Oracle1dResult best{0.0, x, x};
  const int last_left = static_cast<int>(std::floor((x + L) / h));
  for (int i = 0; i <= std::min(last_left, N - 1); ++i) {
    for (int j = std::max(i + 1, last_left); j < N; ++j) {
      if (node[j] < x) continue;
      const double v = weight[j - i] * (prim[j] - prim[i]);
      if (v > best.value) best = {v, node[i], node[j]};
    }
  }

  // Zoom: (2m + 1)^2 candidates around the incumbent, window halved each round.
  const int m = 10;
  double wa = h, wb = h;
  for (int round = 0; round < 60; ++round) {
    const Oracle1dResult centre = best;
    for (int p = -m; p <= m; ++p) {
      const double a = std::min(centre.a + wa * p / m, x);
      for (int q = -m; q <= m; ++q) {
        const double b = std::max(centre.b + wb * q / m, x);
        const double v = value(a, b);
        if (v > best.value) best = {v, a, b};
      }
    }
    wa *= 0.5;
    wb *= 0.5;
  }
  return best;
}

MonteCarloEstimate oracle_mc_ball_average(const RadialProfile& profile, const AxisBall& ball,
                                          const AmbientParams& params, long samples,
                                          std::uint64_t seed) {
  if (samples <= 0) throw ParameterError("Monte Carlo needs at least one sample");
  const KnotTable f(profile);
  const int n = params.n();
  constexpr long chunk = 1 << 16;
  const std::size_t chunks = static_cast<std::size_t>((samples + chunk - 1) / chunk);
  std::vector<double> sum(chunks), sum_sq(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    std::uint64_t mix = seed ^ (0xd1b54a32d192ed03ULL * (c + 1));
    Stream rng(splitmix64(mix));
    const long count = std::min(chunk, samples - static_cast<long>(c) * chunk);
    double s1 = 0.0, s2 = 0.0;
    std::vector<double> g(n);
    for (long k = 0; k < count; ++k) {
      double norm2 = 0.0;
      for (double& gi : g) {
        gi = rng.gaussian();
        norm2 += gi * gi;
      }
      const double rho = ball.r * std::pow(rng.open_unit(), 1.0 / n);
      double y0 = ball.d;
      double rest2 = 0.0;
      if (n == 1) {
        y0 += rho * (g[0] >= 0 ? 1.0 : -1.0);
      } else {
        const double inv = rho / std::sqrt(norm2);
        y0 += g[0] * inv;
        for (int i = 1; i < n; ++i) rest2 += (g[i] * inv) * (g[i] * inv);
      }
      const double v = f.value(std::sqrt(y0 * y0 + rest2));
      s1 += v;
      s2 += v * v;
    }
    sum[c] = s1;
    sum_sq[c] = s2;
  });
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    s1 += sum[c];
    s2 += sum_sq[c];
  }
  const double N = static_cast<double>(samples);
  const double mean = s1 / N;
  const double var = samples > 1 ? std::max(0.0, (s2 - N * mean * mean) / (N - 1.0)) : 0.0;
  return {mean, std::sqrt(var / N)};
}

double oracle_dense_average_2d(const RadialProfile& profile, const AxisBall& ball,
                               int resolution) {
  if (resolution < 2) throw ParameterError("dense oracle resolution must be at least 2");
  const KnotTable f(profile);
  const int N = resolution;
  const double hr = ball.r / N;
  const double hp = std::numbers::pi / N;
  std::vector<double> cosines(N + 1);
  for (int j = 0; j <= N; ++j) cosines[j] = std::cos(j * hp);
  std::vector<double> rows(N);
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t i) {
    const double rho = (i + 0.5) * hr;
    double acc = 0.0;
    for (int j = 0; j <= N; ++j) {
      const double t2 = ball.d * ball.d + rho * rho + 2.0 * ball.d * rho * cosines[j];
      const double w = (j == 0 || j == N) ? 0.5 : 1.0;
      acc += w * f.value(std::sqrt(std::max(0.0, t2)));
    }
    rows[i] = acc * hp * rho;
  });
  double total = 0.0;
  for (double v : rows) total += v;
  // Upper half-disc doubled, divided by the area.
  return 2.0 * total * hr / (std::numbers::pi * ball.r * ball.r);
}

}  // namespace maxvar
