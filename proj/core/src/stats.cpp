#include "picrl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "picrl/error.hpp"

namespace picrl::evalstat {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Fault("incomplete_beta: continued fraction failed to converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw ConfigError("incomplete_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
  if (dof <= 0.0) throw ConfigError("student_t_cdf: dof must be positive");
  if (t == 0.0) return 0.5;
  if (std::isinf(t)) return t > 0.0 ? 1.0 : 0.0;
  const double x = dof / (dof + t * t);
  const double tail = 0.5 * incomplete_beta(0.5 * dof, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw ConfigError("mean: empty sample");
  double s = 0.0;
  for (double v : xs) s += v;
  return s / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw ConfigError("sample_variance: needs at least two values");
  const double m = mean(xs);
  double s = 0.0;
  for (double v : xs) s += (v - m) * (v - m);
  return s / static_cast<double>(xs.size() - 1);
}

TTestResult ttest_2samp(std::span<const double> a, std::span<const double> b,
                        bool equal_variance) {
  if (a.size() < 2 || b.size() < 2)
    throw ConfigError("ttest_2samp: each sample needs at least two values");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = mean(a), mb = mean(b);
  const double va = sample_variance(a), vb = sample_variance(b);

  TTestResult r;
  double se2;
  if (equal_variance) {
    r.dof = na + nb - 2.0;
    const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / r.dof;
    se2 = pooled * (1.0 / na + 1.0 / nb);
  } else {
    const double ta = va / na, tb = vb / nb;
    se2 = ta + tb;
    r.dof = se2 > 0.0
                ? se2 * se2 / (ta * ta / (na - 1.0) + tb * tb / (nb - 1.0))
                : na + nb - 2.0;
  }
  if (se2 <= 0.0) {
    // Degenerate zero-variance samples.
    if (ma == mb) return TTestResult{0.0, 1.0, r.dof};
    const double inf = std::numeric_limits<double>::infinity();
    return TTestResult{ma > mb ? inf : -inf, 0.0, r.dof};
  }
  r.t = (ma - mb) / std::sqrt(se2);
  r.p = 2.0 * student_t_cdf(-std::abs(r.t), r.dof);
  return r;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace

BootstrapResult bootstrap_ci(std::span<const double> a, std::span<const double> b,
                             std::size_t n_boot, double level, Rng& rng) {
  if (a.empty() || b.empty()) throw ConfigError("bootstrap_ci: empty sample");
  if (n_boot < 1) throw ConfigError("bootstrap_ci: n_boot must be positive");
  if (level <= 0.0 || level >= 1.0) throw ConfigError("bootstrap_ci: level must be in (0,1)");

  std::vector<double> diffs(n_boot);
  for (std::size_t k = 0; k < n_boot; ++k) {
    double sa = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sa += a[rng.integer(a.size())];
    double sb = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) sb += b[rng.integer(b.size())];
    diffs[k] = sa / static_cast<double>(a.size()) - sb / static_cast<double>(b.size());
  }
  std::sort(diffs.begin(), diffs.end());
  const double alpha = 0.5 * (1.0 - level);
  BootstrapResult r;
  r.mean_diff = mean(a) - mean(b);
  r.lo = quantile_sorted(diffs, alpha);
  r.hi = quantile_sorted(diffs, 1.0 - alpha);
  return r;
}

}  // namespace picrl::evalstat
