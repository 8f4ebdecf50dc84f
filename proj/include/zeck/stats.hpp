#ifndef ZECK_STATS_HPP
#define ZECK_STATS_HPP

// Exact statistics of the number of summands for adjacency-free schedules.
//
// Y_n, the number of summands taken from bin n, has P(Y_n = i) = C(b_n, i) / W_n with
// W_n = sum over t in A_n of C(b_n, t). Everything below is computed in exact rational
// arithmetic; doubles appear only in rendering and in gaussian_distance.

#include "zeck/core.hpp"
#include "zeck/decomposer.hpp"
#include "zeck/schedule.hpp"
#include "zeck/sequence.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zeck {

using Rational = boost::multiprecision::mpq_rational;
using StatInt = boost::multiprecision::mpz_int;

/// "num/den" with den >= 1.
inline std::string fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

struct BinPMF {
  BinIndex bin = 0;
  std::vector<std::uint64_t> support;
  std::vector<Rational> probs;
};

struct MomentTriple {
  BinIndex bin = 0;
  std::uint32_t delta = 0;
  Rational mu;
  Rational sigma2;
  /// rho_n^{2+delta} = E|Y_n - mu_n|^{2+delta}.
  Rational rho;
};

namespace detail {

inline StatInt weight_total(std::uint64_t b, const AllowedSet& allowed) {
  StatInt total = 0;
  for (std::uint64_t t : allowed.counts()) total += binomial<StatInt>(b, t);
  return total;
}

inline StatInt abs_pow(const StatInt& v, unsigned e) { return boost::multiprecision::pow(abs(v), e); }

inline Rational rational_pow(const Rational& q, unsigned e) {
  return Rational(boost::multiprecision::pow(numerator(q), e), boost::multiprecision::pow(denominator(q), e));
}

}  // namespace detail

/// P(Y = i) = C(b, i) / sum_{t in A} C(b, t) for i in A.
inline BinPMF bin_pmf(std::uint64_t b, const AllowedSet& allowed, BinIndex bin = 0) {
  if (allowed.empty()) throw PreconditionError("bin_pmf: empty allowed set");
  if (allowed.max() > b) throw PreconditionError("bin_pmf: allowed count exceeds the bin size");
  const StatInt total = detail::weight_total(b, allowed);
  BinPMF pmf;
  pmf.bin = bin;
  for (std::uint64_t i : allowed.counts()) {
    pmf.support.push_back(i);
    pmf.probs.emplace_back(binomial<StatInt>(b, i), total);
  }
  return pmf;
}

/// mu, sigma^2 and rho^{2+delta} of Y for bin size b and allowed set A. The variance
/// uses the pairwise form sum_{i != j} (i-j)^2 C(b,i) C(b,j) / (2 W^2), the absolute
/// moment sum_i C(b,i) |sum_t (i-t) C(b,t)|^{2+delta} / W^{3+delta}; both stay in
/// integers until the final division.
inline MomentTriple bin_moments(std::uint64_t b, const AllowedSet& allowed, std::uint32_t delta, BinIndex bin = 0) {
  if (delta < 1) throw PreconditionError("bin_moments: delta must be a positive integer");
  if (allowed.empty()) throw PreconditionError("bin_moments: empty allowed set");
  if (allowed.max() > b) throw PreconditionError("bin_moments: allowed count exceeds the bin size");
  const auto& counts = allowed.counts();
  std::vector<StatInt> weight;
  for (std::uint64_t t : counts) weight.push_back(binomial<StatInt>(b, t));

  StatInt total = 0, first = 0;
  for (std::size_t a = 0; a < counts.size(); ++a) {
    total += weight[a];
    first += weight[a] * counts[a];
  }

  StatInt pair_sum = 0;
  for (std::size_t a = 0; a < counts.size(); ++a)
    for (std::size_t c = a + 1; c < counts.size(); ++c) {
      const StatInt diff = StatInt(counts[c]) - StatInt(counts[a]);
      pair_sum += diff * diff * weight[a] * weight[c];
    }

  // sum_t (i - t) C(b,t) = i * W - first.
  StatInt abs_sum = 0;
  for (std::size_t a = 0; a < counts.size(); ++a)
    abs_sum += weight[a] * detail::abs_pow(StatInt(counts[a]) * total - first, 2 + delta);

  MomentTriple m;
  m.bin = bin;
  m.delta = delta;
  m.mu = Rational(first, total);
  // Each unordered pair appears twice in the i != j sum, which cancels the factor 2.
  m.sigma2 = Rational(pair_sum, total * total);
  m.rho = Rational(abs_sum, boost::multiprecision::pow(total, 3 + delta));
  return m;
}

/// Which bins a row N of the Lyapunov series accumulates.
enum class SumConvention {
  /// n = 1..N.
  ThroughN,
  /// n = 1..N-1 (bin N holds the largest summand and is excluded).
  BeforeN,
};

struct LyapunovRow {
  BinIndex n = 0;
  Rational s2;  ///< cumulative variance s_N^2
  Rational e;   ///< cumulative absolute moment e_N
  /// e_N^2 / (s_N^2)^{2+delta}; empty while s_N^2 = 0.
  std::optional<Rational> squared_ratio;
};

struct LyapunovSeries {
  std::uint32_t delta = 0;
  SumConvention convention = SumConvention::ThroughN;
  std::vector<LyapunovRow> rows;
};

/// Squared Lyapunov ratio e_N^2 / (s_N^2)^{2+delta}, which avoids fractional powers.
inline std::optional<Rational> squared_lyapunov_ratio(const Rational& s2, const Rational& e, std::uint32_t delta) {
  if (s2 == 0) return std::nullopt;
  return Rational(e * e / detail::rational_pow(s2, 2 + delta));
}

inline LyapunovSeries lyapunov_series(const BinSchedule& schedule, std::uint32_t delta, BinIndex max_n,
                                      SumConvention convention = SumConvention::ThroughN) {
  if (schedule.adjacency() != 0) throw PreconditionError("lyapunov_series: the model needs adjacency 0");
  if (delta < 1) throw PreconditionError("lyapunov_series: delta must be a positive integer");
  LyapunovSeries series;
  series.delta = delta;
  series.convention = convention;
  Rational s2 = 0, e = 0;
  for (BinIndex n = 1; n <= max_n; ++n) {
    if (convention == SumConvention::BeforeN && n > 1) {
      const MomentTriple m = bin_moments(schedule.bin_size(n - 1), schedule.allowed(n - 1), delta, n - 1);
      s2 += m.sigma2;
      e += m.rho;
    } else if (convention == SumConvention::ThroughN) {
      const MomentTriple m = bin_moments(schedule.bin_size(n), schedule.allowed(n), delta, n);
      s2 += m.sigma2;
      e += m.rho;
    }
    series.rows.push_back(LyapunovRow{n, s2, e, squared_lyapunov_ratio(s2, e, delta)});
  }
  return series;
}

enum class PmfSource { Model, Empirical };

/// Distribution of the number of summands: P(S = i) = weights[i] / total.
/// Model weights are products of binomial coefficients; empirical weights are counts
/// of integers.
struct SummandPMF {
  PmfSource source = PmfSource::Model;
  BinIndex bin = 0;
  bool include_top_bin = false;
  std::vector<StatInt> weights;
  StatInt total = 0;

  Rational prob(std::size_t i) const { return i < weights.size() ? Rational(weights[i], total) : Rational(0); }
  std::vector<Rational> probs() const {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < weights.size(); ++i) out.push_back(prob(i));
    return out;
  }
  Rational mean() const {
    StatInt acc = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * i;
    return Rational(acc, total);
  }
  Rational variance() const {
    StatInt acc = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * i * i;
    const Rational mu = mean();
    return Rational(acc, total) - mu * mu;
  }
};

namespace detail {

inline std::vector<StatInt> convolve(const std::vector<StatInt>& a, const std::vector<StatInt>& b) {
  std::vector<StatInt> out(a.size() + b.size() - 1, StatInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline std::vector<StatInt> count_polynomial(std::uint64_t b, const AllowedSet& allowed, bool skip_zero) {
  std::vector<StatInt> poly(allowed.max() + 1, StatInt(0));
  for (std::uint64_t i : allowed.counts())
    if (!(skip_zero && i == 0)) poly[i] = binomial<StatInt>(b, i);
  return poly;
}

inline void trim(std::vector<StatInt>& w) {
  while (w.size() > 1 && w.back() == 0) w.pop_back();
}

}  // namespace detail

/// Distribution of Y_1 + ... + Y_{N-1}, convolved with bin N conditioned on Y_N >= 1
/// when `include_top_bin`.
inline SummandPMF model_summand_pmf(const BinSchedule& schedule, BinIndex n_top, bool include_top_bin) {
  if (schedule.adjacency() != 0) throw PreconditionError("model_summand_pmf: the model needs adjacency 0");
  if (n_top < 1) throw PreconditionError("model_summand_pmf: N must be at least 1");
  std::vector<StatInt> poly{StatInt(1)};
  for (BinIndex n = 1; n < n_top; ++n)
    poly = detail::convolve(poly, detail::count_polynomial(schedule.bin_size(n), schedule.allowed(n), false));
  if (include_top_bin) {
    const AllowedSet top = schedule.allowed(n_top);
    if (top.max() == 0) throw PreconditionError("model_summand_pmf: A_N = {0} leaves no pick for the top bin");
    poly = detail::convolve(poly, detail::count_polynomial(schedule.bin_size(n_top), top, true));
  }
  detail::trim(poly);
  SummandPMF pmf{PmfSource::Model, n_top, include_top_bin, std::move(poly), 0};
  for (const auto& w : pmf.weights) pmf.total += w;
  return pmf;
}

/// Tallies the number of summands of every integer whose first-found decomposition has
/// its largest summand in bin N.
inline SummandPMF empirical_summand_pmf(const Sequence& seq, BinIndex n_top,
                                        std::size_t enumeration_cap = kDefaultStateCap) {
  if (n_top < 1 || n_top > seq.num_bins())
    throw PreconditionError("empirical_summand_pmf: bin " + std::to_string(n_top) + " is not materialized");
  std::map<BigInt, std::size_t> first_found;
  std::size_t visited = 0;
  detail::SelectionSearch(seq).for_each_with_top(n_top, [&](const Decomposition& d) {
    if (++visited > enumeration_cap) throw CapExceeded("empirical enumeration cap exceeded", n_top);
    first_found.emplace(d.value, d.count_summands());
    return true;
  });

  SummandPMF pmf{PmfSource::Empirical, n_top, true, {}, 0};
  for (const auto& [value, summands] : first_found) {
    // With higher bins present, an integer belongs to the first bin its canonical
    // decomposition reaches; skip those claimed by a higher bin.
    if (seq.num_bins() > n_top && decompose(seq, value)->top_bin() != n_top) continue;
    if (pmf.weights.size() <= summands) pmf.weights.resize(summands + 1, StatInt(0));
    pmf.weights[summands] += 1;
    pmf.total += 1;
  }
  if (pmf.weights.empty()) pmf.weights.push_back(0);
  return pmf;
}

struct GaussReport {
  /// sup over jump points of |F(x) - Phi((x - mean) / sd)|, both one-sided limits.
  double ks_distance = 0;
  double mean = 0;
  double sd = 0;
  std::size_t grid_size = 0;
};

/// Standard normal CDF.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Kolmogorov-Smirnov distance between the standardized PMF and N(0,1). A step CDF
/// attains the supremum at a jump, so only the two one-sided limits at each support
/// point are compared.
inline GaussReport gaussian_distance(const SummandPMF& pmf) {
  const Rational var = pmf.variance();
  if (var <= 0) throw PreconditionError("gaussian_distance: zero variance");
  GaussReport report;
  report.mean = to_double(pmf.mean());
  report.sd = std::sqrt(to_double(var));
  StatInt cumulative = 0;
  for (std::size_t i = 0; i < pmf.weights.size(); ++i) {
    if (pmf.weights[i] == 0) continue;
    const double before = to_double(Rational(cumulative, pmf.total));
    cumulative += pmf.weights[i];
    const double after = to_double(Rational(cumulative, pmf.total));
    const double phi = normal_cdf((static_cast<double>(i) - report.mean) / report.sd);
    report.ks_distance = std::max({report.ks_distance, std::abs(after - phi), std::abs(before - phi)});
    ++report.grid_size;
  }
  return report;
}

/// Absolute central moment for b_n = n, A_n = {0..n}:
/// sum_i C(n,i) |2i - n|^{2+delta} / 2^{n+delta+2}.
inline Rational full_range_rho(std::uint64_t n, std::uint32_t delta) {
  StatInt acc = 0;
  for (std::uint64_t i = 0; i <= n; ++i)
    acc += binomial<StatInt>(n, i) * detail::abs_pow(StatInt(2 * i) - StatInt(n), 2 + delta);
  return Rational(acc, boost::multiprecision::pow(StatInt(2), static_cast<unsigned>(n + delta + 2)));
}

struct Theorem35Report {
  std::uint32_t delta = 0;
  BinIndex max_n = 0;
  std::vector<Rational> rho;     ///< rho_n^{2+delta}, n = 1..max_n
  std::vector<Rational> ratios;  ///< rho_n^{2+delta} / n^delta
  Rational max_ratio;
  BinIndex argmax = 0;
  /// The finite-sample edge test: maximum attained within the last quarter of n.
  bool max_at_right_edge = false;
  /// sigma_n^2 = n/4 for every n.
  bool sigma_matches = true;
  /// Closed form agrees with the general absolute-moment formula for every n.
  bool rho_matches_general = true;
  /// Coefficients c_0..c_{2+delta} of P(n) = 2^{2+delta} rho_n^{2+delta}.
  std::vector<Rational> coefficients;
  /// P reproduces rho_n exactly for every n <= max_n.
  bool polynomial_verified = false;
  bool top_coefficient_vanishes = false;   ///< n^{2+delta}
  bool next_coefficient_vanishes = false;  ///< n^{1+delta}
  /// polynomial_verified and both coefficients vanish, so rho_n = O(n^delta).
  bool bounded = false;
  /// lim rho_n / n^delta = c_delta / 2^{2+delta} when bounded.
  Rational ratio_limit;
};

namespace detail {

// Coefficients of the polynomial through (x_k, y_k), lowest degree first.
inline std::vector<Rational> interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t m = xs.size();
  std::vector<Rational> coeffs(m, Rational(0));
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == k) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= basis[d] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[k] - xs[j];
    }
    for (std::size_t d = 0; d < m; ++d) coeffs[d] += basis[d] * ys[k] / denom;
  }
  return coeffs;
}

inline Rational evaluate(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace detail

/// Checks that rho_n^{2+delta} / n^delta stays bounded for b_n = n, A_n = {0..n}.
/// For even delta, 2^{2+delta} rho_n^{2+delta} is a polynomial in n of degree at most
/// 2+delta; boundedness is equivalent to its two top coefficients vanishing.
inline Theorem35Report theorem35_check(BinIndex max_n, std::uint32_t delta) {
  if (delta < 2 || delta % 2 != 0) throw PreconditionError("theorem35_check: delta must be even and >= 2");
  if (max_n < 1) throw PreconditionError("theorem35_check: max_n must be positive");
  Theorem35Report report;
  report.delta = delta;
  report.max_n = max_n;
  const Rational scale = detail::rational_pow(Rational(2), 2 + delta);

  for (BinIndex n = 1; n <= max_n; ++n) {
    const Rational rho = full_range_rho(n, delta);
    const MomentTriple general = bin_moments(n, AllowedSet::range(0, n), delta, n);
    report.sigma_matches = report.sigma_matches && general.sigma2 == Rational(n, 4);
    report.rho_matches_general = report.rho_matches_general && general.rho == rho;
    const Rational ratio = rho / detail::rational_pow(Rational(n), delta);
    if (report.ratios.empty() || ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax = n;
    }
    report.rho.push_back(rho);
    report.ratios.push_back(ratio);
  }
  report.max_at_right_edge = 4 * static_cast<std::uint64_t>(report.argmax) > 3 * static_cast<std::uint64_t>(max_n);

  const std::size_t degree = 2 + delta;
  std::vector<Rational> xs, ys;
  for (std::size_t n = 0; n <= degree; ++n) {
    xs.emplace_back(n);
    ys.push_back(scale * full_range_rho(n, delta));
  }
  report.coefficients = detail::interpolate(xs, ys);
  report.polynomial_verified = true;
  for (BinIndex n = 1; n <= max_n; ++n)
    if (detail::evaluate(report.coefficients, Rational(n)) != scale * report.rho[n - 1]) report.polynomial_verified = false;
  report.top_coefficient_vanishes = report.coefficients[degree] == 0;
  report.next_coefficient_vanishes = report.coefficients[degree - 1] == 0;
  report.bounded = report.polynomial_verified && report.top_coefficient_vanishes && report.next_coefficient_vanishes;
  report.ratio_limit = report.coefficients[delta] / scale;
  return report;
}

}  // namespace zeck

#endif  // ZECK_STATS_HPP
