#ifndef ZECK_GNARY_HPP
#define ZECK_GNARY_HPP

// g-nary sequences: constant bin size b, A_n = {0, g}, no adjacency rule, and every
// legal selection must have a distinct sum. Coverage of all positive integers is not
// required.

#include "zeck/constructor.hpp"
#include "zeck/core.hpp"
#include "zeck/schedule.hpp"
#include "zeck/sequence.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace zeck {

inline BinSchedule gnary_schedule(std::uint64_t b, std::uint64_t g) {
  return BinSchedule(size_rule::Constant{b}, allowed_rule::Pair{g}, 0);
}

struct GnaryOptions {
  /// Candidates for bin n are searched up to last + window_factor * (Omega_{n-1} + 1) * b.
  std::uint64_t window_factor = 4;
  /// Largest Omega the difference bitset may cover.
  std::uint64_t max_omega = std::uint64_t{1} << 28;
};

/// The search ran past its candidate window or its size limits.
class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& what, BinIndex bin)
      : Error(what + " (bin " + std::to_string(bin) + ")"), bin_(bin) {}
  BinIndex bin() const noexcept { return bin_; }

 private:
  BinIndex bin_;
};

namespace detail {

// Set of differences {|s - t| : s, t in S} as a bitset over [0, Omega].
class DifferenceSet {
 public:
  DifferenceSet() = default;
  explicit DifferenceSet(const std::vector<std::uint64_t>& sums) {
    limit_ = sums.empty() ? 0 : sums.back();
    const std::size_t words = static_cast<std::size_t>(limit_ / 64 + 1);
    std::vector<std::uint64_t> members(words, 0);
    for (std::uint64_t s : sums) members[s / 64] |= std::uint64_t{1} << (s % 64);
    bits_.assign(words, 0);
    // D |= S >> s for every s in S.
    for (std::uint64_t s : sums) {
      const std::size_t word_shift = static_cast<std::size_t>(s / 64);
      const unsigned bit_shift = static_cast<unsigned>(s % 64);
      for (std::size_t w = 0; w + word_shift < words; ++w) {
        std::uint64_t v = members[w + word_shift] >> bit_shift;
        if (bit_shift != 0 && w + word_shift + 1 < words) v |= members[w + word_shift + 1] << (64 - bit_shift);
        bits_[w] |= v;
      }
    }
  }

  /// |d| in S - S (0 always is).
  bool contains(std::int64_t d) const {
    const std::uint64_t m = d < 0 ? static_cast<std::uint64_t>(-d) : static_cast<std::uint64_t>(d);
    if (m > limit_) return false;
    return (bits_[m / 64] >> (m % 64)) & 1U;
  }

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> bits_{1};
};

// r-subset sums (with multiplicity) of `elements`, for r = 0..elements.size().
inline std::vector<std::vector<std::uint64_t>> subset_sums_all(const std::vector<std::uint64_t>& elements) {
  std::vector<std::vector<std::uint64_t>> by_r(elements.size() + 1);
  by_r[0].push_back(0);
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t r = i + 1; r >= 1; --r)
      for (std::uint64_t s : by_r[r - 1]) by_r[r].push_back(s + elements[i]);
  return by_r;
}

class GnarySearch {
 public:
  GnarySearch(std::uint64_t b, std::uint64_t g, const GnaryOptions& options) : b_(b), g_(g), options_(options) {}

  /// Lexicographically smallest completion of bin n, or false if none is inside the window.
  bool fill_bin(BinIndex n, std::uint64_t lower, std::uint64_t window_end, const DifferenceSet& diffs,
                std::vector<std::uint64_t>& chosen) {
    if (chosen.size() == b_) return true;
    const auto by_r = subset_sums_all(chosen);
    const std::size_t j = chosen.size();
    const std::size_t remaining = b_ - j - 1;
    // Anchors a with the rule: |y - a| must avoid S - S.
    std::vector<std::int64_t> anchors;
    auto add_anchors = [&](std::size_t r) {
      if (r < 1 || r > j + 1) return;
      const auto& lower_sums = by_r[r - 1];
      std::vector<std::uint64_t> upper = r <= j ? by_r[r] : std::vector<std::uint64_t>{};
      if (r == g_) upper.push_back(0);  // the empty pick is also a bin contribution
      for (std::uint64_t v : upper)
        for (std::uint64_t u : lower_sums) anchors.push_back(static_cast<std::int64_t>(v) - static_cast<std::int64_t>(u));
    };
    add_anchors(g_);
    for (std::size_t r = g_ > remaining ? g_ - remaining : 1; r < g_; ++r) add_anchors(r);
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

    for (std::uint64_t y = lower; y <= window_end; ++y) {
      bool ok = true;
      for (std::int64_t a : anchors)
        if (diffs.contains(static_cast<std::int64_t>(y) - a)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(y);
      if (fill_bin(n, y + 1, window_end, diffs, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

 private:
  std::uint64_t b_;
  std::uint64_t g_;
  GnaryOptions options_;
};

inline void check_gnary_arguments(std::uint64_t b, std::uint64_t g, BinIndex num_bins) {
  if (g < 1 || g > b) throw PreconditionError("g-nary construction needs 1 <= g <= b");
  if (num_bins < 1) throw PreconditionError("g-nary construction needs at least one bin");
}

}  // namespace detail

/// Fills bins left to right; each bin is the lexicographically smallest increasing
/// assignment (starting at or above the previous bin's last term) that keeps all legal
/// sums distinct. A bin prefix is only accepted if some completion exists: for every
/// r >= g - (slots left), the r-subset sums of the prefix must differ by amounts
/// outside S - S, where S holds the sums of the earlier bins.
inline Sequence build_gnary_bruteforce(std::uint64_t b, std::uint64_t g, BinIndex num_bins,
                                       const GnaryOptions& options = {}) {
  detail::check_gnary_arguments(b, g, num_bins);
  std::vector<std::uint64_t> sums{0};
  std::vector<Bin> bins;
  std::uint64_t last = 0;
  detail::GnarySearch search(b, g, options);
  for (BinIndex n = 1; n <= num_bins; ++n) {
    const std::uint64_t omega_prev = sums.back();
    if (omega_prev > options.max_omega) throw SearchExhausted("Omega exceeds the difference-set limit", n);
    const detail::DifferenceSet diffs(sums);
    const long double span = static_cast<long double>(options.window_factor) * (omega_prev + 1) * b;
    if (last + span > static_cast<long double>(std::numeric_limits<std::int64_t>::max() / 4))
      throw SearchExhausted("candidate window overflows 64 bits", n);
    const std::uint64_t window_end = last + static_cast<std::uint64_t>(span);
    std::vector<std::uint64_t> chosen;
    if (!search.fill_bin(n, std::max<std::uint64_t>(last, 1), window_end, diffs, chosen))
      throw SearchExhausted("no uniqueness-preserving bin inside the candidate window", n);

    // Contributions of the new bin: nothing, or any g of its elements.
    std::vector<std::uint64_t> contributions = detail::subset_sums_all(chosen)[g];
    contributions.push_back(0);
    std::vector<std::uint64_t> next;
    next.reserve(sums.size() * contributions.size());
    for (std::uint64_t s : sums)
      for (std::uint64_t c : contributions) next.push_back(s + c);
    std::sort(next.begin(), next.end());
    if (std::adjacent_find(next.begin(), next.end()) != next.end())
      throw SearchExhausted("internal error: accepted bin repeats a sum", n);
    sums = std::move(next);

    Bin bin;
    for (std::uint64_t v : chosen) bin.emplace_back(v);
    bins.push_back(std::move(bin));
    last = chosen.back();
  }
  return Sequence(gnary_schedule(b, g), std::move(bins), SequenceMode::Gnary);
}

/// Bin 1 from the brute-force search; every later bin starts at the previous bin's last
/// term and steps by Omega_{n-1} + 1.
inline Sequence build_gnary_gapformula(std::uint64_t b, std::uint64_t g, BinIndex num_bins,
                                       const GnaryOptions& options = {}) {
  detail::check_gnary_arguments(b, g, num_bins);
  std::vector<Bin> bins = build_gnary_bruteforce(b, g, 1, options).bins();
  auto top_g = [g](const Bin& bin) {
    BigInt s = 0;
    for (std::size_t i = 0; i < g; ++i) s += bin[bin.size() - 1 - i];
    return s;
  };
  BigInt omega_prev = top_g(bins[0]);
  for (BinIndex n = 2; n <= num_bins; ++n) {
    Bin bin;
    const BigInt start = bins.back().back();
    for (std::uint64_t j = 0; j < b; ++j) bin.push_back(start + j * (omega_prev + 1));
    omega_prev += top_g(bin);
    bins.push_back(std::move(bin));
  }
  return Sequence(gnary_schedule(b, g), std::move(bins), SequenceMode::Gnary);
}

struct RepresentableCount {
  /// |I_n|, 0 included.
  BigInt actual;
  /// (C(b,g) + 1)^n when the bin size is constant.
  std::optional<BigInt> predicted;
  /// 1 + sum_{i=1}^{n} C(n,i) C(b_i,g)^i, evaluated for any size rule.
  BigInt general_formula;
};

namespace detail {
inline std::uint64_t gnary_g(const Sequence& seq) {
  const AllowedSet a = seq.schedule().allowed(1);
  if (a.size() != 2 || !a.contains(0)) throw PreconditionError("sequence is not g-nary: A_1 must be {0, g}");
  return a.max();
}
}  // namespace detail

inline RepresentableCount count_representable(const Sequence& seq, BinIndex n, std::size_t state_cap = kDefaultStateCap) {
  const std::uint64_t g = detail::gnary_g(seq);
  RepresentableCount out;
  out.actual = BigInt(achievable_sums(seq, n, state_cap).plain_sums().size());
  if (auto b = seq.schedule().constant_size())
    out.predicted = boost::multiprecision::pow(binomial(*b, g) + 1, n);
  out.general_formula = 1;
  for (BinIndex i = 1; i <= n; ++i)
    out.general_formula += binomial(n, i) * boost::multiprecision::pow(binomial(seq.schedule().bin_size(i), g), i);
  return out;
}

struct GapEntry {
  BinIndex bin = 0;
  std::size_t position = 0;  ///< j >= 2, 1-based: gap between elements j-1 and j
  BigInt gap;
  bool exceeds_omega = false;  ///< G_{n,j} > Omega_{n-1}
  bool tight = false;          ///< G_{n,j} = Omega_{n-1} + 1
};

struct GnaryReport {
  std::vector<BigInt> omegas;  ///< Omega_0..Omega_N
  std::vector<GapEntry> gaps;
  bool all_gaps_exceed = true;
  /// Per bin n >= 2: every gap equals Omega_{n-1} + 1.
  std::vector<bool> tight_bins;
  /// Per bin n >= 2: the literal equality Omega_n = G_{n,j} for every j.
  std::vector<bool> literal_remark;
  bool omega_strictly_increasing = true;
  std::vector<RepresentableCount> counts;  ///< n = 1..N
};

inline GnaryReport gap_report(const Sequence& seq, std::size_t state_cap = kDefaultStateCap) {
  (void)detail::gnary_g(seq);
  GnaryReport report;
  report.omegas = omega_table(seq);
  for (BinIndex n = 1; n <= seq.num_bins(); ++n) {
    const Bin& bin = seq.bin(n);
    const BigInt& before = report.omegas[n - 1];
    bool tight = true, literal = true;
    for (std::size_t j = 1; j < bin.size(); ++j) {
      GapEntry e{n, j + 1, bin[j] - bin[j - 1]};
      e.exceeds_omega = e.gap > before;
      e.tight = e.gap == before + 1;
      report.all_gaps_exceed = report.all_gaps_exceed && e.exceeds_omega;
      tight = tight && e.tight;
      literal = literal && e.gap == report.omegas[n];
      report.gaps.push_back(std::move(e));
    }
    if (n >= 2) {
      report.tight_bins.push_back(tight);
      report.literal_remark.push_back(literal);
    }
    if (report.omegas[n] <= report.omegas[n - 1]) report.omega_strictly_increasing = false;
    report.counts.push_back(count_representable(seq, n, state_cap));
  }
  return report;
}

}  // namespace zeck

#endif  // ZECK_GNARY_HPP
