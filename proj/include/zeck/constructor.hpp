#ifndef ZECK_CONSTRUCTOR_HPP
#define ZECK_CONSTRUCTOR_HPP

// Greedy construction of (b_n, A_n, a)-sequences: every new term is the least positive
// integer that no legal selection of the terms placed so far sums to.

#include "zeck/core.hpp"
#include "zeck/schedule.hpp"
#include "zeck/sequence.hpp"

#include <algorithm>
#include <compare>
#include <span>
#include <string>
#include <vector>

namespace zeck {

/// One reachable sum together with the last bin used, when that bin can still block a
/// later bin through the adjacency rule. `last_used == 0` means nothing in the window.
struct SumState {
  BigInt sum;
  BinIndex last_used = 0;

  friend bool operator==(const SumState&, const SumState&) = default;
  friend std::strong_ordering operator<=>(const SumState& a, const SumState& b) {
    if (a.sum != b.sum) return a.sum < b.sum ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.last_used <=> b.last_used;
  }
};

/// Every value of a legal selection from bins 1..through_bin (0 for the empty selection).
class AchievableSums {
 public:
  AchievableSums(std::vector<SumState> states, BinIndex through_bin, std::uint32_t adjacency)
      : states_(std::move(states)), through_bin_(through_bin), adjacency_(adjacency) {}

  const std::vector<SumState>& states() const noexcept { return states_; }
  BinIndex through_bin() const noexcept { return through_bin_; }
  std::uint32_t adjacency() const noexcept { return adjacency_; }

  /// Distinct sums, ascending.
  std::vector<BigInt> plain_sums() const {
    std::vector<BigInt> out;
    out.reserve(states_.size());
    for (const auto& s : states_)
      if (out.empty() || out.back() != s.sum) out.push_back(s.sum);
    return out;
  }

  /// True iff bin `n` (> through_bin) may be used on top of `state`.
  bool permits(const SumState& state, BinIndex n) const {
    return state.last_used == 0 || n - state.last_used > adjacency_;
  }

 private:
  std::vector<SumState> states_;  // sorted, unique
  BinIndex through_bin_;
  std::uint32_t adjacency_;
};

namespace detail {

/// by_count[c] = distinct sums of c-element subsets of `elements`, ascending, c <= max_count.
inline std::vector<std::vector<BigInt>> subset_sums_by_count(std::span<const BigInt> elements, std::uint64_t max_count) {
  const std::size_t top = static_cast<std::size_t>(std::min<std::uint64_t>(max_count, elements.size()));
  std::vector<std::vector<BigInt>> by_count(top + 1);
  by_count[0].push_back(0);
  std::size_t seen = 0;
  for (const BigInt& e : elements) {
    ++seen;
    for (std::size_t c = std::min(top, seen); c >= 1; --c) {
      auto& target = by_count[c];
      for (const BigInt& s : by_count[c - 1]) target.push_back(s + e);
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
    }
  }
  return by_count;
}

inline void sort_unique(std::vector<SumState>& states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
}

/// Extends the achievable states across bin `n`, given its subset sums by count.
inline std::vector<SumState> advance(const AchievableSums& before, BinIndex n,
                                     const std::vector<std::vector<BigInt>>& by_count, const AllowedSet& allowed,
                                     std::size_t state_cap) {
  const std::uint32_t a = before.adjacency();
  std::vector<SumState> next;
  next.reserve(before.states().size());
  for (const auto& st : before.states()) {
    next.push_back(st);
    if (!before.permits(st, n)) continue;
    for (std::uint64_t c : allowed.counts()) {
      if (c == 0 || c >= by_count.size()) continue;
      for (const BigInt& t : by_count[c]) {
        next.push_back(SumState{st.sum + t, n});
        if (next.size() > 2 * state_cap) throw CapExceeded("achievable-sum state cap exceeded", n);
      }
    }
  }
  // A tag L only matters while it can still block a later bin (L + a >= n + 1).
  for (auto& st : next)
    if (st.last_used != 0 && st.last_used + a <= n) st.last_used = 0;
  sort_unique(next);
  if (next.size() > state_cap) throw CapExceeded("achievable-sum state cap exceeded", n);
  return next;
}

/// Smallest positive integer absent from the ascending list `sums`.
inline BigInt min_excluded(const std::vector<BigInt>& sums) {
  BigInt expected = 1;
  for (const BigInt& s : sums) {
    if (s < expected) continue;
    if (s == expected) ++expected;
    else break;
  }
  return expected;
}

}  // namespace detail

/// Legal-selection values using bins 1..through_bin of `seq`.
inline AchievableSums achievable_sums(const Sequence& seq, BinIndex through_bin,
                                      std::size_t state_cap = kDefaultStateCap) {
  if (through_bin > seq.num_bins())
    throw PreconditionError("achievable_sums: bin " + std::to_string(through_bin) + " is not materialized");
  AchievableSums acc({SumState{0, 0}}, 0, seq.schedule().adjacency());
  for (BinIndex n = 1; n <= through_bin; ++n) {
    const AllowedSet allowed = seq.schedule().allowed(n);
    const auto by_count = detail::subset_sums_by_count(seq.bin(n), allowed.max());
    acc = AchievableSums(detail::advance(acc, n, by_count, allowed, state_cap), n, acc.adjacency());
  }
  return acc;
}

/// Builds the first `num_bins` full bins of the standard-mode sequence for `schedule`.
inline Sequence build_sequence(const BinSchedule& schedule, BinIndex num_bins,
                               std::size_t state_cap = kDefaultStateCap) {
  if (num_bins < 1) throw PreconditionError("build_sequence needs at least one bin");
  if (auto limit = schedule.bin_limit(); limit && num_bins > *limit)
    throw PreconditionError("schedule defines only " + std::to_string(*limit) + " bins");
  for (BinIndex n = 1; n <= num_bins; ++n) {
    const AllowedSet allowed = schedule.allowed(n);
    if (!allowed.contains(0) || !allowed.contains(1))
      throw SemanticError("standard construction needs {0,1} in A_" + std::to_string(n));
  }

  std::vector<Bin> bins;
  AchievableSums acc({SumState{0, 0}}, 0, schedule.adjacency());
  for (BinIndex n = 1; n <= num_bins; ++n) {
    const std::uint64_t size = schedule.bin_size(n);
    const AllowedSet allowed = schedule.allowed(n);
    Bin bin;
    std::vector<std::vector<BigInt>> by_count{{BigInt(0)}};
    for (std::uint64_t j = 0; j < size; ++j) {
      std::vector<BigInt> candidates;
      candidates.reserve(acc.states().size());
      for (const auto& st : acc.states()) {
        candidates.push_back(st.sum);
        if (!acc.permits(st, n)) continue;
        for (std::uint64_t c : allowed.counts()) {
          if (c == 0 || c >= by_count.size()) continue;
          for (const BigInt& t : by_count[c]) candidates.push_back(st.sum + t);
        }
        if (candidates.size() > 2 * state_cap) throw CapExceeded("representable-set cap exceeded", n);
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      bin.push_back(detail::min_excluded(candidates));
      by_count = detail::subset_sums_by_count(bin, allowed.max());
    }
    acc = AchievableSums(detail::advance(acc, n, by_count, allowed, state_cap), n, acc.adjacency());
    bins.push_back(std::move(bin));
  }
  return Sequence(schedule, std::move(bins), SequenceMode::Standard);
}

/// Omega_m for m = 0..seq.num_bins(): the largest legal value using bins 1..m.
/// Computed by dynamic programming over bins; every term is positive, so the best
/// in-bin contribution is the sum of the max(A_m) largest terms.
inline std::vector<BigInt> omega_table(const Sequence& seq) {
  const std::uint32_t a = seq.schedule().adjacency();
  std::vector<BigInt> best(seq.num_bins() + 1, BigInt(0));
  for (BinIndex m = 1; m <= seq.num_bins(); ++m) {
    const Bin& bin = seq.bin(m);
    const std::uint64_t take = std::min<std::uint64_t>(seq.schedule().allowed(m).max(), bin.size());
    BigInt top = 0;
    for (std::uint64_t i = 0; i < take; ++i) top += bin[bin.size() - 1 - i];
    const BigInt with = top + (m > a + 1 ? best[m - a - 1] : BigInt(0));
    best[m] = std::max(best[m - 1], with);
  }
  return best;
}

/// Omega_n, the largest integer legally representable with bins 1..n (0 for n = 0).
inline BigInt omega(const Sequence& seq, BinIndex n) {
  if (n > seq.num_bins()) throw PreconditionError("omega: bin " + std::to_string(n) + " is not materialized");
  return omega_table(seq)[n];
}

}  // namespace zeck

#endif  // ZECK_CONSTRUCTOR_HPP
