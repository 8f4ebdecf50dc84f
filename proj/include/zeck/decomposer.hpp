#ifndef ZECK_DECOMPOSER_HPP
#define ZECK_DECOMPOSER_HPP

// Legal decompositions of a target against a materialized sequence.
//
// Search order is the canonical order of results: bins descending; inside a bin,
// element subsets in descending lexicographic order of their positions (a subset is
// closed only after all of its extensions); using a bin before skipping it. Branches
// whose remainder exceeds the largest value the remaining bins can legally reach
// (Omega with the adjacency gap applied) are pruned.

#include "zeck/constructor.hpp"
#include "zeck/core.hpp"
#include "zeck/sequence.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace zeck {

inline constexpr std::size_t kDefaultEnumerationLimit = 1000;

struct DecompositionSet {
  BigInt target;
  std::vector<Decomposition> found;
  /// More decompositions exist than were returned.
  bool truncated = false;
};

namespace detail {

class SelectionSearch {
 public:
  explicit SelectionSearch(const Sequence& seq)
      : seq_(seq), omega_(omega_table(seq)), adjacency_(seq.schedule().adjacency()) {
    for (BinIndex n = 1; n <= seq.num_bins(); ++n) {
      allowed_.push_back(seq.schedule().allowed(n));
      const Bin& bin = seq.bin(n);
      std::vector<BigInt> prefix{BigInt(0)};
      for (const BigInt& e : bin) prefix.push_back(prefix.back() + e);
      prefix_.push_back(std::move(prefix));
    }
  }

  /// Calls visit(decomposition) for each legal decomposition of `target` in canonical
  /// order until visit returns false.
  template <class Visit>
  void for_each_of(const BigInt& target, Visit&& visit) {
    current_ = Decomposition{};
    current_value_ = 0;
    visit_target(seq_.num_bins(), target, visit);
  }

  /// Calls visit(decomposition) for every legal selection whose highest used bin is
  /// `top`, in canonical order, until visit returns false.
  template <class Visit>
  void for_each_with_top(BinIndex top, Visit&& visit) {
    current_ = Decomposition{};
    current_value_ = 0;
    std::vector<std::uint32_t> chosen;
    subsets_all(top, static_cast<std::uint32_t>(seq_.bin(top).size()), chosen, BigInt(0), visit);
  }

 private:
  const Bin& bin(BinIndex n) const { return seq_.bins()[n - 1]; }
  const AllowedSet& allowed(BinIndex n) const { return allowed_[n - 1]; }
  BinIndex below(BinIndex n) const { return n > adjacency_ + 1 ? n - adjacency_ - 1 : 0; }

  // Sum of elements with positions [lo, hi) of bin n.
  BigInt range_sum(BinIndex n, std::size_t lo, std::size_t hi) const { return prefix_[n - 1][hi] - prefix_[n - 1][lo]; }

  template <class Visit>
  bool visit_target(BinIndex ceiling, const BigInt& remainder, Visit& visit) {
    if (remainder == 0) {
      Decomposition copy = current_;
      copy.value = current_value_;
      return visit(copy);
    }
    if (ceiling == 0 || remainder > omega_[ceiling]) return true;
    std::vector<std::uint32_t> chosen;
    if (!subsets_target(ceiling, static_cast<std::uint32_t>(bin(ceiling).size()), chosen, BigInt(0), remainder, visit))
      return false;
    return visit_target(ceiling - 1, remainder, visit);
  }

  // Feasibility of finishing a bin-n pick that already holds `count` elements summing to
  // `partial`, choosing extra elements only among positions [0, hi).
  enum class Reach { Feasible, TooSmall, Infeasible };
  Reach reach(BinIndex n, std::size_t hi, std::size_t count, const BigInt& partial, const BigInt& remainder,
              const BigInt& rest_max) const {
    bool any_upper_ok = false;
    for (std::uint64_t c : allowed(n).counts()) {
      if (c < count || c - count > hi) continue;
      const std::size_t extra = static_cast<std::size_t>(c - count);
      const BigInt low = partial + range_sum(n, 0, extra);
      const BigInt high = partial + range_sum(n, hi - extra, hi);
      if (high + rest_max >= remainder) {
        any_upper_ok = true;
        if (low <= remainder) return Reach::Feasible;
      }
    }
    return any_upper_ok ? Reach::Infeasible : Reach::TooSmall;
  }

  template <class Visit>
  bool subsets_target(BinIndex n, std::uint32_t hi, std::vector<std::uint32_t>& chosen, const BigInt& partial,
                      const BigInt& remainder, Visit& visit) {
    const BigInt rest_max = omega_[below(n)];
    const Bin& elems = bin(n);
    for (std::uint32_t p = hi; p-- > 0;) {
      const BigInt next = partial + elems[p];
      if (next > remainder) continue;
      const Reach r = reach(n, p, chosen.size() + 1, next, remainder, rest_max);
      if (r == Reach::TooSmall) break;  // smaller positions only shrink the reachable maximum
      if (r == Reach::Infeasible) continue;
      chosen.push_back(p);
      if (!subsets_target(n, p, chosen, next, remainder, visit)) return false;
      if (allowed(n).contains(chosen.size()) && remainder - next <= rest_max) {
        current_.picks[n] = std::vector<std::uint32_t>(chosen.rbegin(), chosen.rend());
        current_value_ += next;
        const bool go_on = visit_target(below(n), remainder - next, visit);
        current_value_ -= next;
        current_.picks.erase(n);
        if (!go_on) return false;
      }
      chosen.pop_back();
    }
    return true;
  }

  template <class Visit>
  bool visit_all(BinIndex ceiling, Visit& visit) {
    if (ceiling == 0) {
      Decomposition copy = current_;
      copy.value = current_value_;
      return visit(copy);
    }
    std::vector<std::uint32_t> chosen;
    if (!subsets_all(ceiling, static_cast<std::uint32_t>(bin(ceiling).size()), chosen, BigInt(0), visit)) return false;
    return visit_all(ceiling - 1, visit);
  }

  template <class Visit>
  bool subsets_all(BinIndex n, std::uint32_t hi, std::vector<std::uint32_t>& chosen, const BigInt& partial,
                   Visit& visit) {
    const Bin& elems = bin(n);
    const std::uint64_t max_count = allowed(n).max();
    for (std::uint32_t p = hi; p-- > 0;) {
      if (chosen.size() + 1 > max_count) break;
      const BigInt next = partial + elems[p];
      chosen.push_back(p);
      if (!subsets_all(n, p, chosen, next, visit)) return false;
      if (allowed(n).contains(chosen.size())) {
        current_.picks[n] = std::vector<std::uint32_t>(chosen.rbegin(), chosen.rend());
        current_value_ += next;
        const bool go_on = visit_all(below(n), visit);
        current_value_ -= next;
        current_.picks.erase(n);
        if (!go_on) return false;
      }
      chosen.pop_back();
    }
    return true;
  }

  const Sequence& seq_;
  std::vector<BigInt> omega_;
  std::vector<AllowedSet> allowed_;
  std::vector<std::vector<BigInt>> prefix_;
  std::uint32_t adjacency_;
  Decomposition current_;
  BigInt current_value_ = 0;
};

}  // namespace detail

/// First legal decomposition of x in canonical order, or nullopt when none exists.
inline std::optional<Decomposition> decompose(const Sequence& seq, const BigInt& x) {
  if (x < 1) throw PreconditionError("decompose: target must be positive");
  std::optional<Decomposition> result;
  detail::SelectionSearch(seq).for_each_of(x, [&](const Decomposition& d) {
    result = d;
    return false;
  });
  return result;
}

/// Up to `limit` legal decompositions of x in canonical order.
inline DecompositionSet enumerate_decompositions(const Sequence& seq, const BigInt& x,
                                                 std::size_t limit = kDefaultEnumerationLimit) {
  if (x < 1) throw PreconditionError("enumerate_decompositions: target must be positive");
  if (limit < 1) throw PreconditionError("enumerate_decompositions: limit must be positive");
  DecompositionSet set{x, {}, false};
  detail::SelectionSearch(seq).for_each_of(x, [&](const Decomposition& d) {
    if (set.found.size() == limit) {
      set.truncated = true;
      return false;
    }
    set.found.push_back(d);
    return true;
  });
  return set;
}

/// Strict canonical order: token lists (bin, position) taken from the largest down,
/// compared lexicographically with larger tokens first; a proper prefix sorts after.
inline bool canonical_before(const Decomposition& a, const Decomposition& b) {
  auto tokens = [](const Decomposition& d) {
    std::vector<std::pair<BinIndex, std::uint32_t>> out;
    for (auto it = d.picks.rbegin(); it != d.picks.rend(); ++it)
      for (auto p = it->second.rbegin(); p != it->second.rend(); ++p) out.emplace_back(it->first, *p);
    return out;
  };
  const auto ta = tokens(a);
  const auto tb = tokens(b);
  for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i)
    if (ta[i] != tb[i]) return ta[i] > tb[i];
  return ta.size() > tb.size();
}

}  // namespace zeck

#endif  // ZECK_DECOMPOSER_HPP
