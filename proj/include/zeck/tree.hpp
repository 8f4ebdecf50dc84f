#ifndef ZECK_TREE_HPP
#define ZECK_TREE_HPP

// The Zeckendorf tree: level i holds i terms, and an integer joins the tree when it is
// not a sum of terms taken at most one per level from pairwise nonadjacent levels.

#include "zeck/constructor.hpp"
#include "zeck/core.hpp"
#include "zeck/schedule.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zeck {

class ZeckTree {
 public:
  explicit ZeckTree(std::vector<std::vector<BigInt>> levels) : levels_(std::move(levels)) {
    BigInt previous = 0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (levels_[i].size() != i + 1)
        throw PreconditionError("tree level " + std::to_string(i + 1) + " must hold " + std::to_string(i + 1) + " terms");
      for (const BigInt& t : levels_[i]) {
        if (t <= previous) throw PreconditionError("tree terms must strictly increase");
        previous = t;
      }
    }
  }

  std::size_t num_levels() const noexcept { return levels_.size(); }
  const std::vector<std::vector<BigInt>>& levels() const noexcept { return levels_; }
  /// a_{i,j}, both 1-based.
  const BigInt& at(std::size_t i, std::size_t j) const { return levels_.at(i - 1).at(j - 1); }

  std::vector<BigInt> flatten() const {
    std::vector<BigInt> out;
    for (const auto& level : levels_) out.insert(out.end(), level.begin(), level.end());
    return out;
  }

 private:
  std::vector<std::vector<BigInt>> levels_;
};

namespace detail {

// Number of selections (one term per chosen level, chosen levels nonadjacent) from
// levels 1..top that sum to x; stops counting at `stop`.
inline unsigned count_tree_selections(const std::vector<std::vector<BigInt>>& levels, std::size_t top,
                                      const BigInt& x, unsigned stop) {
  if (x == 0) return 1;
  if (top == 0) return 0;
  unsigned found = count_tree_selections(levels, top - 1, x, stop);
  for (const BigInt& t : levels[top - 1]) {
    if (found >= stop) break;
    if (t > x) break;
    found += count_tree_selections(levels, top >= 2 ? top - 2 : 0, x - t, stop - found);
  }
  return found;
}

}  // namespace detail

inline ZeckTree build_tree(std::size_t num_levels, std::uint64_t max_candidates = 100'000'000) {
  if (num_levels < 1) throw PreconditionError("build_tree needs at least one level");
  std::vector<std::vector<BigInt>> levels;
  BigInt candidate = 0;
  std::uint64_t examined = 0;
  for (std::size_t i = 1; i <= num_levels; ++i) {
    levels.emplace_back();
    while (levels.back().size() < i) {
      ++candidate;
      if (++examined > max_candidates)
        throw CapExceeded("tree candidate enumeration cap exceeded", static_cast<BinIndex>(i));
      if (detail::count_tree_selections(levels, levels.size(), candidate, 1) == 0) levels.back().push_back(candidate);
    }
  }
  return ZeckTree(std::move(levels));
}

/// First terms d_1, d_2, ... satisfy d_1 = 1, d_2 = 2, d_n = d_{n-1} + (n-1) d_{n-2}.
inline bool telephone_check(const ZeckTree& tree) {
  if (tree.num_levels() < 3) throw PreconditionError("telephone_check needs at least 3 levels");
  if (tree.at(1, 1) != 1 || tree.at(2, 1) != 2) return false;
  for (std::size_t n = 3; n <= tree.num_levels(); ++n)
    if (tree.at(n, 1) != tree.at(n - 1, 1) + (n - 1) * tree.at(n - 2, 1)) return false;
  return true;
}

/// Tree terms equal the terms of the bin sequence with b_n = n, A_n = {0,1}, a = 1.
inline bool bin_equivalence_check(std::size_t num_levels) {
  const ZeckTree tree = build_tree(num_levels);
  const BinSchedule schedule(size_rule::Affine{1, 0}, allowed_rule::ZeroOne{}, 1);
  return tree.flatten() == build_sequence(schedule, static_cast<BinIndex>(num_levels)).flatten();
}

/// Exactly one selection for every x in 1..last term.
inline bool tree_unique_decomposition(const ZeckTree& tree) {
  const auto& levels = tree.levels();
  const BigInt last = levels.back().back();
  for (BigInt x = 1; x <= last; ++x)
    if (detail::count_tree_selections(levels, levels.size(), x, 2) != 1) return false;
  return true;
}

/// Readings of the index-0 terms in
///   a_{i,j} = a_{i,j-1} + a_{i-1,0}  (j > 1),   a_{i,1} = a_{i-1,i-1} + a_{i,0}.
enum class RecurrenceReading {
  FirstOfLevel,      ///< a_{i,0} = a_{i,1},   a_{i-1,0} = a_{i-1,1}
  Zero,              ///< a_{i,0} = a_{i-1,0} = 0
  PreviousDiagonal,  ///< a_{i,0} = a_{i-1,1}, a_{i-1,0} = a_{i-2,1}
  DiagonalLag,       ///< a_{i-1,0} = a_{i-1,1}, a_{i,0} = a_{i-2,1}
};

inline const char* to_string(RecurrenceReading r) {
  switch (r) {
    case RecurrenceReading::FirstOfLevel: return "first-of-level";
    case RecurrenceReading::Zero: return "zero";
    case RecurrenceReading::PreviousDiagonal: return "previous-diagonal";
    case RecurrenceReading::DiagonalLag: return "diagonal-lag";
  }
  return "?";
}

inline constexpr RecurrenceReading kRecurrenceReadings[] = {
    RecurrenceReading::FirstOfLevel, RecurrenceReading::Zero, RecurrenceReading::PreviousDiagonal,
    RecurrenceReading::DiagonalLag};

struct RecurrenceMismatch {
  std::size_t i = 0;
  std::size_t j = 0;
  BigInt expected;
  BigInt actual;
};

struct RecurrenceResult {
  RecurrenceReading reading;
  /// Entries whose right-hand side is defined under this reading.
  std::size_t checked = 0;
  std::vector<RecurrenceMismatch> mismatches;
};

namespace detail {

// First term of level m (1-based), or nullopt when the level does not exist.
inline std::optional<BigInt> diagonal(const ZeckTree& tree, std::ptrdiff_t m) {
  if (m < 1 || static_cast<std::size_t>(m) > tree.num_levels()) return std::nullopt;
  return tree.at(static_cast<std::size_t>(m), 1);
}

// Value of a_{i,0} (same_level) or a_{i-1,0} under a reading.
inline std::optional<BigInt> zero_index_term(const ZeckTree& tree, RecurrenceReading reading, std::size_t i,
                                             bool same_level) {
  const auto row = static_cast<std::ptrdiff_t>(i);
  switch (reading) {
    case RecurrenceReading::FirstOfLevel: return diagonal(tree, same_level ? row : row - 1);
    case RecurrenceReading::Zero: return BigInt(0);
    case RecurrenceReading::PreviousDiagonal: return diagonal(tree, same_level ? row - 1 : row - 2);
    case RecurrenceReading::DiagonalLag: return diagonal(tree, same_level ? row - 2 : row - 1);
  }
  return std::nullopt;
}

}  // namespace detail

/// Every (i, j) with i >= 2 where the displayed recurrence disagrees with the tree,
/// under each reading. Entries needing an absent level are skipped.
inline std::vector<RecurrenceResult> recurrence_check(const ZeckTree& tree) {
  if (tree.num_levels() < 2) throw PreconditionError("recurrence_check needs at least 2 levels");
  std::vector<RecurrenceResult> results;
  for (RecurrenceReading reading : kRecurrenceReadings) {
    RecurrenceResult r{reading, 0, {}};
    for (std::size_t i = 2; i <= tree.num_levels(); ++i) {
      for (std::size_t j = 1; j <= i; ++j) {
        std::optional<BigInt> expected;
        if (j == 1) {
          if (auto z = detail::zero_index_term(tree, reading, i, true)) expected = tree.at(i - 1, i - 1) + *z;
        } else if (auto z = detail::zero_index_term(tree, reading, i, false)) {
          expected = tree.at(i, j - 1) + *z;
        }
        if (!expected) continue;
        ++r.checked;
        if (*expected != tree.at(i, j)) r.mismatches.push_back({i, j, *expected, tree.at(i, j)});
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace zeck

#endif  // ZECK_TREE_HPP
