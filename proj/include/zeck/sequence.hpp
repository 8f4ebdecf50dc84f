#ifndef ZECK_SEQUENCE_HPP
#define ZECK_SEQUENCE_HPP

// Materialized sequences and decompositions against them.

#include "zeck/core.hpp"
#include "zeck/schedule.hpp"

#include <map>
#include <string>
#include <vector>

namespace zeck {

using Bin = std::vector<BigInt>;

/// Whether equal values may straddle a bin boundary.
enum class SequenceMode { Standard, Gnary };

/// Full bins of a (b_n, A_n, a)-sequence. Bin n holds exactly b_n strictly increasing
/// terms; the flattened sequence is strictly increasing in standard mode and
/// non-decreasing in g-nary mode.
class Sequence {
 public:
  Sequence(BinSchedule schedule, std::vector<Bin> bins, SequenceMode mode = SequenceMode::Standard)
      : schedule_(std::move(schedule)), bins_(std::move(bins)), mode_(mode) {
    validate();
  }

  const BinSchedule& schedule() const noexcept { return schedule_; }
  SequenceMode mode() const noexcept { return mode_; }
  BinIndex num_bins() const noexcept { return static_cast<BinIndex>(bins_.size()); }
  const std::vector<Bin>& bins() const noexcept { return bins_; }

  /// Bin n, 1-based.
  const Bin& bin(BinIndex n) const {
    if (n < 1 || n > bins_.size()) throw PreconditionError("bin " + std::to_string(n) + " is not materialized");
    return bins_[n - 1];
  }

  std::vector<BigInt> flatten() const {
    std::vector<BigInt> out;
    for (const auto& b : bins_) out.insert(out.end(), b.begin(), b.end());
    return out;
  }

  /// A copy holding only bins 1..n.
  Sequence prefix(BinIndex n) const {
    if (n > num_bins()) throw PreconditionError("prefix longer than the sequence");
    return Sequence(schedule_, std::vector<Bin>(bins_.begin(), bins_.begin() + n), mode_);
  }

  friend bool operator==(const Sequence& a, const Sequence& b) { return a.bins_ == b.bins_ && a.schedule_ == b.schedule_; }

 private:
  void validate() const {
    const BigInt* previous = nullptr;
    for (BinIndex n = 1; n <= bins_.size(); ++n) {
      const Bin& bin = bins_[n - 1];
      if (bin.size() != schedule_.bin_size(n))
        throw PreconditionError("bin " + std::to_string(n) + " has " + std::to_string(bin.size()) +
                                " terms, schedule says " + std::to_string(schedule_.bin_size(n)));
      for (std::size_t j = 0; j < bin.size(); ++j) {
        if (bin[j] < 1) throw PreconditionError("sequence terms must be positive");
        if (previous) {
          const bool ok = (j > 0 || mode_ == SequenceMode::Standard) ? bin[j] > *previous : bin[j] >= *previous;
          if (!ok) throw PreconditionError("sequence terms out of order in bin " + std::to_string(n));
        }
        previous = &bin[j];
      }
    }
  }

  BinSchedule schedule_;
  std::vector<Bin> bins_;
  SequenceMode mode_;
};

/// Selected element positions (0-based, ascending) per bin, plus their sum.
struct Decomposition {
  std::map<BinIndex, std::vector<std::uint32_t>> picks;
  BigInt value = 0;

  std::size_t count_summands() const {
    std::size_t total = 0;
    for (const auto& [bin, positions] : picks) total += positions.size();
    return total;
  }

  /// Highest bin with a nonempty pick, 0 for the empty decomposition.
  BinIndex top_bin() const { return picks.empty() ? 0 : picks.rbegin()->first; }

  /// Selected values, largest first.
  std::vector<BigInt> summands(const Sequence& seq) const {
    std::vector<BigInt> out;
    for (auto it = picks.rbegin(); it != picks.rend(); ++it) {
      const Bin& bin = seq.bin(it->first);
      for (auto p = it->second.rbegin(); p != it->second.rend(); ++p) out.push_back(bin.at(*p));
    }
    return out;
  }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Number of summands, sum over bins of |picks[n]|.
inline std::size_t count_summands(const Decomposition& d) { return d.count_summands(); }

/// Empty string when `d` is a legal decomposition of `seq`; otherwise the first violation.
inline std::string legality_violation(const Sequence& seq, const Decomposition& d) {
  BigInt sum = 0;
  BinIndex previous = 0;
  for (const auto& [n, positions] : d.picks) {
    if (positions.empty()) return "empty pick list for bin " + std::to_string(n);
    if (n < 1 || n > seq.num_bins()) return "bin " + std::to_string(n) + " not materialized";
    if (!seq.schedule().allowed(n).contains(positions.size()))
      return "pick count " + std::to_string(positions.size()) + " not allowed in bin " + std::to_string(n);
    if (previous != 0 && n - previous <= seq.schedule().adjacency())
      return "bins " + std::to_string(previous) + " and " + std::to_string(n) + " are too close";
    const Bin& bin = seq.bin(n);
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (positions[i] >= bin.size()) return "position out of range in bin " + std::to_string(n);
      if (i > 0 && positions[i] <= positions[i - 1]) return "positions not strictly ascending in bin " + std::to_string(n);
      sum += bin[positions[i]];
    }
    previous = n;
  }
  if (sum != d.value) return "value does not match the selected elements";
  return {};
}

inline bool is_legal(const Sequence& seq, const Decomposition& d) { return legality_violation(seq, d).empty(); }

}  // namespace zeck

#endif  // ZECK_SEQUENCE_HPP
