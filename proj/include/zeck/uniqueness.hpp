#ifndef ZECK_UNIQUENESS_HPP
#define ZECK_UNIQUENESS_HPP

// Uniqueness of decomposition for adjacency-free schedules: a per-bin classifier
// (A_n must be {0,1}, {0..b_n-1} or {0..b_n}), an exhaustive checker that looks for
// collisions and coverage gaps, and the divisibility structure that follows once the
// first bins cover an interval {1..k}.

#include "zeck/constructor.hpp"
#include "zeck/core.hpp"
#include "zeck/decomposer.hpp"
#include "zeck/schedule.hpp"
#include "zeck/sequence.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace zeck {

enum class ClassifierVerdict { Unique, NotUnique, OutOfTheoremScope };
enum class AllowedForm { ZeroOne, FullMinusOne, Full };

/// Which non-uniqueness argument applies to a bin whose A_n is not one of the three forms.
/// CaseI: {0..k} inside A_n, k+1 not, k >= 2.  CaseII: {0,1} strictly inside A_n, 2 not;
/// k is then the smallest count above 1.
enum class ViolationCase { CaseI, CaseII, MissingZeroOrOne };
enum class CaseIISubcase { BinEqualsK, BinEqualsKPlusOne, BinAtLeastKPlusTwo };

struct BinReason {
  BinIndex bin = 0;
  std::optional<AllowedForm> form;
  std::optional<ViolationCase> violation;
  std::optional<std::uint64_t> k;
  std::optional<CaseIISubcase> subcase;
};

struct Classification {
  ClassifierVerdict verdict = ClassifierVerdict::OutOfTheoremScope;
  /// Matched forms for each bin up to and including the first violating one.
  std::vector<BinReason> per_bin;
};

enum class EmpiricalVerdict { ConfirmedUnique, Collision, CoverageGap };

struct Collision {
  BigInt x;
  Decomposition first;
  Decomposition second;
};

struct ExhaustiveCheck {
  EmpiricalVerdict verdict = EmpiricalVerdict::ConfirmedUnique;
  BigInt bound;
  std::optional<Collision> collision;
  /// Smallest x in 1..bound without any decomposition.
  std::optional<BigInt> gap;
};

struct UniquenessVerdict {
  std::optional<Classification> classification;
  std::optional<ExhaustiveCheck> exhaustive;
};

inline const char* to_string(ClassifierVerdict v) {
  switch (v) {
    case ClassifierVerdict::Unique: return "unique";
    case ClassifierVerdict::NotUnique: return "not-unique";
    case ClassifierVerdict::OutOfTheoremScope: return "out-of-theorem-scope";
  }
  return "?";
}
inline const char* to_string(AllowedForm f) {
  switch (f) {
    case AllowedForm::ZeroOne: return "zero-one";
    case AllowedForm::FullMinusOne: return "full-minus-one";
    case AllowedForm::Full: return "full";
  }
  return "?";
}
inline const char* to_string(ViolationCase c) {
  switch (c) {
    case ViolationCase::CaseI: return "case-I";
    case ViolationCase::CaseII: return "case-II";
    case ViolationCase::MissingZeroOrOne: return "missing-zero-or-one";
  }
  return "?";
}
inline const char* to_string(CaseIISubcase s) {
  switch (s) {
    case CaseIISubcase::BinEqualsK: return "b=k";
    case CaseIISubcase::BinEqualsKPlusOne: return "b=k+1";
    case CaseIISubcase::BinAtLeastKPlusTwo: return "b>=k+2";
  }
  return "?";
}
inline const char* to_string(EmpiricalVerdict v) {
  switch (v) {
    case EmpiricalVerdict::ConfirmedUnique: return "confirmed-unique";
    case EmpiricalVerdict::Collision: return "collision";
    case EmpiricalVerdict::CoverageGap: return "coverage-gap";
  }
  return "?";
}

/// Reason for a single bin of size b with allowed set A.
inline BinReason classify_bin(BinIndex n, std::uint64_t b, const AllowedSet& allowed) {
  BinReason reason;
  reason.bin = n;
  if (!allowed.contains(0) || !allowed.contains(1)) {
    reason.violation = ViolationCase::MissingZeroOrOne;
    return reason;
  }
  if (allowed.is_range(0, 1)) reason.form = AllowedForm::ZeroOne;
  else if (allowed.is_range(0, b - 1)) reason.form = AllowedForm::FullMinusOne;
  else if (allowed.is_range(0, b)) reason.form = AllowedForm::Full;
  if (reason.form) return reason;

  std::uint64_t k = 1;
  while (allowed.contains(k + 1)) ++k;
  if (k >= 2) {
    reason.violation = ViolationCase::CaseI;
    reason.k = k;
    return reason;
  }
  const auto& counts = allowed.counts();
  const std::uint64_t gap_k = *std::upper_bound(counts.begin(), counts.end(), std::uint64_t{1});
  reason.violation = ViolationCase::CaseII;
  reason.k = gap_k;
  reason.subcase = b == gap_k       ? CaseIISubcase::BinEqualsK
                   : b == gap_k + 1 ? CaseIISubcase::BinEqualsKPlusOne
                                    : CaseIISubcase::BinAtLeastKPlusTwo;
  return reason;
}

/// Applies the uniqueness criterion bin by bin to bins 1..num_bins.
inline Classification classify(const BinSchedule& schedule, BinIndex num_bins) {
  Classification result;
  if (schedule.adjacency() != 0) return result;
  result.verdict = ClassifierVerdict::Unique;
  for (BinIndex n = 1; n <= num_bins; ++n) {
    BinReason reason = classify_bin(n, schedule.bin_size(n), schedule.allowed(n));
    const bool violated = reason.violation.has_value();
    result.per_bin.push_back(std::move(reason));
    if (violated) {
      result.verdict = ClassifierVerdict::NotUnique;
      break;
    }
  }
  return result;
}

namespace detail {

// Classifies one target: nullopt when it has exactly one decomposition.
inline std::optional<ExhaustiveCheck> check_target(const Sequence& seq, const BigInt& x) {
  DecompositionSet set = enumerate_decompositions(seq, x, 2);
  if (set.found.size() == 1) return std::nullopt;
  ExhaustiveCheck check;
  if (set.found.empty()) {
    check.verdict = EmpiricalVerdict::CoverageGap;
    check.gap = x;
  } else {
    check.verdict = EmpiricalVerdict::Collision;
    check.collision = Collision{x, set.found[0], set.found[1]};
  }
  return check;
}

}  // namespace detail

/// Counts decompositions of every x in 1..bound; reports the smallest x with two or
/// more (a collision, with both witnesses) or none (a coverage gap). Workers split the
/// range in blocks; the reported failure is the minimum over all workers.
inline ExhaustiveCheck verify_exhaustive(const Sequence& seq, const BigInt& bound, unsigned threads = 1) {
  if (bound < 1) throw PreconditionError("verify_exhaustive: bound must be positive");
  const BigInt top = omega(seq, seq.num_bins());
  if (bound > top)
    throw PreconditionError("verify_exhaustive: bound exceeds Omega_N = " + top.str());

  ExhaustiveCheck result;
  result.bound = bound;

  if (threads <= 1 || bound > std::numeric_limits<std::uint64_t>::max()) {
    for (BigInt x = 1; x <= bound; ++x) {
      if (auto failure = detail::check_target(seq, x)) {
        failure->bound = bound;
        return *failure;
      }
    }
    return result;
  }

  const auto last = bound.convert_to<std::uint64_t>();
  constexpr std::uint64_t kBlock = 64;
  std::atomic<std::uint64_t> next_block{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::vector<std::optional<ExhaustiveCheck>> found(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (;;) {
        const std::uint64_t start = 1 + kBlock * next_block.fetch_add(1);
        if (start > last || start > best.load()) return;
        const std::uint64_t stop = std::min(last, start + kBlock - 1);
        for (std::uint64_t x = start; x <= stop; ++x) {
          if (auto failure = detail::check_target(seq, BigInt(x))) {
            // Blocks are claimed in increasing order, so this is the worker's minimum.
            found[t] = std::move(failure);
            std::uint64_t seen = best.load();
            while (x < seen && !best.compare_exchange_weak(seen, x)) {}
            return;
          }
        }
      }
    });
  }
  for (auto& th : pool) th.join();

  std::optional<ExhaustiveCheck> first;
  auto where = [](const ExhaustiveCheck& c) { return c.collision ? c.collision->x : *c.gap; };
  for (auto& f : found)
    if (f && (!first || where(*f) < where(*first))) first = f;
  if (first) {
    first->bound = bound;
    return *first;
  }
  return result;
}

struct DivisibilityResult {
  /// Bins 1..n0-1 represent exactly {0, 1, ..., k}.
  BigInt k;
  bool all_divisible = true;
  /// First term from bin n0 on that is not a multiple of k+1.
  std::optional<BigInt> first_offender;
};

/// Checks that every term from bin n0 onward is a multiple of k+1, where bins
/// 1..n0-1 generate exactly {1..k}.
inline DivisibilityResult divisibility_check(const Sequence& seq, BinIndex n0, std::size_t state_cap = kDefaultStateCap) {
  if (n0 < 1 || n0 > seq.num_bins() + 1) throw PreconditionError("divisibility_check: n0 out of range");
  const std::vector<BigInt> sums = achievable_sums(seq, n0 - 1, state_cap).plain_sums();
  for (std::size_t i = 0; i < sums.size(); ++i) {
    if (sums[i] != i)
      throw PreconditionError("divisibility_check: bins 1.." + std::to_string(n0 - 1) +
                              " do not generate an interval; " + std::to_string(i) + " is missing");
  }
  DivisibilityResult result;
  result.k = BigInt(sums.size() - 1);
  const BigInt modulus = result.k + 1;
  for (BinIndex n = n0; n <= seq.num_bins(); ++n) {
    for (const BigInt& term : seq.bin(n)) {
      if (term % modulus != 0) {
        result.all_divisible = false;
        result.first_offender = term;
        return result;
      }
    }
  }
  return result;
}

}  // namespace zeck

#endif  // ZECK_UNIQUENESS_HPP
