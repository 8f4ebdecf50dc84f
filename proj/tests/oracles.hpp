// Brute-force reference implementations used by the unit tests. Each one works
// straight from the definitions, by enumerating bitmasks over small inputs, and shares
// no code with the library beyond the schedule parser and integer types.
#pragma once

#include "zeck/zeck.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using zeck::BigInt;

/// C(n, k) from Pascal's rule.
inline BigInt pascal(unsigned n, unsigned k) {
  std::vector<BigInt> row{1};
  for (unsigned i = 1; i <= n; ++i) {
    std::vector<BigInt> next(i + 1, BigInt(1));
    for (unsigned j = 1; j < i; ++j) next[j] = row[j - 1] + row[j];
    row = std::move(next);
  }
  return k <= n ? row[k] : BigInt(0);
}

/// A term together with its 1-based bin.
struct Term {
  unsigned bin;
  BigInt value;
};

/// Every subset of `terms` that obeys the count sets and the adjacency rule; calls
/// visit(mask, sum). `counts[n]` is the allowed set of bin n.
template <class Visit>
void legal_subsets(const std::vector<Term>& terms, const std::map<unsigned, std::set<std::uint64_t>>& counts,
                   unsigned adjacency, Visit visit) {
  const std::size_t m = terms.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::map<unsigned, std::uint64_t> per_bin;
    BigInt sum = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1U) {
        ++per_bin[terms[i].bin];
        sum += terms[i].value;
      }
    bool ok = true;
    unsigned previous = 0;
    for (const auto& [bin, c] : per_bin) {
      if (!counts.at(bin).count(c)) ok = false;
      if (previous != 0 && bin - previous <= adjacency) ok = false;
      previous = bin;
    }
    if (ok) visit(mask, sum);
  }
}

inline std::map<unsigned, std::set<std::uint64_t>> count_sets(const zeck::BinSchedule& s, unsigned bins) {
  std::map<unsigned, std::set<std::uint64_t>> out;
  for (unsigned n = 1; n <= bins; ++n) {
    const auto a = s.allowed(n);
    out[n] = std::set<std::uint64_t>(a.counts().begin(), a.counts().end());
  }
  return out;
}

inline std::vector<Term> terms_of(const zeck::Sequence& seq) {
  std::vector<Term> out;
  for (unsigned n = 1; n <= seq.num_bins(); ++n)
    for (const auto& v : seq.bin(n)) out.push_back({n, v});
  return out;
}

/// Greedy construction: each new term is the least positive integer that is not a legal
/// sum of the terms placed so far (partial bins included).
inline std::vector<std::vector<BigInt>> greedy_bins(const zeck::BinSchedule& s, unsigned bins) {
  std::vector<Term> terms;
  std::vector<std::vector<BigInt>> out;
  const auto counts = count_sets(s, bins);
  for (unsigned n = 1; n <= bins; ++n) {
    out.emplace_back();
    for (std::uint64_t j = 0; j < s.bin_size(n); ++j) {
      std::set<BigInt> sums;
      legal_subsets(terms, counts, s.adjacency(), [&](std::uint64_t, const BigInt& v) { sums.insert(v); });
      BigInt t = 1;
      while (sums.count(t)) ++t;
      terms.push_back({n, t});
      out.back().push_back(t);
    }
  }
  return out;
}

/// Number of legal selections of each value.
inline std::map<BigInt, unsigned> representation_counts(const zeck::Sequence& seq) {
  std::map<BigInt, unsigned> out;
  legal_subsets(terms_of(seq), count_sets(seq.schedule(), seq.num_bins()), seq.schedule().adjacency(),
                [&](std::uint64_t, const BigInt& v) { ++out[v]; });
  return out;
}

/// Mean and variance of the number of chosen elements when a legal pick of bin (b, A)
/// is drawn uniformly among all subsets with size in A.
struct Moments {
  zeck::Rational mu, sigma2, abs4;  // abs4: E|X - mu|^4
};
inline Moments subset_moments(unsigned b, const std::set<std::uint64_t>& a) {
  std::vector<unsigned> sizes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << b); ++mask) {
    const unsigned c = static_cast<unsigned>(__builtin_popcountll(mask));
    if (a.count(c)) sizes.push_back(c);
  }
  const zeck::Rational n(static_cast<long>(sizes.size()));
  zeck::Rational mu = 0;
  for (unsigned c : sizes) mu += c;
  mu /= n;
  zeck::Rational var = 0, four = 0;
  for (unsigned c : sizes) {
    const zeck::Rational d = zeck::Rational(c) - mu;
    var += d * d;
    four += d * d * d * d;
  }
  return {mu, var / n, four / n};
}

/// Smallest positive integer with no legal selection (0 when all of 1..limit have one).
inline BigInt least_unrepresentable(const std::map<BigInt, unsigned>& counts, const BigInt& limit) {
  for (BigInt x = 1; x <= limit; ++x)
    if (!counts.count(x)) return x;
  return 0;
}

}  // namespace oracle
