#ifndef ZECK_CORE_HPP
#define ZECK_CORE_HPP

// Shared numeric types, error hierarchy and the exact binomial coefficient.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace zeck {

/// Arbitrary-precision integer used for every sequence term and sum.
using BigInt = boost::multiprecision::cpp_int;

/// Bin indices are 1-based; 0 is used as "no bin".
using BinIndex = std::uint32_t;

inline constexpr std::size_t kDefaultStateCap = 10'000'000;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Schedule text outside the grammar. `position()` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Well-formed input that violates a domain rule (A_n not inside {0..b_n}, b_n < 1, ...).
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The achievable-sum state set (or an enumeration) outgrew its cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, BinIndex bin)
      : Error(what + " (reached bin " + std::to_string(bin) + ")"), bin_(bin) {}
  BinIndex bin() const noexcept { return bin_; }

 private:
  BinIndex bin_;
};

/// Exact C(n, k); zero when k > n. `Int` is any Boost.Multiprecision integer.
template <class Int = BigInt>
Int binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return Int(0);
  if (k > n - k) k = n - k;
  Int result = 1;
  // Each partial product result * (n - i) / (i + 1) is C(n, i + 1), so the division is exact.
  for (std::uint64_t i = 0; i < k; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

}  // namespace zeck

#endif  // ZECK_CORE_HPP
