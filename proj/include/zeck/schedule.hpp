#ifndef ZECK_SCHEDULE_HPP
#define ZECK_SCHEDULE_HPP

// Bin schedules: the (b_n, A_n, a) rule triple and its text form
//
//   SPEC      := SIZESPEC "/" ALLOWSPEC "/" "adj:" UINT
//   SIZESPEC  := "const:" UINT | "affine:" INT "," INT | "pow:" UINT | "list:" UINT ("," UINT)*
//   ALLOWSPEC := "zero-one" | "full" | "full-minus" | "set:" UINT ("," UINT)*
//              | "pair:" UINT | "floordiv:" UINT

#include "zeck/core.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace zeck {

/// A finite set of allowed per-bin pick counts, kept sorted and duplicate-free.
class AllowedSet {
 public:
  AllowedSet() = default;
  explicit AllowedSet(std::vector<std::uint64_t> counts) : counts_(std::move(counts)) {
    std::sort(counts_.begin(), counts_.end());
    counts_.erase(std::unique(counts_.begin(), counts_.end()), counts_.end());
  }

  static AllowedSet range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> c;
    for (std::uint64_t i = lo; i <= hi; ++i) c.push_back(i);
    return AllowedSet(std::move(c));
  }

  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::size_t size() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }
  bool contains(std::uint64_t c) const { return std::binary_search(counts_.begin(), counts_.end(), c); }

  /// m = max(A).
  std::uint64_t max() const {
    if (counts_.empty()) throw PreconditionError("max of an empty allowed set");
    return counts_.back();
  }
  /// m' = max(A - {m}); empty when |A| < 2.
  std::optional<std::uint64_t> second_max() const {
    if (counts_.size() < 2) return std::nullopt;
    return counts_[counts_.size() - 2];
  }

  /// True iff the set is exactly {lo, lo+1, ..., hi}.
  bool is_range(std::uint64_t lo, std::uint64_t hi) const {
    if (hi < lo || counts_.size() != hi - lo + 1) return false;
    return counts_.front() == lo && counts_.back() == hi;
  }

  friend bool operator==(const AllowedSet&, const AllowedSet&) = default;

 private:
  std::vector<std::uint64_t> counts_;
};

namespace size_rule {
struct Constant { std::uint64_t value; friend bool operator==(const Constant&, const Constant&) = default; };
/// b_n = slope * n + offset.
struct Affine { std::int64_t slope; std::int64_t offset; friend bool operator==(const Affine&, const Affine&) = default; };
/// b_n = n^exponent.
struct Power { std::uint64_t exponent; friend bool operator==(const Power&, const Power&) = default; };
/// Finite explicit list; bins beyond its end do not exist.
struct List { std::vector<std::uint64_t> sizes; friend bool operator==(const List&, const List&) = default; };
}  // namespace size_rule

namespace allowed_rule {
struct ZeroOne { friend bool operator==(const ZeroOne&, const ZeroOne&) = default; };
struct Full { friend bool operator==(const Full&, const Full&) = default; };
struct FullMinusOne { friend bool operator==(const FullMinusOne&, const FullMinusOne&) = default; };
struct Explicit { AllowedSet counts; friend bool operator==(const Explicit&, const Explicit&) = default; };
/// {0, g}.
struct Pair { std::uint64_t g; friend bool operator==(const Pair&, const Pair&) = default; };
/// {0, 1, ..., floor(n / k)}.
struct FloorDiv { std::uint64_t k; friend bool operator==(const FloorDiv&, const FloorDiv&) = default; };
}  // namespace allowed_rule

using SizeRule = std::variant<size_rule::Constant, size_rule::Affine, size_rule::Power, size_rule::List>;
using AllowedRule = std::variant<allowed_rule::ZeroOne, allowed_rule::Full, allowed_rule::FullMinusOne,
                                 allowed_rule::Explicit, allowed_rule::Pair, allowed_rule::FloorDiv>;

class BinSchedule {
 public:
  BinSchedule(SizeRule sizes, AllowedRule allowed, std::uint32_t adjacency)
      : sizes_(std::move(sizes)), allowed_(std::move(allowed)), adjacency_(adjacency) {}

  const SizeRule& size_rule() const noexcept { return sizes_; }
  const AllowedRule& allowed_rule() const noexcept { return allowed_; }
  std::uint32_t adjacency() const noexcept { return adjacency_; }

  /// Number of bins the schedule defines, or nullopt when unbounded.
  std::optional<BinIndex> bin_limit() const {
    if (auto* list = std::get_if<size_rule::List>(&sizes_)) return static_cast<BinIndex>(list->sizes.size());
    return std::nullopt;
  }

  /// Constant bin size, when the size rule is `const:`.
  std::optional<std::uint64_t> constant_size() const {
    if (auto* c = std::get_if<size_rule::Constant>(&sizes_)) return c->value;
    return std::nullopt;
  }

  /// b_n for n >= 1.
  std::uint64_t bin_size(BinIndex n) const {
    if (n < 1) throw PreconditionError("bin indices start at 1");
    return std::visit([n](const auto& rule) { return evaluate_size(rule, n); }, sizes_);
  }

  /// A_n for n >= 1; throws SemanticError if it is not inside {0, ..., b_n}.
  AllowedSet allowed(BinIndex n) const {
    const std::uint64_t b = bin_size(n);
    AllowedSet set = std::visit([n, b](const auto& rule) { return evaluate_allowed(rule, n, b); }, allowed_);
    if (set.empty()) throw SemanticError("allowed set for bin " + std::to_string(n) + " is empty");
    if (set.max() > b)
      throw SemanticError("allowed count " + std::to_string(set.max()) + " exceeds b_" + std::to_string(n) +
                          " = " + std::to_string(b));
    return set;
  }

  friend bool operator==(const BinSchedule&, const BinSchedule&) = default;

 private:
  static std::uint64_t evaluate_size(const size_rule::Constant& r, BinIndex) { return checked(r.value, 0); }
  static std::uint64_t evaluate_size(const size_rule::Affine& r, BinIndex n) {
    const __int128 v = static_cast<__int128>(r.slope) * n + r.offset;
    if (v < 1) throw SemanticError("b_" + std::to_string(n) + " = " + std::to_string(static_cast<long long>(v)) +
                                   " is not a positive bin size");
    if (v > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max()))
      throw SemanticError("b_" + std::to_string(n) + " overflows 64 bits");
    return static_cast<std::uint64_t>(v);
  }
  static std::uint64_t evaluate_size(const size_rule::Power& r, BinIndex n) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < r.exponent; ++i) {
      if (v > std::numeric_limits<std::uint64_t>::max() / n)
        throw SemanticError("b_" + std::to_string(n) + " overflows 64 bits");
      v *= n;
    }
    return v;
  }
  static std::uint64_t evaluate_size(const size_rule::List& r, BinIndex n) {
    if (n > r.sizes.size())
      throw PreconditionError("bin " + std::to_string(n) + " is beyond the " + std::to_string(r.sizes.size()) +
                              "-entry size list");
    return checked(r.sizes[n - 1], n);
  }
  static std::uint64_t checked(std::uint64_t v, BinIndex n) {
    if (v < 1) throw SemanticError("b_" + std::to_string(n) + " = 0 is not a positive bin size");
    return v;
  }

  static AllowedSet evaluate_allowed(const allowed_rule::ZeroOne&, BinIndex, std::uint64_t) { return AllowedSet({0, 1}); }
  static AllowedSet evaluate_allowed(const allowed_rule::Full&, BinIndex, std::uint64_t b) { return AllowedSet::range(0, b); }
  static AllowedSet evaluate_allowed(const allowed_rule::FullMinusOne&, BinIndex, std::uint64_t b) {
    return AllowedSet::range(0, b - 1);
  }
  static AllowedSet evaluate_allowed(const allowed_rule::Explicit& r, BinIndex, std::uint64_t) { return r.counts; }
  static AllowedSet evaluate_allowed(const allowed_rule::Pair& r, BinIndex, std::uint64_t) { return AllowedSet({0, r.g}); }
  static AllowedSet evaluate_allowed(const allowed_rule::FloorDiv& r, BinIndex n, std::uint64_t) {
    return AllowedSet::range(0, n / r.k);
  }

  SizeRule sizes_;
  AllowedRule allowed_;
  std::uint32_t adjacency_;
};

/// Concrete A_n of `schedule` for bin n.
inline AllowedSet expand_allowed(const BinSchedule& schedule, BinIndex n) { return schedule.allowed(n); }

namespace detail {

class ScheduleParser {
 public:
  explicit ScheduleParser(std::string_view text) : text_(text) {}

  BinSchedule parse() {
    SizeRule sizes = parse_sizes();
    expect("/");
    AllowedRule allowed = parse_allowed();
    expect("/");
    expect("adj:");
    const std::uint64_t adj = parse_uint();
    if (adj > std::numeric_limits<std::uint32_t>::max()) fail("adjacency too large", pos_);
    if (pos_ != text_.size()) fail("trailing characters", pos_);
    return BinSchedule(std::move(sizes), std::move(allowed), static_cast<std::uint32_t>(adj));
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

  bool accept(std::string_view token) {
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'", pos_);
  }

  std::uint64_t parse_uint() {
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec == std::errc::result_out_of_range) fail("integer out of range", start);
    if (ec != std::errc() || ptr == text_.data() + pos_) fail("expected unsigned integer", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  std::int64_t parse_int() {
    const std::size_t start = pos_;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec == std::errc::result_out_of_range) fail("integer out of range", start);
    if (ec != std::errc() || ptr == text_.data() + pos_) fail("expected integer", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  std::vector<std::uint64_t> parse_uint_list() {
    std::vector<std::uint64_t> values{parse_uint()};
    while (accept(",")) values.push_back(parse_uint());
    return values;
  }

  SizeRule parse_sizes() {
    const std::size_t start = pos_;
    if (accept("const:")) return size_rule::Constant{parse_uint()};
    if (accept("affine:")) {
      const std::int64_t slope = parse_int();
      expect(",");
      return size_rule::Affine{slope, parse_int()};
    }
    if (accept("pow:")) return size_rule::Power{parse_uint()};
    if (accept("list:")) return size_rule::List{parse_uint_list()};
    fail("expected size rule (const:, affine:, pow:, list:)", start);
  }

  AllowedRule parse_allowed() {
    const std::size_t start = pos_;
    // "full-minus" must be tried before its prefix "full".
    if (accept("zero-one")) return allowed_rule::ZeroOne{};
    if (accept("full-minus")) return allowed_rule::FullMinusOne{};
    if (accept("full")) return allowed_rule::Full{};
    if (accept("set:")) {
      auto values = parse_uint_list();
      auto sorted = values;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("duplicate count in set", start);
      return allowed_rule::Explicit{AllowedSet(std::move(values))};
    }
    if (accept("pair:")) return allowed_rule::Pair{parse_uint()};
    if (accept("floordiv:")) {
      const std::size_t at = pos_;
      const std::uint64_t k = parse_uint();
      if (k == 0) fail("floordiv divisor must be positive", at);
      return allowed_rule::FloorDiv{k};
    }
    fail("expected allowed rule (zero-one, full, full-minus, set:, pair:, floordiv:)", start);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

template <class Range>
std::string join(const Range& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

}  // namespace detail

/// Canonical text form; `parse_schedule(render(s)) == s`.
inline std::string render(const BinSchedule& schedule) {
  std::string out = std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, size_rule::Constant>) return "const:" + std::to_string(r.value);
        else if constexpr (std::is_same_v<T, size_rule::Affine>)
          return "affine:" + std::to_string(r.slope) + "," + std::to_string(r.offset);
        else if constexpr (std::is_same_v<T, size_rule::Power>) return "pow:" + std::to_string(r.exponent);
        else return "list:" + detail::join(r.sizes);
      },
      schedule.size_rule());
  out += '/';
  out += std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, allowed_rule::ZeroOne>) return "zero-one";
        else if constexpr (std::is_same_v<T, allowed_rule::Full>) return "full";
        else if constexpr (std::is_same_v<T, allowed_rule::FullMinusOne>) return "full-minus";
        else if constexpr (std::is_same_v<T, allowed_rule::Explicit>) return "set:" + detail::join(r.counts.counts());
        else if constexpr (std::is_same_v<T, allowed_rule::Pair>) return "pair:" + std::to_string(r.g);
        else return "floordiv:" + std::to_string(r.k);
      },
      schedule.allowed_rule());
  out += "/adj:" + std::to_string(schedule.adjacency());
  return out;
}

/// Parses the schedule mini-language. Size rules with a known finite or constant
/// size (const:, list:) have every A_n checked against b_n immediately; the others
/// are checked as bins are expanded.
inline BinSchedule parse_schedule(std::string_view text) {
  BinSchedule schedule = detail::ScheduleParser(text).parse();
  if (schedule.constant_size()) {
    // Every rule except floordiv yields the same A_n for all n under a constant size.
    (void)schedule.allowed(1);
  } else if (auto limit = schedule.bin_limit()) {
    for (BinIndex n = 1; n <= *limit; ++n) (void)schedule.allowed(n);
  }
  return schedule;
}

}  // namespace zeck

#endif  // ZECK_SCHEDULE_HPP
