#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

namespace citerank {

using Rational = boost::rational<std::int64_t>;

/// Exact sum of fractions of the form m/d, kept as one integer numerator per
/// denominator. Addition is associative and commutative bit-for-bit, so
/// partial tallies from any partition of the records merge to the same value.
class CreditTally {
 public:
  CreditTally() = default;
  explicit CreditTally(std::uint64_t whole) { add(whole, 1); }

  void add(std::uint64_t numerator, std::uint32_t denominator);
  CreditTally& operator+=(const CreditTally& other);
  friend CreditTally operator+(CreditTally lhs, const CreditTally& rhs) { return lhs += rhs; }

  /// Every part multiplied by an integer factor.
  CreditTally scaled(std::uint64_t factor) const;

  bool is_zero() const;
  /// Integer part plus a deterministic floating fractional part.
  double value() const;
  /// Exact value, or nullopt if the common denominator overflows.
  std::optional<Rational> exact() const;

  friend bool operator==(const CreditTally& lhs, const CreditTally& rhs);

 private:
  std::vector<std::uint64_t> by_denominator_;  // index = denominator
};

}  // namespace citerank
