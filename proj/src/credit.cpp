#include "citerank/credit.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace citerank {

void CreditTally::add(std::uint64_t numerator, std::uint32_t denominator) {
  if (denominator == 0) throw std::invalid_argument("credit denominator 0");
  if (numerator == 0) return;
  if (by_denominator_.size() <= denominator) by_denominator_.resize(denominator + 1, 0);
  by_denominator_[denominator] += numerator;
}

CreditTally& CreditTally::operator+=(const CreditTally& other) {
  if (by_denominator_.size() < other.by_denominator_.size()) {
    by_denominator_.resize(other.by_denominator_.size(), 0);
  }
  for (std::size_t d = 1; d < other.by_denominator_.size(); ++d) by_denominator_[d] += other.by_denominator_[d];
  return *this;
}

CreditTally CreditTally::scaled(std::uint64_t factor) const {
  CreditTally out = *this;
  for (auto& v : out.by_denominator_) v *= factor;
  return out;
}

bool CreditTally::is_zero() const {
  return std::all_of(by_denominator_.begin(), by_denominator_.end(), [](std::uint64_t v) { return v == 0; });
}

double CreditTally::value() const {
  std::uint64_t whole = 0;
  long double fraction = 0;
  for (std::size_t d = 1; d < by_denominator_.size(); ++d) {
    const auto v = by_denominator_[d];
    whole += v / d;
    fraction += static_cast<long double>(v % d) / static_cast<long double>(d);
  }
  return static_cast<double>(static_cast<long double>(whole) + fraction);
}

std::optional<Rational> CreditTally::exact() const {
  using Wide = __int128;
  constexpr Wide kLimit = Wide{1} << 62;
  Wide whole = 0;
  std::int64_t common = 1;
  for (std::size_t d = 1; d < by_denominator_.size(); ++d) {
    const auto v = by_denominator_[d];
    whole += v / d;
    if (v % d == 0) continue;
    const auto d64 = static_cast<std::int64_t>(d);
    const Wide next = Wide{common} / std::gcd(common, d64) * d64;
    if (next > kLimit) return std::nullopt;
    common = static_cast<std::int64_t>(next);
  }
  Wide numerator = 0;
  for (std::size_t d = 1; d < by_denominator_.size(); ++d) {
    const auto rem = by_denominator_[d] % d;
    if (rem == 0) continue;
    numerator += Wide{static_cast<std::int64_t>(rem)} * (common / static_cast<std::int64_t>(d));
    if (numerator > kLimit) return std::nullopt;
  }
  whole += numerator / common;
  numerator %= common;
  const auto g = std::gcd(static_cast<std::int64_t>(numerator), common);
  const Wide den = common / (g == 0 ? 1 : g);
  const Wide num = whole * den + numerator / (g == 0 ? 1 : g);
  if (num > kLimit) return std::nullopt;
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

bool operator==(const CreditTally& lhs, const CreditTally& rhs) {
  auto a = lhs.exact();
  auto b = rhs.exact();
  if (a && b) return *a == *b;
  return lhs.by_denominator_ == rhs.by_denominator_;
}

}  // namespace citerank
