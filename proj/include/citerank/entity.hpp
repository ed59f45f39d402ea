#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/credit.hpp"

namespace citerank {

enum class CountingMethod { WholeNumber, FractionalByCountry };

std::string_view to_string(CountingMethod method);

/// Credit per listed country: 1 each under whole-number counting,
/// 1/|countries| each under fractional counting. Empty byline -> empty map.
std::map<std::string, Rational> country_attribution(const PublicationRecord& record,
                                                    CountingMethod method);

/// country_code -> bloc_code assignments. A country may belong to several
/// blocs (e.g. EU-27 and EU+UK).
class BlocMap {
 public:
  void add(std::string country, std::string bloc);
  bool is_bloc(std::string_view code) const;
  std::set<std::string> members(std::string_view bloc) const;

  /// Two columns (country_code, bloc_code), comma or tab separated. A header
  /// row naming those columns is optional; '#' lines are comments.
  static BlocMap parse(std::string_view text);
  static BlocMap load(const std::string& path);

 private:
  std::map<std::string, std::set<std::string>, std::less<>> blocs_;
};

/// Resolves an entity code (a country or a bloc) to the country codes of one
/// corpus and computes per-record credit.
class EntityMatcher {
 public:
  EntityMatcher(const Corpus& corpus, std::string entity, const BlocMap* blocs = nullptr);

  const std::string& entity() const { return entity_; }

  /// Number of the record's byline countries that belong to the entity.
  std::uint32_t hits(Corpus::Index i) const;
  bool matches(Corpus::Index i) const { return hits(i) > 0; }

  /// Adds the record's credit for this entity to `tally`.
  void credit(Corpus::Index i, CountingMethod method, CreditTally& tally) const;

 private:
  const Corpus* corpus_;
  std::string entity_;
  std::vector<bool> member_codes_;
};

}  // namespace citerank
