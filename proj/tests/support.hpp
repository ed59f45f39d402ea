#pragma once

// Helpers and brute-force oracles shared by the test suites. The oracles
// deliberately avoid the library's histogram and rank code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/filter.hpp"
#include "citerank/percentile.hpp"

namespace testing {

using citerank::Corpus;
using citerank::DocType;
using citerank::PublicationRecord;

inline PublicationRecord rec(std::string id, std::int64_t citations, std::vector<std::string> countries = {"US"},
                             std::vector<std::string> categories = {"A"}, int year = 2019,
                             DocType doctype = DocType::Article) {
  return PublicationRecord{std::move(id), year, doctype, citations, std::move(countries), std::move(categories)};
}

inline Corpus corpus_of_citations(const std::vector<std::int64_t>& citations) {
  std::vector<PublicationRecord> records;
  for (std::size_t i = 0; i < citations.size(); ++i) records.push_back(rec("r" + std::to_string(i), citations[i]));
  return Corpus::from_records(records);
}

/// Random corpus with skewed citations, 0-3 countries from a small pool and
/// 0-2 categories.
inline Corpus random_corpus(std::mt19937_64& rng, std::size_t n, int years = 1) {
  static const std::vector<std::string> pool{"US", "CN", "DE", "UK", "FR", "JP"};
  static const std::vector<std::string> cats{"A", "B", "C"};
  std::lognormal_distribution<double> lognormal(1.0, 1.3);
  std::uniform_int_distribution<int> n_countries(0, 3), n_cats(0, 2), pick_year(0, years - 1);
  std::bernoulli_distribution zero(0.15);
  std::vector<PublicationRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PublicationRecord r;
    r.id = "r" + std::to_string(i);
    r.year = 2019 - pick_year(rng);
    r.doctype = static_cast<DocType>(rng() % 4);
    r.citations = zero(rng) ? 0 : static_cast<std::int64_t>(std::floor(lognormal(rng)));
    std::vector<std::string> countries = pool;
    std::shuffle(countries.begin(), countries.end(), rng);
    countries.resize(static_cast<std::size_t>(n_countries(rng)));
    r.countries = countries;
    std::vector<std::string> categories = cats;
    std::shuffle(categories.begin(), categories.end(), rng);
    categories.resize(static_cast<std::size_t>(n_cats(rng)));
    r.categories = categories;
    records.push_back(std::move(r));
  }
  return Corpus::from_records(records);
}

/// Top-k% membership by sorting every citation count in descending order
/// and taking all records at or above the value at position ceil(n k / 100).
inline std::set<Corpus::Index> naive_top_class(const citerank::CorpusView& view, std::int64_t k_num,
                                               std::int64_t k_den) {
  std::vector<std::int64_t> sorted;
  for (auto i : view.indices()) sorted.push_back(view.corpus().citations(i));
  std::sort(sorted.rbegin(), sorted.rend());
  const auto n = static_cast<std::int64_t>(sorted.size());
  // ceil(n * num / (100 * den)) in integers
  const std::int64_t rank = (n * k_num + 100 * k_den - 1) / (100 * k_den);
  const std::int64_t cutoff = sorted[static_cast<std::size_t>(std::max<std::int64_t>(rank, 1) - 1)];
  std::set<Corpus::Index> members;
  for (auto i : view.indices()) {
    if (view.corpus().citations(i) >= cutoff) members.insert(i);
  }
  return members;
}

/// StrictBelow rank by counting, per record, how many records have fewer
/// citations.
inline double naive_strict_below_rank(const citerank::CorpusView& view, Corpus::Index i) {
  std::int64_t below = 0;
  for (auto j : view.indices()) {
    if (view.corpus().citations(j) < view.corpus().citations(i)) ++below;
  }
  return 100.0 * static_cast<double>(below) / static_cast<double>(view.size());
}

/// I3 with 100 unit classes valued 0..99: sum of floored StrictBelow ranks.
inline std::int64_t naive_i3(const citerank::CorpusView& view, const std::vector<Corpus::Index>& subset) {
  std::int64_t total = 0;
  for (auto i : subset) {
    std::int64_t below = 0;
    for (auto j : view.indices()) {
      if (view.corpus().citations(j) < view.corpus().citations(i)) ++below;
    }
    // floor(100 * below / n) in integers
    total += 100 * below / static_cast<std::int64_t>(view.size());
  }
  return total;
}

}  // namespace testing
