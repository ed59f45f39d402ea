#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "citerank/corpus.hpp"
#include "citerank/entity.hpp"

// Record-level corpora built to match fixed aggregate counts. Each
// fixture reproduces the target set sizes and top-class counts exactly;
// individual citation values are synthetic but respect the target cutoffs.
namespace citerank::fixtures {

/// A group of identical-byline records split into top-class and rest.
struct FixtureBlock {
  std::vector<std::string> countries;
  std::int64_t top = 0;
  std::int64_t rest = 0;
};

/// One reference set (a publication year or a category) with a fixed cutoff.
/// Top records get citations >= cutoff, with exactly one at the cutoff;
/// the rest get citations in [0, cutoff).
struct FixtureStratum {
  std::string id_prefix;
  int year = 2019;
  std::vector<std::string> categories;
  std::int64_t cutoff = 1;
  std::vector<FixtureBlock> blocks;
};

/// Deterministic corpus from strata, rows in stratum then block order.
Corpus build(const std::vector<FixtureStratum>& strata, Date retrieval_date, std::string label,
             std::uint64_t seed = 2021);

Date snapshot_date();  // 2021-03-06

/// Worldwide 2019 articles, reviews and letters: 2,041,287 records, top-1%
/// cutoff 38 at rank 20,413. Countries: CN, US, DE (EU-27 member), UK, XX.
Corpus national_2019();

/// Blocs for the national fixture: DE -> EU27, DE -> EUUK, UK -> EUUK.
BlocMap national_blocs();

/// Four subject categories (VIR, ENG_BM, ENG_MD, BUS_FIN) with China/USA
/// counts; each category's own top-1% holds the target counts.
Corpus subject_categories_2019();

/// 20,000 records per publication year 2015-2019 with top-1% cutoffs
/// 140, 115, 93, 67 and 38.
Corpus citation_windows();

}  // namespace citerank::fixtures
