#include "citerank/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace citerank::fixtures {

namespace {

DocType doctype_for(std::int64_t serial) {
  const auto r = serial % 20;
  return r < 16 ? DocType::Article : (r < 19 ? DocType::Review : DocType::Letter);
}

}  // namespace

Date snapshot_date() { return Date{std::chrono::year{2021}, std::chrono::month{3}, std::chrono::day{6}}; }

Corpus build(const std::vector<FixtureStratum>& strata, Date retrieval_date, std::string label, std::uint64_t seed) {
  CorpusBuilder builder;
  std::int64_t total = 0;
  for (const auto& s : strata) {
    for (const auto& b : s.blocks) total += b.top + b.rest;
  }
  builder.reserve(static_cast<std::size_t>(total));
  builder.set_retrieval_date(retrieval_date);
  builder.set_label(std::move(label));

  std::string id;
  char digits[16];
  for (std::size_t si = 0; si < strata.size(); ++si) {
    const auto& stratum = strata[si];
    if (stratum.cutoff < 1) throw Error("fixture cutoff must be >= 1");
    std::mt19937_64 rng(seed * 1000003u + si);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double rest_log_median = std::log(std::max(1.0, static_cast<double>(stratum.cutoff) / 6.0));
    std::vector<std::string_view> categories(stratum.categories.begin(), stratum.categories.end());
    std::int64_t serial = 0;
    bool cutoff_placed = false;
    for (const auto& block : stratum.blocks) {
      std::vector<std::string_view> countries(block.countries.begin(), block.countries.end());
      auto emit = [&](std::int64_t citations) {
        std::snprintf(digits, sizeof digits, "%07lld", static_cast<long long>(serial));
        id = stratum.id_prefix;
        id += digits;
        builder.add(id, stratum.year, doctype_for(serial), citations, countries, categories);
        ++serial;
      };
      for (std::int64_t t = 0; t < block.top; ++t) {
        std::int64_t c = stratum.cutoff;
        if (cutoff_placed) {
          const double extra = std::exp(1.2 * normal(rng)) * 0.3 * static_cast<double>(stratum.cutoff);
          c += static_cast<std::int64_t>(std::floor(extra));
        }
        cutoff_placed = true;
        emit(c);
      }
      for (std::int64_t r = 0; r < block.rest; ++r) {
        const double draw = std::floor(std::exp(rest_log_median + normal(rng)));
        emit(std::min<std::int64_t>(stratum.cutoff - 1, static_cast<std::int64_t>(draw)));
      }
    }
  }
  return std::move(builder).build();
}

Corpus national_2019() {
  FixtureStratum s;
  s.id_prefix = "W";
  s.year = 2019;
  s.cutoff = 38;
  s.blocks = {
      {{"CN"}, 3'117, 476'273},
      {{"US"}, 2'654, 464'489},
      {{"CN", "US"}, 5'305, 20'000},
      {{"DE"}, 5'774, 527'858},
      {{"DE", "UK"}, 300, 3'000},
      {{"UK"}, 1'263, 101'022},
      {{"XX"}, 2'000, 423'232},
      {{}, 0, 5'000},
  };
  return build({s}, snapshot_date(), "national top-1% fixture, 2019");
}

BlocMap national_blocs() {
  BlocMap map;
  map.add("DE", "EU27");
  map.add("DE", "EUUK");
  map.add("UK", "EUUK");
  return map;
}

Corpus subject_categories_2019() {
  auto stratum = [](std::string category, std::int64_t cutoff, std::int64_t n, std::int64_t cn, std::int64_t us,
                    std::int64_t p_cn, std::int64_t p_us, std::int64_t p_other) {
    FixtureStratum s;
    s.id_prefix = category + "-";
    s.year = 2019;
    s.categories = {category};
    s.cutoff = cutoff;
    s.blocks = {
        {{"CN"}, p_cn, cn - p_cn},
        {{"US"}, p_us, us - p_us},
        {{"XX"}, p_other, n - cn - us - p_other},
    };
    return s;
  };
  return build(
      {
          stratum("VIR", 60, 6'625, 1'387, 2'480, 13, 41, 13),
          stratum("ENG_BM", 45, 13'365, 2'952, 3'923, 54, 61, 19),
          stratum("ENG_MD", 30, 69'576, 27'393, 8'440, 416, 126, 154),
          stratum("BUS_FIN", 20, 6'048, 961, 2'157, 15, 16, 30),
      },
      snapshot_date(), "subject-category fixture, 2019");
}

Corpus citation_windows() {
  std::vector<FixtureStratum> strata;
  const std::pair<int, std::int64_t> cutoffs[] = {{2015, 140}, {2016, 115}, {2017, 93}, {2018, 67}, {2019, 38}};
  for (const auto& [year, cutoff] : cutoffs) {
    FixtureStratum s;
    s.id_prefix = "Y" + std::to_string(year) + "-";
    s.year = year;
    s.cutoff = cutoff;
    s.blocks = {{{"US"}, 60, 5'000}, {{"CN"}, 60, 5'000}, {{"XX"}, 80, 9'800}};
    strata.push_back(std::move(s));
  }
  return build(strata, snapshot_date(), "citation-window fixture, 2015-2019");
}

}  // namespace citerank::fixtures
