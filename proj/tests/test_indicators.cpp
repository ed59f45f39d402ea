#include <doctest.h>

#include <numeric>

#include "citerank/fixtures.hpp"
#include "citerank/indicators.hpp"
#include "citerank/output_table.hpp"
#include "citerank/synth.hpp"
#include "support.hpp"

using namespace citerank;
using testing::rec;

namespace {

const Corpus& national() {
  static const Corpus c = fixtures::national_2019();
  return c;
}

struct NationalSetup {
  CorpusView view = filter(national(), SubsetFilter::default_doctypes());
  Threshold threshold = top_class_threshold(view, Percent(1));
  TopClass top{view, threshold};
};

const NationalSetup& setup() {
  static const NationalSetup s;
  return s;
}

RankAssignment ranks_for(const std::vector<double>& ranks) {
  std::vector<Corpus::Index> rows(ranks.size());
  std::iota(rows.begin(), rows.end(), 0u);
  return RankAssignment(PercentileScheme::StrictBelow, rows, ranks);
}

}  // namespace

TEST_CASE("P-top-1% on the national fixture") {
  const auto& s = setup();
  const auto blocs = fixtures::national_blocs();
  CHECK(p_topk(s.view, s.top, EntityMatcher(national(), "US"), CountingMethod::WholeNumber) == 7'959);
  CHECK(p_topk(s.view, s.top, EntityMatcher(national(), "CN"), CountingMethod::WholeNumber) == 8'422);
  CHECK(p_topk(s.view, s.top, EntityMatcher(national(), "EU27", &blocs), CountingMethod::WholeNumber) == 6'074);
  CHECK(p_topk(s.view, s.top, EntityMatcher(national(), "EUUK", &blocs), CountingMethod::WholeNumber) == 7'337);
  CHECK(p_topk(s.view, s.top, EntityMatcher(national(), "ZZ"), CountingMethod::WholeNumber) == 0);
}

TEST_CASE("expected and PP") {
  CHECK(expected_topk(492'448, Percent(1)) == doctest::Approx(4'924.48));
  CHECK(expected_topk(0, Percent(1)) == 0);
  CHECK(expected_topk(504'695, Percent(1)) == doctest::Approx(5'046.95));
  CHECK(pp_topk(7'959, 4'924.48) == doctest::Approx(1.616).epsilon(1e-3));
  CHECK(format_fixed(pp_topk(7'959, 4'924.48), 2) == "1.62");
  CHECK(format_fixed(pp_topk(20'413, 20'412.87), 3) == "1.000");
  CHECK(pp_topk(0, 12.5) == 0);
  CHECK_THROWS_AS(pp_topk(1, 0), Error);
}

TEST_CASE("indicator table for the national fixture") {
  const auto blocs = fixtures::national_blocs();
  const std::vector<std::string> entities{"CN", "US", "EU27", "EUUK"};
  IndicatorOptions options;
  const auto table = compute_indicators(setup().view, entities, &blocs, options);
  REQUIRE(table.rows.size() == 5);
  const char* pp[] = {"1.67", "1.62", "1.13", "1.15", "1.00"};
  const double n[] = {504'695, 492'448, 536'932, 639'217, 2'041'287};
  for (std::size_t r = 0; r < 5; ++r) {
    CHECK(table.rows[r].n == n[r]);
    CHECK(format_fixed(table.rows[r].pp_topk, 2) == pp[r]);
  }
  CHECK(table.rows.back().label == "World");
  CHECK(table.rows.back().pct_i3.value() == 100.0);
  for (const auto& row : table.rows) CHECK(row.pct_i3.value() <= 100.0);

  options.workers = 4;
  const auto parallel = compute_indicators(setup().view, entities, &blocs, options);
  for (std::size_t r = 0; r < 5; ++r) {
    CHECK(parallel.rows[r].p_topk == table.rows[r].p_topk);
    CHECK(parallel.rows[r].i3 == table.rows[r].i3);
  }
}

TEST_CASE("I3 examples") {
  const auto r = ranks_for({0, 25, 50, 75});
  const std::vector<Corpus::Index> all{0, 1, 2, 3};
  CHECK(i3(r, all) == 150);
  CHECK(i3(r, std::span<const Corpus::Index>{}) == 0);
  CHECK(i3(r, all, RankClasses::top_vs_rest(Percent(25))) == 1);
  CHECK(RankClasses::percentiles().classify(99.99) == 99);
  CHECK(RankClasses::percentiles().classify(0) == 0);
}

TEST_CASE("I3 against a direct per-record sum") {
  std::mt19937_64 rng(17);
  const auto c = testing::random_corpus(rng, 2'000);
  const CorpusView view(c);
  const auto ranks = percentile_ranks(view);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Corpus::Index> subset(c.size());
    std::iota(subset.begin(), subset.end(), 0u);
    std::shuffle(subset.begin(), subset.end(), rng);
    subset.resize(500);
    std::sort(subset.begin(), subset.end());
    CHECK(i3(ranks, subset) == static_cast<double>(testing::naive_i3(view, subset)));
  }
}

TEST_CASE("I3 additivity and bounds; %I3 partitions to 100") {
  std::mt19937_64 rng(23);
  const auto c = testing::random_corpus(rng, 1'500);
  const CorpusView view(c);
  const auto ranks = percentile_ranks(view);
  std::vector<Corpus::Index> a, b, all;
  for (Corpus::Index i = 0; i < c.size(); ++i) {
    (rng() % 3 == 0 ? a : b).push_back(i);
    all.push_back(i);
  }
  const double ia = i3(ranks, a), ib = i3(ranks, b), iall = i3(ranks, all);
  CHECK(ia + ib == iall);
  CHECK(iall >= 0);
  CHECK(iall <= 100.0 * static_cast<double>(all.size()));

  // partition into five parts
  std::vector<std::vector<Corpus::Index>> parts(5);
  for (auto i : all) parts[i % 5].push_back(i);
  double total = 0;
  for (const auto& p : parts) total += pct_i3(i3(ranks, p), iall);
  CHECK(std::fabs(total - 100.0) <= 1e-9);
}

TEST_CASE("%I3") {
  CHECK(format_fixed(pct_i3(444'624, 1'486'371), 2) == "29.91");
  CHECK(format_fixed(pct_i3(183'984, 1'486'371), 2) == "12.38");
  CHECK(pct_i3(5, 5) == 100);
  CHECK_THROWS_AS(pct_i3(1, 0), Error);
}

TEST_CASE("counting laws") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = testing::random_corpus(rng, 200 + rng() % 800);
    const CorpusView view(c);
    const auto top = top_class(view, top_class_threshold(view, Percent(10)));
    CreditTally n_sum, p_sum;
    std::size_t nonempty = 0, nonempty_top = 0;
    for (Corpus::Index i = 0; i < c.size(); ++i) {
      if (!c.countries(i).empty()) {
        ++nonempty;
        if (top.contains(i)) ++nonempty_top;
      }
    }
    for (CodeId code = 0; code < c.country_codes().size(); ++code) {
      const EntityMatcher m(c, c.country_codes().name(code));
      const auto frac = count_entity(view, top, m, CountingMethod::FractionalByCountry);
      const auto whole = count_entity(view, top, m, CountingMethod::WholeNumber);
      n_sum += frac.n;
      p_sum += frac.p_topk;
      CHECK(whole.n.exact().value() >= frac.n.exact().value());
      CHECK(whole.p_topk.exact().value() >= frac.p_topk.exact().value());
    }
    CHECK(n_sum.exact().value() == Rational(static_cast<std::int64_t>(nonempty)));
    CHECK(p_sum.exact().value() == Rational(static_cast<std::int64_t>(nonempty_top)));
  }
}

TEST_CASE("PP of the whole reference set") {
  const auto& s = setup();
  const double n = static_cast<double>(s.view.size());
  // nominal pool
  CHECK(format_fixed(static_cast<double>(s.threshold.nominal_rank) / expected_topk(n, Percent(1)), 3) == "1.000");
  CHECK(static_cast<double>(s.threshold.actual_size) / expected_topk(n, Percent(1)) >= 1.0);
  const auto c = testing::corpus_of_citations(std::vector<std::int64_t>(300, 2));
  const auto t = top_class_threshold(CorpusView(c), Percent(1));
  CHECK(static_cast<double>(t.nominal_rank) / expected_topk(300, Percent(1)) == 1.0);
  CHECK(static_cast<double>(t.actual_size) / expected_topk(300, Percent(1)) >= 1.0);
}

TEST_CASE("RC and MNCS") {
  auto c = Corpus::from_records(std::vector{rec("a", 0), rec("b", 2), rec("c", 4)});
  auto scores = rc_scores(CorpusView(c));
  REQUIRE(scores.size() == 3);
  CHECK(scores[0].rc == 0);
  CHECK(scores[1].rc == 1);
  CHECK(scores[2].rc == 2);
  CHECK(mncs(scores) == 1.0);

  c = Corpus::from_records(std::vector{rec("a", 5, {"US"}, {"A"}), rec("b", 15, {"US"}, {"A"}),
                                       rec("c", 5, {"US"}, {"B"}), rec("d", 0, {"US"}, {"B"}),
                                       rec("e", 0, {"US"}, {"B"}), rec("f", 0, {"US"}, {"B"}),
                                       rec("g", 0, {"US"}, {"B"})});
  scores = rc_scores(CorpusView(c), Stratification::Category);
  CHECK(scores[0].rc == 0.5);
  CHECK(scores[2].rc == 5.0);

  const RcScore single{0, "A", 3.7};
  CHECK(mncs(std::span<const RcScore>(&single, 1)) == 3.7);
  CHECK_THROWS_AS(mncs(std::span<const RcScore>{}), Error);

  const auto zero = Corpus::from_records(std::vector{rec("a", 0, {"US"}, {"Z"}), rec("b", 0, {"US"}, {"Z"})});
  try {
    rc_scores(CorpusView(zero));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("Z") != std::string::npos);
  }

  const auto multi = Corpus::from_records(std::vector{rec("a", 4, {"US"}, {"A", "B"}), rec("b", 0, {"US"}, {"A"}),
                                                      rec("c", 12, {"US"}, {"B"}), rec("d", 9, {"US"}, {})});
  scores = rc_scores(CorpusView(multi), Stratification::Category);
  REQUIRE(scores.size() == 3);  // record without categories skipped
  CHECK(scores[0].rc == doctest::Approx((4.0 / 2.0 + 4.0 / 8.0) / 2.0));
}

TEST_CASE("RC stratum properties") {
  std::mt19937_64 rng(41);
  const auto c = testing::random_corpus(rng, 800, 3);
  const auto view = filter(c, SubsetFilter::has_category());
  for (const auto& s : rc_scores(view, Stratification::CategoryYear)) CHECK(s.rc >= 0);

  // single-category records only, so each stratum mean is exactly 1
  std::vector<PublicationRecord> single;
  for (auto i : view.indices()) {
    auto r = c.record(i);
    r.categories.resize(1);
    single.push_back(r);
  }
  const auto sc = Corpus::from_records(single);
  std::map<std::string, std::pair<double, int>> sums;
  for (const auto& s : rc_scores(CorpusView(sc))) {
    sums[s.field_key].first += s.rc;
    ++sums[s.field_key].second;
  }
  for (const auto& [key, sum] : sums) CHECK(sum.first / sum.second == doctest::Approx(1.0));

  // scaling all citations by an integer leaves RC unchanged
  std::vector<PublicationRecord> scaled = single;
  for (auto& r : scaled) r.citations *= 7;
  const auto a = rc_scores(CorpusView(sc));
  const auto b = rc_scores(CorpusView(Corpus::from_records(scaled)));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].rc == doctest::Approx(b[i].rc));
}

TEST_CASE("ESI-refined ranks") {
  const auto c = testing::corpus_of_citations({1, 2, 3, 4});
  const auto ranks = percentile_ranks(CorpusView(c));
  const auto refined = esi_refined_ranks(ranks, [](Corpus::Index) { return std::string("A"); });
  CHECK(refined[0] == 0);
  CHECK(refined[1] == doctest::Approx(0.667).epsilon(1e-3));
  CHECK(refined[2] == doctest::Approx(1.333).epsilon(1e-3));
  CHECK(refined[3] == 2.0);

  const auto flat = testing::corpus_of_citations({3, 3});
  CHECK_THROWS_AS(esi_refined_ranks(percentile_ranks(CorpusView(flat)), [](Corpus::Index) { return std::string("A"); }),
                  Error);
}

TEST_CASE("refined selection differs from raw with two citation norms") {
  // 20 records per category; category H cites ten times more.
  std::vector<PublicationRecord> records;
  for (int i = 0; i < 20; ++i) {
    records.push_back(rec("h" + std::to_string(i), 10 * (i + 1), {"US"}, {"H"}));
    records.push_back(rec("l" + std::to_string(i), i + 1, {"CN"}, {"L"}));
  }
  const auto c = Corpus::from_records(records);
  const CorpusView view(c);
  const auto refined = refine_by_category(view, first_category_of(c));

  // brute force: raw top 10% = the 4 most cited records
  std::vector<Corpus::Index> order(c.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return c.citations(a) > c.citations(b); });
  std::set<Corpus::Index> raw(order.begin(), order.begin() + 4);
  const auto refined_top = select_top_by_score(refined.ranks.records(), refined.scores, Percent(10));
  const std::set<Corpus::Index> ref(refined_top.members.begin(), refined_top.members.end());
  CHECK(raw != ref);
  for (auto i : raw) CHECK(c.id(i)[0] == 'h');
  std::size_t low = 0;
  for (auto i : ref) low += c.id(i)[0] == 'l' ? 1 : 0;
  CHECK(low == 2);
  CHECK(ref.size() == 4);

  // order preserved within each category
  for (std::size_t a = 0; a < refined.scores.size(); ++a) {
    for (std::size_t b = 0; b < refined.scores.size(); ++b) {
      const auto ra = refined.ranks.records()[a], rb = refined.ranks.records()[b];
      if (c.id(ra)[0] != c.id(rb)[0]) continue;
      CHECK((refined.scores[a] < refined.scores[b]) == (refined.ranks.ranks()[a] < refined.ranks.ranks()[b]));
    }
  }

  const EntityMatcher cn(c, "CN");
  const auto raw_top = top_class(view, top_class_threshold(view, Percent(10)));
  const auto raw_p = p_topk(view, raw_top, cn, CountingMethod::WholeNumber);
  const auto ref_p = refined_pp_topk(view, refined, cn, Percent(10), CountingMethod::WholeNumber);
  CHECK(raw_p == 0);
  CHECK(ref_p.p_topk == 2);
  const EntityMatcher us(c, "US");
  const auto us_ref = refined_pp_topk(view, refined, us, Percent(10), CountingMethod::WholeNumber);
  const auto us_raw = p_topk(view, raw_top, us, CountingMethod::WholeNumber) / expected_topk(20, Percent(10));
  CHECK(us_ref.pp_topk < us_raw);
}

TEST_CASE("refined PP in a single category equals raw PP") {
  std::mt19937_64 rng(53);
  std::vector<PublicationRecord> records;
  const auto base = testing::random_corpus(rng, 1'000);
  for (Corpus::Index i = 0; i < base.size(); ++i) {
    auto r = base.record(i);
    r.categories = {"ONLY"};
    records.push_back(r);
  }
  const auto c = Corpus::from_records(records);
  const CorpusView view(c);
  const auto refined = refine_by_category(view, first_category_of(c));
  const auto top = top_class(view, top_class_threshold(view, Percent(1)));
  for (const auto* code : {"US", "CN", "DE", "ZZ"}) {
    const EntityMatcher m(c, code);
    for (auto method : {CountingMethod::WholeNumber, CountingMethod::FractionalByCountry}) {
      const auto raw = count_entity(view, top, m, method);
      const auto ref = refined_pp_topk(view, refined, m, Percent(1), method);
      CHECK(ref.p_topk == doctest::Approx(raw.p_topk.value()));
      CHECK(ref.n == doctest::Approx(raw.n.value()));
    }
  }
  const auto none = refined_pp_topk(view, refined, EntityMatcher(c, "ZZ"), Percent(1), CountingMethod::WholeNumber);
  CHECK(none.n == 0);
  CHECK(none.pp_topk == 0);
}

TEST_CASE("refined PP drops for an entity concentrated in the high-norm field") {
  synth::SynthSpec spec;
  spec.seed = 77;
  spec.fields = {{"HIGH", 20'000, 3.0, 1.0, 0.0}, {"LOW", 20'000, 1.0, 1.0, 0.0}};
  synth::CountryProfile e;
  e.code = "E";
  e.share = {{"HIGH", 0.4}, {"LOW", 0.05}};
  spec.countries = {e};
  const auto c = synth::generate(spec);
  const CorpusView view(c);
  const auto top = top_class(view, top_class_threshold(view, Percent(1)));
  const EntityMatcher m(c, "E");
  const auto raw = count_entity(view, top, m, CountingMethod::WholeNumber);
  const double raw_pp = raw.p_topk.value() / expected_topk(raw.n.value(), Percent(1));
  const auto refined = refine_by_category(view, first_category_of(c));
  const auto ref = refined_pp_topk(view, refined, m, Percent(1), CountingMethod::WholeNumber);
  CHECK(ref.pp_topk < raw_pp);
}
