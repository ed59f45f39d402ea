#include <doctest.h>

#include "citerank/decompose.hpp"
#include "citerank/fixtures.hpp"
#include "citerank/indicators.hpp"
#include "citerank/output_table.hpp"
#include "citerank/stats.hpp"
#include "citerank/synth.hpp"
#include "support.hpp"

using namespace citerank;
using testing::rec;

namespace {

const Corpus& categories() {
  static const Corpus c = fixtures::subject_categories_2019();
  return c;
}

}  // namespace

TEST_CASE("category comparison rows") {
  const std::vector<std::string> cats{"VIR", "ENG_BM", "ENG_MD", "BUS_FIN"};
  const auto table = category_comparison(categories(), cats, {"CN", "US"}, nullptr);
  REQUIRE(table.rows.size() == 5);

  const auto& vir = table.rows[0];
  CHECK(vir.label == "VIR");
  CHECK(vir.n_total == 6'625);
  CHECK(vir.p1 == 13);
  CHECK(vir.p2 == 41);
  CHECK(format_fixed(vir.pp1, 2) == "0.94");
  CHECK(format_fixed(vir.pp2, 2) == "1.65");
  CHECK(std::fabs(*vir.z - -1.82) < 0.005);
  CHECK(vir.threshold.citation_cutoff == 60);

  const auto& fin = table.rows[3];
  CHECK(format_fixed(fin.pp1, 2) == "1.56");
  CHECK(format_fixed(fin.pp2, 2) == "0.74");
  CHECK(std::fabs(*fin.z - 2.13) < 0.005);
  CHECK(std::fabs(*fin.z) > kCriticalZ05);

  for (const auto& row : table.rows) {
    // pp = p / (n / 100) at k = 1
    CHECK(row.pp1 == doctest::Approx(row.p1 / (row.n1 / 100.0)));
    CHECK(row.pp2 == doctest::Approx(row.p2 / (row.n2 / 100.0)));
    CHECK(row.overlap == 0);
  }

  // each full category's own PP is 1 at the nominal pool
  for (std::size_t r = 0; r < 4; ++r) {
    const auto& t = table.rows[r].threshold;
    CHECK(t.actual_size == t.nominal_rank);
  }
}

TEST_CASE("world row equals the unfiltered pipeline") {
  const std::vector<std::string> cats{"VIR"};
  const auto table = category_comparison(categories(), cats, {"CN", "US"}, nullptr);
  const auto view = filter(categories(), SubsetFilter::default_doctypes());
  const auto top = top_class(view, top_class_threshold(view, Percent(1)));
  const auto cn = count_entity(view, top, EntityMatcher(categories(), "CN"), CountingMethod::WholeNumber);
  const auto& world = table.rows.back();
  CHECK(world.label == "World");
  CHECK(world.p1 == cn.p_topk.value());
  CHECK(world.n1 == cn.n.value());
  CHECK(world.threshold.citation_cutoff == top.threshold().citation_cutoff);
}

TEST_CASE("comparison edge cases") {
  const auto c = Corpus::from_records(std::vector{rec("a", 50, {"DE"}, {"X"}), rec("b", 1, {"DE"}, {"X"}),
                                                  rec("c", 0, {"CN"}, {"X"}), rec("d", 3, {"US", "CN"}, {"Y"})});
  const std::vector<std::string> x{"X"};
  const auto table = category_comparison(c, x, {"CN", "US"}, nullptr);
  const auto& row = table.rows[0];
  CHECK(row.pp1 == 0);
  CHECK(row.pp2 == 0);
  CHECK_FALSE(row.z.has_value());
  CHECK_FALSE(row.z_error.empty());
  CHECK(table.rows.back().overlap == 1);

  const std::vector<std::string> missing{"NOPE"};
  try {
    category_comparison(c, missing, {"CN", "US"}, nullptr);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("NOPE") != std::string::npos);
  }
}

TEST_CASE("collaboration classes") {
  const std::vector<Bloc> blocs{{"US", {"US"}}, {"CN", {"CN"}}};
  CHECK(collaboration_label(blocs, {"US", "CN"}) == "US+CN");
  CHECK(collaboration_label(blocs, {"FR"}) == "none");
  CHECK(collaboration_label(blocs, {"US", "FR"}) == "US");

  std::mt19937_64 rng(61);
  const auto c = testing::random_corpus(rng, 3'000);
  const CorpusView view(c);
  const auto top = top_class(view, top_class_threshold(view, Percent(1)));
  const std::vector<Bloc> three{{"US", {"US"}}, {"CN", {"CN"}}, {"EU", {"DE", "FR"}}};
  const auto rows = collaboration_classes(view, three, top);
  REQUIRE(rows.size() == 8);
  CHECK(rows.back().label == "none");
  CHECK(rows[3].blocs == 2);
  CHECK(rows[6].label == "US+CN+EU");
  std::int64_t n = 0, p = 0;
  for (const auto& row : rows) {
    n += row.n;
    p += row.p_topk;
  }
  CHECK(n == static_cast<std::int64_t>(view.size()));
  CHECK(p == static_cast<std::int64_t>(top.size()));

  const std::vector<Bloc> overlapping{{"A", {"US", "DE"}}, {"B", {"DE"}}};
  CHECK_THROWS_AS(collaboration_classes(view, overlapping, top), Error);

  BlocMap map;
  map.add("DE", "EU");
  map.add("FR", "EU");
  const std::vector<std::string> codes{"US", "EU"};
  const auto from_map = blocs_from_map(map, codes);
  CHECK(from_map[0].countries == std::set<std::string>{"US"});
  CHECK(from_map[1].countries == std::set<std::string>{"DE", "FR"});
}

TEST_CASE("collaboration boost raises bilateral PP above unilateral") {
  synth::SynthSpec spec;
  spec.seed = 4;
  spec.fields = {{"A", 150'000, 1.5, 1.1, 0.1}};
  for (const auto* code : {"US", "CN"}) {
    synth::CountryProfile p;
    p.code = code;
    p.share = {{"A", 0.3}};
    p.collab_prob = 0.2;
    p.collab_boost = 0.6;
    spec.countries.push_back(p);
  }
  const auto c = synth::generate(spec);
  const CorpusView view(c);
  const auto top = top_class(view, top_class_threshold(view, Percent(1)));
  const std::vector<Bloc> blocs{{"US", {"US"}}, {"CN", {"CN"}}};
  const auto rows = collaboration_classes(view, blocs, top);
  REQUIRE(rows.size() == 4);
  REQUIRE(rows[2].label == "US+CN");
  REQUIRE(rows[2].pp_topk.has_value());
  CHECK(*rows[2].pp_topk > std::max(*rows[0].pp_topk, *rows[1].pp_topk));
}

TEST_CASE("national trend") {
  const auto national = fixtures::national_2019();
  std::map<int, const Corpus*> corpora{{2019, &national}};
  const auto cn = national_trend(corpora, "CN", nullptr);
  REQUIRE(cn.size() == 1);
  CHECK(format_fixed(cn[0].pp_topk, 2) == "1.67");
  CHECK(format_fixed(national_trend(corpora, "US", nullptr)[0].pp_topk, 2) == "1.62");

  // compositionality and absent entity across several years
  std::mt19937_64 rng(71);
  const auto y1 = testing::random_corpus(rng, 900);
  const auto y2 = testing::random_corpus(rng, 700);
  std::map<int, const Corpus*> two{{2018, &y1}, {2019, &y2}};
  const auto series = national_trend(two, "US", nullptr);
  REQUIRE(series.size() == 2);
  const auto view = filter(y2, SubsetFilter::default_doctypes());
  const auto top = top_class(view, top_class_threshold(view, Percent(1)));
  const auto direct = count_entity(view, top, EntityMatcher(y2, "US"), CountingMethod::WholeNumber);
  CHECK(series[1].p_topk == direct.p_topk.value());
  CHECK(series[1].n == direct.n.value());
  for (const auto& point : national_trend(two, "ZZ", nullptr)) CHECK(point.pp_topk == 0);

  std::map<int, const Corpus*> missing{{2019, nullptr}};
  CHECK_THROWS_AS(national_trend(missing, "US", nullptr), Error);
}
