#include "citerank/synth.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "citerank/indicators.hpp"
#include "citerank/parallel.hpp"

namespace citerank::synth {

namespace {

constexpr std::int64_t kBlockSize = 1 << 16;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string_view::npos ? std::string{} : std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || p != value.data() + value.size()) {
    throw Error("spec key '" + key + "': expected a number, got '" + value + "'");
  }
  return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& value) {
  Int out = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || p != value.data() + value.size()) {
    throw Error("spec key '" + key + "': expected an integer, got '" + value + "'");
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t block_seed(std::uint64_t seed, std::size_t field, std::int64_t block) {
  return splitmix64(seed ^ splitmix64((static_cast<std::uint64_t>(field) << 32) ^ static_cast<std::uint64_t>(block)));
}

}  // namespace

void SynthSpec::validate() const {
  if (fields.empty()) throw Error("synthetic spec has no fields");
  if (years.empty()) throw Error("synthetic spec has no publication years");
  if (rest_of_world.empty()) throw Error("rest_of_world code is empty");
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  for (const auto& f : fields) {
    if (f.n_records < 1) throw Error("field '" + f.category + "': n must be >= 1");
    if (!(f.sigma > 0.0)) throw Error("field '" + f.category + "': sigma must be > 0");
    if (!(f.zero_prob >= 0.0 && f.zero_prob < 1.0)) throw Error("field '" + f.category + "': zero_prob must be in [0, 1)");
  }
  for (const auto& c : countries) {
    if (c.code == rest_of_world) throw Error("country code '" + c.code + "' collides with rest_of_world");
    if (!prob(c.collab_prob) || !prob(c.trilateral_prob) || c.collab_prob + c.trilateral_prob > 1.0) {
      throw Error("country '" + c.code + "': collaboration probabilities must lie in [0, 1] and sum to <= 1");
    }
    if (c.collab_prob > 0 && countries.size() < 2) throw Error("bilateral collaboration needs two countries");
    if (c.trilateral_prob > 0 && countries.size() < 3) throw Error("trilateral collaboration needs three countries");
    for (const auto& [category, share] : c.share) {
      if (!prob(share)) throw Error("country '" + c.code + "': share for '" + category + "' outside [0, 1]");
      if (std::none_of(fields.begin(), fields.end(), [&](const FieldProfile& f) { return f.category == category; })) {
        throw Error("country '" + c.code + "': share for unknown field '" + category + "'");
      }
    }
  }
  for (const auto& f : fields) {
    double total = 0;
    for (const auto& c : countries) {
      if (auto it = c.share.find(f.category); it != c.share.end()) total += it->second;
    }
    if (total > 1.0 + 1e-12) throw Error("field '" + f.category + "': country shares sum above 1");
  }
}

SynthSpec parse_spec(std::string_view text) {
  SynthSpec spec;
  spec.fields.clear();
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  auto field = [&](const std::string& name) -> FieldProfile& {
    auto it = std::find_if(spec.fields.begin(), spec.fields.end(),
                           [&](const FieldProfile& f) { return f.category == name; });
    if (it != spec.fields.end()) return *it;
    spec.fields.push_back(FieldProfile{name});
    return spec.fields.back();
  };
  auto country = [&](const std::string& code) -> CountryProfile& {
    auto it = std::find_if(spec.countries.begin(), spec.countries.end(),
                           [&](const CountryProfile& c) { return c.code == code; });
    if (it != spec.countries.end()) return *it;
    CountryProfile profile;
    profile.code = code;
    spec.countries.push_back(std::move(profile));
    return spec.countries.back();
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw Error("spec line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(std::string_view(body).substr(0, eq));
    const auto value = trim(std::string_view(body).substr(eq + 1));

    std::vector<std::string> parts;
    for (std::size_t pos = 0;;) {
      const auto dot = key.find('.', pos);
      parts.push_back(key.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos));
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }

    if (key == "seed") {
      spec.seed = to_int<std::uint64_t>(key, value);
    } else if (key == "years") {
      spec.years.clear();
      std::string_view rest = value;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        spec.years.push_back(to_int<int>(key, trim(rest.substr(0, comma))));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
    } else if (key == "rest_of_world") {
      spec.rest_of_world = value;
    } else if (key == "retrieval_date") {
      auto date = parse_date(value);
      if (!date) throw Error("spec key 'retrieval_date': invalid date '" + value + "'");
      spec.retrieval_date = *date;
    } else if (parts.size() == 3 && parts[0] == "field") {
      auto& f = field(parts[1]);
      if (parts[2] == "n") {
        f.n_records = to_int<std::int64_t>(key, value);
      } else if (parts[2] == "mu") {
        f.mu = to_double(key, value);
      } else if (parts[2] == "sigma") {
        f.sigma = to_double(key, value);
      } else if (parts[2] == "zero_prob") {
        f.zero_prob = to_double(key, value);
      } else {
        throw Error("unknown spec key '" + key + "'");
      }
    } else if (parts.size() == 4 && parts[0] == "country" && parts[2] == "share") {
      country(parts[1]).share[parts[3]] = to_double(key, value);
    } else if (parts.size() == 3 && parts[0] == "country") {
      auto& c = country(parts[1]);
      if (parts[2] == "quality_shift") {
        c.quality_shift = to_double(key, value);
      } else if (parts[2] == "collab_prob") {
        c.collab_prob = to_double(key, value);
      } else if (parts[2] == "trilateral_prob") {
        c.trilateral_prob = to_double(key, value);
      } else if (parts[2] == "collab_boost") {
        c.collab_boost = to_double(key, value);
      } else {
        throw Error("unknown spec key '" + key + "'");
      }
    } else {
      throw Error("unknown spec key '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

SynthSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open spec '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

namespace {

struct DraftRecord {
  std::int64_t citations = 0;
  int year = 0;
  std::uint8_t n_countries = 0;
  std::array<std::int32_t, 3> countries{};  // index into spec.countries, -1 = rest of world
};

struct BlockTask {
  std::size_t field = 0;
  std::int64_t block = 0;
  std::int64_t begin = 0, end = 0;
};

std::vector<DraftRecord> generate_block(const SynthSpec& spec, const BlockTask& task) {
  const auto& field = spec.fields[task.field];
  std::mt19937_64 rng(block_seed(spec.seed, task.field, task.block));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_year(0, spec.years.size() - 1);

  std::vector<double> cumulative;
  double acc = 0;
  for (const auto& c : spec.countries) {
    auto it = c.share.find(field.category);
    acc += it == c.share.end() ? 0.0 : it->second;
    cumulative.push_back(acc);
  }
  const auto n_countries = static_cast<std::int32_t>(spec.countries.size());

  std::vector<DraftRecord> out(static_cast<std::size_t>(task.end - task.begin));
  for (auto& r : out) {
    r.year = spec.years[pick_year(rng)];
    const double u = unit(rng);
    const auto pos = std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin();
    double mu = field.mu;
    if (pos < n_countries) {
      const auto& primary = spec.countries[static_cast<std::size_t>(pos)];
      r.countries[0] = static_cast<std::int32_t>(pos);
      r.n_countries = 1;
      const double v = unit(rng);
      int partners = v < primary.trilateral_prob ? 2 : (v < primary.trilateral_prob + primary.collab_prob ? 1 : 0);
      while (partners-- > 0) {
        std::uniform_int_distribution<std::int32_t> pick(0, n_countries - 1);
        std::int32_t other = 0;
        do {
          other = pick(rng);
        } while (std::find(r.countries.begin(), r.countries.begin() + r.n_countries, other) !=
                 r.countries.begin() + r.n_countries);
        r.countries[r.n_countries++] = other;
      }
      mu += primary.quality_shift + primary.collab_boost * (r.n_countries - 1);
    } else {
      r.countries[0] = -1;
      r.n_countries = 1;
    }
    const double zero = unit(rng);
    const double draw = std::exp(mu + field.sigma * normal(rng));
    r.citations = zero < field.zero_prob ? 0 : static_cast<std::int64_t>(std::floor(std::min(draw, 1e12)));
  }
  return out;
}

}  // namespace

Corpus generate(const SynthSpec& spec, unsigned workers) {
  spec.validate();
  std::vector<BlockTask> tasks;
  for (std::size_t f = 0; f < spec.fields.size(); ++f) {
    const auto n = spec.fields[f].n_records;
    for (std::int64_t b = 0; b * kBlockSize < n; ++b) {
      tasks.push_back({f, b, b * kBlockSize, std::min(n, (b + 1) * kBlockSize)});
    }
  }
  std::vector<std::vector<DraftRecord>> drafts(tasks.size());
  const auto groups = chunk_count(tasks.size(), workers);
  for_each_chunk(tasks.size(), static_cast<unsigned>(groups), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) drafts[t] = generate_block(spec, tasks[t]);
  });

  CorpusBuilder builder;
  std::int64_t total = 0;
  for (const auto& f : spec.fields) total += f.n_records;
  builder.reserve(static_cast<std::size_t>(total));
  builder.set_retrieval_date(spec.retrieval_date);
  builder.set_label("synthetic seed=" + std::to_string(spec.seed));
  std::string id;
  std::array<std::string_view, 3> countries;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& task = tasks[t];
    const std::string_view category = spec.fields[task.field].category;
    const std::array<std::string_view, 1> categories{category};
    for (std::size_t r = 0; r < drafts[t].size(); ++r) {
      const auto& d = drafts[t][r];
      id.assign(category);
      id += '-';
      id += std::to_string(task.begin + static_cast<std::int64_t>(r));
      for (std::size_t c = 0; c < d.n_countries; ++c) {
        countries[c] = d.countries[c] < 0 ? std::string_view(spec.rest_of_world)
                                          : std::string_view(spec.countries[static_cast<std::size_t>(d.countries[c])].code);
      }
      builder.add(id, d.year, DocType::Article, d.citations, std::span(countries.data(), d.n_countries), categories);
    }
    drafts[t] = {};
  }
  return std::move(builder).build();
}

DivergenceReport divergence_report(const Corpus& corpus, const SynthSpec& spec, Percent k, unsigned workers) {
  const CorpusView view(corpus);
  const auto threshold = top_class_threshold(view, k, workers);
  const TopClass raw(view, threshold);
  const auto category_of = first_category_of(corpus);
  // mid-ranks average exactly 50 in every category, whatever its ties
  const auto refined = refine_by_category(view, category_of, PercentileScheme::MidFraction);
  const auto refined_top = select_top_by_score(refined.ranks.records(), refined.scores, k);
  auto in_refined = [&](Corpus::Index i) {
    return std::binary_search(refined_top.members.begin(), refined_top.members.end(), i);
  };

  DivergenceReport report;
  report.raw_top_size = static_cast<std::int64_t>(raw.size());
  report.refined_top_size = static_cast<std::int64_t>(refined_top.members.size());

  for (const auto& field : spec.fields) {
    FieldDivergence fd;
    fd.category = field.category;
    std::int64_t raw_hits = 0, refined_hits = 0;
    const auto id = corpus.category_codes().find(field.category);
    for (Corpus::Index i = 0; i < corpus.size(); ++i) {
      const auto cats = corpus.categories(i);
      if (!id || std::find(cats.begin(), cats.end(), *id) == cats.end()) continue;
      ++fd.n;
      raw_hits += raw.contains(i) ? 1 : 0;
      refined_hits += in_refined(i) ? 1 : 0;
    }
    fd.raw_share = static_cast<double>(raw_hits) / static_cast<double>(report.raw_top_size);
    fd.refined_share = static_cast<double>(refined_hits) / static_cast<double>(report.refined_top_size);
    fd.gap = fd.raw_share - fd.refined_share;
    report.fields.push_back(fd);
  }

  std::vector<std::string> codes;
  for (const auto& c : spec.countries) codes.push_back(c.code);
  codes.push_back(spec.rest_of_world);
  for (const auto& code : codes) {
    const EntityMatcher entity(corpus, code);
    const auto counts = count_entity(view, raw, entity, CountingMethod::WholeNumber, workers);
    const auto ref = refined_pp_topk(view, refined, entity, k, CountingMethod::WholeNumber);
    CountryDivergence cd;
    cd.code = code;
    cd.n = counts.n.value();
    const double expected = expected_topk(cd.n, k);
    cd.pp_raw = expected > 0 ? counts.p_topk.value() / expected : 0.0;
    cd.pp_refined = ref.pp_topk;
    cd.raw_share = counts.p_topk.value() / static_cast<double>(report.raw_top_size);
    cd.refined_share = ref.p_topk / static_cast<double>(report.refined_top_size);
    report.countries.push_back(cd);
  }
  return report;
}

DivergenceReport normalization_divergence_experiment(const SynthSpec& spec, Percent k, unsigned workers) {
  const auto corpus = generate(spec, workers);
  return divergence_report(corpus, spec, k, workers);
}

}  // namespace citerank::synth
