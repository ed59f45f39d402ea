#include "citerank/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>

namespace citerank {

std::string_view to_string(DocType type) {
  switch (type) {
    case DocType::Article: return "Article";
    case DocType::Review: return "Review";
    case DocType::Letter: return "Letter";
    case DocType::Other: return "Other";
  }
  return "Other";
}

std::optional<DocType> parse_doctype(std::string_view text) {
  auto eq = [&](std::string_view name) {
    return std::equal(text.begin(), text.end(), name.begin(), name.end(), [](char a, char b) {
      return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
    });
  };
  if (eq("Article")) return DocType::Article;
  if (eq("Review")) return DocType::Review;
  if (eq("Letter")) return DocType::Letter;
  if (eq("Other")) return DocType::Other;
  return std::nullopt;
}

std::optional<Date> parse_date(std::string_view text) {
  int y = 0;
  unsigned m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto num = [](std::string_view s, auto& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
  };
  if (!num(text.substr(0, 4), y) || !num(text.substr(5, 2), m) || !num(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

CodeId CodeTable::intern(std::string_view code) {
  if (auto it = index_.find(code); it != index_.end()) return it->second;
  const auto id = static_cast<CodeId>(names_.size());
  names_.emplace_back(code);
  index_.emplace(std::string(code), id);
  return id;
}

std::optional<CodeId> CodeTable::find(std::string_view code) const {
  if (auto it = index_.find(code); it != index_.end()) return it->second;
  return std::nullopt;
}

std::string_view Corpus::id(Index i) const {
  return std::string_view(id_pool_).substr(id_offsets_[i], id_offsets_[i + 1] - id_offsets_[i]);
}

std::span<const CodeId> Corpus::countries(Index i) const {
  return std::span<const CodeId>(country_pool_).subspan(country_offsets_[i],
                                                        country_offsets_[i + 1] - country_offsets_[i]);
}

std::span<const CodeId> Corpus::categories(Index i) const {
  return std::span<const CodeId>(category_pool_)
      .subspan(category_offsets_[i], category_offsets_[i + 1] - category_offsets_[i]);
}

PublicationRecord Corpus::record(Index i) const {
  PublicationRecord r;
  r.id = std::string(id(i));
  r.year = years_[i];
  r.doctype = doctypes_[i];
  r.citations = citations_[i];
  for (CodeId c : countries(i)) r.countries.push_back(countries_table_.name(c));
  for (CodeId c : categories(i)) r.categories.push_back(categories_table_.name(c));
  return r;
}

std::optional<Corpus::Index> Corpus::find(std::string_view key) const {
  auto it = std::lower_bound(by_id_.begin(), by_id_.end(), key,
                             [this](Index i, std::string_view k) { return id(i) < k; });
  if (it != by_id_.end() && id(*it) == key) return *it;
  return std::nullopt;
}

Corpus Corpus::from_records(std::span<const PublicationRecord> records, std::optional<Date> retrieval_date,
                            std::string label) {
  CorpusBuilder builder;
  builder.reserve(records.size());
  builder.set_retrieval_date(retrieval_date);
  builder.set_label(std::move(label));
  for (const auto& r : records) builder.add(r);
  return std::move(builder).build();
}

void CorpusBuilder::reserve(std::size_t records) {
  corpus_.years_.reserve(records);
  corpus_.doctypes_.reserve(records);
  corpus_.citations_.reserve(records);
  corpus_.id_offsets_.reserve(records + 1);
  corpus_.country_offsets_.reserve(records + 1);
  corpus_.category_offsets_.reserve(records + 1);
}

namespace {

template <typename Pool>
void append_codes(CodeTable& table, Pool& pool, std::vector<std::uint64_t>& offsets,
                  std::span<const std::string_view> codes, std::string_view id, const char* field) {
  const std::size_t start = pool.size();
  for (std::string_view code : codes) {
    const CodeId c = table.intern(code);
    if (std::find(pool.begin() + static_cast<std::ptrdiff_t>(start), pool.end(), c) != pool.end()) {
      pool.resize(start);
      throw LoadError("record " + std::string(id) + ": duplicate " + field + " entry '" +
                      std::string(code) + "'");
    }
    pool.push_back(c);
  }
  offsets.push_back(pool.size());
}

}  // namespace

void CorpusBuilder::add(std::string_view id, int year, DocType doctype, std::int64_t citations,
                        std::span<const std::string_view> countries,
                        std::span<const std::string_view> categories) {
  if (citations < 0) {
    throw LoadError("record " + std::string(id) + ": negative citations");
  }
  if (id.empty()) throw LoadError("record with empty id");
  auto& c = corpus_;
  append_codes(c.countries_table_, c.country_pool_, c.country_offsets_, countries, id, "country");
  try {
    append_codes(c.categories_table_, c.category_pool_, c.category_offsets_, categories, id, "category");
  } catch (...) {
    c.country_offsets_.pop_back();
    c.country_pool_.resize(c.country_offsets_.back());
    throw;
  }
  c.id_pool_.append(id);
  c.id_offsets_.push_back(c.id_pool_.size());
  c.years_.push_back(year);
  c.doctypes_.push_back(doctype);
  c.citations_.push_back(citations);
}

void CorpusBuilder::add(const PublicationRecord& record) {
  std::vector<std::string_view> countries(record.countries.begin(), record.countries.end());
  std::vector<std::string_view> categories(record.categories.begin(), record.categories.end());
  add(record.id, record.year, record.doctype, record.citations, countries, categories);
}

Corpus CorpusBuilder::build() && {
  auto& c = corpus_;
  c.by_id_.resize(c.size());
  std::iota(c.by_id_.begin(), c.by_id_.end(), Corpus::Index{0});
  std::sort(c.by_id_.begin(), c.by_id_.end(), [&c](Corpus::Index a, Corpus::Index b) {
    const auto ia = c.id(a), ib = c.id(b);
    return ia != ib ? ia < ib : a < b;
  });
  for (std::size_t i = 1; i < c.by_id_.size(); ++i) {
    if (c.id(c.by_id_[i - 1]) == c.id(c.by_id_[i])) {
      throw LoadError("duplicate id '" + std::string(c.id(c.by_id_[i])) + "' (rows " +
                      std::to_string(c.by_id_[i - 1] + 1) + " and " + std::to_string(c.by_id_[i] + 1) +
                      ")");
    }
  }
  return std::move(corpus_);
}

ValidationReport validate_corpus(const Corpus& corpus) {
  ValidationReport report;
  report.records = corpus.size();
  for (Corpus::Index i = 0; i < corpus.size(); ++i) {
    if (corpus.countries(i).empty()) ++report.empty_countries;
    if (corpus.categories(i).empty()) ++report.empty_categories;
    if (corpus.doctype(i) == DocType::Other) ++report.other_doctype;
  }
  if (report.empty_countries > 0) {
    report.notes.push_back(std::to_string(report.empty_countries) +
                           " record(s) without countries count toward world totals only");
  }
  if (report.empty_categories > 0) {
    report.notes.push_back(std::to_string(report.empty_categories) +
                           " record(s) without categories are left out of per-category analyses");
  }
  if (report.other_doctype > 0) {
    report.notes.push_back(std::to_string(report.other_doctype) +
                           " record(s) of doctype Other are excluded by the default doctype filter");
  }
  return report;
}

}  // namespace citerank
