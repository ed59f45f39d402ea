#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace citerank {

/// Base class for data and computation errors (CLI exit code 1).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised while reading or building a corpus.
class LoadError : public Error {
 public:
  using Error::Error;
};

enum class DocType : std::uint8_t { Article, Review, Letter, Other };

std::string_view to_string(DocType type);
std::optional<DocType> parse_doctype(std::string_view text);

using Date = std::chrono::year_month_day;

std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& date);

/// One document as it appears in an input file.
struct PublicationRecord {
  std::string id;
  int year = 0;
  DocType doctype = DocType::Article;
  std::int64_t citations = 0;
  std::vector<std::string> countries;
  std::vector<std::string> categories;

  friend bool operator==(const PublicationRecord&, const PublicationRecord&) = default;
};

using CodeId = std::uint32_t;

/// Interns opaque code tokens (countries, categories) as dense integer ids.
class CodeTable {
 public:
  CodeId intern(std::string_view code);
  std::optional<CodeId> find(std::string_view code) const;
  const std::string& name(CodeId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, CodeId, std::less<>> index_;
};

/// Immutable, column-oriented record collection.
///
/// Rows keep input order. Country and category lists are stored as interned
/// code ids in flat pools; `record(i)` materializes a PublicationRecord.
class Corpus {
 public:
  using Index = std::uint32_t;

  Corpus() = default;

  std::size_t size() const { return citations_.size(); }
  bool empty() const { return citations_.empty(); }

  std::string_view id(Index i) const;
  int year(Index i) const { return years_[i]; }
  DocType doctype(Index i) const { return doctypes_[i]; }
  std::int64_t citations(Index i) const { return citations_[i]; }
  std::span<const CodeId> countries(Index i) const;
  std::span<const CodeId> categories(Index i) const;

  const CodeTable& country_codes() const { return countries_table_; }
  const CodeTable& category_codes() const { return categories_table_; }

  PublicationRecord record(Index i) const;
  std::optional<Index> find(std::string_view id) const;

  const std::optional<Date>& retrieval_date() const { return retrieval_date_; }
  const std::string& label() const { return label_; }

  static Corpus from_records(std::span<const PublicationRecord> records,
                             std::optional<Date> retrieval_date = std::nullopt,
                             std::string label = {});

 private:
  friend class CorpusBuilder;

  std::string id_pool_;
  std::vector<std::uint64_t> id_offsets_{0};
  std::vector<int> years_;
  std::vector<DocType> doctypes_;
  std::vector<std::int64_t> citations_;
  std::vector<CodeId> country_pool_;
  std::vector<std::uint64_t> country_offsets_{0};
  std::vector<CodeId> category_pool_;
  std::vector<std::uint64_t> category_offsets_{0};
  CodeTable countries_table_;
  CodeTable categories_table_;
  std::vector<Index> by_id_;  // row indices sorted by id
  std::optional<Date> retrieval_date_;
  std::string label_;
};

/// Incremental corpus construction with validation. Duplicate ids are
/// detected in build().
class CorpusBuilder {
 public:
  CorpusBuilder() = default;

  void reserve(std::size_t records);
  void set_retrieval_date(std::optional<Date> date) { corpus_.retrieval_date_ = date; }
  void set_label(std::string label) { corpus_.label_ = std::move(label); }

  /// Appends one record. Throws LoadError on negative citations or
  /// repeated entries within the country or category list.
  void add(std::string_view id, int year, DocType doctype, std::int64_t citations,
           std::span<const std::string_view> countries,
           std::span<const std::string_view> categories);
  void add(const PublicationRecord& record);

  std::size_t size() const { return corpus_.size(); }

  Corpus build() &&;

 private:
  Corpus corpus_;
};

struct ValidationReport {
  std::size_t records = 0;
  std::size_t empty_countries = 0;
  std::size_t empty_categories = 0;
  std::size_t other_doctype = 0;
  std::vector<std::string> notes;
};

/// Counts records that downstream analyses treat specially. Never mutates.
ValidationReport validate_corpus(const Corpus& corpus);

enum class InputFormat { Auto, Delimited, RecordPerLine };

/// Reads a corpus file. Delimited files need a header row with columns
/// id, year, doctype, citations, countries, categories (any order);
/// list columns are '|'-separated. Record-per-line files hold one JSON
/// object per line with the same field names. Either format may start with
/// '#key=value' lines (retrieval_date, label).
Corpus load_corpus(const std::string& path, InputFormat format = InputFormat::Auto);
Corpus parse_delimited(std::string_view text, std::string label = {});
Corpus parse_record_lines(std::string_view text, std::string label = {});

void write_delimited(const Corpus& corpus, std::ostream& out);
void write_record_lines(const Corpus& corpus, std::ostream& out);
/// Auto picks record-per-line for .jsonl, .ndjson and .json paths.
void save_corpus(const Corpus& corpus, const std::string& path,
                 InputFormat format = InputFormat::Auto);

}  // namespace citerank
