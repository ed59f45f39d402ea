#include <array>
#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "citerank/corpus.hpp"

namespace citerank {

namespace {

constexpr std::array<std::string_view, 6> kColumns{"id", "year", "doctype", "citations", "countries",
                                                   "categories"};
enum Column { kId, kYear, kDoctype, kCitations, kCountries, kCategories };

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string row_error(std::size_t row, const std::string& what) {
  return "row " + std::to_string(row) + ": " + what;
}

// Splits one delimited line. Quoted fields may contain the delimiter and
// doubled quotes; they are unescaped into `scratch`, whose elements stay put
// as it grows. Unquoted fields are views into `line`.
void split_fields(std::string_view line, char delim, std::deque<std::string>& scratch,
                  std::vector<std::string_view>& out) {
  out.clear();
  scratch.clear();
  std::size_t pos = 0;
  while (true) {
    if (pos < line.size() && line[pos] == '"') {
      auto& value = scratch.emplace_back();
      ++pos;
      while (pos < line.size()) {
        if (line[pos] == '"') {
          if (pos + 1 < line.size() && line[pos + 1] == '"') {
            value.push_back('"');
            pos += 2;
            continue;
          }
          ++pos;
          break;
        }
        value.push_back(line[pos++]);
      }
      out.push_back(value);
      const auto next = line.find(delim, pos);
      if (next == std::string_view::npos) break;
      pos = next + 1;
    } else {
      const auto next = line.find(delim, pos);
      if (next == std::string_view::npos) {
        out.push_back(line.substr(pos));
        break;
      }
      out.push_back(line.substr(pos, next - pos));
      pos = next + 1;
    }
  }
}

void split_list(std::string_view text, std::vector<std::string_view>& out) {
  out.clear();
  text = trim(text);
  if (text.empty()) return;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find('|', pos);
    const auto item = trim(text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (!item.empty()) out.push_back(item);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

// Consumes leading '#key=value' lines and blank lines; returns the offset of
// the first content line.
std::size_t read_metadata(std::string_view text, CorpusBuilder& builder) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    if (!line.empty() && line.front() != '#') break;
    if (!line.empty()) {
      const auto body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        const auto key = trim(body.substr(0, eq));
        const auto value = trim(body.substr(eq + 1));
        if (key == "retrieval_date") {
          auto date = parse_date(value);
          if (!date) throw LoadError("invalid retrieval_date '" + std::string(value) + "'");
          builder.set_retrieval_date(*date);
        } else if (key == "label") {
          builder.set_label(std::string(value));
        }
      }
    }
    pos = end + 1;
  }
  return std::min(pos, text.size());
}

}  // namespace

Corpus parse_delimited(std::string_view text, std::string label) {
  CorpusBuilder builder;
  builder.set_label(std::move(label));
  std::size_t pos = read_metadata(text, builder);

  auto next_line = [&](std::string_view& line) {
    while (pos < text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      pos = end + 1;
      if (!trim(line).empty()) return true;
    }
    return false;
  };

  std::string_view header;
  if (!next_line(header)) throw LoadError("missing header row");
  const char delim = (header.find('\t') != std::string_view::npos && header.find(',') == std::string_view::npos)
                         ? '\t'
                         : ',';
  std::deque<std::string> scratch;
  std::vector<std::string_view> fields;
  split_fields(header, delim, scratch, fields);
  std::vector<std::string> header_names(fields.begin(), fields.end());
  std::array<std::size_t, kColumns.size()> where{};
  for (std::size_t c = 0; c < kColumns.size(); ++c) {
    auto it = std::find_if(header_names.begin(), header_names.end(),
                           [&](const std::string& h) { return trim(h) == kColumns[c]; });
    if (it == header_names.end()) throw LoadError("header: missing field: " + std::string(kColumns[c]));
    where[c] = static_cast<std::size_t>(it - header_names.begin());
  }

  builder.reserve(static_cast<std::size_t>(std::count(text.begin() + static_cast<std::ptrdiff_t>(pos),
                                                      text.end(), '\n')) +
                  1);
  std::vector<std::string_view> countries, categories;
  std::string_view line;
  std::size_t row = 0;
  while (next_line(line)) {
    ++row;
    split_fields(line, delim, scratch, fields);
    auto field = [&](Column c) -> std::string_view {
      if (where[c] >= fields.size()) {
        if (c == kCountries || c == kCategories) return {};
        throw LoadError(row_error(row, "missing field: " + std::string(kColumns[c])));
      }
      return trim(fields[where[c]]);
    };
    const auto id = field(kId);
    if (id.empty()) throw LoadError(row_error(row, "missing field: id"));
    const auto year_text = field(kYear);
    if (year_text.empty()) throw LoadError(row_error(row, "missing field: year"));
    const auto doctype_text = field(kDoctype);
    if (doctype_text.empty()) throw LoadError(row_error(row, "missing field: doctype"));
    const auto citations_text = field(kCitations);
    if (citations_text.empty()) throw LoadError(row_error(row, "missing field: citations"));

    int year = 0;
    if (!parse_int(year_text, year)) {
      throw LoadError(row_error(row, "non-integer year '" + std::string(year_text) + "'"));
    }
    const auto doctype = parse_doctype(doctype_text);
    if (!doctype) throw LoadError(row_error(row, "unknown doctype '" + std::string(doctype_text) + "'"));
    std::int64_t citations = 0;
    if (!parse_int(citations_text, citations)) {
      throw LoadError(row_error(row, "non-integer citations '" + std::string(citations_text) + "'"));
    }
    split_list(field(kCountries), countries);
    split_list(field(kCategories), categories);
    try {
      builder.add(id, year, *doctype, citations, countries, categories);
    } catch (const LoadError& e) {
      throw LoadError(row_error(row, e.what()));
    }
  }
  return std::move(builder).build();
}

Corpus parse_record_lines(std::string_view text, std::string label) {
  using nlohmann::json;
  CorpusBuilder builder;
  builder.set_label(std::move(label));
  std::size_t pos = read_metadata(text, builder);
  std::size_t row = 0;
  std::vector<std::string> country_store, category_store;
  std::vector<std::string_view> countries, categories;

  auto read_list = [&](const json& obj, const char* key, std::vector<std::string>& store,
                       std::vector<std::string_view>& views) {
    store.clear();
    views.clear();
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    if (it->is_string()) {
      std::vector<std::string_view> parts;
      const auto& s = it->get_ref<const std::string&>();
      split_list(s, parts);
      for (auto p : parts) store.emplace_back(p);
    } else if (it->is_array()) {
      for (const auto& v : *it) {
        if (!v.is_string()) throw LoadError(row_error(row, std::string("non-text entry in ") + key));
        store.push_back(v.get<std::string>());
      }
    } else {
      throw LoadError(row_error(row, std::string("field ") + key + " must be a list or text"));
    }
    views.assign(store.begin(), store.end());
  };

  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    if (line.empty()) continue;
    ++row;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw LoadError(row_error(row, std::string("malformed record: ") + e.what()));
    }
    if (!obj.is_object()) throw LoadError(row_error(row, "record is not an object"));
    auto require = [&](std::string_view key) -> const json& {
      auto it = obj.find(std::string(key));
      if (it == obj.end() || it->is_null()) {
        throw LoadError(row_error(row, "missing field: " + std::string(key)));
      }
      return *it;
    };
    const auto& id = require("id");
    const auto& year = require("year");
    const auto& doctype = require("doctype");
    const auto& citations = require("citations");
    if (!id.is_string() && !id.is_number_integer()) throw LoadError(row_error(row, "id must be text"));
    const std::string id_text = id.is_string() ? id.get<std::string>() : id.dump();
    if (!year.is_number_integer()) throw LoadError(row_error(row, "non-integer year"));
    if (!citations.is_number_integer()) throw LoadError(row_error(row, "non-integer citations"));
    if (!doctype.is_string()) throw LoadError(row_error(row, "doctype must be text"));
    const auto dt = parse_doctype(doctype.get_ref<const std::string&>());
    if (!dt) throw LoadError(row_error(row, "unknown doctype '" + doctype.get<std::string>() + "'"));
    read_list(obj, "countries", country_store, countries);
    read_list(obj, "categories", category_store, categories);
    try {
      builder.add(id_text, year.get<int>(), *dt, citations.get<std::int64_t>(), countries, categories);
    } catch (const LoadError& e) {
      throw LoadError(row_error(row, e.what()));
    }
  }
  return std::move(builder).build();
}

namespace {

InputFormat detect_format(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    const auto ext = path.substr(dot);
    if (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") return InputFormat::RecordPerLine;
  }
  return InputFormat::Delimited;
}

void write_quoted(std::ostream& out, std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

void write_metadata(const Corpus& corpus, std::ostream& out) {
  if (corpus.retrieval_date()) out << "#retrieval_date=" << format_date(*corpus.retrieval_date()) << '\n';
  if (!corpus.label().empty()) out << "#label=" << corpus.label() << '\n';
}

}  // namespace

Corpus load_corpus(const std::string& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = std::move(buffer).str();
  if (format == InputFormat::Auto) format = detect_format(path);
  try {
    return format == InputFormat::RecordPerLine ? parse_record_lines(text, path) : parse_delimited(text, path);
  } catch (const LoadError& e) {
    throw LoadError(path + ": " + e.what());
  }
}

void write_delimited(const Corpus& corpus, std::ostream& out) {
  write_metadata(corpus, out);
  out << "id,year,doctype,citations,countries,categories\n";
  std::string list;
  for (Corpus::Index i = 0; i < corpus.size(); ++i) {
    write_quoted(out, corpus.id(i));
    out << ',' << corpus.year(i) << ',' << to_string(corpus.doctype(i)) << ',' << corpus.citations(i) << ',';
    list.clear();
    for (CodeId c : corpus.countries(i)) {
      if (!list.empty()) list += '|';
      list += corpus.country_codes().name(c);
    }
    write_quoted(out, list);
    out << ',';
    list.clear();
    for (CodeId c : corpus.categories(i)) {
      if (!list.empty()) list += '|';
      list += corpus.category_codes().name(c);
    }
    write_quoted(out, list);
    out << '\n';
  }
}

void write_record_lines(const Corpus& corpus, std::ostream& out) {
  write_metadata(corpus, out);
  for (Corpus::Index i = 0; i < corpus.size(); ++i) {
    const auto r = corpus.record(i);
    nlohmann::json obj{{"id", r.id},
                       {"year", r.year},
                       {"doctype", std::string(to_string(r.doctype))},
                       {"citations", r.citations},
                       {"countries", r.countries},
                       {"categories", r.categories}};
    out << obj.dump() << '\n';
  }
}

void save_corpus(const Corpus& corpus, const std::string& path, InputFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  if (format == InputFormat::Auto) format = detect_format(path);
  if (format == InputFormat::RecordPerLine) {
    write_record_lines(corpus, out);
  } else {
    write_delimited(corpus, out);
  }
  if (!out) throw Error("write failed for '" + path + "'");
}

}  // namespace citerank
