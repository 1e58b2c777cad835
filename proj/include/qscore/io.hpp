#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "qscore/csv.hpp"
#include "qscore/error.hpp"
#include "qscore/records.hpp"
#include "qscore/text.hpp"

namespace qscore {

enum class DiagnosticKind {
  MissingColumn,
  UnexpectedColumn,
  FieldCount,
  TypeMismatch,
  ConflictingFlags,
  DuplicateId,
  DuplicateEntry,
  MissingPackage,
};

inline const char* to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::MissingColumn: return "missing-column";
    case DiagnosticKind::UnexpectedColumn: return "unexpected-column";
    case DiagnosticKind::FieldCount: return "field-count";
    case DiagnosticKind::TypeMismatch: return "type-mismatch";
    case DiagnosticKind::ConflictingFlags: return "conflicting-flags";
    case DiagnosticKind::DuplicateId: return "duplicate-id";
    case DiagnosticKind::DuplicateEntry: return "duplicate-entry";
    case DiagnosticKind::MissingPackage: return "missing-package";
  }
  return "?";
}

// One validation finding, pinned to file:line. Each malformed row produces
// exactly one diagnostic (the first violation found).
struct Diagnostic {
  DiagnosticKind kind;
  std::string file;
  std::size_t line = 0;
  std::string message;

  std::string str() const {
    return file + ":" + std::to_string(line) + ": " + to_string(kind) + ": " +
           message;
  }
};

template <typename T>
struct LoadResult {
  std::vector<T> rows;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

namespace detail {

inline bool parse_int64(std::string_view raw, std::int64_t& out) {
  const std::string_view s = trim_view(raw);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_int(std::string_view raw, int& out) {
  std::int64_t wide = 0;
  if (!parse_int64(raw, wide)) return false;
  if (wide < INT32_MIN || wide > INT32_MAX) return false;
  out = static_cast<int>(wide);
  return true;
}

inline bool parse_double(std::string_view raw, double& out) {
  const std::string_view s = trim_view(raw);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Binds schema column names to their CSV indices. Column order is free but
// the name set must match the schema exactly.
struct HeaderIndex {
  std::map<std::string, std::size_t> index;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
  const std::string& cell(const CsvRow& row, const std::string& col) const {
    return row.fields[index.at(col)];
  }
  bool has(const std::string& col) const { return index.count(col) > 0; }
};

inline HeaderIndex bind_header(const CsvTable& table, const std::string& file,
                               const std::vector<std::string>& required,
                               const std::vector<std::string>& optional = {}) {
  HeaderIndex hi;
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    seen.emplace(table.header[i], i);
  }
  for (const std::string& name : required) {
    auto it = seen.find(name);
    if (it == seen.end()) {
      hi.diagnostics.push_back({DiagnosticKind::MissingColumn, file, 1,
                                "required column '" + name + "' not found"});
    } else {
      hi.index[name] = it->second;
    }
  }
  for (const std::string& name : optional) {
    auto it = seen.find(name);
    if (it != seen.end()) hi.index[name] = it->second;
  }
  for (const auto& [name, idx] : seen) {
    const bool known =
        std::find(required.begin(), required.end(), name) != required.end() ||
        std::find(optional.begin(), optional.end(), name) != optional.end();
    if (!known) {
      hi.diagnostics.push_back({DiagnosticKind::UnexpectedColumn, file, 1,
                                "unknown column '" + name + "'"});
    }
  }
  return hi;
}

// First-error-wins accessor over one data row.
class RowReader {
 public:
  RowReader(const CsvRow& row, const HeaderIndex& hi, std::string file)
      : row_(row), hi_(hi), file_(std::move(file)) {}

  const std::string& text(const std::string& col) { return hi_.cell(row_, col); }

  bool read_int(const std::string& col, int& out) {
    if (error_) return false;
    if (!parse_int(text(col), out)) {
      fail(DiagnosticKind::TypeMismatch,
           "column '" + col + "': '" + text(col) + "' is not an integer");
      return false;
    }
    return true;
  }

  bool read_int64(const std::string& col, std::int64_t& out) {
    if (error_) return false;
    if (!parse_int64(text(col), out)) {
      fail(DiagnosticKind::TypeMismatch,
           "column '" + col + "': '" + text(col) + "' is not an integer");
      return false;
    }
    return true;
  }

  bool read_double(const std::string& col, double& out,
                   bool empty_as_zero = false) {
    if (error_) return false;
    if (empty_as_zero && trim_view(text(col)).empty()) {
      out = 0.0;
      return true;
    }
    if (!parse_double(text(col), out)) {
      fail(DiagnosticKind::TypeMismatch,
           "column '" + col + "': '" + text(col) + "' is not a number");
      return false;
    }
    return true;
  }

  bool read_rank(const std::string& col, int& out) {
    if (!read_int(col, out)) return false;
    if (out < 1) {
      fail(DiagnosticKind::TypeMismatch,
           "column '" + col + "': ranks are 1-based, got " +
               std::to_string(out));
      return false;
    }
    return true;
  }

  bool read_flag(const std::string& col, bool& out) {
    if (error_) return false;
    const std::string_view v = trim_view(text(col));
    if (v == "Y") {
      out = true;
    } else if (v == "N") {
      out = false;
    } else {
      fail(DiagnosticKind::TypeMismatch,
           "column '" + col + "': expected Y or N, got '" + text(col) + "'");
      return false;
    }
    return true;
  }

  void fail(DiagnosticKind kind, const std::string& message) {
    if (!error_) error_ = Diagnostic{kind, file_, row_.line, message};
  }

  const std::optional<Diagnostic>& error() const { return error_; }

 private:
  const CsvRow& row_;
  const HeaderIndex& hi_;
  std::string file_;
  std::optional<Diagnostic> error_;
};

}  // namespace detail

inline LoadResult<StudentRecord> load_students(
    const std::filesystem::path& path) {
  static const std::vector<std::string> kColumns = {
      "course", "eyear",        "code",   "id",         "gender",
      "region", "he",           "imd",    "age",        "prev_attempt",
      "credit", "disability",   "final_result", "univ", "comp",
      "package", "univ_f",      "comp_f", "q_score"};
  const CsvTable table = read_csv(path);
  const std::string file = path.string();

  LoadResult<StudentRecord> result;
  const detail::HeaderIndex hi = detail::bind_header(table, file, kColumns);
  if (!hi.ok()) {
    result.diagnostics = hi.diagnostics;
    return result;  // schema broken: no rows parsed
  }

  std::set<std::pair<int, std::int64_t>> seen_ids;
  for (const CsvRow& row : table.rows) {
    if (row.fields.size() != table.header.size()) {
      result.diagnostics.push_back(
          {DiagnosticKind::FieldCount, file, row.line,
           "expected " + std::to_string(table.header.size()) +
               " fields, got " + std::to_string(row.fields.size())});
      continue;
    }
    detail::RowReader r(row, hi, file);
    StudentRecord rec;
    rec.course = r.text("course");
    rec.code = r.text("code");
    rec.gender = r.text("gender");
    rec.region = r.text("region");
    rec.he = r.text("he");
    rec.imd = r.text("imd");
    rec.age = r.text("age");
    rec.prev_attempt = r.text("prev_attempt");
    rec.credit = r.text("credit");
    rec.disability = r.text("disability");
    rec.final_result = r.text("final_result");
    rec.univ = r.text("univ");
    rec.comp = r.text("comp");
    r.read_int("eyear", rec.eyear);
    r.read_int64("id", rec.id);
    r.read_double("package", rec.package, /*empty_as_zero=*/true);
    r.read_double("q_score", rec.q_score, /*empty_as_zero=*/true);
    r.read_flag("univ_f", rec.univ_f);
    r.read_flag("comp_f", rec.comp_f);
    if (!r.error()) {
      if (rec.package < 0.0) {
        r.fail(DiagnosticKind::TypeMismatch, "column 'package': must be >= 0");
      } else if (rec.univ_f && rec.comp_f) {
        r.fail(DiagnosticKind::ConflictingFlags,
               "univ_f and comp_f are both Y for student " +
                   std::to_string(rec.id));
      } else if (rec.comp_f && rec.package <= 0.0) {
        r.fail(DiagnosticKind::MissingPackage,
               "student " + std::to_string(rec.id) +
                   " joined a company but has no positive package");
      } else if (!seen_ids.emplace(rec.eyear, rec.id).second) {
        r.fail(DiagnosticKind::DuplicateId,
               "student id " + std::to_string(rec.id) +
                   " repeats within cohort " + std::to_string(rec.eyear));
      }
    }
    if (r.error()) {
      result.diagnostics.push_back(*r.error());
      continue;
    }
    result.rows.push_back(std::move(rec));
  }
  return result;
}

inline LoadResult<UniversityRankEntry> load_university_ranks(
    const std::filesystem::path& path) {
  static const std::vector<std::string> kColumns = {
      "univ_code", "univ_name", "univ_city", "univ_state",
      "univ_score", "univ_rank", "uryear"};
  static const std::vector<std::string> kOptional = {"scope"};
  const CsvTable table = read_csv(path);
  const std::string file = path.string();

  LoadResult<UniversityRankEntry> result;
  const detail::HeaderIndex hi =
      detail::bind_header(table, file, kColumns, kOptional);
  if (!hi.ok()) {
    result.diagnostics = hi.diagnostics;
    return result;
  }

  std::set<std::tuple<std::string, int, std::string>> seen;
  for (const CsvRow& row : table.rows) {
    if (row.fields.size() != table.header.size()) {
      result.diagnostics.push_back(
          {DiagnosticKind::FieldCount, file, row.line,
           "expected " + std::to_string(table.header.size()) +
               " fields, got " + std::to_string(row.fields.size())});
      continue;
    }
    detail::RowReader r(row, hi, file);
    UniversityRankEntry rec;
    rec.univ_code = r.text("univ_code");
    rec.univ_name = r.text("univ_name");
    rec.univ_city = r.text("univ_city");
    rec.univ_state = r.text("univ_state");
    r.read_double("univ_score", rec.univ_score, /*empty_as_zero=*/true);
    r.read_rank("univ_rank", rec.univ_rank);
    r.read_int("uryear", rec.uryear);
    if (!r.error() && hi.has("scope")) {
      const std::string scope = normalize_name(r.text("scope"));
      if (scope == "country" || scope == "world") {
        rec.scope = scope;
      } else {
        r.fail(DiagnosticKind::TypeMismatch,
               "column 'scope': expected country or world, got '" +
                   r.text("scope") + "'");
      }
    }
    if (!r.error() &&
        !seen.emplace(normalize_name(rec.univ_name), rec.uryear, rec.scope)
             .second) {
      r.fail(DiagnosticKind::DuplicateEntry,
             "university '" + rec.univ_name + "' repeats for year " +
                 std::to_string(rec.uryear) + ", scope " + rec.scope);
    }
    if (r.error()) {
      result.diagnostics.push_back(*r.error());
      continue;
    }
    result.rows.push_back(std::move(rec));
  }
  return result;
}

inline LoadResult<CompanyRankEntry> load_company_ranks(
    const std::filesystem::path& path) {
  static const std::vector<std::string> kColumns = {
      "comp_name", "comp_sector", "comp_subsector", "comp_area",
      "comp_country", "comp_para1", "comp_para2", "comp_para3",
      "comp_para4", "comp_rank", "cryear"};
  const CsvTable table = read_csv(path);
  const std::string file = path.string();

  LoadResult<CompanyRankEntry> result;
  const detail::HeaderIndex hi = detail::bind_header(table, file, kColumns);
  if (!hi.ok()) {
    result.diagnostics = hi.diagnostics;
    return result;
  }

  std::set<std::pair<std::string, int>> seen;
  for (const CsvRow& row : table.rows) {
    if (row.fields.size() != table.header.size()) {
      result.diagnostics.push_back(
          {DiagnosticKind::FieldCount, file, row.line,
           "expected " + std::to_string(table.header.size()) +
               " fields, got " + std::to_string(row.fields.size())});
      continue;
    }
    detail::RowReader r(row, hi, file);
    CompanyRankEntry rec;
    rec.comp_name = r.text("comp_name");
    rec.comp_sector = r.text("comp_sector");
    rec.comp_subsector = r.text("comp_subsector");
    rec.comp_area = r.text("comp_area");
    rec.comp_country = r.text("comp_country");
    r.read_double("comp_para1", rec.comp_para1, /*empty_as_zero=*/true);
    r.read_double("comp_para2", rec.comp_para2, /*empty_as_zero=*/true);
    r.read_double("comp_para3", rec.comp_para3, /*empty_as_zero=*/true);
    r.read_double("comp_para4", rec.comp_para4, /*empty_as_zero=*/true);
    r.read_rank("comp_rank", rec.comp_rank);
    r.read_int("cryear", rec.cryear);
    if (!r.error() &&
        !seen.emplace(normalize_name(rec.comp_name), rec.cryear).second) {
      r.fail(DiagnosticKind::DuplicateEntry,
             "company '" + rec.comp_name + "' repeats for year " +
                 std::to_string(rec.cryear));
    }
    if (r.error()) {
      result.diagnostics.push_back(*r.error());
      continue;
    }
    result.rows.push_back(std::move(rec));
  }
  return result;
}

}  // namespace qscore
