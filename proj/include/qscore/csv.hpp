#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "qscore/error.hpp"

namespace qscore {

struct CsvRow {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line the row starts on
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;  // data rows, header excluded
};

// Strict dialect: comma separator, first row is the header, UTF-8, double
// quotes around fields containing commas/quotes/newlines, "" escapes a quote.
// Blank lines are skipped; a UTF-8 BOM is tolerated.
inline CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::IoError, "cannot open " + path.string());
  }
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  if (content.rfind("\xEF\xBB\xBF", 0) == 0) content.erase(0, 3);

  std::vector<CsvRow> raw_rows;
  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  auto commit_field = [&]() {
    fields.push_back(std::move(field));
    field.clear();
  };
  auto commit_row = [&]() {
    commit_field();
    raw_rows.push_back(CsvRow{std::move(fields), row_line});
    fields.clear();
    row_started = false;
  };

  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (!row_started) {
      row_line = line;
      row_started = true;
    }
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      commit_field();
    } else if (c == '\r') {
      // part of \r\n, handled at the \n
    } else if (c == '\n') {
      ++line;
      commit_row();
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) {
    throw Error(Errc::IoError, path.string() +
                                   ": unterminated quoted field starting on line " +
                                   std::to_string(row_line));
  }
  if (row_started) commit_row();

  CsvTable table;
  for (CsvRow& row : raw_rows) {
    if (row.fields.size() == 1 && row.fields[0].empty()) continue;  // blank line
    if (table.header.empty()) {
      table.header = std::move(row.fields);
    } else {
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace qscore
