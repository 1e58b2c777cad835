#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qscore/error.hpp"
#include "qscore/fsutil.hpp"
#include "qscore/scoring.hpp"

namespace qscore {

// Run metadata written alongside each year's scores. The timestamp makes the
// meta sidecar the one non-deterministic output; score files never carry it.
struct Provenance {
  std::string students_digest;
  std::string univ_ranks_digest;
  std::string comp_ranks_digest;
  nlohmann::ordered_json config;  // effective run configuration snapshot
  std::string timestamp;          // ISO-8601 UTC
};

inline std::filesystem::path score_file_path(
    const std::filesystem::path& store_dir, int year) {
  return store_dir / ("scores_" + std::to_string(year) + ".jsonl");
}

inline std::filesystem::path meta_file_path(
    const std::filesystem::path& store_dir, int year) {
  return store_dir / ("meta_" + std::to_string(year) + ".json");
}

inline nlohmann::ordered_json score_to_json(const QualityScore& s) {
  nlohmann::ordered_json j;
  j["student_id"] = s.student_id;
  j["cohort_year"] = s.cohort_year;
  j["category"] = to_string(s.category);
  if (s.qs_ir) j["qs_ir"] = *s.qs_ir;
  if (s.qs_po) j["qs_po"] = *s.qs_po;
  j["qs_total"] = s.qs_total;
  return j;
}

inline QualityScore score_from_json(const nlohmann::json& j) {
  QualityScore s;
  s.student_id = j.at("student_id").get<std::int64_t>();
  s.cohort_year = j.at("cohort_year").get<int>();
  s.category = academic_category_from_string(j.at("category").get<std::string>());
  if (j.contains("qs_ir") && !j["qs_ir"].is_null()) {
    s.qs_ir = j["qs_ir"].get<double>();
  }
  if (j.contains("qs_po") && !j["qs_po"].is_null()) {
    s.qs_po = j["qs_po"].get<double>();
  }
  s.qs_total = j.at("qs_total").get<double>();
  return s;
}

// Serializes one score per line. Rewriting a year replaces its file
// atomically; concurrent writers to the same year end with one winner and
// never a torn file.
inline void save_scores(const std::filesystem::path& store_dir, int year,
                        const std::vector<QualityScore>& scores,
                        const Provenance& provenance) {
  std::error_code ec;
  std::filesystem::create_directories(store_dir, ec);
  if (ec) {
    throw Error(Errc::IoError,
                "cannot create store directory " + store_dir.string());
  }
  std::string body;
  for (const QualityScore& s : scores) {
    body += score_to_json(s).dump();
    body += '\n';
  }
  atomic_write(score_file_path(store_dir, year), body);

  nlohmann::ordered_json meta;
  meta["cohort_year"] = year;
  meta["records"] = scores.size();
  meta["inputs"]["students"] = provenance.students_digest;
  meta["inputs"]["university_ranks"] = provenance.univ_ranks_digest;
  meta["inputs"]["company_ranks"] = provenance.comp_ranks_digest;
  meta["config"] = provenance.config;
  meta["timestamp"] = provenance.timestamp;
  atomic_write(meta_file_path(store_dir, year), meta.dump(2) + "\n");
}

// Missing year loads as empty; a malformed line is a corrupt-store error
// naming the line.
inline std::vector<QualityScore> load_scores(
    const std::filesystem::path& store_dir, int year) {
  const std::filesystem::path path = score_file_path(store_dir, year);
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::vector<QualityScore> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(score_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw Error(Errc::CorruptStore, path.string() + ":" +
                                          std::to_string(lineno) + ": " +
                                          e.what());
    }
  }
  return out;
}

// Years present in a store, ascending.
inline std::vector<int> store_years(const std::filesystem::path& store_dir) {
  std::vector<int> years;
  std::error_code ec;
  for (const auto& entry :
       std::filesystem::directory_iterator(store_dir, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("scores_", 0) != 0) continue;
    const std::size_t dot = name.find(".jsonl");
    if (dot == std::string::npos) continue;
    try {
      years.push_back(std::stoi(name.substr(7, dot - 7)));
    } catch (const std::exception&) {
      continue;  // stray file, not ours
    }
  }
  std::sort(years.begin(), years.end());
  return years;
}

}  // namespace qscore
