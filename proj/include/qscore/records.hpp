#pragma once

#include <cstdint>
#include <string>

namespace qscore {

// One row of the student data table. Field names follow the CSV schema.
struct StudentRecord {
  std::string course;
  int eyear = 0;  // enrolment year; keys the cohort
  std::string code;
  std::int64_t id = 0;
  std::string gender;
  std::string region;
  std::string he;   // highest education on entry
  std::string imd;  // IMD band
  std::string age;
  std::string prev_attempt;
  std::string credit;
  std::string disability;
  std::string final_result;  // Pass / Fail / Withdrawn
  std::string univ;          // university joined after completion, may be empty
  std::string comp;          // company joined after completion, may be empty
  double package = 0.0;      // offered package; meaningful only when comp_f
  bool univ_f = false;       // joined a university
  bool comp_f = false;       // joined a company
  double q_score = 0.0;      // input column, zero-initialized; never written back
};

struct UniversityRankEntry {
  std::string univ_code;
  std::string univ_name;
  std::string univ_city;
  std::string univ_state;
  double univ_score = 0.0;
  int univ_rank = 0;  // 1-based, 1 is best
  int uryear = 0;     // year the ranking was published for
  std::string scope = "country";  // "country" or "world"
};

struct CompanyRankEntry {
  std::string comp_name;
  std::string comp_sector;
  std::string comp_subsector;
  std::string comp_area;
  std::string comp_country;
  double comp_para1 = 0.0;
  double comp_para2 = 0.0;
  double comp_para3 = 0.0;
  double comp_para4 = 0.0;
  int comp_rank = 0;
  int cryear = 0;
};

}  // namespace qscore
