// Command line driver: validate input tables, score cohorts into the store,
// and render per-year / cross-year analytics artifacts.

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qscore/qscore.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDataError = 1;
constexpr int kExitUsageError = 2;

struct Options {
  std::string students;
  std::string univ_ranks;
  std::string comp_ranks;
  std::string store;
  std::string out;
  std::string years;       // comma-separated
  std::string bands;       // "lower,upper"
  std::string univ_scope;  // both | country | world
  std::string config_path;
  bool pass_only = false;
  bool no_rank_fallback = false;
  bool force_line = false;
};

struct Resolved {
  fs::path students;
  fs::path univ_ranks;
  fs::path comp_ranks;
  fs::path store;
  fs::path out;
  std::vector<int> years;  // empty means "all available"
  qscore::BandConfig bands;
  bool pass_only = false;
  bool rank_fallback = true;
  qscore::UnivScope univ_scope = qscore::UnivScope::CountryThenWorld;
  bool force_line = false;
};

bool flag_given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* o = sub->get_option_no_throw(name);
  return o != nullptr && o->count() > 0;
}

std::vector<int> parse_years(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item(qscore::trim_view(text.substr(pos, comma - pos)));
    if (!item.empty()) {
      try {
        std::size_t used = 0;
        const int year = std::stoi(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        out.push_back(year);
      } catch (const std::exception&) {
        throw qscore::Error(qscore::Errc::InvalidConfig,
                            "--years: '" + item + "' is not a year");
      }
    }
    pos = comma + 1;
  }
  return out;
}

qscore::BandConfig parse_bands(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw qscore::Error(qscore::Errc::InvalidConfig,
                        "--bands expects 'lower,upper'");
  }
  qscore::BandConfig bands;
  try {
    bands.lower_threshold = std::stod(std::string(
        qscore::trim_view(text.substr(0, comma))));
    bands.upper_threshold = std::stod(std::string(
        qscore::trim_view(text.substr(comma + 1))));
  } catch (const std::exception&) {
    throw qscore::Error(qscore::Errc::InvalidConfig,
                        "--bands expects two numbers, got '" + text + "'");
  }
  bands.validate();
  return bands;
}

qscore::UnivScope parse_scope(const std::string& text) {
  if (text == "both") return qscore::UnivScope::CountryThenWorld;
  if (text == "country") return qscore::UnivScope::CountryOnly;
  if (text == "world") return qscore::UnivScope::WorldOnly;
  throw qscore::Error(qscore::Errc::InvalidConfig,
                      "--univ-scope must be both, country or world, got '" +
                          text + "'");
}

ordered_json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw qscore::Error(qscore::Errc::IoError,
                        "cannot open config file " + path);
  }
  ordered_json cfg;
  try {
    in >> cfg;
  } catch (const std::exception& e) {
    throw qscore::Error(qscore::Errc::InvalidConfig,
                        path + ": " + e.what());
  }
  static const std::set<std::string> kKnown = {
      "students", "univ_ranks", "comp_ranks", "store",      "out",
      "years",    "bands",      "pass_only",  "rank_fallback",
      "univ_scope", "force_line"};
  for (const auto& [key, value] : cfg.items()) {
    if (!kKnown.count(key)) {
      throw qscore::Error(qscore::Errc::InvalidConfig,
                          path + ": unknown config key '" + key + "'");
    }
  }
  return cfg;
}

// Precedence: command-line flag > config file > environment > default.
Resolved resolve(const CLI::App* sub, const Options& opt) {
  ordered_json cfg = ordered_json::object();
  if (!opt.config_path.empty()) cfg = load_config_file(opt.config_path);

  auto pick_string = [&](const char* flag, const std::string& flag_value,
                         const char* key) -> std::string {
    if (flag_given(sub, flag)) return flag_value;
    if (cfg.contains(key)) return cfg[key].get<std::string>();
    return flag_value;
  };

  Resolved r;
  r.students = pick_string("--students", opt.students, "students");
  r.univ_ranks = pick_string("--univ-ranks", opt.univ_ranks, "univ_ranks");
  r.comp_ranks = pick_string("--comp-ranks", opt.comp_ranks, "comp_ranks");
  r.out = pick_string("--out", opt.out, "out");

  std::string store = pick_string("--store", opt.store, "store");
  if (store.empty()) {
    if (const char* env = std::getenv("QSCORE_STORE")) store = env;
  }
  r.store = store;

  if (flag_given(sub, "--years")) {
    r.years = parse_years(opt.years);
  } else if (cfg.contains("years")) {
    r.years = cfg["years"].get<std::vector<int>>();
  }

  if (flag_given(sub, "--bands")) {
    r.bands = parse_bands(opt.bands);
  } else if (cfg.contains("bands")) {
    r.bands.lower_threshold = cfg["bands"].at("lower").get<double>();
    r.bands.upper_threshold = cfg["bands"].at("upper").get<double>();
    r.bands.validate();
  }

  if (flag_given(sub, "--pass-only")) {
    r.pass_only = true;
  } else if (cfg.contains("pass_only")) {
    r.pass_only = cfg["pass_only"].get<bool>();
  }

  if (flag_given(sub, "--no-rank-fallback")) {
    r.rank_fallback = false;
  } else if (cfg.contains("rank_fallback")) {
    r.rank_fallback = cfg["rank_fallback"].get<bool>();
  }

  if (flag_given(sub, "--force-line")) {
    r.force_line = true;
  } else if (cfg.contains("force_line")) {
    r.force_line = cfg["force_line"].get<bool>();
  }

  if (flag_given(sub, "--univ-scope")) {
    r.univ_scope = parse_scope(opt.univ_scope);
  } else if (cfg.contains("univ_scope")) {
    r.univ_scope = parse_scope(cfg["univ_scope"].get<std::string>());
  }
  return r;
}

const char* scope_name(qscore::UnivScope s) {
  switch (s) {
    case qscore::UnivScope::CountryThenWorld: return "both";
    case qscore::UnivScope::CountryOnly: return "country";
    case qscore::UnivScope::WorldOnly: return "world";
  }
  return "?";
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void require_path(const fs::path& p, const char* flag) {
  if (p.empty()) {
    throw qscore::Error(qscore::Errc::InvalidConfig,
                        std::string(flag) + " is required");
  }
}

struct Inputs {
  qscore::LoadResult<qscore::StudentRecord> students;
  qscore::LoadResult<qscore::UniversityRankEntry> univ_ranks;
  qscore::LoadResult<qscore::CompanyRankEntry> comp_ranks;

  std::size_t error_count() const {
    return students.diagnostics.size() + univ_ranks.diagnostics.size() +
           comp_ranks.diagnostics.size();
  }
};

Inputs load_inputs(const Resolved& r) {
  require_path(r.students, "--students");
  require_path(r.univ_ranks, "--univ-ranks");
  require_path(r.comp_ranks, "--comp-ranks");
  Inputs in;
  in.students = qscore::load_students(r.students);
  in.univ_ranks = qscore::load_university_ranks(r.univ_ranks);
  in.comp_ranks = qscore::load_company_ranks(r.comp_ranks);
  return in;
}

std::size_t print_diagnostics(const Inputs& in) {
  for (const auto& d : in.students.diagnostics) std::cout << d.str() << "\n";
  for (const auto& d : in.univ_ranks.diagnostics) std::cout << d.str() << "\n";
  for (const auto& d : in.comp_ranks.diagnostics) std::cout << d.str() << "\n";
  return in.error_count();
}

int cmd_validate(const Resolved& r) {
  const Inputs in = load_inputs(r);
  const std::size_t errors = print_diagnostics(in);
  std::cout << r.students.string() << ": " << in.students.rows.size()
            << " rows\n";
  std::cout << r.univ_ranks.string() << ": " << in.univ_ranks.rows.size()
            << " rows\n";
  std::cout << r.comp_ranks.string() << ": " << in.comp_ranks.rows.size()
            << " rows\n";
  std::cout << errors << " errors\n";
  return errors == 0 ? kExitOk : kExitDataError;
}

std::vector<int> cohort_years_of(const std::vector<qscore::StudentRecord>& rows) {
  std::set<int> years;
  for (const auto& rec : rows) years.insert(rec.eyear);
  return {years.begin(), years.end()};
}

std::string join_years(const std::vector<int>& years) {
  std::string out;
  for (int y : years) {
    if (!out.empty()) out += ", ";
    out += std::to_string(y);
  }
  return out.empty() ? "none" : out;
}

int cmd_score(const Resolved& r) {
  require_path(r.store, "--store (or QSCORE_STORE)");
  const Inputs in = load_inputs(r);
  if (in.error_count() > 0) {
    const std::size_t errors = print_diagnostics(in);
    std::cout << errors << " errors; nothing scored\n";
    return kExitDataError;
  }

  std::vector<qscore::StudentRecord> students;
  for (const auto& rec : in.students.rows) {
    if (r.pass_only && rec.final_result != "Pass") continue;
    students.push_back(rec);
  }

  const std::vector<int> available = cohort_years_of(students);
  std::vector<int> years = r.years.empty() ? available : r.years;
  if (years.empty()) {
    throw qscore::Error(qscore::Errc::EmptyCohort,
                        "student file contains no scorable rows");
  }
  for (int y : years) {
    if (std::find(available.begin(), available.end(), y) == available.end()) {
      throw qscore::Error(qscore::Errc::MissingYear,
                          "cohort year " + std::to_string(y) +
                              " not present in student data; available: " +
                              join_years(available));
    }
  }

  qscore::ContextConfig ctx_cfg;
  ctx_cfg.rank_year_fallback = r.rank_fallback;
  ctx_cfg.univ_scope = r.univ_scope;

  // Score everything first; store files are written only when every
  // requested year succeeded.
  std::vector<std::pair<int, std::vector<qscore::QualityScore>>> scored;
  for (int year : years) {
    const qscore::RankingContext ctx = qscore::build_context(
        students, in.univ_ranks.rows, in.comp_ranks.rows, year, ctx_cfg);
    std::vector<qscore::QualityScore> scores;
    for (const auto& rec : students) {
      if (rec.eyear != year) continue;
      scores.push_back(qscore::score_student(rec, ctx));
    }
    scored.emplace_back(year, std::move(scores));
  }

  qscore::Provenance prov;
  prov.students_digest = qscore::file_digest(r.students);
  prov.univ_ranks_digest = qscore::file_digest(r.univ_ranks);
  prov.comp_ranks_digest = qscore::file_digest(r.comp_ranks);
  prov.config = ordered_json{{"years", years},
                             {"pass_only", r.pass_only},
                             {"rank_fallback", r.rank_fallback},
                             {"univ_scope", scope_name(r.univ_scope)},
                             {"students", r.students.string()},
                             {"univ_ranks", r.univ_ranks.string()},
                             {"comp_ranks", r.comp_ranks.string()}};
  prov.timestamp = utc_timestamp();

  for (const auto& [year, scores] : scored) {
    qscore::save_scores(r.store, year, scores, prov);
    std::size_t sphe = 0, sofj = 0, swnda = 0;
    double total = 0.0;
    for (const auto& s : scores) {
      total += s.qs_total;
      switch (s.category) {
        case qscore::AcademicCategory::SPHE: ++sphe; break;
        case qscore::AcademicCategory::SOFJ: ++sofj; break;
        case qscore::AcademicCategory::SWNDA: ++swnda; break;
      }
    }
    const double mean =
        scores.empty() ? 0.0 : total / static_cast<double>(scores.size());
    std::cout << "year " << year << ": " << scores.size() << " students (SPHE "
              << sphe << ", SOFJ " << sofj << ", SWNDA " << swnda
              << "), mean QS " << qscore::format_fixed(mean, 2) << "\n";
  }
  return kExitOk;
}

ordered_json summary_to_json(const qscore::CohortSummary& summary) {
  ordered_json j;
  j["cohort_year"] = summary.cohort_year;
  j["total_students"] = summary.total_students;
  j["overall_mean_qs"] = summary.overall_mean_qs;
  ordered_json cats = ordered_json::array();
  for (qscore::QsCategory cat : qscore::kQsCategories) {
    const auto& stats = summary.stats(cat);
    ordered_json entry;
    entry["category"] = qscore::to_string(cat);
    entry["count"] = stats.count;
    entry["share"] = stats.share;
    if (stats.mean_qs) {
      entry["mean_qs"] = *stats.mean_qs;
    } else {
      entry["mean_qs"] = nullptr;
    }
    cats.push_back(entry);
  }
  j["categories"] = cats;
  return j;
}

int cmd_report(const Resolved& r) {
  require_path(r.store, "--store (or QSCORE_STORE)");
  require_path(r.out, "--out");

  const std::vector<int> available = qscore::store_years(r.store);
  const std::vector<int> years = r.years.empty() ? available : r.years;
  if (years.empty()) {
    throw qscore::Error(qscore::Errc::MissingYear,
                        "store " + r.store.string() + " contains no years");
  }
  for (int y : years) {
    if (std::find(available.begin(), available.end(), y) == available.end()) {
      throw qscore::Error(qscore::Errc::MissingYear,
                          "year " + std::to_string(y) +
                              " not in store; available: " +
                              join_years(available));
    }
  }
  r.bands.validate();

  std::vector<qscore::CohortSummary> summaries;
  for (int year : years) {
    const std::vector<qscore::QualityScore> scores =
        qscore::load_scores(r.store, year);
    if (scores.empty()) {
      throw qscore::Error(qscore::Errc::EmptyCohort,
                          "store has no records for year " +
                              std::to_string(year));
    }
    summaries.push_back(qscore::summarize_cohort(scores, r.bands));
  }

  std::size_t artifacts = 0;
  for (const auto& summary : summaries) {
    qscore::ChartSpec spec;
    spec.kind = qscore::ChartKind::Pie;
    spec.title = "QS Category Shares (" +
                 std::to_string(summary.cohort_year) + ")";
    spec.basename = "pie_" + std::to_string(summary.cohort_year);
    const qscore::ChartArtifact art = qscore::render_pie(summary, spec);
    qscore::write_chart(art, r.out, spec.basename);
    artifacts += 2;
  }

  if (summaries.size() >= 2 || r.force_line) {
    const qscore::TrendSeries series = qscore::trend(summaries);
    qscore::ChartSpec spec;
    spec.kind = qscore::ChartKind::Line;
    spec.title = "QS Trend by Category";
    spec.width = 800;
    spec.basename = "trend";
    const qscore::ChartArtifact art = qscore::render_line(series, spec);
    qscore::write_chart(art, r.out, spec.basename);
    artifacts += 2;
  }

  ordered_json combined;
  combined["bands"] = ordered_json{{"lower", r.bands.lower_threshold},
                                   {"upper", r.bands.upper_threshold}};
  ordered_json years_json = ordered_json::array();
  for (const auto& s : summaries) years_json.push_back(s.cohort_year);
  combined["years"] = years_json;
  ordered_json cohorts = ordered_json::array();
  for (const auto& s : summaries) cohorts.push_back(summary_to_json(s));
  combined["cohorts"] = cohorts;
  std::error_code ec;
  fs::create_directories(r.out, ec);
  qscore::atomic_write(r.out / "summary.json", combined.dump(2) + "\n");
  ++artifacts;

  std::cout << "wrote " << artifacts << " artifacts to " << r.out.string()
            << "\n";
  return kExitOk;
}

void add_input_options(CLI::App* sub, Options& opt) {
  sub->add_option("--students", opt.students, "student data CSV");
  sub->add_option("--univ-ranks", opt.univ_ranks, "university rank CSV");
  sub->add_option("--comp-ranks", opt.comp_ranks, "company rank CSV");
  sub->add_option("--config", opt.config_path,
                  "JSON config file; flags override its values");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Outcome quality scoring and cohort analytics"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* validate =
      app.add_subcommand("validate", "check the input CSVs, report every "
                                     "diagnostic, exit 0 only when clean");
  add_input_options(validate, opt);

  CLI::App* score = app.add_subcommand(
      "score", "compute per-student quality scores into the score store");
  add_input_options(score, opt);
  score->add_option("--store", opt.store,
                    "score store directory (default: $QSCORE_STORE)");
  score->add_option("--years", opt.years,
                    "comma-separated cohort years (default: all present)");
  score->add_flag("--pass-only", opt.pass_only,
                  "score only students with final_result Pass");
  score->add_flag("--no-rank-fallback", opt.no_rank_fallback,
                  "require exact rank-year matches, no earlier-year fallback");
  score->add_option("--univ-scope", opt.univ_scope,
                    "university table resolution: both, country or world")
      ->check(CLI::IsMember({"both", "country", "world"}));

  CLI::App* report = app.add_subcommand(
      "report", "render pie and trend charts plus JSON summaries");
  report->add_option("--store", opt.store,
                     "score store directory (default: $QSCORE_STORE)");
  report->add_option("--out", opt.out, "output directory for artifacts");
  report->add_option("--years", opt.years,
                     "comma-separated cohort years (default: all in store)");
  report->add_option("--bands", opt.bands,
                     "category thresholds as lower,upper (default 4,7)");
  report->add_flag("--force-line", opt.force_line,
                   "emit the trend chart even for a single year");
  report->add_option("--config", opt.config_path,
                     "JSON config file; flags override its values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsageError;
  }

  try {
    if (validate->parsed()) return cmd_validate(resolve(validate, opt));
    if (score->parsed()) return cmd_score(resolve(score, opt));
    if (report->parsed()) return cmd_report(resolve(report, opt));
  } catch (const qscore::Error& e) {
    std::cerr << "error (" << qscore::errc_name(e.code()) << "): " << e.what()
              << "\n";
    return (e.code() == qscore::Errc::IoError ||
            e.code() == qscore::Errc::InvalidConfig)
               ? kExitUsageError
               : kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsageError;
  }
  return kExitUsageError;
}
