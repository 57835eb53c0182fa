// rankdyn: score-driven and rank-driven ranking dynamics toolkit.
//
// Subcommands: score, invert, rank-driven, compare, analyze-pca,
// analyze-regressiveness, event-set. Every subcommand takes --format csv|json
// and --out (default stdout); outputs are byte-identical across repeated runs
// on identical inputs. Exit codes: 0 success, 1 validation error,
// 2 computation error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "rankdyn/analysis.hpp"
#include "rankdyn/arwu.hpp"
#include "rankdyn/errors.hpp"
#include "rankdyn/io.hpp"
#include "rankdyn/rank.hpp"
#include "rankdyn/scoring.hpp"

namespace {

using namespace rankdyn;

void print_error(const std::string& context, const std::string& message) {
  const bool color =
      isatty(fileno(stderr)) != 0 && std::getenv("RANKDYN_NO_COLOR") == nullptr;
  std::string line;
  if (color) line += "\033[31m";
  line += "rankdyn";
  if (!context.empty()) line += ' ' + context;
  line += ": error:";
  if (color) line += "\033[0m";
  line += ' ' + message + '\n';
  std::fputs(line.c_str(), stderr);
}

// ---------------------------------------------------------------------------
// score
// ---------------------------------------------------------------------------

struct ScoreOptions {
  std::string data;
  std::string mode;
  std::string gains_path;
  std::string published_path;
  double k = 0.0;
  bool k_set = false;
  bool bands = false;
  int band_width = 50;
  std::string out;
  std::string format = "csv";
};

void merge_published(std::vector<InstitutionRecord>& dataset,
                     const std::string& path) {
  std::map<std::string, size_t> index;
  for (size_t n = 0; n < dataset.size(); ++n) index[dataset[n].id] = n;
  for (const auto& row : io::read_published(path)) {
    const auto it = index.find(row.id);
    if (it == index.end())
      throw InputError(path + ": published id '" + row.id +
                       "' is not in the dataset");
    dataset[it->second].published = row.scores;
  }
}

void run_score(const ScoreOptions& opt) {
  auto dataset = io::ingest_dataset(opt.data);
  if (!opt.published_path.empty())
    merge_published(dataset, opt.published_path);

  std::optional<GainSet> gains;
  if (!opt.gains_path.empty()) gains = io::load_gain_set(opt.gains_path);

  ScoreTable table;
  if (opt.mode == "fixed") {
    table = score_fixed_gain(dataset, gains ? *gains : default_fixed_gains());
  } else {
    std::optional<double> k;
    if (opt.k_set)
      k = opt.k;
    else if (gains && gains->k_param)
      k = gains->k_param;
    else {
      const bool needs_k = std::any_of(
          dataset.begin(), dataset.end(),
          [](const InstitutionRecord& r) { return !r.fte.has_value(); });
      if (needs_k && !opt.published_path.empty())
        k = estimate_k_for_dataset(dataset);
    }
    table = score_annual(dataset, k);
  }

  if (opt.bands)
    for (auto& row : table.rows) row.band = band_label(row.rank, opt.band_width);

  io::emit(opt.out, opt.format == "json"
                        ? io::score_table_json(table, opt.bands)
                        : io::score_table_csv(table, opt.bands));
}

// ---------------------------------------------------------------------------
// invert
// ---------------------------------------------------------------------------

struct InvertOptions {
  std::string published_path;
  std::string gains_path;
  std::string out;
  std::string format = "csv";
};

void run_invert(const InvertOptions& opt) {
  const auto published = io::read_published(opt.published_path);
  std::optional<GainSet> gains;
  if (!opt.gains_path.empty()) gains = io::load_gain_set(opt.gains_path);

  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  constexpr double kPrecision = 0.05;  // scores are published at one decimal

  std::vector<io::InversionRow> rows;
  rows.reserve(published.size());
  for (const auto& row : published) {
    io::InversionRow inverted;
    inverted.id = row.id;
    inverted.total = row.scores.total;
    for (int i = 0; i < kAllIndicators; ++i) {
      const auto& score = row.scores.score[static_cast<size_t>(i)];
      if (!score) {
        inverted.raw[static_cast<size_t>(i)] = kNan;
        inverted.lo[static_cast<size_t>(i)] = kNan;
        inverted.hi[static_cast<size_t>(i)] = kNan;
        continue;
      }
      if (gains) {
        const double a = gains->gains[static_cast<size_t>(i)];
        inverted.raw[static_cast<size_t>(i)] =
            invert_published_with_gain(*score, a);
        inverted.lo[static_cast<size_t>(i)] =
            invert_published_with_gain(std::max(0.0, *score - kPrecision), a);
        inverted.hi[static_cast<size_t>(i)] =
            invert_published_with_gain(*score + kPrecision, a);
      } else {
        inverted.raw[static_cast<size_t>(i)] = invert_published_scaled(*score);
        inverted.lo[static_cast<size_t>(i)] =
            invert_published_scaled(std::max(0.0, *score - kPrecision));
        inverted.hi[static_cast<size_t>(i)] =
            invert_published_scaled(std::min(100.0, *score + kPrecision));
      }
    }
    rows.push_back(std::move(inverted));
  }

  const std::string label = gains ? "raw-with-gain" : "scaled-10000";
  io::emit(opt.out, opt.format == "json" ? io::inversion_json(rows, label)
                                         : io::inversion_csv(rows));
}

// ---------------------------------------------------------------------------
// rank-driven
// ---------------------------------------------------------------------------

struct RankDrivenOptions {
  std::string data;
  std::string method = "kam";
  int population = 500;
  std::string pcp = "none";
  std::string gains_path;
  std::vector<double> weights;
  std::string out;
  std::string format = "csv";
};

void run_rank_driven(const RankDrivenOptions& opt) {
  const auto dataset = io::ingest_dataset(opt.data);
  std::vector<std::string> ids;
  ids.reserve(dataset.size());
  for (const auto& record : dataset) ids.push_back(record.id);

  auto kam_column = [&](const std::vector<double>& values) {
    return to_column(opt.method == "kam-remodeled"
                         ? kam_remodeled(values, ids)
                         : kam_scores(values, opt.population, ids));
  };

  std::vector<ScoreColumn> columns;
  std::vector<std::string> names;
  for (int i = 0; i < kRawIndicators; ++i) {
    std::vector<double> values;
    values.reserve(dataset.size());
    for (const auto& record : dataset) values.push_back(record.effective_raw(i));
    columns.push_back(kam_column(values));
    names.push_back(kIndicatorNames[static_cast<size_t>(i)]);
  }

  if (opt.pcp != "none") {
    const GainSet gains = opt.gains_path.empty()
                              ? default_fixed_gains()
                              : io::load_gain_set(opt.gains_path);
    std::vector<double> pcp_scores;
    pcp_scores.reserve(dataset.size());
    for (const auto& record : dataset)
      pcp_scores.push_back(gains.gains[kPcp] *
                           std::sqrt(compute_pcp_raw(record, gains)));
    if (opt.pcp == "kam") {
      columns.push_back(kam_column(pcp_scores));
    } else {  // passthrough: fixed-mode PCP scores enter the aggregate as-is
      ScoreColumn column;
      for (size_t n = 0; n < dataset.size(); ++n)
        column.entries.emplace_back(ids[n], pcp_scores[n]);
      columns.push_back(std::move(column));
    }
    names.push_back(kIndicatorNames[kPcp]);
  }

  std::vector<double> weights = opt.weights;
  if (weights.empty()) {
    weights = {0.1, 0.2, 0.2, 0.2, 0.2};
    if (opt.pcp != "none") weights.push_back(0.1);
  }

  const auto rows = aggregate_rank_driven(columns, weights);
  io::emit(opt.out, opt.format == "json"
                        ? io::ranked_json(rows, columns, names)
                        : io::ranked_csv(rows, columns, names));
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

struct CompareOptions {
  std::string a;
  std::string b;
  std::string scope;
  std::string out;
  std::string format = "csv";
};

std::optional<std::pair<int, int>> parse_scope(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const size_t dash = text.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == text.size())
    throw InputError("scope must be LO-HI, got '" + text + "'");
  try {
    const int lo = std::stoi(text.substr(0, dash));
    const int hi = std::stoi(text.substr(dash + 1));
    return std::make_pair(lo, hi);
  } catch (const std::exception&) {
    throw InputError("scope must be LO-HI with integer bounds, got '" + text +
                     "'");
  }
}

void run_compare(const CompareOptions& opt) {
  const auto a = io::read_rank_entries(opt.a);
  const auto b = io::read_rank_entries(opt.b);
  const auto comparison = compare_rankings(a, b, parse_scope(opt.scope));
  io::emit(opt.out, opt.format == "json" ? io::comparison_json(comparison)
                                         : io::comparison_csv(comparison));
}

// ---------------------------------------------------------------------------
// analyze-pca
// ---------------------------------------------------------------------------

struct PcaOptions {
  std::string data;
  std::string matrix;
  int n_samples = 0;
  std::string out;
  std::string format = "csv";
};

void run_analyze_pca(const PcaOptions& opt) {
  CorrelationMatrix matrix;
  if (!opt.data.empty()) {
    const auto dataset = io::ingest_dataset(opt.data);
    std::vector<std::vector<double>> columns(kRawIndicators);
    std::vector<std::string> names;
    for (int i = 0; i < kRawIndicators; ++i) {
      names.push_back(kIndicatorNames[static_cast<size_t>(i)]);
      for (const auto& record : dataset)
        columns[static_cast<size_t>(i)].push_back(record.effective_raw(i));
    }
    matrix = correlation_matrix(columns, names);
  } else {
    if (opt.n_samples <= 0)
      throw InputError("--matrix requires --n-samples (the sample size "
                       "behind the correlations)");
    matrix = io::read_correlation_csv(opt.matrix, opt.n_samples);
    if (opt.n_samples <= matrix.dim)
      throw InputError("--n-samples must exceed the matrix dimension " +
                       std::to_string(matrix.dim));
  }
  const PcaReport report = analyze_correlation(matrix);
  io::emit(opt.out, opt.format == "json" ? io::pca_json(report)
                                         : io::pca_csv(report));
}

// ---------------------------------------------------------------------------
// analyze-regressiveness
// ---------------------------------------------------------------------------

struct RegressivenessOptions {
  std::string data;
  std::string indicator;
  std::string series;
  bool drop_top = false;
  bool rescale = false;
  std::string out;
  std::string format = "csv";
};

std::vector<double> read_series_column(const std::string& path) {
  const io::CsvTable table = io::read_csv(path);
  if (table.header.size() != 1)
    throw InputError(path + ": expected a single-column series CSV");
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row.size() != 1)
      throw InputError(path + ": row " + std::to_string(r + 2) +
                       " has more than one field");
    double value = 0.0;
    const char* begin = row[0].data();
    const char* end = begin + row[0].size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
      throw InputError(path + ": row " + std::to_string(r + 2) +
                       ": not a number: '" + row[0] + "'");
    values.push_back(value);
  }
  return values;
}

void run_analyze_regressiveness(const RegressivenessOptions& opt) {
  std::vector<double> values;
  if (!opt.data.empty()) {
    if (opt.indicator.empty())
      throw InputError("--data requires --indicator (alumni|award|hici|ns|pub)");
    int indicator = -1;
    for (int i = 0; i < kRawIndicators; ++i)
      if (opt.indicator == kIndicatorNames[static_cast<size_t>(i)])
        indicator = i;
    if (indicator < 0)
      throw InputError("unknown indicator '" + opt.indicator +
                       "' (expected alumni|award|hici|ns|pub)");
    for (const auto& record : io::ingest_dataset(opt.data))
      values.push_back(record.effective_raw(indicator));
  } else {
    values = read_series_column(opt.series);
  }
  const auto report = regressiveness_report(values, opt.drop_top, opt.rescale);
  io::emit(opt.out, opt.format == "json" ? io::regressiveness_json(report)
                                         : io::regressiveness_csv(report));
}

// ---------------------------------------------------------------------------
// event-set
// ---------------------------------------------------------------------------

struct EventSetOptions {
  std::string config;
  std::string marks;
  std::string out;
  std::string format = "csv";
};

void run_event_set(const EventSetOptions& opt) {
  const io::NamedEventSet named = io::load_event_set(opt.config);
  const io::MarksTable marks = io::read_marks(opt.marks);
  if (marks.element_names != named.names) {
    std::string expected;
    for (const auto& name : named.names) expected += ',' + name;
    throw InputError(opt.marks + ": mark columns must match the event set "
                     "elements in order (expected 'id" + expected + "')");
  }

  std::vector<io::EventResultRow> rows;
  rows.reserve(marks.ids.size());
  for (size_t n = 0; n < marks.ids.size(); ++n) {
    io::EventResultRow row;
    row.id = marks.ids[n];
    row.element_scores = element_scores(named.set, marks.marks[n]);
    row.total = 0.0;
    for (double s : row.element_scores) row.total += s;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(),
            [](const io::EventResultRow& x, const io::EventResultRow& y) {
              if (x.total != y.total) return x.total > y.total;
              return x.id < y.id;
            });
  for (size_t n = 0; n < rows.size(); ++n)
    rows[n].rank = static_cast<int>(n) + 1;

  io::emit(opt.out, opt.format == "json"
                        ? io::event_results_json(rows, named.names)
                        : io::event_results_csv(rows, named.names));
}

void add_output_flags(CLI::App* cmd, std::string& out, std::string& format) {
  cmd->add_option("--out", out, "Output path ('-' or empty for stdout)");
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Score-driven and rank-driven ranking dynamics toolkit"};
  app.require_subcommand(1);

  ScoreOptions score_opt;
  auto* score_cmd = app.add_subcommand(
      "score", "Score an institution dataset (annual or fixed-gain mode)");
  score_cmd->add_option("--data", score_opt.data, "Institution CSV")
      ->required();
  score_cmd->add_option("--mode", score_opt.mode, "Scoring mode")
      ->check(CLI::IsMember({"annual", "fixed"}))
      ->required();
  score_cmd->add_option("--gains", score_opt.gains_path, "GainSet JSON");
  score_cmd->add_option("--published", score_opt.published_path,
                        "Published-score CSV (enables K estimation)");
  score_cmd
      ->add_option("--k", score_opt.k,
                   "K parameter for records without FTE (annual mode)")
      ->check(CLI::PositiveNumber);
  score_cmd->add_flag("--bands", score_opt.bands,
                      "Attach group-rank band labels for ranks 101-500");
  score_cmd
      ->add_option("--band-width", score_opt.band_width, "Band width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_output_flags(score_cmd, score_opt.out, score_opt.format);

  InvertOptions invert_opt;
  auto* invert_cmd = app.add_subcommand(
      "invert", "Invert published scores back to raw values with error bars");
  invert_cmd
      ->add_option("--published", invert_opt.published_path,
                   "Published-score CSV")
      ->required();
  invert_cmd->add_option("--gains", invert_opt.gains_path,
                         "GainSet JSON (invert to raw units instead of the "
                         "0-10000 scale)");
  add_output_flags(invert_cmd, invert_opt.out, invert_opt.format);

  RankDrivenOptions rank_opt;
  auto* rank_cmd = app.add_subcommand(
      "rank-driven", "Aggregate rank-driven (KAM) indicator tables");
  rank_cmd->add_option("--data", rank_opt.data, "Institution CSV")->required();
  rank_cmd->add_option("--method", rank_opt.method, "Normalization method")
      ->check(CLI::IsMember({"kam", "kam-remodeled"}))
      ->capture_default_str();
  rank_cmd
      ->add_option("--population", rank_opt.population,
                   "KAM population (>= dataset size)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rank_cmd
      ->add_option("--pcp", rank_opt.pcp,
                   "How the composed PCP indicator enters the aggregate")
      ->check(CLI::IsMember({"none", "kam", "passthrough"}))
      ->capture_default_str();
  rank_cmd->add_option("--gains", rank_opt.gains_path,
                       "GainSet JSON for PCP scores (default: reference gains)");
  rank_cmd
      ->add_option("--weights", rank_opt.weights,
                   "Aggregation weights (default 0.1,0.2,0.2,0.2,0.2[,0.1])")
      ->delimiter(',');
  add_output_flags(rank_cmd, rank_opt.out, rank_opt.format);

  CompareOptions compare_opt;
  auto* compare_cmd =
      app.add_subcommand("compare", "Compare two rankings by id");
  compare_cmd->add_option("--a", compare_opt.a, "Ranking CSV (id,rank)")
      ->required();
  compare_cmd->add_option("--b", compare_opt.b, "Ranking CSV (id,rank)")
      ->required();
  compare_cmd->add_option("--scope", compare_opt.scope,
                          "Rank range on a for the statistics, e.g. 151-500");
  add_output_flags(compare_cmd, compare_opt.out, compare_opt.format);

  PcaOptions pca_opt;
  auto* pca_cmd = app.add_subcommand(
      "analyze-pca", "One-component PCA with KMO and Bartlett diagnostics");
  auto* pca_data =
      pca_cmd->add_option("--data", pca_opt.data, "Institution CSV");
  auto* pca_matrix = pca_cmd->add_option("--matrix", pca_opt.matrix,
                                         "Correlation matrix CSV");
  pca_matrix->excludes(pca_data);
  pca_data->excludes(pca_matrix);
  pca_cmd->add_option("--n-samples", pca_opt.n_samples,
                      "Sample size behind a correlation matrix CSV");
  add_output_flags(pca_cmd, pca_opt.out, pca_opt.format);

  RegressivenessOptions reg_opt;
  auto* reg_cmd = app.add_subcommand(
      "analyze-regressiveness",
      "Adjacent-gap difference series and regressiveness index");
  auto* reg_data = reg_cmd->add_option("--data", reg_opt.data,
                                       "Institution CSV (with --indicator)");
  reg_cmd->add_option("--indicator", reg_opt.indicator,
                      "Indicator column to analyze");
  auto* reg_series = reg_cmd->add_option("--series", reg_opt.series,
                                         "Single-column value CSV");
  reg_series->excludes(reg_data);
  reg_data->excludes(reg_series);
  reg_cmd->add_flag("--drop-top", reg_opt.drop_top,
                    "Drop the top-ranked value before differencing");
  reg_cmd->add_flag("--rescale", reg_opt.rescale,
                    "Rescale the emitted series to a maximum of 1");
  add_output_flags(reg_cmd, reg_opt.out, reg_opt.format);

  EventSetOptions event_opt;
  auto* event_cmd = app.add_subcommand(
      "event-set", "Score competitor marks through an event-set config");
  event_cmd->add_option("--config", event_opt.config, "EventSet JSON")
      ->required();
  event_cmd->add_option("--marks", event_opt.marks, "Marks CSV")->required();
  add_output_flags(event_cmd, event_opt.out, event_opt.format);

  std::string context;
  try {
    app.parse(argc, argv);
    if (score_cmd->parsed()) {
      context = "score";
      score_opt.k_set = score_cmd->count("--k") > 0;
      run_score(score_opt);
    } else if (invert_cmd->parsed()) {
      context = "invert";
      run_invert(invert_opt);
    } else if (rank_cmd->parsed()) {
      context = "rank-driven";
      run_rank_driven(rank_opt);
    } else if (compare_cmd->parsed()) {
      context = "compare";
      run_compare(compare_opt);
    } else if (pca_cmd->parsed()) {
      context = "analyze-pca";
      if (pca_opt.data.empty() && pca_opt.matrix.empty())
        throw InputError("one of --data or --matrix is required");
      run_analyze_pca(pca_opt);
    } else if (reg_cmd->parsed()) {
      context = "analyze-regressiveness";
      if (reg_opt.data.empty() && reg_opt.series.empty())
        throw InputError("one of --data or --series is required");
      if (!reg_opt.series.empty() && !reg_opt.indicator.empty())
        throw InputError("--indicator applies only with --data");
      run_analyze_regressiveness(reg_opt);
    } else if (event_cmd->parsed()) {
      context = "event-set";
      run_event_set(event_opt);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const InputError& e) {
    print_error(context, e.what());
    return 1;
  } catch (const ComputationError& e) {
    print_error(context, e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error(context, e.what());
    return 2;
  }
  return 0;
}
