#pragma once

#include <array>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "rankdyn/analysis.hpp"
#include "rankdyn/arwu.hpp"
#include "rankdyn/rank.hpp"
#include "rankdyn/scoring.hpp"

namespace rankdyn::io {

// ---------------------------------------------------------------------------
// CSV primitives
// ---------------------------------------------------------------------------

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC-4180-style reader: quoted fields, doubled-quote escapes, CRLF
/// tolerated. `origin` names the source in error messages.
CsvTable parse_csv(std::istream& in, const std::string& origin);
CsvTable read_csv(const std::string& path);

/// Deterministic CSV float format: 6 significant digits, locale-free,
/// negative zero normalized to "0".
std::string format_double(double value);

/// Write content to a temporary file in the target directory, then rename it
/// over the destination, so readers never observe a partial file.
void write_atomic(const std::string& path, const std::string& content);

/// write_atomic to a path, or stdout when the path is empty or "-".
void emit(const std::string& out_path, const std::string& content);

// ---------------------------------------------------------------------------
// Dataset and configuration ingestion
// ---------------------------------------------------------------------------

/// Institution CSV with header `id,name,class,alumni,award,hici,ns,pub,fte`,
/// class in {standard,socsci}, empty fte meaning unknown. Every violation is
/// reported with its row and column; duplicate ids are rejected.
std::vector<InstitutionRecord> parse_dataset(std::istream& in,
                                             const std::string& origin);
std::vector<InstitutionRecord> ingest_dataset(const std::string& path);

struct PublishedRow {
  std::string id;
  PublishedScores scores;
};

/// Published-score CSV with header `id,alumni,award,hici,ns,pub,pcp,total`;
/// empty cells mean "not published".
std::vector<PublishedRow> read_published(const std::string& path);

/// GainSet JSON: {"provenance":"fixed","gains":[a1..a6],"dummy_fte":890}
/// with optional "k_param". Provenance accepts "fixed" and "annual".
GainSet load_gain_set(const std::string& path);

struct NamedEventSet {
  EventSet set;
  std::vector<std::string> names;  // per-element labels for I/O
};

/// EventSet JSON: {"rounding":"nearest"|"none","elements":[{"direction":
/// "asc"|"desc","offset":b,"power":c,"gain":a,"name":...}, ...]}.
NamedEventSet load_event_set(const std::string& path);

/// Square correlation CSV whose header row carries the indicator names.
CorrelationMatrix read_correlation_csv(const std::string& path, int n_samples);

/// Ranking CSV for comparisons: needs `id` and `rank` columns (a score-table
/// CSV works as-is).
std::vector<RankEntry> read_rank_entries(const std::string& path);

struct MarksTable {
  std::vector<std::string> ids;
  std::vector<std::string> element_names;  // from the header, after `id`
  std::vector<std::vector<double>> marks;  // one row per competitor
};

/// Competitor marks CSV with header `id,<element>,<element>,...`.
MarksTable read_marks(const std::string& path);

// ---------------------------------------------------------------------------
// Deterministic emission (CSV at 6 significant digits, JSON full precision)
// ---------------------------------------------------------------------------

std::string score_table_csv(const ScoreTable& table, bool with_band);
std::string score_table_json(const ScoreTable& table, bool with_band);

struct InversionRow {
  std::string id;
  std::array<double, kAllIndicators> raw{};
  std::array<double, kAllIndicators> lo{};  // error-bar bounds from +-0.05
  std::array<double, kAllIndicators> hi{};
  std::optional<double> total;  // passed through, totals are not square-law
};

std::string inversion_csv(const std::vector<InversionRow>& rows);
std::string inversion_json(const std::vector<InversionRow>& rows,
                           const std::string& scale_label);

std::string ranked_csv(const std::vector<RankedRow>& rows,
                       const std::vector<ScoreColumn>& columns,
                       const std::vector<std::string>& column_names);
std::string ranked_json(const std::vector<RankedRow>& rows,
                        const std::vector<ScoreColumn>& columns,
                        const std::vector<std::string>& column_names);

std::string comparison_csv(const RankComparison& comparison);
std::string comparison_json(const RankComparison& comparison);

std::string pca_csv(const PcaReport& report);  // component,eigenvalue,pct,cum_pct
std::string pca_json(const PcaReport& report);

std::string regressiveness_csv(const RegressivenessReport& report);  // n,ds
std::string regressiveness_json(const RegressivenessReport& report);

struct EventResultRow {
  std::string id;
  std::vector<double> element_scores;  // rounded per the set's policy
  double total = 0.0;
  int rank = 0;
};

std::string event_results_csv(const std::vector<EventResultRow>& rows,
                              const std::vector<std::string>& element_names);
std::string event_results_json(const std::vector<EventResultRow>& rows,
                               const std::vector<std::string>& element_names);

}  // namespace rankdyn::io
