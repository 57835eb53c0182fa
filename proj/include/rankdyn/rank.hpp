#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rankdyn {

struct KamEntry {
  std::string id;
  int n_higher = 0;    // count of institutions with strictly greater value
  double score = 0.0;  // I_n on the 0-10 scale
};

struct KamResult {
  std::vector<KamEntry> entries;  // in input order
  int population = 0;  // normalizing population (nonzero count for remodeled)
};

/// KAM normalization I_n = 10 * (1 - N_n/population), where N_n counts values
/// strictly greater than this one; tied values share a score. `ids`, when
/// given, must be the same length as `values` (defaults to "1", "2", ...).
/// Throws InputError on empty input or population < values.size().
KamResult kam_scores(const std::vector<double>& values, int population,
                     const std::vector<std::string>& ids = {});

/// Remodeled KAM: the population is the count N of nonzero values, and true
/// zeros keep score 0. All-zero input yields all-zero scores, not an error.
KamResult kam_remodeled(const std::vector<double>& values,
                        const std::vector<std::string>& ids = {});

/// One institution's score on one indicator. The aggregation hook is generic:
/// a column may come from KAM, remodeled KAM, or any pass-through score.
struct ScoreColumn {
  std::vector<std::pair<std::string, double>> entries;  // (id, score)
};

ScoreColumn to_column(const KamResult& result);

struct RankedRow {
  std::string id;
  double aggregate = 0.0;
  int rank = 0;
};

/// Weighted sum of per-indicator scores, ranked by descending aggregate with
/// ties broken by ascending id. All columns must cover the same institution
/// set; weights must be nonnegative and not all zero.
std::vector<RankedRow> aggregate_rank_driven(
    const std::vector<ScoreColumn>& columns, const std::vector<double>& weights);

struct RankEntry {
  std::string id;
  int rank = 0;
};

struct RankShift {
  std::string id;
  int rank_a = 0;
  int rank_b = 0;
  int shift = 0;  // rank_a - rank_b
};

struct RankComparison {
  std::vector<RankShift> shifts;  // every institution, ordered by rank_a
  double mean_abs_shift = 0.0;    // over the scoped subset
  int max_abs_shift = 0;
  int scoped_count = 0;
  std::optional<std::pair<int, int>> scope;  // inclusive rank range on a
};

/// Signed rank change per institution between two rankings of the same set.
/// The optional scope restricts the mean/max statistics to institutions whose
/// rank in `a` lies in the inclusive range.
RankComparison compare_rankings(const std::vector<RankEntry>& a,
                                const std::vector<RankEntry>& b,
                                std::optional<std::pair<int, int>> scope =
                                    std::nullopt);

}  // namespace rankdyn
