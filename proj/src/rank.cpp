#include "rankdyn/rank.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "rankdyn/errors.hpp"

namespace rankdyn {

namespace {

std::vector<std::string> default_ids(size_t count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (size_t n = 0; n < count; ++n) ids.push_back(std::to_string(n + 1));
  return ids;
}

void validate_values(const std::vector<double>& values) {
  for (double v : values)
    if (!std::isfinite(v)) throw InputError("KAM values must be finite");
}

// N_n per input position: the count of values strictly greater than each
// value. Computed by sorting once; every member of a tie block shares the
// count of elements ranked above the block.
std::vector<int> strictly_higher_counts(const std::vector<double>& values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    return values[x] > values[y];
  });
  std::vector<int> counts(values.size(), 0);
  size_t block_start = 0;
  for (size_t n = 0; n < order.size(); ++n) {
    if (values[order[n]] != values[order[block_start]]) block_start = n;
    counts[order[n]] = static_cast<int>(block_start);
  }
  return counts;
}

}  // namespace

KamResult kam_scores(const std::vector<double>& values, int population,
                     const std::vector<std::string>& ids) {
  if (values.empty()) throw InputError("kam_scores: empty input");
  if (population < static_cast<int>(values.size()))
    throw InputError("kam_scores: population smaller than the value list");
  validate_values(values);
  const std::vector<std::string> labels =
      ids.empty() ? default_ids(values.size()) : ids;
  if (labels.size() != values.size())
    throw InputError("kam_scores: ids and values differ in length");

  const std::vector<int> higher = strictly_higher_counts(values);
  KamResult result;
  result.population = population;
  result.entries.reserve(values.size());
  for (size_t n = 0; n < values.size(); ++n) {
    KamEntry entry;
    entry.id = labels[n];
    entry.n_higher = higher[n];
    entry.score = 10.0 * (1.0 - static_cast<double>(higher[n]) / population);
    result.entries.push_back(std::move(entry));
  }
  return result;
}

KamResult kam_remodeled(const std::vector<double>& values,
                        const std::vector<std::string>& ids) {
  if (values.empty()) throw InputError("kam_remodeled: empty input");
  validate_values(values);
  const std::vector<std::string> labels =
      ids.empty() ? default_ids(values.size()) : ids;
  if (labels.size() != values.size())
    throw InputError("kam_remodeled: ids and values differ in length");

  int nonzero = 0;
  for (double v : values)
    if (v != 0.0) ++nonzero;

  const std::vector<int> higher = strictly_higher_counts(values);
  KamResult result;
  result.population = nonzero;
  result.entries.reserve(values.size());
  for (size_t n = 0; n < values.size(); ++n) {
    KamEntry entry;
    entry.id = labels[n];
    entry.n_higher = higher[n];
    // True zeros keep score 0; everyone else is normalized against the
    // nonzero population.
    entry.score = (values[n] == 0.0 || nonzero == 0)
                      ? 0.0
                      : 10.0 * (1.0 - static_cast<double>(higher[n]) / nonzero);
    result.entries.push_back(std::move(entry));
  }
  return result;
}

ScoreColumn to_column(const KamResult& result) {
  ScoreColumn column;
  column.entries.reserve(result.entries.size());
  for (const auto& entry : result.entries)
    column.entries.emplace_back(entry.id, entry.score);
  return column;
}

std::vector<RankedRow> aggregate_rank_driven(
    const std::vector<ScoreColumn>& columns,
    const std::vector<double>& weights) {
  if (columns.empty()) throw InputError("aggregate_rank_driven: no columns");
  if (weights.size() != columns.size())
    throw InputError("aggregate_rank_driven: got " +
                     std::to_string(weights.size()) + " weights for " +
                     std::to_string(columns.size()) + " columns");
  double weight_sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0)
      throw InputError("aggregate_rank_driven: weights must be finite and >= 0");
    weight_sum += w;
  }
  if (!(weight_sum > 0.0))
    throw InputError("aggregate_rank_driven: weights must not be all zero");

  std::map<std::string, double> aggregate;
  for (const auto& [id, score] : columns.front().entries) {
    if (!aggregate.emplace(id, 0.0).second)
      throw InputError("aggregate_rank_driven: duplicate id '" + id + "'");
    (void)score;
  }
  for (size_t j = 0; j < columns.size(); ++j) {
    std::set<std::string> seen;
    for (const auto& [id, score] : columns[j].entries) {
      if (!std::isfinite(score))
        throw InputError("aggregate_rank_driven: non-finite score for '" + id +
                         "'");
      if (!seen.insert(id).second)
        throw InputError("aggregate_rank_driven: duplicate id '" + id + "'");
      auto it = aggregate.find(id);
      if (it == aggregate.end())
        throw InputError("aggregate_rank_driven: institution '" + id +
                         "' missing from the first indicator table");
      it->second += weights[j] * score;
    }
    if (seen.size() != aggregate.size())
      throw InputError(
          "aggregate_rank_driven: indicator tables cover different "
          "institution sets");
  }

  std::vector<RankedRow> rows;
  rows.reserve(aggregate.size());
  for (const auto& [id, total] : aggregate) rows.push_back({id, total, 0});
  std::sort(rows.begin(), rows.end(), [](const RankedRow& x, const RankedRow& y) {
    if (x.aggregate != y.aggregate) return x.aggregate > y.aggregate;
    return x.id < y.id;
  });
  for (size_t n = 0; n < rows.size(); ++n)
    rows[n].rank = static_cast<int>(n) + 1;
  return rows;
}

RankComparison compare_rankings(const std::vector<RankEntry>& a,
                                const std::vector<RankEntry>& b,
                                std::optional<std::pair<int, int>> scope) {
  if (a.empty() || b.empty())
    throw InputError("compare_rankings: empty ranking");
  if (scope && (scope->first < 1 || scope->second < scope->first))
    throw InputError("compare_rankings: scope range must be LO-HI with LO >= 1");

  std::map<std::string, int> rank_b;
  for (const auto& entry : b) {
    if (entry.rank < 1)
      throw InputError("compare_rankings: rank for '" + entry.id +
                       "' must be >= 1");
    if (!rank_b.emplace(entry.id, entry.rank).second)
      throw InputError("compare_rankings: duplicate id '" + entry.id + "'");
  }

  RankComparison result;
  result.scope = scope;
  result.shifts.reserve(a.size());
  std::set<std::string> seen;
  for (const auto& entry : a) {
    if (entry.rank < 1)
      throw InputError("compare_rankings: rank for '" + entry.id +
                       "' must be >= 1");
    if (!seen.insert(entry.id).second)
      throw InputError("compare_rankings: duplicate id '" + entry.id + "'");
    auto it = rank_b.find(entry.id);
    if (it == rank_b.end())
      throw InputError("compare_rankings: institution '" + entry.id +
                       "' missing from ranking b");
    result.shifts.push_back(
        {entry.id, entry.rank, it->second, entry.rank - it->second});
  }
  if (seen.size() != rank_b.size())
    throw InputError("compare_rankings: rankings cover different institution "
                     "sets");

  std::sort(result.shifts.begin(), result.shifts.end(),
            [](const RankShift& x, const RankShift& y) {
              if (x.rank_a != y.rank_a) return x.rank_a < y.rank_a;
              return x.id < y.id;
            });

  long long abs_sum = 0;
  for (const auto& shift : result.shifts) {
    if (scope && (shift.rank_a < scope->first || shift.rank_a > scope->second))
      continue;
    ++result.scoped_count;
    abs_sum += std::abs(shift.shift);
    result.max_abs_shift = std::max(result.max_abs_shift, std::abs(shift.shift));
  }
  result.mean_abs_shift =
      result.scoped_count == 0
          ? 0.0
          : static_cast<double>(abs_sum) / result.scoped_count;
  return result;
}

}  // namespace rankdyn
