#include "rankdyn/arwu.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rankdyn/errors.hpp"

namespace rankdyn {

const std::array<std::string, kAllIndicators> kIndicatorNames = {
    "alumni", "award", "hici", "ns", "pub", "pcp"};

namespace {

void validate_gain_values(const GainSet& gains) {
  for (int i = 0; i < kAllIndicators; ++i) {
    const double a = gains.gains[static_cast<size_t>(i)];
    if (!(a > 0.0) || !std::isfinite(a))
      throw InputError("gain for '" + kIndicatorNames[static_cast<size_t>(i)] +
                       "' must be positive");
  }
  if (!(gains.dummy_fte > 0.0) || !std::isfinite(gains.dummy_fte))
    throw InputError("dummy FTE must be positive");
}

void validate_record(const InstitutionRecord& record) {
  for (int i = 0; i < kRawIndicators; ++i) {
    const double m = record.raw[static_cast<size_t>(i)];
    if (!std::isfinite(m) || m < 0.0)
      throw InputError("record '" + record.id + "': raw '" +
                       kIndicatorNames[static_cast<size_t>(i)] +
                       "' must be finite and >= 0");
  }
  if (record.fte && (!(*record.fte > 0.0) || !std::isfinite(*record.fte)))
    throw InputError("record '" + record.id + "': fte must be positive");
}

double checked_score(double s, const char* what) {
  if (!std::isfinite(s) || s < 0.0)
    throw InputError(std::string(what) + " must be finite and >= 0");
  return s;
}

// Annual per-indicator scores for the five measured indicators, plus the
// best-performer raw values that anchored them.
struct AnnualBase {
  std::vector<std::array<double, kRawIndicators>> scores;
  std::array<double, kRawIndicators> best_raw{};
};

AnnualBase annual_base(const std::vector<InstitutionRecord>& dataset) {
  if (dataset.empty()) throw InputError("dataset is empty");
  for (const auto& record : dataset) validate_record(record);

  AnnualBase base;
  base.scores.assign(dataset.size(), {});
  for (int i = 0; i < kRawIndicators; ++i) {
    std::vector<double> values;
    values.reserve(dataset.size());
    for (const auto& record : dataset)
      values.push_back(record.effective_raw(i));
    const double best = *std::max_element(values.begin(), values.end());
    if (!(best > 0.0))
      throw ComputationError("degenerate indicator '" +
                             kIndicatorNames[static_cast<size_t>(i)] +
                             "': all values are zero");
    base.best_raw[static_cast<size_t>(i)] = best;
    const double factor = 10000.0 / best;
    for (size_t n = 0; n < values.size(); ++n) {
      const double scaled = values[n] == best ? 10000.0 : values[n] * factor;
      // sqrt of the 0..10000 scaled value compresses it onto 0..100.
      base.scores[n][static_cast<size_t>(i)] = std::sqrt(scaled);
    }
  }
  return base;
}

// Gains implied by this dataset's best performers on the measured indicators;
// the PCP slot is a placeholder until a per-capita best is known.
GainSet annual_gains(const AnnualBase& base) {
  GainSet g;
  g.provenance = GainProvenance::AnnualBestPerformer;
  for (int i = 0; i < kRawIndicators; ++i)
    g.gains[static_cast<size_t>(i)] =
        100.0 / std::sqrt(base.best_raw[static_cast<size_t>(i)]);
  g.gains[kPcp] = 1.0;
  return g;
}

void finalize_table(ScoreTable& table) {
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ScoreRow& x, const ScoreRow& y) {
              if (x.total != y.total) return x.total > y.total;
              return x.id < y.id;
            });
  for (size_t n = 0; n < table.rows.size(); ++n)
    table.rows[n].rank = static_cast<int>(n) + 1;
}

}  // namespace

double InstitutionRecord::effective_raw(int indicator) const {
  if (indicator < 0 || indicator >= kRawIndicators)
    throw InputError("effective_raw: indicator out of range");
  if (cls == InstitutionClass::SocialScience && indicator == kSn) return 0.0;
  return raw[static_cast<size_t>(indicator)];
}

GainSet default_fixed_gains() {
  GainSet g;
  g.gains = {17.875, 16.975, 7.225, 4.775, 0.850, 9.325};
  g.provenance = GainProvenance::Fixed;
  g.dummy_fte = kDefaultDummyFte;
  return g;
}

std::vector<double> scale_to_best(const std::vector<double>& values) {
  if (values.empty()) throw InputError("scale_to_best: empty input");
  for (double v : values)
    if (!std::isfinite(v) || v < 0.0)
      throw InputError("scale_to_best: values must be finite and >= 0");
  const double best = *std::max_element(values.begin(), values.end());
  if (!(best > 0.0))
    throw ComputationError("scale_to_best: degenerate indicator, all values are zero");
  const double factor = 10000.0 / best;
  std::vector<double> scaled;
  scaled.reserve(values.size());
  for (double v : values) scaled.push_back(v == best ? 10000.0 : v * factor);
  return scaled;
}

double indicator_score_fixed(const InstitutionRecord& record,
                             const GainSet& gains, int indicator) {
  if (gains.provenance != GainProvenance::Fixed)
    throw InputError("indicator_score_fixed: requires a fixed gain set");
  if (indicator < 0 || indicator >= kRawIndicators)
    throw InputError("indicator_score_fixed: only the five measured indicators "
                     "score directly; PCP is composed");
  validate_gain_values(gains);
  validate_record(record);
  return gains.gains[static_cast<size_t>(indicator)] *
         std::sqrt(record.effective_raw(indicator));
}

double compute_pcp_raw(const InstitutionRecord& record, const GainSet& gains) {
  validate_gain_values(gains);
  validate_record(record);
  const double fte = record.fte.value_or(gains.dummy_fte);
  if (!(fte > 0.0))
    throw InputError("record '" + record.id + "': FTE must be positive");

  const auto& a = gains.gains;
  auto term = [&](int i) {
    return a[static_cast<size_t>(i)] * a[static_cast<size_t>(i)] *
           record.effective_raw(i);
  };
  const double rest = term(kAward) + term(kHici) + term(kSn) + term(kPub);
  if (record.cls == InstitutionClass::SocialScience)
    return (9.0 * term(kAlumni) + 14.0 * rest) / (7.0 * fte);
  return (term(kAlumni) + 2.0 * rest) / fte;
}

double compute_ws(const std::array<double, kRawIndicators>& indicator_scores) {
  for (double s : indicator_scores) checked_score(s, "indicator score");
  const auto& s = indicator_scores;
  return 0.1 * s[kAlumni] * s[kAlumni] +
         0.2 * (s[kAward] * s[kAward] + s[kHici] * s[kHici] +
                s[kSn] * s[kSn] + s[kPub] * s[kPub]);
}

double pcp_score_annual(double ws, std::optional<double> fte, double cal,
                        std::optional<double> k) {
  checked_score(ws, "weighted square sum");
  if (!(cal > 0.0) || !std::isfinite(cal))
    throw InputError("pcp_score_annual: cal must be positive");
  if (fte) {
    if (!(*fte > 0.0) || !std::isfinite(*fte))
      throw InputError("pcp_score_annual: fte must be positive");
    return 100.0 * std::sqrt((ws / *fte) / cal);
  }
  if (!k)
    throw InputError("pcp_score_annual: K parameter required when FTE is unknown");
  if (!(*k > 0.0) || !std::isfinite(*k))
    throw InputError("pcp_score_annual: K must be positive");
  return std::sqrt(ws / *k);
}

double recover_dummy_fte(double k, double cal) {
  if (!(k > 0.0) || !std::isfinite(k))
    throw InputError("recover_dummy_fte: K must be positive");
  if (!(cal > 0.0) || !std::isfinite(cal))
    throw InputError("recover_dummy_fte: cal must be positive");
  return 1e4 * k / cal;
}

double estimate_k(const std::vector<WsPcpSample>& samples) {
  if (samples.empty())
    throw ComputationError("estimate_k: no samples to estimate from");
  double num = 0.0;
  double den = 0.0;
  for (const auto& sample : samples) {
    checked_score(sample.ws, "WS sample");
    checked_score(sample.pcp, "PCP sample");
    num += sample.ws * sample.ws;
    den += sample.ws * sample.pcp * sample.pcp;
  }
  if (!(den > 0.0))
    throw ComputationError(
        "estimate_k: estimation impossible, every WS*PCP^2 term is zero");
  return num / den;
}

double estimate_k_for_dataset(const std::vector<InstitutionRecord>& dataset) {
  const AnnualBase base = annual_base(dataset);
  std::vector<WsPcpSample> samples;
  for (size_t n = 0; n < dataset.size(); ++n) {
    const auto& record = dataset[n];
    if (record.fte || !record.published) continue;
    const auto& pcp = record.published->score[kPcp];
    if (!pcp || !(*pcp > 0.0)) continue;
    samples.push_back({compute_ws(base.scores[n]), *pcp});
  }
  if (samples.empty())
    throw ComputationError(
        "estimate_k: no FTE-less records with a published PCP score");
  return estimate_k(samples);
}

double arwu_total(const std::array<double, kAllIndicators>& scores,
                  InstitutionClass cls) {
  for (double s : scores) checked_score(s, "indicator score");
  const auto& s = scores;
  const double rest = s[kAward] + s[kHici] + s[kSn] + s[kPub];
  if (cls == InstitutionClass::SocialScience)
    return (1.25 * s[kAlumni] + 1.25 * s[kPcp] + 2.5 * rest) / 10.0;
  return (s[kAlumni] + s[kPcp] + 2.0 * rest) / 10.0;
}

GainSet gains_from_best_performers(
    const std::vector<InstitutionRecord>& dataset) {
  const AnnualBase base = annual_base(dataset);
  GainSet g = annual_gains(base);

  double best_pcp_raw = 0.0;
  bool any_fte = false;
  for (const auto& record : dataset) {
    if (!record.fte) continue;
    any_fte = true;
    best_pcp_raw = std::max(best_pcp_raw, compute_pcp_raw(record, g));
  }
  if (!any_fte)
    throw ComputationError(
        "per-capita gain requires at least one record with a known FTE");
  if (!(best_pcp_raw > 0.0))
    throw ComputationError("degenerate indicator 'pcp': all per-capita "
                           "quantities are zero");

  g.gains[kPcp] = 100.0 / std::sqrt(best_pcp_raw);
  g.provenance = GainProvenance::Fixed;  // frozen snapshot of this dataset
  g.dummy_fte = kDefaultDummyFte;
  g.k_param.reset();
  return g;
}

ScoreTable score_annual(const std::vector<InstitutionRecord>& dataset,
                        std::optional<double> k_param) {
  const AnnualBase base = annual_base(dataset);
  const GainSet g = annual_gains(base);
  if (k_param && (!(*k_param > 0.0) || !std::isfinite(*k_param)))
    throw InputError("score_annual: K must be positive");

  // Per-capita best performer over the records whose FTE is known.
  std::vector<double> pcp_raw(dataset.size(), 0.0);
  double best_pcp_raw = 0.0;
  bool any_fte = false;
  for (size_t n = 0; n < dataset.size(); ++n) {
    if (!dataset[n].fte) continue;
    any_fte = true;
    pcp_raw[n] = compute_pcp_raw(dataset[n], g);
    best_pcp_raw = std::max(best_pcp_raw, pcp_raw[n]);
  }
  if (any_fte && !(best_pcp_raw > 0.0))
    throw ComputationError("degenerate indicator 'pcp': all per-capita "
                           "quantities are zero");

  ScoreTable table;
  table.mode = ScoreMode::Annual;
  table.rows.reserve(dataset.size());
  const double factor6 = any_fte ? 10000.0 / best_pcp_raw : 0.0;
  for (size_t n = 0; n < dataset.size(); ++n) {
    const auto& record = dataset[n];
    ScoreRow row;
    row.id = record.id;
    for (int i = 0; i < kRawIndicators; ++i)
      row.indicator_scores[static_cast<size_t>(i)] =
          base.scores[n][static_cast<size_t>(i)];

    if (record.fte) {
      const double scaled =
          pcp_raw[n] == best_pcp_raw ? 10000.0 : pcp_raw[n] * factor6;
      row.indicator_scores[kPcp] = std::sqrt(scaled);
    } else {
      if (!k_param)
        throw InputError("record '" + record.id +
                         "' has no FTE; annual mode needs the K parameter");
      row.indicator_scores[kPcp] =
          std::sqrt(compute_ws(base.scores[n]) / *k_param);
    }
    row.total = arwu_total(row.indicator_scores, record.cls);
    table.rows.push_back(std::move(row));
  }

  double top = 0.0;
  for (const auto& row : table.rows) top = std::max(top, row.total);
  if (!(top > 0.0))
    throw ComputationError("score_annual: every total is zero");
  const double rescale = 100.0 / top;
  for (auto& row : table.rows)
    row.total = row.total == top ? 100.0 : row.total * rescale;

  finalize_table(table);
  return table;
}

ScoreTable score_fixed_gain(const std::vector<InstitutionRecord>& dataset,
                            const GainSet& gains) {
  if (gains.provenance != GainProvenance::Fixed)
    throw InputError("score_fixed_gain: requires a fixed gain set");
  validate_gain_values(gains);
  if (dataset.empty()) throw InputError("dataset is empty");

  ScoreTable table;
  table.mode = ScoreMode::Fixed;
  table.rows.reserve(dataset.size());
  for (const auto& record : dataset) {
    validate_record(record);
    ScoreRow row;
    row.id = record.id;
    for (int i = 0; i < kRawIndicators; ++i)
      row.indicator_scores[static_cast<size_t>(i)] =
          gains.gains[static_cast<size_t>(i)] *
          std::sqrt(record.effective_raw(i));
    row.indicator_scores[kPcp] =
        gains.gains[kPcp] * std::sqrt(compute_pcp_raw(record, gains));
    row.total = arwu_total(row.indicator_scores, record.cls);
    table.rows.push_back(std::move(row));
  }
  finalize_table(table);
  return table;
}

double invert_published_scaled(double published_score) {
  if (!std::isfinite(published_score) || published_score < 0.0)
    throw InputError("invert_published: score must be finite and >= 0");
  if (published_score > 100.0)
    throw InputError("invert_published: score above 100 is not representable "
                     "on the annual 0-100 scale");
  // 10000 * (s/100)^2 collapses to s^2.
  return published_score * published_score;
}

double invert_published_with_gain(double published_score, double gain) {
  if (!std::isfinite(published_score) || published_score < 0.0)
    throw InputError("invert_published: score must be finite and >= 0");
  if (!(gain > 0.0) || !std::isfinite(gain))
    throw InputError("invert_published: gain must be positive");
  const double root = published_score / gain;
  return root * root;
}

std::string band_label(int rank, int band_width) {
  if (band_width < 1) throw InputError("band_label: band width must be >= 1");
  if (rank < 101 || rank > 500) return {};
  const int lo = 101 + (rank - 101) / band_width * band_width;
  const int hi = std::min(lo + band_width - 1, 500);
  return std::to_string(lo) + "-" + std::to_string(hi);
}

}  // namespace rankdyn
