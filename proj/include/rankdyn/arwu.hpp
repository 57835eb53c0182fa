#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace rankdyn {

/// Indicator slots. The first five are measured; PCP is composed from them.
enum Indicator : int {
  kAlumni = 0,
  kAward = 1,
  kHici = 2,
  kSn = 3,
  kPub = 4,
  kPcp = 5,
};

inline constexpr int kRawIndicators = 5;
inline constexpr int kAllIndicators = 6;

/// Column names used across CSV/JSON surfaces, indexed by Indicator.
extern const std::array<std::string, kAllIndicators> kIndicatorNames;

enum class InstitutionClass { Standard, SocialScience };

/// Scores on the published 0-100 scale, as read from a published table.
struct PublishedScores {
  std::array<std::optional<double>, kAllIndicators> score{};
  std::optional<double> total;
};

struct InstitutionRecord {
  std::string id;
  std::string name;
  InstitutionClass cls = InstitutionClass::Standard;
  std::array<double, kRawIndicators> raw{};  // raw points, all >= 0
  std::optional<double> fte;                 // full-time-equivalent faculty
  std::optional<PublishedScores> published;

  /// Raw value with the social-science exclusion applied: the SN indicator
  /// is treated as 0 for SocialScience institutions.
  double effective_raw(int indicator) const;
};

enum class GainProvenance { AnnualBestPerformer, Fixed };

inline constexpr double kDefaultDummyFte = 890.0;

/// Gains a_1..a_6 plus the bookkeeping needed to apply them.
struct GainSet {
  std::array<double, kAllIndicators> gains{};
  GainProvenance provenance = GainProvenance::Fixed;
  double dummy_fte = kDefaultDummyFte;  // used when fte is absent (fixed mode)
  std::optional<double> k_param;        // K, used when fte is absent (annual)
};

/// The frozen reference gains (17.875, 16.975, 7.225, 4.775, 0.850, 9.325)
/// with dummy FTE 890.
GainSet default_fixed_gains();

enum class ScoreMode { Annual, Fixed };

struct ScoreRow {
  std::string id;
  std::array<double, kAllIndicators> indicator_scores{};  // 0-100 scale
  double total = 0.0;
  int rank = 0;
  std::string band;  // presentation-only label, empty unless banding is on
};

struct ScoreTable {
  std::vector<ScoreRow> rows;  // sorted by total descending, ties by id
  ScoreMode mode = ScoreMode::Fixed;
};

/// Multiply all values by 10000/max so the largest becomes exactly 10000.
/// Throws ComputationError when every value is zero.
std::vector<double> scale_to_best(const std::vector<double>& values);

/// Fixed-mode indicator score a_i * sqrt(m_i) for a measured indicator
/// (not PCP). No cap at 100: a raw value above the historical best performer
/// may exceed it. Throws InputError for negative raw values or indicator
/// outside the measured five.
double indicator_score_fixed(const InstitutionRecord& record,
                             const GainSet& gains, int indicator);

/// Raw per-capita quantity m_6. Standard institutions:
///   (a_1^2 m_1 + 2 * sum_{i=2..5} a_i^2 m_i) / FTE
/// Social-science institutions use coefficients 9/7 and 14/7 with m_4 forced
/// to 0. FTE comes from the record, falling back to gains.dummy_fte; an FTE
/// <= 0 is an InputError.
double compute_pcp_raw(const InstitutionRecord& record, const GainSet& gains);

/// Weighted sum of squared indicator scores:
///   WS = 0.1 * s_1^2 + 0.2 * (s_2^2 + s_3^2 + s_4^2 + s_5^2)
double compute_ws(const std::array<double, kRawIndicators>& indicator_scores);

/// Annual PCP score. With a known FTE: 100 * sqrt((ws/fte)/cal), where cal is
/// the best per-capita performer's WS/FTE quotient. Without one: sqrt(ws/k),
/// which requires k. Throws InputError for fte <= 0, cal <= 0, k <= 0, or a
/// missing k when fte is absent.
double pcp_score_annual(double ws, std::optional<double> fte, double cal,
                        std::optional<double> k = std::nullopt);

/// The dummy FTE implied by parameter K against quotient cal: 1e4 * k / cal.
double recover_dummy_fte(double k, double cal);

struct WsPcpSample {
  double ws = 0.0;   // computed weighted square sum
  double pcp = 0.0;  // published PCP score, 0-100 scale
};

/// Least-squares fit of PCP^2 = WS/K through the origin:
///   K = sum(WS_i^2) / sum(WS_i * PCP_i^2)
/// Throws ComputationError on empty input or when every PCP is zero.
double estimate_k(const std::vector<WsPcpSample>& samples);

/// Convenience for whole datasets: computes annual indicator scores, takes
/// the records without FTE but with a published PCP > 0, and estimates K
/// from their (WS, published PCP) pairs.
double estimate_k_for_dataset(const std::vector<InstitutionRecord>& dataset);

/// Total score. Standard: (s_1 + s_6 + 2 * sum_{i=2..5} s_i)/10.
/// SocialScience: (1.25 s_1 + 1.25 s_6 + 2.5 * sum_{i=2..5} s_i)/10, where
/// the caller guarantees s_4 = 0.
double arwu_total(const std::array<double, kAllIndicators>& scores,
                  InstitutionClass cls);

/// Freeze a gain set from this dataset's best performers: a_i = 100/sqrt(BP_i)
/// for the measured indicators and for the per-capita best performer. The
/// result carries Fixed provenance (a snapshot usable by score_fixed_gain)
/// and a dummy_fte equal to the default. Requires at least one record with a
/// known FTE; throws ComputationError on a degenerate indicator.
GainSet gains_from_best_performers(const std::vector<InstitutionRecord>& dataset);

/// Annual best-performer mode: per indicator scale_to_best then square root,
/// so each year's best performer scores exactly 100; PCP from the per-capita
/// quantity (records without FTE fall back to sqrt(WS/k), requiring k_param);
/// totals rescaled so the top institution's total is exactly 100. Ranks by
/// descending total, ties by ascending id. Throws ComputationError naming any
/// indicator whose values are all zero.
ScoreTable score_annual(const std::vector<InstitutionRecord>& dataset,
                        std::optional<double> k_param = std::nullopt);

/// Fixed-gain mode: a_i * sqrt(m_i) per indicator with the supplied frozen
/// gains, missing FTE replaced by gains.dummy_fte, totals NOT rescaled
/// (scores are absolute and comparable across years, possibly above 100).
/// Requires gains.provenance == Fixed.
ScoreTable score_fixed_gain(const std::vector<InstitutionRecord>& dataset,
                            const GainSet& gains);

/// Invert a published score on the annual 0-100 scale back to its scaled raw
/// value: 10000 * (s/100)^2. Scores outside [0, 100] are InputErrors.
double invert_published_scaled(double published_score);

/// Invert a published fixed-mode score back to raw units given its gain:
/// (s/a)^2. Negative scores are InputErrors; values above 100 are legal here.
double invert_published_with_gain(double published_score, double gain);

/// Band label for published group ranks: ranks 101..500 fall into bands of
/// `band_width` ("101-150", "151-200", ...); ranks 1..100 and ranks past 500
/// get no label. Presentation only.
std::string band_label(int rank, int band_width = 50);

}  // namespace rankdyn
