#pragma once

#include <vector>

namespace rankdyn {

/// Whether larger marks are better (distances) or smaller marks are better
/// (times).
enum class Direction { Ascending, Descending };

/// Per-event-set rounding policy applied to each element score before
/// summation.
enum class Rounding { None, NearestInteger };

/// One offset/power/gain transform stage: a mark m becomes
///   score = gain * |m - offset|^power
/// on the scoring side of the offset, and 0 beyond it.
struct ScoringElement {
  Direction direction = Direction::Ascending;
  double offset = 0.0;  // zero-point threshold, in mark units
  double power = 1.0;   // dimensionless exponent, > 0
  double gain = 1.0;    // points per (mark unit)^power, > 0
};

/// A bundle of scoring elements evaluated together (a combined-events table
/// or a set of ranking indicators).
struct EventSet {
  std::vector<ScoringElement> elements;
  Rounding rounding = Rounding::None;
};

/// Score a single mark through one element. Marks on the non-scoring side of
/// the offset clamp to 0 rather than going negative. Throws InputError for a
/// non-finite mark or an element with gain <= 0 or power <= 0.
double transform_mark(const ScoringElement& element, double mark);

/// Gain that maps a best-performer mark to `target` points at the given
/// power (offset 0): target / bp^power. Throws InputError when
/// best_performer_mark <= 0.
double calibrate_gain(double best_performer_mark, double power,
                      double target = 100.0);

/// Per-element scores with the set's rounding policy applied; these are the
/// terms that score_event_set sums.
std::vector<double> element_scores(const EventSet& event_set,
                                   const std::vector<double>& marks);

/// Total score of one competitor over all elements. Each element score is
/// rounded per the set's policy before summation; half-way values round away
/// from zero. Throws InputError when marks.size() != elements.size().
double score_event_set(const EventSet& event_set,
                       const std::vector<double>& marks);

}  // namespace rankdyn
