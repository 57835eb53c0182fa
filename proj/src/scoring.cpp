#include "rankdyn/scoring.hpp"

#include <cmath>
#include <string>

#include "rankdyn/errors.hpp"

namespace rankdyn {

double transform_mark(const ScoringElement& element, double mark) {
  if (!std::isfinite(mark))
    throw InputError("transform_mark: mark must be finite");
  if (!(element.gain > 0.0) || !std::isfinite(element.gain))
    throw InputError("transform_mark: gain must be positive");
  if (!(element.power > 0.0) || !std::isfinite(element.power))
    throw InputError("transform_mark: power must be positive");
  if (!std::isfinite(element.offset))
    throw InputError("transform_mark: offset must be finite");

  // Results on the wrong side of the threshold score zero points.
  const double distance = element.direction == Direction::Ascending
                              ? mark - element.offset
                              : element.offset - mark;
  if (distance <= 0.0) return 0.0;
  return element.gain * std::pow(distance, element.power);
}

double calibrate_gain(double best_performer_mark, double power, double target) {
  if (!(best_performer_mark > 0.0) || !std::isfinite(best_performer_mark))
    throw InputError("calibrate_gain: best performer mark must be positive");
  if (!(power > 0.0) || !std::isfinite(power))
    throw InputError("calibrate_gain: power must be positive");
  if (!(target > 0.0) || !std::isfinite(target))
    throw InputError("calibrate_gain: target must be positive");
  return target / std::pow(best_performer_mark, power);
}

std::vector<double> element_scores(const EventSet& event_set,
                                   const std::vector<double>& marks) {
  if (marks.size() != event_set.elements.size())
    throw InputError("score_event_set: got " + std::to_string(marks.size()) +
                     " marks for " + std::to_string(event_set.elements.size()) +
                     " elements");
  std::vector<double> scores;
  scores.reserve(marks.size());
  for (size_t i = 0; i < marks.size(); ++i) {
    double s = transform_mark(event_set.elements[i], marks[i]);
    if (event_set.rounding == Rounding::NearestInteger)
      s = std::round(s);  // half-way cases round away from zero
    scores.push_back(s);
  }
  return scores;
}

double score_event_set(const EventSet& event_set,
                       const std::vector<double>& marks) {
  double total = 0.0;
  for (double s : element_scores(event_set, marks)) total += s;
  return total;
}

}  // namespace rankdyn
