// Attack detection, identification thresholds, and filtering conditions.
//
// Detection: the intersection of all agreement sets is empty only if some
// sensor is compromised. Identification: an attack norm above a threshold
// derived from the prediction overbound forces an empty measurement update.
// Filtering: sufficiently separated safe/attacked agreement sets force an
// empty combined agreement set. Ground-truth-dependent quantities (the true
// state and noise realization) appear only in analysis APIs, never in the
// estimation path.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "s3e/estimator.hpp"
#include "s3e/set_algebra.hpp"

namespace s3e {

struct DetectionVerdict {
  bool attack_detected = false;
  std::vector<int> empty_measurement_sensors;  // 0-based
  std::vector<int> estimated_safe;             // S_hat
  std::vector<int> identified_attacked;        // A_hat
};

struct ThresholdReport {
  int sensor = 0;
  double identification_threshold = 0.0;
  double stealth_bound = 0.0;
  double attack_norm = 0.0;
};

/// True iff the intersection over all agreement sets is empty; an empty
/// member makes the whole intersection empty.
inline bool detect_attack(const std::vector<AgreementSet>& agreement) {
  if (agreement.empty()) throw std::invalid_argument("detect_attack: no agreement sets");
  for (const auto& ag : agreement) {
    if (ag.empty) return true;
  }
  ConstrainedZonotope acc = agreement.front().set;
  for (size_t h = 1; h < agreement.size(); ++h) {
    acc = intersect(acc, agreement[h].set);
  }
  return is_empty(acc);
}

/// Attack norms strictly above this value empty the measurement update of
/// sensor i when the attack is aligned with the measurement offset
/// C_i (x - c_x) + v - c_v. Analysis mode: requires the noise realization.
inline double identification_threshold(const Mat& c_i, const Zonotope& x_pred_overbound,
                                       const Zonotope& v_i, const Vec& x_true,
                                       const Vec& v_true) {
  const double m_i = static_cast<double>(c_i.rows());
  const double rad_cx = radius(linear_map(c_i, x_pred_overbound));
  const Vec offset = c_i * (x_true - x_pred_overbound.center) + v_true - v_i.center;
  return std::sqrt(m_i) * (rad_cx + radius(v_i)) - offset.norm();
}

/// Noise-independent bound: attacks above it cannot stay stealthy regardless
/// of the measurement noise realization.
inline double stealth_bound(const Mat& c_i, const Zonotope& x_pred_overbound,
                            const Vec& x_true) {
  const double m_i = static_cast<double>(c_i.rows());
  const double rad_cx = radius(linear_map(c_i, x_pred_overbound));
  return std::sqrt(m_i) * rad_cx - (c_i * (x_true - x_pred_overbound.center)).norm();
}

/// Separation condition on the overbounds of the attacked/safe partial
/// agreement sets; when true, their exact intersection is empty.
inline bool filtering_condition(const ConstrainedZonotope& i_attacked,
                                const ConstrainedZonotope& i_safe, int n_x) {
  const Zonotope bar_a = interval_hull(i_attacked).to_zonotope();
  const Zonotope bar_s = interval_hull(i_safe).to_zonotope();
  const double root_n = std::sqrt(static_cast<double>(n_x));
  return bar_a.center.norm() >
         root_n * (radius(bar_s) + radius(bar_a)) - bar_s.center.norm();
}

/// Attack filtering and identification. Sensors with empty measurement
/// updates are identified immediately; every sensor of a combo with a
/// nonempty agreement set is estimated safe; the rest are identified.
/// Guarantees: true-safe subseteq S_hat and A_hat subseteq true-attacked.
inline DetectionVerdict identify(const std::vector<MeasurementUpdate>& meas,
                                 const std::vector<AgreementSet>& agreement,
                                 const std::vector<std::vector<int>>& combos) {
  const int p = static_cast<int>(meas.size());
  DetectionVerdict verdict;
  std::vector<bool> safe(static_cast<size_t>(p), false);

  for (int i = 0; i < p; ++i) {
    if (meas[static_cast<size_t>(i)].empty) {
      verdict.empty_measurement_sensors.push_back(i);
    }
  }
  for (size_t h = 0; h < combos.size(); ++h) {
    if (!agreement[h].empty) {
      for (int j : combos[h]) safe[static_cast<size_t>(j)] = true;
    }
  }
  for (int i = 0; i < p; ++i) {
    if (safe[static_cast<size_t>(i)]) {
      verdict.estimated_safe.push_back(i);
    } else {
      verdict.identified_attacked.push_back(i);
    }
  }
  verdict.attack_detected = detect_attack(agreement);
  return verdict;
}

/// Lifts the per-member report to flat per-sensor entries: a sensor's update
/// counts as empty only when it is empty against every time-update member;
/// the representative set is the first nonempty occurrence.
inline std::vector<MeasurementUpdate> flat_measurement_updates(const StepReport& report) {
  const size_t p = report.sensor_update_empty.size();
  std::vector<MeasurementUpdate> flat(p);
  for (size_t i = 0; i < p; ++i) {
    flat[i].empty = report.sensor_update_empty[i];
    for (const auto& per_member : report.measurement_updates) {
      if (!per_member[i].empty) {
        flat[i].set = per_member[i].set;
        break;
      }
    }
    if (flat[i].empty && !report.measurement_updates.empty()) {
      flat[i].set = report.measurement_updates.front()[i].set;
    }
  }
  return flat;
}

/// Same lift for agreement sets, per combo.
inline std::vector<AgreementSet> flat_agreement_sets(const StepReport& report) {
  const size_t n_j = report.combo_agreement_empty.size();
  std::vector<AgreementSet> flat(n_j);
  for (size_t h = 0; h < n_j; ++h) {
    flat[h].empty = report.combo_agreement_empty[h];
    for (const auto& per_member : report.agreement_sets) {
      if (!per_member[h].empty) {
        flat[h].set = per_member[h].set;
        break;
      }
    }
    if (flat[h].empty && !report.agreement_sets.empty()) {
      flat[h].set = report.agreement_sets.front()[h].set;
    }
  }
  return flat;
}

/// Detection over a multi-member report: fires only when every time-update
/// member has an empty all-combo intersection. Sound: in the attack-free
/// case the member containing the true state keeps all its agreement sets
/// nonempty with a common point.
inline bool detect_attack(const StepReport& report) {
  for (const auto& per_member : report.agreement_sets) {
    if (!detect_attack(per_member)) return false;
  }
  return true;
}

/// Verdict for a full step report, combining the flat lifts with the
/// per-member detection rule.
inline DetectionVerdict identify(const StepReport& report,
                                 const std::vector<std::vector<int>>& combos) {
  DetectionVerdict verdict =
      identify(flat_measurement_updates(report), flat_agreement_sets(report), combos);
  verdict.attack_detected = detect_attack(report);
  return verdict;
}

}  // namespace s3e
