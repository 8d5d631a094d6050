// Secure set-based state estimation.
//
// Each step runs four stages over a collection of constrained zonotopes:
//   1. time update       X(k|k-1) = A X(k-1) (+) B u (+) W, member-wise
//   2. measurement update Z_i = X(k|k-1) n_{C_i} Y_i, per member and sensor
//   3. agreement protocol I_h = intersection of Z_j over each size-c_j combo
//   4. estimate           union of the nonempty agreement sets, then pruning
//
// The estimate is a union of hypotheses; at least one member is guaranteed
// to contain the true state as long as at most q sensors are attacked and
// every size-c_j sensor subset is observable. An empty estimate therefore
// signals a violated assumption and raises an error instead of propagating.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "s3e/observability.hpp"
#include "s3e/set_algebra.hpp"

namespace s3e {

enum class PruneStrategy {
  kNone,                 // drop empty members only
  kDropEmptyAndSubsets,  // additionally drop members certified as subsets
  kMergeIntersecting,    // overbound each group of pairwise-intersecting members
  kOverboundAll,         // single box member
  kReduceOrder,          // box members whose representation exceeds a budget
};

inline PruneStrategy prune_strategy_from_string(const std::string& s) {
  if (s == "none") return PruneStrategy::kNone;
  if (s == "drop_empty_and_subsets") return PruneStrategy::kDropEmptyAndSubsets;
  if (s == "merge_intersecting") return PruneStrategy::kMergeIntersecting;
  if (s == "overbound_all") return PruneStrategy::kOverboundAll;
  if (s.rfind("reduce_order", 0) == 0) return PruneStrategy::kReduceOrder;
  throw std::invalid_argument("unknown pruning strategy: " + s);
}

inline std::string to_string(PruneStrategy s) {
  switch (s) {
    case PruneStrategy::kNone: return "none";
    case PruneStrategy::kDropEmptyAndSubsets: return "drop_empty_and_subsets";
    case PruneStrategy::kMergeIntersecting: return "merge_intersecting";
    case PruneStrategy::kOverboundAll: return "overbound_all";
    case PruneStrategy::kReduceOrder: return "reduce_order";
  }
  return "none";
}

struct EstimatorConfig {
  int num_sensors = 0;    // p
  int max_attacked = 0;   // q in [0, p-1]
  int agreement_size = 0; // c_j in [1, p-q]
  PruneStrategy pruning = PruneStrategy::kMergeIntersecting;
  int reduce_max_generators = 0;  // used by kReduceOrder
  bool modified_estimate_enabled = false;

  void validate() const {
    if (num_sensors < 1) throw std::invalid_argument("EstimatorConfig: p must be >= 1");
    if (max_attacked < 0 || max_attacked > num_sensors - 1) {
      throw std::invalid_argument("EstimatorConfig: q must lie in [0, p-1]");
    }
    if (agreement_size < 1 || agreement_size > num_sensors - max_attacked) {
      throw std::invalid_argument("EstimatorConfig: c_j must lie in [1, p-q]");
    }
  }
};

/// Validates the config and the redundant-observability assumption for the
/// given plant matrices.
inline void validate_estimator_config(const EstimatorConfig& cfg, const Mat& a,
                                      const std::vector<Mat>& c,
                                      double obs_tol = kDefaultObsTol) {
  cfg.validate();
  if (static_cast<int>(c.size()) != cfg.num_sensors) {
    throw std::invalid_argument("EstimatorConfig: sensor count mismatch");
  }
  require_redundant_observability(a, c, cfg.agreement_size, obs_tol);
}

struct EstimateState {
  SetCollection collection;              // current estimate (union of members)
  int step = 0;                          // k
  std::vector<std::vector<int>> combos;  // size-c_j subsets, lexicographic
};

inline EstimateState init_estimate_state(const Zonotope& x0, const EstimatorConfig& cfg) {
  EstimateState st;
  st.collection.members.push_back(ConstrainedZonotope(x0));
  st.step = 0;
  st.combos = combinations(cfg.num_sensors, cfg.agreement_size);
  return st;
}

struct MeasurementUpdate {
  ConstrainedZonotope set;
  bool empty = true;
};

struct AgreementSet {
  ConstrainedZonotope set;
  bool empty = true;
};

struct StepReport {
  SetCollection time_update;
  // Nested per time-update member, inner index = sensor / combo.
  std::vector<std::vector<MeasurementUpdate>> measurement_updates;
  std::vector<std::vector<AgreementSet>> agreement_sets;
  // Lifted flags: true when empty for every time-update member.
  std::vector<bool> sensor_update_empty;
  std::vector<bool> combo_agreement_empty;
  SetCollection estimate;  // after pruning (and modification, when applied)
  Zonotope overbound;
  double radius = 0.0;
};

// ---------------------------------------------------------------------------
// Stages
// ---------------------------------------------------------------------------

/// Member-wise A*Z (+) {B u} (+) W; collection order preserved.
inline SetCollection time_update(const SetCollection& prev, const Mat& a, const Mat& b,
                                 const Vec& u, const Zonotope& w) {
  if (prev.empty()) throw std::invalid_argument("time_update: empty collection");
  if (a.cols() != prev.dim() || b.cols() != u.size() || w.dim() != a.rows()) {
    throw std::invalid_argument("time_update: dimension mismatch");
  }
  const Vec shift = b * u + w.center;
  SetCollection out;
  out.members.reserve(prev.size());
  for (const auto& z : prev.members) {
    ConstrainedZonotope mapped = linear_map(a, z);
    mapped.center += shift;
    Mat g(mapped.dim(), mapped.num_generators() + w.num_generators());
    g << mapped.generators, w.generators;
    Mat con = Mat::Zero(mapped.num_constraints(), g.cols());
    con.leftCols(mapped.num_generators()) = mapped.con_matrix;
    out.members.emplace_back(mapped.center, std::move(g), std::move(con), mapped.con_vector);
  }
  return out;
}

/// Sensor output measurement set <y_i - c_v, G_v>.
inline Zonotope output_set(const Vec& y, const Zonotope& v) {
  if (y.size() != v.dim()) throw std::invalid_argument("output_set: dimension mismatch");
  return Zonotope(y - v.center, v.generators);
}

/// Restriction of the prediction to states consistent with one sensor.
inline ConstrainedZonotope measurement_update(const ConstrainedZonotope& x_pred,
                                              const Mat& c_i, const Zonotope& y) {
  if (c_i.cols() != x_pred.dim() || c_i.rows() != y.dim()) {
    throw std::invalid_argument("measurement_update: dimension mismatch");
  }
  return generalized_intersection(x_pred, ConstrainedZonotope(y), c_i);
}

/// Iterated intersection of the measurement updates over each combo, folded
/// in ascending sensor order. An empty participant short-circuits to empty.
inline std::vector<AgreementSet> agreement_sets(const std::vector<MeasurementUpdate>& meas,
                                                const std::vector<std::vector<int>>& combos) {
  std::vector<AgreementSet> out;
  out.reserve(combos.size());
  for (const auto& combo : combos) {
    AgreementSet ag;
    bool any_empty = false;
    for (int j : combo) {
      if (meas[static_cast<size_t>(j)].empty) {
        any_empty = true;
        break;
      }
    }
    if (any_empty) {
      out.push_back(std::move(ag));
      continue;
    }
    ConstrainedZonotope acc = meas[static_cast<size_t>(combo.front())].set;
    for (size_t idx = 1; idx < combo.size(); ++idx) {
      acc = intersect(acc, meas[static_cast<size_t>(combo[idx])].set);
    }
    ag.empty = is_empty(acc);
    ag.set = std::move(acc);
    out.push_back(std::move(ag));
  }
  return out;
}

namespace detail {

/// Certifies z1 subseteq z2 by support dominance along the axis directions
/// and both members' generator directions. Sound: only certified subsets are
/// reported (a false negative keeps a redundant member, never loses points).
inline bool certified_subset(const ConstrainedZonotope& z1, const ConstrainedZonotope& z2,
                             const IntervalBox& hull1, const IntervalBox& hull2) {
  if (!hull2.contains(hull1)) return false;  // the 2n axis directions
  std::vector<Vec> dirs;
  auto add_cols = [&](const Mat& g) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double nrm = g.col(j).norm();
      if (nrm > 1e-12) dirs.push_back(g.col(j) / nrm);
    }
  };
  add_cols(z1.generators);
  add_cols(z2.generators);
  for (const auto& d : dirs) {
    if (support_value(z1, d) > support_value(z2, d) + kFeasTol) return false;
    if (support_value(z1, -d) > support_value(z2, -d) + kFeasTol) return false;
  }
  return true;
}

}  // namespace detail

/// Applies the configured complexity-reduction strategy. Every strategy
/// preserves union containment: union(out) superseteq union(in).
inline SetCollection prune(const SetCollection& collection, PruneStrategy strategy,
                           const EstimatorConfig& cfg) {
  // Empties are dropped under every strategy.
  SetCollection live;
  for (const auto& m : collection.members) {
    if (!is_empty(m)) live.members.push_back(m);
  }
  switch (strategy) {
    case PruneStrategy::kNone:
      return live;

    case PruneStrategy::kDropEmptyAndSubsets: {
      const size_t r = live.size();
      std::vector<IntervalBox> hulls;
      hulls.reserve(r);
      for (const auto& m : live.members) hulls.push_back(interval_hull(m));
      // Member i goes when it is a certified subset of any other member;
      // mutual subsets (set-equal members) keep the earliest index.
      std::vector<bool> removed(r, false);
      for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) {
          if (i == j) continue;
          if (!detail::certified_subset(live.members[i], live.members[j], hulls[i], hulls[j])) {
            continue;
          }
          if (j < i ||
              !detail::certified_subset(live.members[j], live.members[i], hulls[j], hulls[i])) {
            removed[i] = true;
            break;
          }
        }
      }
      SetCollection out;
      for (size_t i = 0; i < r; ++i) {
        if (!removed[i]) out.members.push_back(live.members[i]);
      }
      return out;
    }

    case PruneStrategy::kMergeIntersecting: {
      // Greedy grouping in input order; a member joins the first group whose
      // members it all intersects. Groups of one stay untouched.
      std::vector<std::vector<size_t>> groups;
      for (size_t i = 0; i < live.size(); ++i) {
        bool placed = false;
        for (auto& g : groups) {
          bool all = true;
          for (size_t j : g) {
            if (is_empty(intersect(live.members[i], live.members[j]))) {
              all = false;
              break;
            }
          }
          if (all) {
            g.push_back(i);
            placed = true;
            break;
          }
        }
        if (!placed) groups.push_back({i});
      }
      SetCollection out;
      for (const auto& g : groups) {
        if (g.size() == 1) {
          out.members.push_back(live.members[g.front()]);
        } else {
          SetCollection grp;
          for (size_t j : g) grp.members.push_back(live.members[j]);
          out.members.push_back(ConstrainedZonotope(overbound_collection(grp)));
        }
      }
      return out;
    }

    case PruneStrategy::kOverboundAll: {
      SetCollection out;
      if (!live.empty()) {
        out.members.push_back(ConstrainedZonotope(overbound_collection(live)));
      }
      return out;
    }

    case PruneStrategy::kReduceOrder: {
      const Eigen::Index budget = std::max<Eigen::Index>(cfg.reduce_max_generators,
                                                         collection.dim());
      SetCollection out;
      for (const auto& m : live.members) {
        if (m.is_unconstrained() && m.num_generators() <= budget) {
          out.members.push_back(m);
        } else {
          // Constrained members are overbounded first; reduction applies to
          // unconstrained zonotopes only.
          const Zonotope boxed =
              m.is_unconstrained() ? Zonotope(m.center, m.generators)
                                   : interval_hull(m).to_zonotope();
          out.members.push_back(ConstrainedZonotope(reduce_order(boxed, budget)));
        }
      }
      return out;
    }
  }
  return live;
}

/// Intersects every member with the hypercube H(x_hat, delta_k) supplied by a
/// secure point estimator and drops emptied members.
inline SetCollection modified_estimate(const SetCollection& estimate, const Vec& x_hat,
                                       double delta_k) {
  if (delta_k < 0.0) throw std::invalid_argument("modified_estimate: negative radius");
  const ConstrainedZonotope cube(Hypercube(x_hat, delta_k).to_zonotope());
  SetCollection out;
  for (const auto& m : estimate.members) {
    ConstrainedZonotope cut = intersect(m, cube);
    if (!is_empty(cut)) out.members.push_back(std::move(cut));
  }
  if (out.empty()) {
    throw std::runtime_error(
        "modified estimate empty: point estimator contract (Assumption 2) violated");
  }
  return out;
}

struct StepResult {
  EstimateState state;
  StepReport report;
};

/// One full estimation step. Throws when every agreement set is empty, which
/// signals a violated assumption or a tolerance misconfiguration.
inline StepResult estimate_step(const EstimateState& state, const Mat& a, const Mat& b,
                                const Vec& u, const Zonotope& w,
                                const std::vector<Vec>& measurements,
                                const std::vector<Mat>& c, const std::vector<Zonotope>& v,
                                const EstimatorConfig& cfg) {
  const auto p = static_cast<size_t>(cfg.num_sensors);
  if (measurements.size() != p || c.size() != p || v.size() != p) {
    throw std::invalid_argument("estimate_step: per-sensor input size mismatch");
  }

  StepReport report;
  report.time_update = time_update(state.collection, a, b, u, w);
  const size_t r = report.time_update.size();

  std::vector<Zonotope> outputs;
  outputs.reserve(p);
  for (size_t i = 0; i < p; ++i) outputs.push_back(output_set(measurements[i], v[i]));

  report.measurement_updates.resize(r);
  report.agreement_sets.resize(r);
  report.sensor_update_empty.assign(p, true);
  report.combo_agreement_empty.assign(state.combos.size(), true);

  SetCollection unioned;
  for (size_t mem = 0; mem < r; ++mem) {
    auto& meas = report.measurement_updates[mem];
    meas.reserve(p);
    for (size_t i = 0; i < p; ++i) {
      MeasurementUpdate mu;
      mu.set = measurement_update(report.time_update.members[mem], c[i], outputs[i]);
      mu.empty = is_empty(mu.set);
      if (!mu.empty) report.sensor_update_empty[i] = false;
      meas.push_back(std::move(mu));
    }
    report.agreement_sets[mem] = agreement_sets(meas, state.combos);
    for (size_t h = 0; h < state.combos.size(); ++h) {
      const auto& ag = report.agreement_sets[mem][h];
      if (!ag.empty) {
        report.combo_agreement_empty[h] = false;
        unioned.members.push_back(ag.set);
      }
    }
  }

  if (unioned.empty()) {
    throw std::runtime_error("estimator contract violated: no nonempty agreement set");
  }

  StepResult result;
  result.state.combos = state.combos;
  result.state.step = state.step + 1;
  result.state.collection = prune(unioned, cfg.pruning, cfg);
  report.estimate = result.state.collection;
  report.overbound = overbound_collection(report.estimate);
  report.radius = radius(report.overbound);
  result.report = std::move(report);
  return result;
}

/// Recomputes the estimate/overbound/radius fields after an external
/// modification of the collection (e.g. the secure point-estimate pruning).
inline void apply_modified_estimate(StepResult& result, const SetCollection& modified) {
  result.state.collection = modified;
  result.report.estimate = modified;
  result.report.overbound = overbound_collection(modified);
  result.report.radius = radius(result.report.overbound);
}

}  // namespace s3e
