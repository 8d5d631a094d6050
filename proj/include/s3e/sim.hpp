// Plant models, noise/attack generation, and the two built-in scenarios.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "s3e/matrix_exp.hpp"
#include "s3e/rng.hpp"
#include "s3e/set_algebra.hpp"

namespace s3e {

struct Sensor {
  Mat c;       // m_i x n output map
  Zonotope v;  // measurement-noise zonotope, ambient m_i
};

struct PlantModel {
  Mat a;                       // n x n
  Mat b;                       // n x n_u
  Zonotope w;                  // process-noise zonotope, ambient n
  std::vector<Sensor> sensors; // p entries

  Eigen::Index state_dim() const { return a.rows(); }
  Eigen::Index input_dim() const { return b.cols(); }
  int num_sensors() const { return static_cast<int>(sensors.size()); }

  std::vector<Mat> output_maps() const {
    std::vector<Mat> c;
    c.reserve(sensors.size());
    for (const auto& s : sensors) c.push_back(s.c);
    return c;
  }

  std::vector<Zonotope> noise_sets() const {
    std::vector<Zonotope> v;
    v.reserve(sensors.size());
    for (const auto& s : sensors) v.push_back(s.v);
    return v;
  }

  void validate() const {
    if (a.rows() != a.cols() || b.rows() != a.rows() || w.dim() != a.rows()) {
      throw std::invalid_argument("PlantModel: inconsistent dimensions");
    }
    for (const auto& s : sensors) {
      if (s.c.cols() != a.rows() || s.v.dim() != s.c.rows()) {
        throw std::invalid_argument("PlantModel: sensor dimensions inconsistent");
      }
    }
  }
};

enum class AttackMode {
  kNone,
  kRotatingUniform,     // deterministic cyclic subset
  kRandomSubsetUniform, // seeded random subset each step
  kFixedSubsetUniform,  // configured subset
  kCustomScript,        // explicit per-step vectors
};

inline AttackMode attack_mode_from_string(const std::string& s) {
  if (s == "none") return AttackMode::kNone;
  if (s == "rotating_uniform") return AttackMode::kRotatingUniform;
  if (s == "random_subset_uniform") return AttackMode::kRandomSubsetUniform;
  if (s == "fixed_subset_uniform") return AttackMode::kFixedSubsetUniform;
  if (s == "custom_script") return AttackMode::kCustomScript;
  throw std::invalid_argument("unknown attack mode: " + s);
}

inline std::string to_string(AttackMode m) {
  switch (m) {
    case AttackMode::kNone: return "none";
    case AttackMode::kRotatingUniform: return "rotating_uniform";
    case AttackMode::kRandomSubsetUniform: return "random_subset_uniform";
    case AttackMode::kFixedSubsetUniform: return "fixed_subset_uniform";
    case AttackMode::kCustomScript: return "custom_script";
  }
  return "none";
}

struct ScriptedAttack {
  int step = 0;    // k >= 1
  int sensor = 0;  // 0-based
  Vec value;
};

struct AttackSpec {
  AttackMode mode = AttackMode::kNone;
  int q = 0;
  // phi(k): strictly increasing with phi(1) = 1; empty means phi(k) = k.
  std::vector<double> phi_values;
  double scale = -1.0;  // magnitude scale; < 0 means rad(V_i) per sensor
  std::vector<int> fixed_subset;  // 0-based, for kFixedSubsetUniform
  std::vector<ScriptedAttack> script;

  double phi(int k) const {
    if (k < 1) throw std::invalid_argument("phi: k must be >= 1");
    if (phi_values.empty()) return static_cast<double>(k);
    if (static_cast<size_t>(k) > phi_values.size()) {
      throw std::invalid_argument("phi: schedule shorter than the run");
    }
    return phi_values[static_cast<size_t>(k - 1)];
  }

  void validate(int p) const {
    if (q < 0 || (mode != AttackMode::kNone && mode != AttackMode::kCustomScript && q > p)) {
      throw std::invalid_argument("AttackSpec: q out of range");
    }
    if (!phi_values.empty()) {
      if (phi_values.front() != 1.0) throw std::invalid_argument("AttackSpec: phi(1) must be 1");
      for (size_t i = 1; i < phi_values.size(); ++i) {
        if (phi_values[i] <= phi_values[i - 1]) {
          throw std::invalid_argument("AttackSpec: phi must be strictly increasing");
        }
      }
    }
    if (mode == AttackMode::kFixedSubsetUniform) {
      if (static_cast<int>(fixed_subset.size()) > q) {
        throw std::invalid_argument("AttackSpec: fixed subset larger than q");
      }
      for (int i : fixed_subset) {
        if (i < 0 || i >= p) throw std::invalid_argument("AttackSpec: sensor index out of range");
      }
    }
  }
};

/// Attacked sensor subset at step k (0-based indices). The rotating sequence
/// is the cyclic shift {k, k+1, ..., k+q-1} mod p.
inline std::vector<int> attacked_subset(const AttackSpec& spec, int k, int p, Rng& subset_rng) {
  switch (spec.mode) {
    case AttackMode::kNone:
    case AttackMode::kCustomScript:
      return {};
    case AttackMode::kRotatingUniform: {
      std::vector<int> s;
      for (int j = 0; j < spec.q; ++j) s.push_back((k + j) % p);
      std::sort(s.begin(), s.end());
      return s;
    }
    case AttackMode::kRandomSubsetUniform: {
      // Draw q distinct indices; iteration order is deterministic per seed.
      std::vector<int> pool(static_cast<size_t>(p));
      for (int i = 0; i < p; ++i) pool[static_cast<size_t>(i)] = i;
      std::vector<int> s;
      for (int j = 0; j < spec.q; ++j) {
        const auto pick = static_cast<size_t>(subset_rng.uniform01() * static_cast<double>(pool.size()));
        const size_t idx = std::min(pick, pool.size() - 1);
        s.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
      }
      std::sort(s.begin(), s.end());
      return s;
    }
    case AttackMode::kFixedSubsetUniform:
      return spec.fixed_subset;
  }
  return {};
}

/// Attack vectors for step k, one per sensor; zero outside the attacked
/// subset. Uniform draws are consumed in ascending sensor order.
inline std::vector<Vec> gen_attack(const AttackSpec& spec, int k,
                                   const std::vector<Eigen::Index>& sensor_dims,
                                   const std::vector<double>& sensor_scales,
                                   const std::vector<int>& attacked, Rng& rng) {
  const auto p = sensor_dims.size();
  std::vector<Vec> attacks(p);
  for (size_t i = 0; i < p; ++i) attacks[i] = Vec::Zero(sensor_dims[i]);

  if (spec.mode == AttackMode::kCustomScript) {
    for (const auto& entry : spec.script) {
      if (entry.step == k) {
        attacks[static_cast<size_t>(entry.sensor)] = entry.value;
      }
    }
    return attacks;
  }
  if (spec.mode == AttackMode::kNone) return attacks;

  const double magnitude = spec.phi(k);
  for (int i : attacked) {
    const double s =
        (spec.scale >= 0.0 ? spec.scale : sensor_scales[static_cast<size_t>(i)]) * magnitude;
    Vec& a = attacks[static_cast<size_t>(i)];
    for (Eigen::Index d = 0; d < a.size(); ++d) a[d] = rng.uniform_sym(s);
  }
  return attacks;
}

/// Uniform sample c + G b with b drawn componentwise from [-1, 1).
inline Vec sample_zonotope(const Zonotope& z, Rng& rng) {
  Vec beta(z.num_generators());
  for (Eigen::Index j = 0; j < beta.size(); ++j) beta[j] = rng.uniform_sym();
  return z.center + z.generators * beta;
}

// ---------------------------------------------------------------------------
// Built-in models
// ---------------------------------------------------------------------------

/// Two-dimensional illustrative plant: four 2-output sensors, unit
/// measurement-noise boxes, sigma_w = 0.02 process noise.
inline PlantModel build_two_dim_model() {
  PlantModel plant;
  plant.a = (Mat(2, 2) << 1, 0, 1, 1).finished();
  plant.b = Mat::Zero(2, 1);
  plant.w = Zonotope(Vec::Zero(2), 0.02 * Mat::Identity(2, 2));
  const Zonotope v(Vec::Zero(2), Mat::Identity(2, 2));
  plant.sensors = {
      {(Mat(2, 2) << 1, 0, 0, 1).finished(), v},
      {(Mat(2, 2) << 1, 1, 1, 0).finished(), v},
      {(Mat(2, 2) << 0, 1, 1, 0).finished(), v},
      {(Mat(2, 2) << 1, 2, 2, 1).finished(), v},
  };
  return plant;
}

/// Three-story building structure discretized at sample time delta:
/// x = [relative displacements; velocities], one 3-output sensor per floor.
inline PlantModel build_building_model(double delta) {
  if (delta <= 0.0) throw std::invalid_argument("build_building_model: delta must be positive");
  const Vec masses = (Vec(3) << 478350.0, 478350.0, 517790.0).finished();
  const Mat damping = 1e5 * (Mat(3, 3) << 7.7626, -3.7304, 0.6514,
                                          -3.7304, 5.8284, -2.0266,
                                          0.6514, -2.0266, 2.4458).finished();
  const Mat stiffness = 1e8 * (Mat(3, 3) << 4.3651, -2.3730, 0.4144,
                                            -2.3730, 3.1347, -1.2892,
                                            0.4144, -1.2892, 0.9358).finished();
  const Vec loading = masses;

  const Mat m_inv = masses.cwiseInverse().asDiagonal();
  Mat a_c = Mat::Zero(6, 6);
  a_c.topRightCorner(3, 3) = Mat::Identity(3, 3);
  a_c.bottomLeftCorner(3, 3) = -m_inv * stiffness;
  a_c.bottomRightCorner(3, 3) = -m_inv * damping;
  Mat b_c = Mat::Zero(6, 1);
  b_c.bottomRows(3) = -(m_inv * loading);

  Eigen::FullPivLU<Mat> lu(a_c);
  if (!lu.isInvertible()) {
    throw std::runtime_error("build_building_model: singular continuous-time dynamics");
  }
  PlantModel plant;
  plant.a = matrix_exponential(a_c * delta);
  plant.b = lu.solve((plant.a - Mat::Identity(6, 6)) * b_c);
  plant.w = Zonotope(Vec::Zero(6), 0.02 * Mat::Identity(6, 6));

  const Zonotope v(Vec::Zero(3), Mat::Identity(3, 3));
  plant.sensors = {
      {(Mat(3, 6) << 1, -1, 0, 0, 0, 0,
                     1, 0, -1, 0, 0, 0,
                     0, 0, 0, 1, 0, 0).finished(), v},
      {(Mat(3, 6) << -1, 1, 0, 0, 0, 0,
                     0, 1, -1, 0, 0, 0,
                     0, 0, 0, 0, 1, 0).finished(), v},
      {(Mat(3, 6) << -1, 0, 1, 0, 0, 0,
                     0, -1, 1, 0, 0, 0,
                     0, 0, 0, 0, 0, 1).finished(), v},
  };
  return plant;
}

}  // namespace s3e
