// JSON (de)serialization for set types.
//
// Matrices are stored as nested row-major arrays. Round trips are
// bit-faithful for finite doubles (the JSON layer emits shortest
// round-trippable decimal representations).

#pragma once

#include <json.hpp>

#include "s3e/set_algebra.hpp"

namespace s3e {

inline nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json vec_to_json(const Vec& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

inline Vec vec_from_json(const nlohmann::json& j) {
  Vec v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

/// Reads a nested-array matrix; `cols_hint` disambiguates empty matrices.
inline Mat mat_from_json(const nlohmann::json& j, Eigen::Index cols_hint = 0) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : cols_hint;
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[static_cast<size_t>(i)].size()) != cols) {
      throw std::invalid_argument("matrix json: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(i, c) = j[static_cast<size_t>(i)][static_cast<size_t>(c)].get<double>();
    }
  }
  return m;
}

inline void to_json(nlohmann::json& j, const Zonotope& z) {
  j = nlohmann::json{{"center", vec_to_json(z.center)},
                     {"generators", mat_to_json(z.generators)}};
}

inline void from_json(const nlohmann::json& j, Zonotope& z) {
  Vec c = vec_from_json(j.at("center"));
  Mat g = mat_from_json(j.at("generators"));
  if (g.rows() == 0) g.resize(c.size(), 0);
  z = Zonotope(std::move(c), std::move(g));
}

inline void to_json(nlohmann::json& j, const ConstrainedZonotope& z) {
  j = nlohmann::json{{"center", vec_to_json(z.center)},
                     {"generators", mat_to_json(z.generators)},
                     {"con_matrix", mat_to_json(z.con_matrix)},
                     {"con_vector", vec_to_json(z.con_vector)}};
}

inline void from_json(const nlohmann::json& j, ConstrainedZonotope& z) {
  Vec c = vec_from_json(j.at("center"));
  Mat g = mat_from_json(j.at("generators"));
  if (g.rows() == 0) g.resize(c.size(), 0);
  Mat a = mat_from_json(j.at("con_matrix"), g.cols());
  Vec b = vec_from_json(j.at("con_vector"));
  z = ConstrainedZonotope(std::move(c), std::move(g), std::move(a), std::move(b));
}

inline void to_json(nlohmann::json& j, const SetCollection& s) {
  j = nlohmann::json::array();
  for (const auto& m : s.members) j.push_back(m);
}

inline void from_json(const nlohmann::json& j, SetCollection& s) {
  s.members.clear();
  for (const auto& e : j) s.members.push_back(e.get<ConstrainedZonotope>());
}

}  // namespace s3e
