// Copyright 2026 The admmstep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON form of a ProblemInstance (schema 1).
//
//   {
//     "schema": 1, "kind": "lasso", "seed": 0, "dims": {"rows": m, "cols": n},
//     "data": {"D": <matrix>, "b": [...], ...},          // raw data, per kind
//     "constraint": {"A": <matrix>, "B": <matrix>, "c": [...]}
//   }
//
// <matrix> is one of
//   {"format": "dense", "rows": r, "cols": c, "values": [row-major]}
//   {"format": "csr", "rows": r, "cols": c, "row_ptr": [...],
//    "col_idx": [...], "values": [...]}
//   {"format": "identity", "dim": n, "scale": s}
//
// Doubles are written in shortest round-trip form, so a rebuilt instance is
// bit-identical. "constraint" is informational; FromJson rebuilds the ADMM
// form from "data".

#ifndef ADMMSTEP_PROBLEMS_JSON_HPP_
#define ADMMSTEP_PROBLEMS_JSON_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "admmstep/errors.hpp"
#include "admmstep/linalg.hpp"
#include "admmstep/problems.hpp"

namespace admmstep {

inline constexpr int kInstanceSchema = 1;

namespace detail {

using Json = nlohmann::json;

inline Json VectorToJson(const Vector& v) { return Json(std::vector<double>(v.begin(), v.end())); }

inline Json DenseToJson(const Matrix& m) {
  std::vector<double> values;
  values.reserve(static_cast<size_t>(m.size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) values.push_back(m(i, j));
  return Json{{"format", "dense"}, {"rows", m.rows()}, {"cols", m.cols()}, {"values", values}};
}

inline Json SparseToJson(SparseMatrix m) {
  m.makeCompressed();
  const Index nnz = m.nonZeros();
  return Json{{"format", "csr"},
              {"rows", m.rows()},
              {"cols", m.cols()},
              {"row_ptr", std::vector<int>(m.outerIndexPtr(), m.outerIndexPtr() + m.rows() + 1)},
              {"col_idx", std::vector<int>(m.innerIndexPtr(), m.innerIndexPtr() + nnz)},
              {"values", std::vector<double>(m.valuePtr(), m.valuePtr() + nnz)}};
}

inline Json MapToJson(const LinearMap& map) {
  if (const auto* id = map.as_identity())
    return Json{{"format", "identity"}, {"dim", id->dim}, {"scale", id->scale}};
  if (const auto* sp = map.as_sparse()) return SparseToJson(*sp);
  return DenseToJson(*map.as_dense());
}

inline const Json& Field(const Json& j, const std::string& key, const std::string& where) {
  Require(j.is_object() && j.contains(key), ErrorCode::kInvalidArgument,
          "instance JSON: missing field '" + where + key + "'");
  return j.at(key);
}

inline Vector VectorFromJson(const Json& j, const std::string& where) {
  Require(j.is_array(), ErrorCode::kInvalidArgument,
          "instance JSON: field '" + where + "' must be an array");
  Vector v(static_cast<Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    Require(j[i].is_number(), ErrorCode::kInvalidArgument,
            "instance JSON: field '" + where + "' has a non-numeric entry");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

inline Matrix DenseFromJson(const Json& j, const std::string& where) {
  Require(Field(j, "format", where + ".") == "dense", ErrorCode::kInvalidArgument,
          "instance JSON: field '" + where + "' must be a dense matrix");
  const auto rows = Field(j, "rows", where + ".").get<Index>();
  const auto cols = Field(j, "cols", where + ".").get<Index>();
  const Vector values = VectorFromJson(Field(j, "values", where + "."), where + ".values");
  Require(rows >= 0 && cols >= 0 && values.size() == rows * cols, ErrorCode::kInvalidArgument,
          "instance JSON: field '" + where + "' has " + std::to_string(values.size()) +
              " values for a " + DimString(rows, cols) + " matrix");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j2 = 0; j2 < cols; ++j2) m(i, j2) = values(i * cols + j2);
  return m;
}

}  // namespace detail

inline nlohmann::json ToJson(const ProblemInstance& inst) {
  using detail::DenseToJson;
  using detail::VectorToJson;
  const ProblemData& d = inst.data;
  nlohmann::json data = nlohmann::json::object();
  switch (inst.kind) {
    case ProblemKind::kLp:
      data["D"] = DenseToJson(d.d);
      data["b"] = VectorToJson(d.b);
      data["cost"] = VectorToJson(d.cost);
      break;
    case ProblemKind::kQp:
      data["P"] = DenseToJson(d.p);
      data["q"] = VectorToJson(d.q);
      data["lower"] = VectorToJson(d.lower);
      data["upper"] = VectorToJson(d.upper);
      data["r"] = d.r;
      break;
    case ProblemKind::kLad:
    case ProblemKind::kHuber:
    case ProblemKind::kBp:
      data["D"] = DenseToJson(d.d);
      data["b"] = VectorToJson(d.b);
      break;
    case ProblemKind::kLasso:
      data["D"] = DenseToJson(d.d);
      data["b"] = VectorToJson(d.b);
      data["alpha"] = d.alpha;
      break;
    case ProblemKind::kTv:
      data["b"] = VectorToJson(d.b);
      data["alpha"] = d.alpha;
      break;
    case ProblemKind::kSics:
      data["S"] = DenseToJson(d.s);
      data["alpha"] = d.alpha;
      break;
  }
  if (d.x_true.size() > 0) data["x_true"] = VectorToJson(d.x_true);
  return nlohmann::json{
      {"schema", kInstanceSchema},
      {"kind", std::string(KindName(inst.kind))},
      {"seed", inst.seed},
      {"dims", {{"rows", inst.dims.rows}, {"cols", inst.dims.cols}}},
      {"data", data},
      {"constraint",
       {{"A", detail::MapToJson(inst.spec.a())},
        {"B", detail::MapToJson(inst.spec.b())},
        {"c", VectorToJson(inst.spec.c())}}}};
}

inline ProblemInstance FromJson(const nlohmann::json& j) {
  using detail::DenseFromJson;
  using detail::Field;
  using detail::VectorFromJson;
  Require(j.is_object(), ErrorCode::kInvalidArgument, "instance JSON must be an object");
  Require(Field(j, "schema", "") == kInstanceSchema, ErrorCode::kInvalidArgument,
          "instance JSON: unsupported schema " + Field(j, "schema", "").dump());
  const ProblemKind kind = ParseKind(Field(j, "kind", "").get<std::string>());
  const auto seed = Field(j, "seed", "").get<std::uint64_t>();
  const auto& dims_json = Field(j, "dims", "");
  const Dims dims{Field(dims_json, "rows", "dims.").get<Index>(),
                  Field(dims_json, "cols", "dims.").get<Index>()};
  const auto& dj = Field(j, "data", "");
  ProblemData d;
  auto vec = [&dj](const char* key) {
    return VectorFromJson(Field(dj, key, "data."), std::string("data.") + key);
  };
  auto dense = [&dj](const char* key) {
    return DenseFromJson(Field(dj, key, "data."), std::string("data.") + key);
  };
  auto num = [&dj](const char* key) {
    const auto& v = Field(dj, key, "data.");
    Require(v.is_number(), ErrorCode::kInvalidArgument,
            std::string("instance JSON: field 'data.") + key + "' must be a number");
    return v.get<double>();
  };
  switch (kind) {
    case ProblemKind::kLp:
      d.d = dense("D");
      d.b = vec("b");
      d.cost = vec("cost");
      break;
    case ProblemKind::kQp:
      d.p = dense("P");
      d.q = vec("q");
      d.lower = vec("lower");
      d.upper = vec("upper");
      d.r = num("r");
      break;
    case ProblemKind::kLad:
    case ProblemKind::kHuber:
    case ProblemKind::kBp:
      d.d = dense("D");
      d.b = vec("b");
      break;
    case ProblemKind::kLasso:
      d.d = dense("D");
      d.b = vec("b");
      d.alpha = num("alpha");
      break;
    case ProblemKind::kTv:
      d.b = vec("b");
      d.alpha = num("alpha");
      break;
    case ProblemKind::kSics:
      d.s = dense("S");
      d.alpha = num("alpha");
      break;
  }
  if (dj.contains("x_true")) d.x_true = vec("x_true");
  ProblemSpec spec = BuildSpec(kind, d);
  return ProblemInstance{kind, seed, dims, std::move(d), std::move(spec)};
}

}  // namespace admmstep

#endif  // ADMMSTEP_PROBLEMS_JSON_HPP_
