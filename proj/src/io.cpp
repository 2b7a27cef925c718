// Copyright 2026 The Schmidt Measure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "schmidt/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace schmidt {

namespace {

std::vector<int> parse_dims(const json& doc) {
  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty())
    throw InputError("\"dims\" must be a nonempty array");
  std::vector<int> dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer()) throw InputError("\"dims\" entries must be integers");
    dims.push_back(d.get<int>());
  }
  return dims;
}

PartyLayout make_layout(const std::vector<int>& dims) {
  try {
    return PartyLayout(dims);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

Vector parse_vector(const json& arr, const char* what) {
  if (!arr.is_array()) throw InputError(std::string(what) + " must be an array");
  Vector v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(arr[i]);
  return v;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

// Sum of the terms, computed entry by entry from the party digits of every
// flat index (no reshaping through the block tensor).
Vector reassemble_by_digits(const ProductDecomposition& d) {
  const int n = static_cast<int>(d.dims.size());
  const auto& blocks = d.split.blocks();
  std::size_t total = 1;
  for (int x : d.dims) total *= static_cast<std::size_t>(x);
  Vector out(static_cast<Eigen::Index>(total));
  std::vector<int> digit(static_cast<std::size_t>(n), 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int p = n - 1; p >= 0; --p) {
      const auto dp = static_cast<std::size_t>(d.dims[static_cast<std::size_t>(p)]);
      digit[static_cast<std::size_t>(p)] = static_cast<int>(rest % dp);
      rest /= dp;
    }
    cplx sum = 0.0;
    for (const auto& t : d.terms) {
      cplx prod = t.alpha;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        Eigen::Index local = 0;
        for (int p : blocks[b]) local = local * d.dims[static_cast<std::size_t>(p)] + digit[static_cast<std::size_t>(p)];
        prod *= t.vectors[b](local);
      }
      sum += prod;
    }
    out(static_cast<Eigen::Index>(idx)) = sum;
  }
  return out;
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw InputError("complex numbers are written [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

LoadedState parse_state(const json& doc) {
  if (!doc.is_object()) throw InputError("state document must be an object");
  const std::string kind = doc.value("kind", "");
  const bool normalize = doc.value("normalize", false);
  const PartyLayout layout = make_layout(parse_dims(doc));
  const auto D = static_cast<Eigen::Index>(layout.total());
  if (kind == "pure") {
    if (!doc.contains("amplitudes")) throw InputError("pure state needs \"amplitudes\"");
    const Vector v = parse_vector(doc["amplitudes"], "\"amplitudes\"");
    if (v.size() != D) throw InputError("amplitude count does not match dims");
    const double n = v.norm();
    if (n == 0.0) throw InputError("zero state vector");
    if (!normalize && std::abs(n - 1.0) > kInputNormTol)
      throw InputError("state is not normalized (norm " + std::to_string(n) + "); set \"normalize\": true");
    PureState psi(layout, v);
    return {DensityOperator::from_pure(psi), psi};
  }
  if (kind == "density") {
    if (!doc.contains("matrix") || !doc["matrix"].is_array()) throw InputError("density operator needs \"matrix\"");
    const json& rows = doc["matrix"];
    if (static_cast<Eigen::Index>(rows.size()) != D) throw InputError("matrix row count does not match dims");
    Matrix m(D, D);
    for (Eigen::Index r = 0; r < D; ++r) {
      const Vector row = parse_vector(rows[static_cast<std::size_t>(r)], "matrix row");
      if (row.size() != D) throw InputError("matrix row length does not match dims");
      m.row(r) = row.transpose();
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kInputNormTol) throw InputError("matrix is not Hermitian");
    const double tr = m.trace().real();
    if (!normalize && std::abs(tr - 1.0) > kInputNormTol)
      throw InputError("trace is not 1 (" + std::to_string(tr) + "); set \"normalize\": true");
    if (tr <= 0.0) throw InputError("trace must be positive");
    try {
      return {DensityOperator::normalized(layout, m), std::nullopt};
    } catch (const DomainError& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("\"kind\" must be \"pure\" or \"density\"");
}

EnsembleVerifyReport verify_ensemble(const json& doc, const DensityOperator& rho, double tol) {
  if (!doc.is_object() || !doc.contains("weights") || !doc.contains("members") || !doc["weights"].is_array() ||
      !doc["members"].is_array() || doc["weights"].size() != doc["members"].size())
    throw InputError("ensemble needs matching \"weights\" and \"members\" arrays");
  const auto& ds = rho.layout().dims();
  const std::vector<int> dims(ds.begin(), ds.end());
  EnsembleVerifyReport r;
  Matrix sum = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  double wsum = 0.0;
  for (std::size_t i = 0; i < doc["members"].size(); ++i) {
    json m = doc["members"][i];
    if (!m.contains("split") && doc.contains("split")) m["split"] = doc["split"];
    if (!m.contains("dims") && doc.contains("dims")) m["dims"] = doc["dims"];
    const ProductDecomposition d = parse_decomposition(m, dims);
    if (d.dims != dims) throw InputError("ensemble dims do not match the state");
    if (!doc["weights"][i].is_number()) throw InputError("weights must be numbers");
    const double w = doc["weights"][i].get<double>();
    const Vector v = reassemble_by_digits(d);
    sum += w * v * v.adjoint();
    wsum += w;
    ++r.members;
    r.max_terms = std::max(r.max_terms, d.size());
  }
  r.weight_defect = std::abs(wsum - 1.0);
  r.assembly_residual = (sum - rho.matrix()).cwiseAbs().maxCoeff();
  r.passed = r.members > 0 && r.weight_defect < tol && r.assembly_residual < tol;
  return r;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

LoadedState load_state(const std::string& path) { return parse_state(read_json_file(path)); }

json state_to_json(const PureState& psi) {
  json out;
  out["kind"] = "pure";
  out["dims"] = std::vector<int>(psi.layout().dims().begin(), psi.layout().dims().end());
  out["amplitudes"] = vector_to_json(psi.amplitudes());
  return out;
}

json state_to_json(const DensityOperator& rho) {
  json out;
  out["kind"] = "density";
  out["dims"] = std::vector<int>(rho.layout().dims().begin(), rho.layout().dims().end());
  json rows = json::array();
  for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) rows.push_back(vector_to_json(rho.matrix().row(r).transpose()));
  out["matrix"] = std::move(rows);
  return out;
}

json decomposition_to_json(const ProductDecomposition& d) {
  json out;
  out["split"] = d.split.one_based();
  out["dims"] = d.dims;
  json terms = json::array();
  for (const auto& t : d.terms) {
    json vs = json::array();
    for (const auto& v : t.vectors) vs.push_back(vector_to_json(v));
    terms.push_back({{"alpha", to_json(t.alpha)}, {"vectors", std::move(vs)}});
  }
  out["terms"] = std::move(terms);
  out["residual"] = d.residual;
  return out;
}

ProductDecomposition parse_decomposition(const json& doc, const std::optional<std::vector<int>>& dims) {
  if (!doc.is_object()) throw InputError("decomposition document must be an object");
  std::vector<int> ds;
  if (doc.contains("dims"))
    ds = parse_dims(doc);
  else if (dims)
    ds = *dims;
  else
    throw InputError("decomposition lacks \"dims\" and no target state was given");
  const PartyLayout layout = make_layout(ds);
  if (!doc.contains("split") || !doc["split"].is_array()) throw InputError("decomposition needs \"split\"");
  std::vector<std::vector<int>> blocks;
  for (const auto& b : doc["split"]) {
    std::vector<int> block;
    if (!b.is_array()) throw InputError("split blocks must be arrays");
    for (const auto& p : b) {
      if (!p.is_number_integer()) throw InputError("split members must be integers");
      block.push_back(p.get<int>() - 1);
    }
    blocks.push_back(std::move(block));
  }
  std::optional<Split> split;
  try {
    split.emplace(layout.parties(), blocks);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  ProductDecomposition d{*split, ds, {}, doc.value("residual", 0.0)};
  const auto bdims = split->block_dims(layout);
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw InputError("decomposition needs \"terms\"");
  for (const auto& t : doc["terms"]) {
    if (!t.contains("alpha") || !t.contains("vectors")) throw InputError("terms need \"alpha\" and \"vectors\"");
    ProductTerm term{complex_from_json(t["alpha"]), {}};
    if (!t["vectors"].is_array() || t["vectors"].size() != bdims.size())
      throw InputError("every term needs one vector per block");
    for (std::size_t b = 0; b < bdims.size(); ++b) {
      Vector v = parse_vector(t["vectors"][b], "block vector");
      if (v.size() != bdims[b]) throw InputError("block vector length does not match the block dimension");
      term.vectors.push_back(std::move(v));
    }
    d.terms.push_back(std::move(term));
  }
  return d;
}

json ensemble_to_json(const std::vector<WeightedDecomposition>& members) {
  json out;
  if (members.empty()) return out;
  out["split"] = members.front().decomposition.split.one_based();
  out["dims"] = members.front().decomposition.dims;
  json ws = json::array();
  json ms = json::array();
  for (const auto& m : members) {
    ws.push_back(m.weight);
    json d = decomposition_to_json(m.decomposition);
    d.erase("split");
    d.erase("dims");
    ms.push_back(std::move(d));
  }
  out["weights"] = std::move(ws);
  out["members"] = std::move(ms);
  return out;
}

VerifyReport verify_decomposition(const ProductDecomposition& d, const PureState& target, double tol,
                                  double norm_cap) {
  const auto& tdims = target.layout().dims();
  if (std::vector<int>(tdims.begin(), tdims.end()) != d.dims)
    throw InputError("decomposition dims do not match the target state");
  VerifyReport r;
  r.terms = d.size();
  r.claimed_residual = d.residual;
  for (const auto& t : d.terms) {
    r.max_alpha = std::max(r.max_alpha, std::abs(t.alpha));
    for (const auto& v : t.vectors) r.max_norm_defect = std::max(r.max_norm_defect, std::abs(v.norm() - 1.0));
  }
  r.residual = (target.amplitudes() - reassemble_by_digits(d)).norm();
  r.passed = r.residual < tol && r.max_norm_defect <= 1e-10 && r.max_alpha <= norm_cap &&
             std::abs(r.residual - r.claimed_residual) <= tol;
  return r;
}

}  // namespace schmidt
