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

#include "schmidt/zoo.hpp"

#include <cmath>

namespace schmidt {

namespace {

PartyLayout qubits(int n) { return PartyLayout(std::vector<int>(static_cast<std::size_t>(n), 2)); }

int count_param(double v, const char* what) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-12) throw DomainError(std::string(what) + " must be an integer");
  return static_cast<int>(r);
}

Vector basis_state(int n, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

// |phi+> on parties (a, b) of three qubits with the remaining one in |0>.
Vector bell_with_zero(int a, int b) {
  Vector v = Vector::Zero(8);
  v(0) = 1.0;
  v((1 << (2 - a)) | (1 << (2 - b))) = 1.0;
  return v / std::sqrt(2.0);
}

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

ExpectedValue rank_cell(const std::string& split, int rank) {
  const double v = std::log2(static_cast<double>(rank));
  std::string form;
  if (rank == 3)
    form = "log2(3)";
  else
    form = std::to_string(static_cast<int>(std::lround(v)));
  return {split, form, v, rank};
}

std::vector<ExpectedValue> rank_column(const std::vector<int>& ranks) {
  std::vector<ExpectedValue> out;
  const auto& splits = four_qubit_table_splits();
  for (std::size_t i = 0; i < splits.size(); ++i) out.push_back(rank_cell(splits[i], ranks[i]));
  return out;
}

std::vector<ZooEntry> build_zoo() {
  std::vector<ZooEntry> z;
  z.push_back({"ghz", "(|0...0> + |1...1>)/sqrt(2)", {{"N", 3}}, true,
               [](const ZooParams& p) { return ghz(count_param(p.at("N"), "N")); }, nullptr,
               [](const ZooParams& p) {
                 const int n = count_param(p.at("N"), "N");
                 std::vector<ExpectedValue> out;
                 if (n == 4) return rank_column({2, 2, 2, 2, 2});
                 std::string full;
                 for (int i = 1; i <= n && n < 10; ++i) full += (i > 1 ? "|" : "") + std::to_string(i);
                 if (!full.empty()) out.push_back(rank_cell(full, 2));
                 return out;
               }});
  z.push_back({"w", "uniform superposition of single excitations", {{"N", 3}}, true,
               [](const ZooParams& p) { return w(count_param(p.at("N"), "N")); }, nullptr,
               [](const ZooParams& p) {
                 const int n = count_param(p.at("N"), "N");
                 if (n == 4) return rank_column({4, 3, 2, 2, 2});
                 if (n == 3) return std::vector<ExpectedValue>{rank_cell("1|2|3", 3)};
                 return std::vector<ExpectedValue>{};
               }});
  z.push_back({"cluster4", "(|0000> + |0011> + |1100> - |1111>)/2", {}, true,
               [](const ZooParams&) { return cluster4(); }, nullptr,
               [](const ZooParams&) { return rank_column({4, 2, 2, 4, 2}); }});
  z.push_back({"bell_pair_product", "(|00> + |11>)(|00> + |11>)/2", {}, true,
               [](const ZooParams&) { return bell_pair_product(); }, nullptr,
               [](const ZooParams&) { return rank_column({4, 2, 1, 4, 2}); }});
  z.push_back({"werner", "lambda |psi-><psi-| + (1 - lambda) I/4", {{"lambda", 0.5}}, false, nullptr,
               [](const ZooParams& p) { return werner(p.at("lambda")); },
               [](const ZooParams& p) {
                 const double l = p.at("lambda");
                 return std::vector<ExpectedValue>{{"1|2", "3*lambda/2-1/2 (lambda>1/3), else 0",
                                                    l > 1.0 / 3.0 ? 1.5 * l - 0.5 : 0.0, 0}};
               }});
  z.push_back({"rho_g", "lambda |GHZ><GHZ| + (1 - lambda) |000><000|", {{"lambda", 0.5}}, false, nullptr,
               [](const ZooParams& p) { return rho_g(p.at("lambda")); },
               [](const ZooParams& p) {
                 std::vector<ExpectedValue> out;
                 for (const auto& s : three_party_table_splits()) out.push_back({s, "lambda", p.at("lambda"), 0});
                 return out;
               }});
  z.push_back({"rho_m", "three-party molecule state", {}, false, nullptr,
               [](const ZooParams&) { return rho_molecule(); },
               [](const ZooParams&) {
                 const auto& s = three_party_table_splits();
                 return std::vector<ExpectedValue>{
                     {s[0], "1", 1.0, 0}, {s[1], "2/3", 2.0 / 3.0, 0}, {s[2], "2/3", 2.0 / 3.0, 0}, {s[3], "2/3", 2.0 / 3.0, 0}};
               }});
  z.push_back({"rho_lambda_mu", "Bell pair shared by a random pair of three parties", {{"lambda", 0.2}, {"mu", 0.3}},
               false, nullptr, [](const ZooParams& p) { return rho_lambda_mu(p.at("lambda"), p.at("mu")); },
               [](const ZooParams& p) {
                 const double l = p.at("lambda"), m = p.at("mu");
                 const auto& s = three_party_table_splits();
                 return std::vector<ExpectedValue>{
                     {s[0], "1", 1.0, 0}, {s[1], "1-lambda", 1.0 - l, 0}, {s[2], "lambda+mu", l + m, 0}, {s[3], "1-mu", 1.0 - m, 0}};
               }});
  return z;
}

}  // namespace

PureState ghz(int n) {
  if (n < 2) throw DomainError("GHZ needs N >= 2");
  Vector v = basis_state(n, 0) + basis_state(n, (std::size_t{1} << n) - 1);
  return PureState(qubits(n), v);
}

PureState w(int n) {
  if (n < 2) throw DomainError("W needs N >= 2");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  for (int i = 0; i < n; ++i) v(static_cast<Eigen::Index>(std::size_t{1} << i)) = 1.0;
  return PureState(qubits(n), v);
}

PureState cluster4() {
  Vector v = Vector::Zero(16);
  v(0) = 1.0;
  v(3) = 1.0;
  v(12) = 1.0;
  v(15) = -1.0;
  return PureState(qubits(4), v);
}

PureState bell_pair_product() { return ghz(2).tensor(ghz(2)); }

DensityOperator werner(double lambda) {
  check_unit(lambda, "lambda");
  Vector s = Vector::Zero(4);
  s(1) = 1.0 / std::sqrt(2.0);
  s(2) = -1.0 / std::sqrt(2.0);
  const Matrix m = lambda * s * s.adjoint() + (1.0 - lambda) * Matrix::Identity(4, 4) / 4.0;
  return DensityOperator::normalized(qubits(2), m);
}

DensityOperator rho_lambda_mu(double lambda, double mu) {
  check_unit(lambda, "lambda");
  check_unit(mu, "mu");
  const double nu = 1.0 - lambda - mu;
  if (nu < -1e-12) throw DomainError("lambda + mu must not exceed 1");
  const Vector a = bell_with_zero(0, 1);
  const Vector b = bell_with_zero(1, 2);
  const Vector c = bell_with_zero(0, 2);
  const Matrix m = lambda * a * a.adjoint() + mu * b * b.adjoint() + std::max(nu, 0.0) * c * c.adjoint();
  return DensityOperator::normalized(qubits(3), m);
}

DensityOperator rho_molecule() { return rho_lambda_mu(1.0 / 3.0, 1.0 / 3.0); }

DensityOperator rho_g(double lambda) {
  check_unit(lambda, "lambda");
  const Vector g = ghz(3).amplitudes();
  const Vector z = basis_state(3, 0);
  return DensityOperator::normalized(qubits(3), lambda * g * g.adjoint() + (1.0 - lambda) * z * z.adjoint());
}

ZooParams ZooEntry::resolve(const ZooParams& given) const {
  ZooParams p = defaults;
  for (const auto& [k, v] : given) {
    if (!defaults.count(k)) throw DomainError("zoo state '" + name + "' has no parameter '" + k + "'");
    p[k] = v;
  }
  return p;
}

DensityOperator ZooEntry::density(const ZooParams& given) const {
  const ZooParams p = resolve(given);
  if (pure) return DensityOperator::from_pure(build_pure(p));
  return build_mixed(p);
}

const std::vector<ZooEntry>& zoo() {
  static const std::vector<ZooEntry> z = build_zoo();
  return z;
}

const ZooEntry& zoo_entry(const std::string& name) {
  for (const auto& e : zoo())
    if (e.name == name) return e;
  throw DomainError("unknown zoo state '" + name + "'");
}

const std::vector<std::string>& four_qubit_table_splits() {
  static const std::vector<std::string> s{"1|2|3|4", "12|3|4", "12|34", "13|24", "123|4"};
  return s;
}

const std::vector<std::string>& three_party_table_splits() {
  static const std::vector<std::string> s{"1|2|3", "12|3", "13|2", "1|23"};
  return s;
}

}  // namespace schmidt
