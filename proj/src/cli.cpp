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

#include "schmidt/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "schmidt/monotone.hpp"

namespace schmidt {

namespace {

constexpr double kMatchTol = 1e-6;

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string params_label(const ZooParams& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : p) {
    os << (first ? "" : " ") << k << '=' << v;
    first = false;
  }
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

enum class Format { human, json, csv };

struct RunConfig {
  std::string state_path;
  std::string zoo;
  std::vector<std::string> params;
  std::string splits;
  std::optional<double> tol;
  std::optional<double> eps_fit;
  std::uint64_t seed = FitOptions{}.seed;
  std::string format = "human";
  std::string emit_witness;
  // monotone
  int seeds = 200;
  std::vector<int> branches{2, 3};
  int unitary_seeds = 10;
  int grouped_every = 10;
  int threads = 0;
  // table2
  std::vector<std::string> only;
  // verify
  std::string decomposition;

  Format fmt() const { return format == "json" ? Format::json : format == "csv" ? Format::csv : Format::human; }

  MixedOptions options() const {
    MixedOptions o;
    o.seed = seed;
    o.fit.seed = seed;
    if (tol) o.fit.rank_tol = *tol;
    if (eps_fit) o.fit.eps_fit = *eps_fit;
    return o;
  }
};

struct Source {
  std::string label;
  DensityOperator rho;
  std::optional<PureState> pure;
  const ZooEntry* entry = nullptr;
  ZooParams params;
};

ZooParams parse_params(const std::vector<std::string>& items) {
  ZooParams p;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects k=v, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != val.size() || val.empty()) throw InputError("--param value for '" + key + "' is not a number");
    p[key] = v;
  }
  return p;
}

Source load_source(const RunConfig& cfg) {
  if (cfg.state_path.empty() == cfg.zoo.empty()) throw InputError("give exactly one of --state FILE or --zoo NAME");
  if (!cfg.state_path.empty()) {
    if (!cfg.params.empty()) throw InputError("--param applies to --zoo states only");
    LoadedState s = load_state(cfg.state_path);
    return {cfg.state_path, s.rho, s.pure, nullptr, {}};
  }
  try {
    const ZooEntry& e = zoo_entry(cfg.zoo);
    const ZooParams p = e.resolve(parse_params(cfg.params));
    std::string label = e.name;
    if (!p.empty()) label += " " + params_label(p);
    if (e.pure) {
      PureState psi = e.build_pure(p);
      return {label, DensityOperator::from_pure(psi), psi, &e, p};
    }
    return {label, e.build_mixed(p), std::nullopt, &e, p};
  } catch (const DomainError& ex) {
    throw InputError(ex.what());
  }
}

// "all", a block count k, "table", or comma-separated splits like "12|3,1|23".
std::vector<Split> select_splits(const std::string& spec, int n) {
  try {
    if (spec.empty() || spec == "all") return enumerate_splits(n, std::nullopt);
    if (spec == "table") {
      const auto& names = n == 4 ? four_qubit_table_splits() : three_party_table_splits();
      if (n != 4 && n != 3) throw InputError("--splits table needs three or four parties");
      std::vector<Split> out;
      for (const auto& s : names) out.push_back(Split::parse(s, n));
      return out;
    }
    if (spec.find_first_not_of("0123456789") == std::string::npos) return enumerate_splits(n, std::stoi(spec));
    std::vector<Split> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(Split::parse(item, n));
    if (out.empty()) throw InputError("empty split list");
    return out;
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

std::optional<ExpectedValue> expected_for(const Source& src, const Split& split) {
  if (!src.entry) return std::nullopt;
  for (const auto& e : src.entry->expected(src.params))
    if (e.split == split.to_string()) return e;
  return std::nullopt;
}

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  f << doc.dump(2) << '\n';
}

WeightedDecomposition decompose_member(double w, const PureState& psi, const Split& split, const FitOptions& fit) {
  const RankBracket b = rank_bracket(psi, split, fit);
  return {w, *b.witness_hi};
}

// ---- measure -------------------------------------------------------------

struct MeasureRow {
  std::string split;
  std::string label;
  bool pure = true;
  int rank_lo = 0;
  int rank_hi = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::string form;
  bool exact = false;
  std::string certificate;
  std::optional<ExpectedValue> expected;
};

int cmd_measure(const RunConfig& cfg, std::ostream& out) {
  const Source src = load_source(cfg);
  const int n = src.rho.layout().parties();
  const auto splits = select_splits(cfg.splits, n);
  const MixedOptions opts = cfg.options();
  std::vector<MeasureRow> rows;
  std::vector<json> witnesses;
  bool breach = false;
  for (const auto& split : splits) {
    MeasureRow r;
    r.split = split.to_string();
    r.label = split.label();
    r.expected = expected_for(src, split);
    if (src.pure) {
      const RankBracket b = rank_bracket(*src.pure, split, opts.fit);
      const MeasureValue v{b.lo, b.hi, b.exact};
      r.rank_lo = b.lo;
      r.rank_hi = b.hi;
      r.lower = v.lo();
      r.upper = v.hi();
      r.form = v.rank_form();
      r.exact = b.exact;
      r.certificate = b.lower_certificate;
      if (!cfg.emit_witness.empty() && b.witness_hi) witnesses.push_back(decomposition_to_json(*b.witness_hi));
    } else {
      const MixedMeasureValue v = schmidt_measure_mixed(src.rho, split, opts);
      r.pure = false;
      r.lower = v.lower;
      r.upper = v.upper;
      r.form = mixed_form(v);
      r.exact = v.exact;
      if (!cfg.emit_witness.empty() && v.witness) {
        std::vector<WeightedDecomposition> members;
        for (std::size_t i = 0; i < v.witness->size(); ++i)
          members.push_back(decompose_member(v.witness->weights()[i], v.witness->states()[i], split, opts.fit));
        witnesses.push_back(ensemble_to_json(members));
      }
    }
    if (r.lower > r.upper + 1e-9) breach = true;
    rows.push_back(std::move(r));
  }
  if (!cfg.emit_witness.empty()) {
    if (witnesses.size() == 1)
      write_json_file(cfg.emit_witness, witnesses.front());
    else
      write_json_file(cfg.emit_witness, json(witnesses));
  }

  switch (cfg.fmt()) {
    case Format::json: {
      json doc;
      doc["command"] = "measure";
      doc["state"] = src.label;
      doc["seed"] = cfg.seed;
      json arr = json::array();
      for (const auto& r : rows) {
        json j{{"split", r.split}, {"label", r.label}, {"lower", r.lower}, {"upper", r.upper},
               {"value", r.form}, {"exact", r.exact}};
        if (r.pure) {
          j["rank_lo"] = r.rank_lo;
          j["rank_hi"] = r.rank_hi;
          j["lower_certificate"] = r.certificate;
        }
        if (r.expected) j["expected"] = r.expected->form;
        arr.push_back(std::move(j));
      }
      doc["rows"] = std::move(arr);
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "split,label,lower,upper,value,exact,expected\n";
      for (const auto& r : rows)
        out << csv_field(r.split) << ',' << csv_field(r.label) << ',' << fixed6(r.lower) << ',' << fixed6(r.upper)
            << ',' << csv_field(r.form) << ',' << (r.exact ? "true" : "false") << ','
            << (r.expected ? csv_field(r.expected->form) : "") << '\n';
      break;
    case Format::human:
      out << "state: " << src.label << '\n';
      out << pad("split", 14) << pad("lower", 11) << pad("upper", 11) << pad("value", 28) << pad("exact", 7)
          << "expected\n";
      for (const auto& r : rows)
        out << pad(r.split, 14) << pad(fixed6(r.lower), 11) << pad(fixed6(r.upper), 11) << pad(r.form, 28)
            << pad(r.exact ? "yes" : "no", 7) << (r.expected ? r.expected->form : "-") << '\n';
      break;
  }
  return breach ? kExitInvariant : kExitOk;
}

// ---- tables --------------------------------------------------------------

std::string cell_text(const Table2Cell& c) {
  std::string s = c.exact ? fixed6(c.upper) : "[" + fixed6(c.lower) + ", " + fixed6(c.upper) + "]";
  if (!c.match) s += " *";
  return s;
}

int cmd_table1(const RunConfig& cfg, std::ostream& out) {
  const auto cells = compute_table1(cfg.options().fit);
  switch (cfg.fmt()) {
    case Format::json: {
      json doc = table1_json(cells);
      doc["seed"] = cfg.seed;
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "state,split,rank_lo,rank_hi,value,exact,expected,match\n";
      for (const auto& c : cells)
        out << c.state << ',' << csv_field(c.split) << ',' << c.rank_lo << ',' << c.rank_hi << ','
            << csv_field(MeasureValue{c.rank_lo, c.rank_hi, c.exact}.rank_form()) << ',' << (c.exact ? "true" : "false")
            << ',' << csv_field(log2_form(c.expected_rank)) << ',' << (c.match ? "true" : "false") << '\n';
      break;
    case Format::human: {
      std::vector<std::string> states;
      for (const auto& c : cells)
        if (states.empty() || states.back() != c.state) states.push_back(c.state);
      out << pad("split", 14);
      for (const auto& s : states) out << pad(s, 20);
      out << '\n';
      for (const auto& split : four_qubit_table_splits()) {
        out << pad(Split::parse(split, 4).label(), 14);
        for (const auto& s : states)
          for (const auto& c : cells)
            if (c.state == s && c.split == split)
              out << pad(MeasureValue{c.rank_lo, c.rank_hi, c.exact}.rank_form() + (c.match ? "" : " *"), 20);
        out << '\n';
      }
      bool all = true;
      for (const auto& c : cells) all = all && c.match;
      out << (all ? "all cells closed at the tabulated values\n" : "* bracket open or different from the tabulated value\n");
      break;
    }
  }
  return kExitOk;
}

int cmd_table2(const RunConfig& cfg, std::ostream& out) {
  for (const auto& o : cfg.only)
    if (o != "rho_g" && o != "rho_m" && o != "rho_lambda_mu") throw InputError("--only takes rho_g, rho_m or rho_lambda_mu");
  const auto cells = compute_table2(cfg.options(), cfg.only);
  switch (cfg.fmt()) {
    case Format::json: {
      json doc = table2_json(cells);
      doc["seed"] = cfg.seed;
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "state,params,split,lower,upper,exact,expected_form,expected,match\n";
      for (const auto& c : cells)
        out << c.state << ',' << csv_field(params_label(c.params)) << ',' << csv_field(c.split) << ','
            << fixed6(c.lower) << ',' << fixed6(c.upper) << ',' << (c.exact ? "true" : "false") << ','
            << csv_field(c.expected_form) << ',' << fixed6(c.expected) << ',' << (c.match ? "true" : "false") << '\n';
      break;
    case Format::human: {
      const auto& splits = three_party_table_splits();
      out << pad("state", 30);
      for (const auto& s : splits) out << pad(Split::parse(s, 3).label(), 26);
      out << '\n';
      std::map<std::string, std::string> tabulated;
      for (std::size_t i = 0; i < cells.size(); i += splits.size()) {
        out << pad(cells[i].state + " " + params_label(cells[i].params), 30);
        for (std::size_t j = 0; j < splits.size() && i + j < cells.size(); ++j) {
          out << pad(cell_text(cells[i + j]), 26);
          tabulated[cells[i + j].state + " " + cells[i + j].split] = cells[i + j].expected_form;
        }
        out << '\n';
      }
      out << "tabulated:";
      for (const auto& [k, v] : tabulated) out << "  " << k << " -> " << v;
      out << "\n* bounds differ from the tabulated value by more than 1e-6\n";
      break;
    }
  }
  return kExitOk;
}

// ---- bsa -----------------------------------------------------------------

int cmd_bsa(const RunConfig& cfg, std::ostream& out) {
  const Source src = load_source(cfg);
  const int n = src.rho.layout().parties();
  std::string spec = cfg.splits;
  if (spec.empty() || spec == "all") {
    if (n != 2) throw InputError("bsa needs --splits with one 2-split for more than two parties");
    spec = "1|2";
  }
  const auto splits = select_splits(spec, n);
  if (splits.size() != 1 || splits.front().size() != 2) throw InputError("bsa takes exactly one 2-split");
  const Split& split = splits.front();
  const MixedOptions opts = cfg.options();
  const BsaResult b = bsa(src.rho, split, opts);

  Matrix sum = Matrix::Zero(src.rho.matrix().rows(), src.rho.matrix().cols());
  for (const auto& p : b.separable_part) sum += p.weight * p.state.projector();
  const double psd = min_eigenvalue(src.rho.matrix() - sum);
  const bool breach = psd < -1e-9;

  if (!cfg.emit_witness.empty()) {
    std::vector<WeightedDecomposition> members;
    for (const auto& p : b.separable_part) members.push_back(decompose_member(p.weight, p.state, split, opts.fit));
    if (b.remainder) {
      const Ensemble rem = Ensemble::from_density(*b.remainder, 1e-14);
      for (std::size_t i = 0; i < rem.size(); ++i)
        members.push_back(decompose_member((1.0 - b.s) * rem.weights()[i], rem.states()[i], split, opts.fit));
    }
    write_json_file(cfg.emit_witness, ensemble_to_json(members));
  }

  switch (cfg.fmt()) {
    case Format::json: {
      json doc{{"command", "bsa"},       {"state", src.label},        {"split", split.to_string()},
               {"s", b.s},              {"s_upper", b.s_upper},      {"measure_upper", 1.0 - b.s},
               {"certified", b.certified_feasible}, {"product_terms", b.separable_part.size()},
               {"remainder_min_eigenvalue", psd}, {"seed", cfg.seed}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "state,split,s,s_upper,measure_upper,certified,product_terms\n";
      out << csv_field(src.label) << ',' << csv_field(split.to_string()) << ',' << fixed6(b.s) << ','
          << fixed6(b.s_upper) << ',' << fixed6(1.0 - b.s) << ',' << (b.certified_feasible ? "true" : "false") << ','
          << b.separable_part.size() << '\n';
      break;
    case Format::human:
      out << "state: " << src.label << "\nsplit: " << split.label() << '\n';
      out << "separable weight s     " << fixed6(b.s) << '\n';
      out << "certified bound on s   " << fixed6(b.s_upper) << '\n';
      out << "1 - s                  " << fixed6(1.0 - b.s) << '\n';
      out << "optimal                " << (b.certified_feasible ? "yes" : "not certified") << '\n';
      out << "product terms          " << b.separable_part.size() << '\n';
      break;
  }
  return breach ? kExitInvariant : kExitOk;
}

// ---- monotone ------------------------------------------------------------

int cmd_monotone(const RunConfig& cfg, std::ostream& out) {
  SuiteOptions so;
  so.seeds = cfg.seeds;
  so.branch_counts = cfg.branches;
  so.unitary_seeds = cfg.unitary_seeds;
  so.grouped_every = cfg.grouped_every;
  so.threads = cfg.threads;
  so.mixed = cfg.options();
  if (cfg.seeds < 1) throw InputError("--seeds must be positive");
  for (int b : cfg.branches)
    if (b < 2) throw InputError("--branches entries must be at least 2");
  if (!cfg.state_path.empty()) throw InputError("monotone runs on pure zoo states; use --zoo");
  if (!cfg.zoo.empty()) so.states = {{cfg.zoo, parse_params(cfg.params)}};
  if (!cfg.splits.empty() && cfg.splits != "all") so.split = cfg.splits;
  SuiteReport rep;
  try {
    rep = run_monotone_suite(so);
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }

  switch (cfg.fmt()) {
    case Format::json: {
      json cases = json::array();
      for (const auto& c : rep.cases)
        cases.push_back({{"state", c.state}, {"split", c.split}, {"party", c.party}, {"branches", c.branches},
                         {"seed", c.seed}, {"P_before", c.p_before}, {"sum_pL", c.average_lower},
                         {"verdict", to_string(c.verdict)}});
      json doc{{"command", "monotone"}, {"cases", std::move(cases)},   {"violations", rep.violations},
               {"verified", rep.verified}, {"consistent", rep.consistent}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << "state,split,party,branches,seed,P_before,sum_pL,verdict\n";
      for (const auto& c : rep.cases)
        out << csv_field(c.state) << ',' << csv_field(c.split) << ',' << c.party << ',' << c.branches << ',' << c.seed
            << ',' << fixed6(c.p_before) << ',' << fixed6(c.average_lower) << ',' << to_string(c.verdict) << '\n';
      break;
    case Format::human: {
      struct Tally {
        int cases = 0, unitary = 0, viol = 0;
        double slack = -1e300;
      };
      std::vector<std::string> order;
      std::map<std::string, Tally> t;
      for (const auto& c : rep.cases) {
        if (!t.count(c.state)) order.push_back(c.state);
        Tally& x = t[c.state];
        ++x.cases;
        if (c.branches == 1) ++x.unitary;
        if (c.verdict == Verdict::violation) ++x.viol;
        if (c.branches > 1) x.slack = std::max(x.slack, c.average_lower - c.p_before);
      }
      out << pad("state", 16) << pad("cases", 8) << pad("unitary", 9) << pad("violations", 12)
          << "max(sum pL - P)\n";
      for (const auto& s : order)
        out << pad(s, 16) << pad(std::to_string(t[s].cases), 8) << pad(std::to_string(t[s].unitary), 9)
            << pad(std::to_string(t[s].viol), 12) << fixed6(t[s].slack) << '\n';
      out << "total " << rep.cases.size() << " cases, " << rep.violations << " violations\n";
      break;
    }
  }
  return rep.violations > 0 ? kExitInvariant : kExitOk;
}

// ---- verify --------------------------------------------------------------

json verify_one(const json& doc, const Source& src, const RunConfig& cfg) {
  const double tol = cfg.tol.value_or(doc.contains("members") ? 1e-8 : 1e-9);
  json rep;
  if (doc.contains("members")) {
    const EnsembleVerifyReport r = verify_ensemble(doc, src.rho, tol);
    rep = {{"kind", "ensemble"}, {"members", r.members}, {"max_terms", r.max_terms},
           {"weight_defect", r.weight_defect}, {"assembly_residual", r.assembly_residual}, {"passed", r.passed}};
  } else {
    if (!src.pure) throw InputError("a product decomposition needs a pure target state");
    const auto& ds = src.pure->layout().dims();
    const ProductDecomposition d = parse_decomposition(doc, std::vector<int>(ds.begin(), ds.end()));
    const VerifyReport r = verify_decomposition(d, *src.pure, tol, cfg.options().fit.norm_cap);
    rep = {{"kind", "decomposition"}, {"split", d.split.to_string()}, {"terms", r.terms},
           {"residual", r.residual}, {"claimed_residual", r.claimed_residual}, {"max_alpha", r.max_alpha},
           {"max_norm_defect", r.max_norm_defect}, {"passed", r.passed}};
  }
  return rep;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const json doc = read_json_file(cfg.decomposition);
  const Source src = load_source(cfg);
  // A file written for several splits holds an array of documents.
  std::vector<json> reports;
  if (doc.is_array()) {
    if (doc.empty()) throw InputError("empty witness array");
    for (const auto& d : doc) reports.push_back(verify_one(d, src, cfg));
  } else {
    reports.push_back(verify_one(doc, src, cfg));
  }
  bool passed = true;
  for (auto& r : reports) {
    passed = passed && r["passed"].get<bool>();
    r["state"] = src.label;
  }
  switch (cfg.fmt()) {
    case Format::json:
      out << (reports.size() == 1 ? reports.front() : json{{"documents", reports}, {"passed", passed}}).dump(2) << '\n';
      break;
    case Format::csv:
      for (std::size_t i = 0; i < reports.size(); ++i) {
        std::string head, row;
        for (auto it = reports[i].begin(); it != reports[i].end(); ++it) {
          const std::string sep = it == reports[i].begin() ? "" : ",";
          head += sep + it.key();
          row += sep + csv_field(it->is_string() ? it->get<std::string>() : it->dump());
        }
        if (i == 0 || reports[i]["kind"] != reports[i - 1]["kind"]) out << head << '\n';
        out << row << '\n';
      }
      break;
    case Format::human:
      for (std::size_t i = 0; i < reports.size(); ++i) {
        if (i) out << '\n';
        for (auto it = reports[i].begin(); it != reports[i].end(); ++it)
          out << pad(it.key(), 20) << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
      }
      break;
  }
  return passed ? kExitOk : kExitInvariant;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool with_source) {
  if (with_source) {
    sub->add_option("--state", cfg.state_path, "state file (JSON)");
    sub->add_option("--zoo", cfg.zoo, "named state: ghz, w, cluster4, bell_pair_product, werner, rho_g, rho_m, "
                                      "rho_lambda_mu");
    sub->add_option("--param", cfg.params, "zoo parameter k=v (repeatable)");
  }
  sub->add_option("--tol", cfg.tol, "relative rank tolerance");
  sub->add_option("--eps-fit", cfg.eps_fit, "residual below which a fit counts as a witness");
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"human", "json", "csv"}));
}

}  // namespace

std::vector<Table1Cell> compute_table1(const FitOptions& fit) {
  const std::vector<std::pair<std::string, ZooParams>> states{
      {"ghz", {{"N", 4}}}, {"w", {{"N", 4}}}, {"cluster4", {}}, {"bell_pair_product", {}}};
  std::vector<Table1Cell> cells;
  for (const auto& [name, given] : states) {
    const ZooEntry& e = zoo_entry(name);
    const ZooParams p = e.resolve(given);
    const PureState psi = e.build_pure(p);
    for (const auto& ex : e.expected(p)) {
      const RankBracket b = rank_bracket(psi, Split::parse(ex.split, 4), fit);
      Table1Cell c{name == "ghz" || name == "w" ? name + "4" : name, ex.split, b.lo, b.hi, b.exact, ex.rank, false};
      c.match = b.exact && b.lo == ex.rank &&
                std::abs(std::log2(static_cast<double>(b.lo)) - ex.value) <= 1e-9;
      cells.push_back(std::move(c));
    }
  }
  return cells;
}

std::vector<Table2Cell> compute_table2(const MixedOptions& opts, const std::vector<std::string>& only) {
  auto wanted = [&](const std::string& n) { return only.empty() || std::find(only.begin(), only.end(), n) != only.end(); };
  std::vector<std::pair<std::string, ZooParams>> points;
  if (wanted("rho_g"))
    for (int i = 1; i <= 9; ++i) points.push_back({"rho_g", {{"lambda", i / 10.0}}});
  if (wanted("rho_m")) points.push_back({"rho_m", {}});
  if (wanted("rho_lambda_mu"))
    for (int i = 1; i <= 9; ++i)
      for (int j = 1; i + j <= 9; ++j) points.push_back({"rho_lambda_mu", {{"lambda", i / 10.0}, {"mu", j / 10.0}}});
  std::vector<Table2Cell> cells;
  for (const auto& [name, given] : points) {
    const ZooEntry& e = zoo_entry(name);
    const ZooParams p = e.resolve(given);
    const DensityOperator rho = e.density(p);
    for (const auto& ex : e.expected(p)) {
      const MixedMeasureValue v = schmidt_measure_mixed(rho, Split::parse(ex.split, 3), opts);
      Table2Cell c{name, given, ex.split, v.lower, v.upper, v.exact, ex.value, ex.form, false};
      c.match = v.exact && std::abs(v.lower - ex.value) <= kMatchTol && std::abs(v.upper - ex.value) <= kMatchTol;
      cells.push_back(std::move(c));
    }
  }
  return cells;
}

json table1_json(const std::vector<Table1Cell>& cells) {
  json arr = json::array();
  bool all = true;
  for (const auto& c : cells) {
    all = all && c.match;
    arr.push_back({{"state", c.state}, {"split", c.split}, {"rank_lo", c.rank_lo}, {"rank_hi", c.rank_hi},
                   {"value", MeasureValue{c.rank_lo, c.rank_hi, c.exact}.rank_form()},
                   {"measure", std::log2(static_cast<double>(c.rank_hi))}, {"exact", c.exact},
                   {"expected", log2_form(c.expected_rank)}, {"match", c.match}});
  }
  return {{"command", "table1"}, {"cells", std::move(arr)}, {"all_match", all}};
}

json table2_json(const std::vector<Table2Cell>& cells) {
  json arr = json::array();
  int matched = 0;
  for (const auto& c : cells) {
    matched += c.match ? 1 : 0;
    arr.push_back({{"state", c.state}, {"params", c.params}, {"split", c.split}, {"lower", c.lower},
                   {"upper", c.upper}, {"exact", c.exact}, {"expected_form", c.expected_form},
                   {"expected", c.expected}, {"match", c.match}});
  }
  return {{"command", "table2"}, {"cells", std::move(arr)}, {"matched", matched},
          {"total", static_cast<int>(cells.size())}};
}

std::string mixed_form(const MixedMeasureValue& v) {
  if (!v.witness) return fixed6(v.upper);
  std::map<int, double> by_rank;
  for (std::size_t i = 0; i < v.witness_ranks.size(); ++i)
    if (v.witness_ranks[i] > 1) by_rank[v.witness_ranks[i]] += v.witness->weights()[i];
  // Weights are shown with six decimals; terms that round away are dropped.
  std::string s;
  for (const auto& [r, w] : by_rank) {
    if (w < 5e-7) continue;
    if (!s.empty()) s += " + ";
    s += std::abs(w - 1.0) < 5e-7 ? log2_form(r) : fixed6(w) + "*" + log2_form(r);
  }
  if (s.empty()) return "0";
  return s;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schmidt measure of multipartite quantum states"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* measure = app.add_subcommand("measure", "measure per split (pure: rank bracket, mixed: convex roof bounds)");
  add_common(measure, cfg, true);
  measure->add_option("--splits", cfg.splits, "all (default), k, table, or e.g. 12|3,1|23");
  measure->add_option("--emit-witness", cfg.emit_witness, "write witness decompositions (JSON)");

  auto* table1 = app.add_subcommand("table1", "four-qubit pure-state table");
  add_common(table1, cfg, false);

  auto* table2 = app.add_subcommand("table2", "three-party mixed-state table on the parameter grid");
  add_common(table2, cfg, false);
  table2->add_option("--only", cfg.only, "restrict to rho_g, rho_m, rho_lambda_mu");

  auto* bsa_cmd = app.add_subcommand("bsa", "best separable approximation across a 2-split");
  add_common(bsa_cmd, cfg, true);
  bsa_cmd->add_option("--splits", cfg.splits, "the 2-split, e.g. 12|3 (default 1|2 for two parties)");
  bsa_cmd->add_option("--emit-witness", cfg.emit_witness, "write the separable part and remainder (JSON)");

  auto* mono = app.add_subcommand("monotone", "randomized local-measurement monotonicity suite");
  add_common(mono, cfg, true);
  mono->add_option("--splits", cfg.splits, "one split (default: every party separate)");
  mono->add_option("--seeds", cfg.seeds, "channels per state, party and branch count");
  mono->add_option("--branches", cfg.branches, "branch counts")->delimiter(',');
  mono->add_option("--unitary-seeds", cfg.unitary_seeds, "local unitaries per state and party");
  mono->add_option("--grouped-every", cfg.grouped_every, "every n-th seed merges two outcomes (0 = never)");
  mono->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");

  auto* verify = app.add_subcommand("verify", "independent reassembly check of an exported witness");
  add_common(verify, cfg, true);
  verify->add_option("file", cfg.decomposition, "decomposition or ensemble (JSON)")->required();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*measure) return cmd_measure(cfg, out);
    if (*table1) return cmd_table1(cfg, out);
    if (*table2) return cmd_table2(cfg, out);
    if (*bsa_cmd) return cmd_bsa(cfg, out);
    if (*mono) return cmd_monotone(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitInput;
}

}  // namespace schmidt
