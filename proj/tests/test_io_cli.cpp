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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "schmidt/cli.hpp"
#include "support.hpp"

using namespace schmidt;
using schmidt::testing::ket;
using schmidt::testing::qubits;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "schmidt");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("schmidt_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const json& doc) const {
    std::ofstream(file(name)) << doc.dump();
    return file(name);
  }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("pure state documents round trip") {
    const PureState psi = w(3);
    const LoadedState back = parse_state(state_to_json(psi));
    REQUIRE(back.pure.has_value());
    CHECK((back.pure->amplitudes() - psi.amplitudes()).norm() < 1e-15);
    CHECK((back.rho.matrix() - psi.projector()).norm() < 1e-15);
  }

  TEST_CASE("density documents round trip") {
    const LoadedState back = parse_state(state_to_json(werner(0.3)));
    CHECK_FALSE(back.pure.has_value());
    CHECK((back.rho.matrix() - werner(0.3).matrix()).norm() < 1e-15);
  }

  TEST_CASE("malformed state documents are input errors") {
    CHECK_THROWS_AS(parse_state(json::array()), InputError);
    CHECK_THROWS_AS(parse_state(json{{"kind", "mixed"}, {"dims", {2}}}), InputError);
    CHECK_THROWS_AS(parse_state(json{{"kind", "pure"}, {"dims", {2, 2}}, {"amplitudes", {{1, 0}}}}), InputError);
    CHECK_THROWS_AS(parse_state(json{{"kind", "pure"}, {"dims", {2, 1}}, {"amplitudes", {{1, 0}, {0, 0}}}}),
                    InputError);
    CHECK_THROWS_AS(parse_state(json{{"kind", "pure"}, {"dims", {2}}, {"amplitudes", {{0, 0}, {0, 0}}}}), InputError);
    CHECK_THROWS_AS(parse_state(json{{"kind", "pure"}, {"dims", {2}}, {"amplitudes", {"1", "0"}}}), InputError);
    CHECK_THROWS_AS(parse_state(json{{"kind", "pure"}, {"dims", {2}}, {"amplitudes", {{1, 0, 0}, {0, 0}}}}), InputError);
  }

  TEST_CASE("real amplitudes may be written as bare numbers") {
    const LoadedState s = parse_state(json{{"kind", "pure"}, {"dims", {2}}, {"amplitudes", {0.6, 0.8}}});
    CHECK(std::abs(s.pure->amplitudes()(1) - cplx(0.8)) < 1e-15);
  }

  TEST_CASE("normalization is explicit") {
    const json raw{{"kind", "pure"}, {"dims", {2, 2}}, {"amplitudes", {{1, 0}, {0, 0}, {0, 0}, {1, 0}}}};
    CHECK_THROWS_AS(parse_state(raw), InputError);
    json fixed = raw;
    fixed["normalize"] = true;
    const LoadedState s = parse_state(fixed);
    CHECK(s.pure->amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-15));
    json rho = state_to_json(werner(0.5));
    rho["matrix"][0][1] = json::array({0.3, 0.0});
    CHECK_THROWS_AS(parse_state(rho), InputError);
  }

  TEST_CASE("decompositions round trip and verify") {
    const RankBracket b = rank_bracket(w(3), Split::full(3));
    REQUIRE(b.witness_hi.has_value());
    const json doc = decomposition_to_json(*b.witness_hi);
    CHECK(doc["split"] == json{{1}, {2}, {3}});
    const ProductDecomposition back = parse_decomposition(doc);
    CHECK(back.size() == 3);
    CHECK((back.reassemble() - w(3).amplitudes()).norm() < 1e-9);
    const VerifyReport r = verify_decomposition(back, w(3));
    CHECK(r.passed);
    CHECK(r.terms == 3);
    CHECK(r.residual < 1e-9);
  }

  TEST_CASE("tampered decompositions fail verification") {
    const RankBracket b = rank_bracket(ghz(3), Split::full(3));
    json doc = decomposition_to_json(*b.witness_hi);
    SUBCASE("changed coefficient") {
      doc["terms"][0]["alpha"][0] = doc["terms"][0]["alpha"][0].get<double>() + 1e-3;
      CHECK_FALSE(verify_decomposition(parse_decomposition(doc), ghz(3)).passed);
    }
    SUBCASE("dropped term") {
      doc["terms"].erase(1);
      CHECK_FALSE(verify_decomposition(parse_decomposition(doc), ghz(3)).passed);
    }
    SUBCASE("wrong claimed residual") {
      doc["residual"] = 0.5;
      CHECK_FALSE(verify_decomposition(parse_decomposition(doc), ghz(3)).passed);
    }
    SUBCASE("wrong target") {
      CHECK_FALSE(verify_decomposition(parse_decomposition(doc), w(3)).passed);
    }
  }

  TEST_CASE("decompositions without dims take them from the target") {
    const RankBracket b = rank_bracket(ghz(3), Split::full(3));
    json doc = decomposition_to_json(*b.witness_hi);
    doc.erase("dims");
    CHECK_THROWS_AS(parse_decomposition(doc), InputError);
    CHECK(parse_decomposition(doc, std::vector<int>{2, 2, 2}).dims == std::vector<int>{2, 2, 2});
  }

  TEST_CASE("measure prints the rank bracket") {
    const Run r = run({"measure", "--zoo", "w", "--param", "N=3", "--splits", "1|2|3", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const json doc = json::parse(r.out);
    REQUIRE(doc["rows"].size() == 1);
    CHECK(doc["rows"][0]["rank_lo"] == 3);
    CHECK(doc["rows"][0]["rank_hi"] == 3);
    CHECK(doc["rows"][0]["value"] == "log2(3)");
    CHECK(doc["rows"][0]["exact"] == true);
  }

  TEST_CASE("measure over all splits of GHZ4") {
    const Run r = run({"measure", "--zoo", "ghz", "--param", "N=4", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["rows"].size() == 14);
    for (const auto& row : doc["rows"]) CHECK(row["value"] == "1");
  }

  TEST_CASE("measure reads state files") {
    TempDir dir;
    const std::string path = dir.write("rho.json", state_to_json(werner(0.8)));
    const Run r = run({"measure", "--state", path, "--format", "csv"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("split,label,lower,upper,value,exact,expected\n", 0) == 0);
    CHECK(r.out.find("0.700000") != std::string::npos);
  }

  TEST_CASE("witnesses written by measure pass verify") {
    TempDir dir;
    const std::string w_path = dir.file("w.json");
    REQUIRE(run({"measure", "--zoo", "w", "--emit-witness", w_path}).code == kExitOk);
    const Run v = run({"verify", w_path, "--zoo", "w", "--format", "json"});
    CHECK(v.code == kExitOk);
    CHECK(json::parse(v.out)["passed"] == true);

    json doc = read_json_file(w_path);
    if (doc.is_array()) doc = doc[0];
    doc["terms"][0]["alpha"] = json::array({5.0, 0.0});
    const std::string bad = dir.write("bad.json", doc);
    CHECK(run({"verify", bad, "--zoo", "w"}).code == kExitInvariant);
  }

  TEST_CASE("bsa of a Werner state") {
    TempDir dir;
    const std::string ens = dir.file("ens.json");
    const Run r = run({"bsa", "--zoo", "werner", "--param", "lambda=0.7", "--format", "json", "--emit-witness", ens});
    REQUIRE(r.code == kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["s"].get<double>() == doctest::Approx(0.45).epsilon(1e-6));
    CHECK(doc["certified"] == true);
    const Run v = run({"verify", ens, "--zoo", "werner", "--param", "lambda=0.7", "--format", "json"});
    CHECK(v.code == kExitOk);
  }

  TEST_CASE("table1 matches in every cell") {
    const Run r = run({"table1", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc["cells"].size() == 20);
    CHECK(doc["all_match"] == true);
  }

  TEST_CASE("monotone on one small state") {
    const Run r =
        run({"monotone", "--zoo", "ghz", "--param", "N=3", "--seeds", "4", "--unitary-seeds", "1", "--format", "csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("state,split,party,branches,seed,P_before,sum_pL,verdict\n", 0) == 0);
    CHECK(r.out.find("violation") == std::string::npos);
  }

  TEST_CASE("input errors exit with 2") {
    CHECK(run({"measure", "--zoo", "nope"}).code == kExitInput);
    CHECK(run({"measure", "--zoo", "ghz", "--param", "N=3", "--splits", "12|4"}).code == kExitInput);
    CHECK(run({"measure", "--zoo", "ghz", "--param", "bogus"}).code == kExitInput);
    CHECK(run({"measure", "--state", "/nonexistent/state.json"}).code == kExitInput);
    CHECK(run({"measure", "--zoo", "ghz", "--format", "xml"}).code == kExitInput);
    CHECK(run({"frobnicate"}).code == kExitInput);
    CHECK(run({"monotone", "--seeds", "0"}).code == kExitInput);
    CHECK(run({"bsa", "--zoo", "ghz", "--splits", "1|2|3"}).code == kExitInput);
    TempDir dir;
    std::ofstream(dir.file("broken.json")) << "{\"kind\": ";
    CHECK(run({"measure", "--state", dir.file("broken.json")}).code == kExitInput);
  }

  TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).code == kExitOk); }

  TEST_CASE("output is byte-identical for a fixed seed") {
    const Run a = run({"table1", "--format", "json", "--seed", "7"});
    const Run b = run({"table1", "--format", "json", "--seed", "7"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    const Run c = run({"measure", "--zoo", "rho_g", "--param", "lambda=0.4", "--format", "json"});
    const Run d = run({"measure", "--zoo", "rho_g", "--param", "lambda=0.4", "--format", "json"});
    CHECK(c.out == d.out);
  }

  TEST_CASE("mixed forms show the witness composition") {
    MixedMeasureValue v;
    v.witness = Ensemble({0.25, 0.75}, {ghz(3), PureState(qubits(3), ket("000"))});
    v.witness_ranks = {2, 1};
    v.upper = 0.25;
    v.lower = 0.25;
    const std::string f = mixed_form(v);
    CHECK(f.find("0.250000") != std::string::npos);
  }
}
