// Copyright 2026 The lcproto Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the lcp binary end to end and checks exit codes and outputs.

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "lcproto/bench.hpp"
#include "lcproto/data_io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const fs::path& work() {
  static const fs::path dir = [] {
    auto p = fs::temp_directory_path() / ("lcproto_cli_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string at(const std::string& name) { return (work() / name).string(); }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LCP_CLI_PATH) + " " + args + " >>" + at("log.txt") + " 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(const std::string& path) { return json::parse(slurp(path)); }

}  // namespace

TEST_CASE("generate: deterministic files, usage and runtime failures") {
  REQUIRE(run_cli("generate --labels 20 --dim 32 --seed 7 --out " + at("g1")) == 0);
  REQUIRE(run_cli("generate --labels 20 --dim 32 --seed 7 --out " + at("g2")) == 0);
  for (const char* f : {"manifest.jsonl", "vocab.txt", "embeddings.lcpe"}) {
    CHECK(fs::exists(work() / "g1" / f));
    CHECK(slurp(at("g1/") + f) == slurp(at("g2/") + f));
  }
  const auto store = lcp::read_store(at("g1/embeddings.lcpe"));
  CHECK(store.dim() == 32);
  CHECK(lcp::encode_store(store) == lcp::read_file_bytes(at("g1/embeddings.lcpe")));
  const auto manifest = lcp::read_manifest(at("g1/manifest.jsonl"), at("g1/vocab.txt"));
  CHECK(lcp::encode_manifest(manifest) == slurp(at("g1/manifest.jsonl")));

  CHECK(run_cli("generate --labels 20") == 2);
  CHECK(run_cli("generate --out " + at("bad") + " --labels 50 --items-per-split 10 --max-labels-per-item 2") == 1);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("--help") == 0);
}

TEST_CASE("sample: record is deterministic") {
  REQUIRE(run_cli("generate --labels 8 --items-per-split 60 --dim 8 --out " + at("s")) == 0);
  REQUIRE(run_cli("sample --data " + at("s") + " --seed 3 --out " + at("e1.txt")) == 0);
  REQUIRE(run_cli("sample --data " + at("s") + " --seed 3 --out " + at("e2.txt")) == 0);
  CHECK(slurp(at("e1.txt")) == slurp(at("e2.txt")));
  CHECK(slurp(at("e1.txt")).rfind("# lcproto episode v1", 0) == 0);
  CHECK(run_cli("sample --data " + at("s") + " --support-splits train,bogus") == 2);
  CHECK(run_cli("sample --data " + at("missing")) == 1);
}

TEST_CASE("fsl-eval: run record aggregates five runs") {
  REQUIRE(run_cli("generate --labels 10 --items-per-split 80 --dim 16 --out " + at("f")) == 0);
  REQUIRE(run_cli("fsl-eval --data " + at("f") + " --threads 3 --json " + at("r.json") + " --csv " + at("r.csv") +
              " --predictions-dir " + at("preds")) == 0);
  const auto rec = load_json(at("r.json"));
  CHECK(rec["command"] == "fsl-eval");
  CHECK(rec["config"]["k"] == 3);
  CHECK(rec["seeds"] == json::array({0, 1, 2, 3, 4}));
  REQUIRE(rec["runs"].size() == 5);
  double sum = 0.0, ss = 0.0;
  for (const auto& r : rec["runs"]) sum += r["micro_f1"].get<double>();
  const double mean = sum / 5;
  for (const auto& r : rec["runs"]) ss += std::pow(r["micro_f1"].get<double>() - mean, 2);
  CHECK(rec["aggregate"]["micro_f1"]["mean"].get<double>() == doctest::Approx(mean).epsilon(1e-12));
  CHECK(rec["aggregate"]["micro_f1"]["std"].get<double>() == doctest::Approx(std::sqrt(ss / 4)).epsilon(1e-12));
  const auto csv = slurp(at("r.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

  // one thread gives the same record
  REQUIRE(run_cli("fsl-eval --data " + at("f") + " --threads 1 --json " + at("r1.json")) == 0);
  CHECK(load_json(at("r1.json"))["runs"] == rec["runs"]);

  // written predictions score back to the same F1
  REQUIRE(run_cli("metrics --predictions " + at("preds/predictions_seed2.jsonl") + " --vocab " + at("f/vocab.txt") +
              " --json " + at("m.json")) == 0);
  const auto m = load_json(at("m.json"));
  CHECK(m["metrics"][1]["metric"] == "micro_f1");
  CHECK(m["metrics"][1]["value"].get<double>() == doctest::Approx(rec["runs"][2]["micro_f1"].get<double>()).epsilon(1e-12));

  REQUIRE(run_cli("fsl-eval --data " + at("f") + " --master-seed 11 --runs 2 --json " + at("rm.json")) == 0);
  CHECK(load_json(at("rm.json"))["seeds"].size() == 2);
  CHECK(run_cli("fsl-eval --data " + at("f") + " --seeds 1,2 --master-seed 3") == 2);
  CHECK(run_cli("fsl-eval --data " + at("f") + " --context nope") == 2);
  CHECK(run_cli("fsl-eval --data " + at("f") + " --context prob") == 2);
  CHECK(run_cli("fsl-eval --data " + at("f") + " --context sft") == 2);
}

TEST_CASE("fsl-eval: zero-noise single-label data is classified perfectly") {
  REQUIRE(run_cli("generate --labels 6 --items-per-split 30 --dim 8 --noise 0 --max-labels-per-item 1 --out " +
              at("z")) == 0);
  REQUIRE(run_cli("fsl-eval --data " + at("z") + " --json " + at("z.json")) == 0);
  for (const auto& r : load_json(at("z.json"))["runs"]) CHECK(r["micro_f1"].get<double>() == 1.0);
}

TEST_CASE("probe-train, probe-features and the prob context") {
  REQUIRE(run_cli("generate --labels 6 --items-per-split 60 --dim 8 --out " + at("p")) == 0);
  REQUIRE(run_cli("probe-train --data " + at("p") + " --max-epochs 20 --out " + at("p/probe.lcpp") + " --history " +
              at("p/hist.csv") + " --json " + at("p/train.json")) == 0);
  const auto params = lcp::read_params(at("p/probe.lcpp"));
  CHECK(params.hidden() == 512);
  CHECK(lcp::encode_params(params) == lcp::read_file_bytes(at("p/probe.lcpp")));
  const auto summary = load_json(at("p/train.json"))["summary"];
  CHECK(summary["epochs_run"].get<int>() <= 20);
  REQUIRE(run_cli("probe-features --store " + at("p/embeddings.lcpe") + " --probe " + at("p/probe.lcpp") +
              " --out " + at("p/feat.lcpe")) == 0);
  const auto feats = lcp::read_store(at("p/feat.lcpe"));
  CHECK(feats.dim() == 512);
  CHECK(feats.size() == 180);

  REQUIRE(run_cli("fsl-eval --data " + at("p") + " --context prob --probe " + at("p/probe.lcpp") + " --runs 2 --json " +
              at("prob.json")) == 0);
  REQUIRE(run_cli("fsl-eval --data " + at("p") + " --context sft --features " + at("p/feat.lcpe") +
              " --runs 2 --json " + at("sft.json")) == 0);
  // hidden features computed on the fly equal the stored ones
  CHECK(load_json(at("prob.json"))["runs"] == load_json(at("sft.json"))["runs"]);
  CHECK(run_cli("probe-train --data " + at("p")) == 2);
  CHECK(run_cli("probe-features --store " + at("p/manifest.jsonl") + " --probe " + at("p/probe.lcpp") + " --out " +
            at("x.lcpe")) == 1);
}

TEST_CASE("bench: rows, csv and failures") {
  REQUIRE(run_cli("bench --quiet --labels 20 --episodes 1 --queries 20 --out " + at("b1.csv")) == 0);
  auto rows = lcp::parse_bench_csv(slurp(at("b1.csv")));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].mean_prototypes <= rows[0].mean_classes);

  REQUIRE(run_cli("bench --quiet --episodes 1 --queries 20 --out " + at("b5.csv")) == 0);
  rows = lcp::parse_bench_csv(slurp(at("b5.csv")));
  REQUIRE(rows.size() == 5);
  CHECK(rows.front().num_labels == 20);
  CHECK(rows.back().num_labels == 60);

  CHECK(run_cli("bench --quiet --labels 30,20 --out " + at("bad.csv")) == 1);
  CHECK_FALSE(fs::exists(work() / "bad.csv"));
  CHECK(run_cli("bench --quiet") == 2);
}

TEST_CASE("metrics: scores file") {
  std::ofstream(at("ms_vocab.txt")) << "a\nb\nc\nd\n";
  const std::string text =
      "{\"id\":\"a\",\"scores\":[0.9,0.1,0.5,0.5],\"truth\":[\"a\"]}\n"
      "{\"id\":\"b\",\"scores\":[0.4,0.8,0.5,0.2],\"truth\":[\"b\"]}\n"
      "{\"id\":\"c\",\"scores\":[0.6,0.3,0.5,0.1],\"truth\":[\"a\",\"c\"]}\n";
  std::ofstream(at("scores.jsonl")) << text;
  REQUIRE(run_cli("metrics --scores " + at("scores.jsonl") + " --vocab " + at("ms_vocab.txt") + " --json " +
              at("ms.json")) == 0);
  const auto m = load_json(at("ms.json"));
  CHECK(m["items"] == 3);
  CHECK(m["metrics"][0]["metric"] == "roc_auc");
  // labels 0 and 1 ordered perfectly, label 2 all tied, label 3 has no positive
  CHECK(m["metrics"][0]["value"].get<double>() == doctest::Approx((1.0 + 1.0 + 0.5) / 3).epsilon(1e-12));
  CHECK(m["metrics"][0]["skipped"] == json::array({"d"}));
  CHECK(run_cli("metrics --vocab " + at("ms_vocab.txt")) == 2);
  CHECK(run_cli("metrics --scores " + at("missing.jsonl") + " --vocab " + at("ms_vocab.txt")) == 1);
}

TEST_CASE("cleanup") { fs::remove_all(work()); }
