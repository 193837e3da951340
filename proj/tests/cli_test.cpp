//
// Project rcmt
// SPDX-License-Identifier: Apache-2.0
//

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rcmt/cli.h"
#include "rcmt/codec.h"
#include "rcmt/sdf.h"
#include "test_util.h"

namespace rcmt {
namespace {
using cli::ExitStatus;
namespace fs = std::filesystem;

struct Result {
  ExitStatus status;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string> &args, const cli::Hooks &hooks = {}) {
  std::ostringstream out, err;
  const auto status = cli::run(args, out, err, hooks);
  return { status, out.str(), err.str() };
}

class CliTest: public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path()
           / ("rcmt_cli_"
              + std::string(::testing::UnitTest::GetInstance()
                                ->current_test_info()
                                ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string &name, const std::string &content) {
    const auto path = dir_ / name;
    std::ofstream(path, std::ios::binary) << content;
    return path.string();
  }
  std::string read(const std::string &name) {
    std::ifstream in(dir_ / name, std::ios::binary);
    return { std::istreambuf_iterator<char>(in), {} };
  }
  std::string path(const std::string &name) { return (dir_ / name).string(); }

  static std::string sdf_of(std::vector<MolecularGraph> graphs) {
    std::vector<SdfRecord> records;
    for (auto &g: graphs)
      records.push_back(SdfRecord::with_default_header(std::move(g)));
    return write_sdf(records);
  }

  fs::path dir_;
};

std::string bad_ten_atom() {
  std::string bad = test::read_data("ten_atom.sdf");
  bad.replace(bad.find("  1  3  1  0"), 12, "  1 11  1  0");
  return bad;
}

TEST_F(CliTest, EncodeTenAtom) {
  const auto r = run({ "encode", test::data_path("ten_atom.sdf") });
  EXPECT_EQ(r.status, ExitStatus::kOk);
  EXPECT_EQ(r.out, encode(test::ten_atom_graph()) + "\n");
  EXPECT_EQ(r.out.rfind("C@-2.9010,", 0), 0u);
  EXPECT_NE(r.err.find("discarded 1 bond stereo"), std::string::npos);
}

TEST_F(CliTest, EncodeToFile) {
  const auto r = run({ "encode", test::data_path("ten_atom.sdf"), "-o",
                       path("out.rcmt") });
  EXPECT_EQ(r.status, ExitStatus::kOk);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read("out.rcmt"), encode(test::ten_atom_graph()) + "\n");
}

TEST_F(CliTest, EncodeEmptyInput) {
  const auto r = run({ "encode", write("empty.sdf", "") });
  EXPECT_EQ(r.status, ExitStatus::kOk);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, EncodeOneBadRecordAmongThree) {
  const std::string ten = test::read_data("ten_atom.sdf");
  const auto r = run({ "encode", write("mixed.sdf", ten + bad_ten_atom() + ten) });
  EXPECT_EQ(r.status, ExitStatus::kInput);
  const std::string line = encode(test::ten_atom_graph()) + "\n";
  EXPECT_EQ(r.out, line + line);
  EXPECT_NE(r.err.find("record 2"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line 40"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("1 failed"), std::string::npos) << r.err;
}

TEST_F(CliTest, DecodeRestoresGraphs) {
  const auto enc = run({ "encode", test::data_path("five_molecules.sdf"), "-o",
                         path("five.rcmt") });
  ASSERT_EQ(enc.status, ExitStatus::kOk);
  const auto dec = run({ "decode", path("five.rcmt") });
  ASSERT_EQ(dec.status, ExitStatus::kOk);
  const auto original = parse_sdf(test::read_data("five_molecules.sdf"));
  const auto back = parse_sdf(dec.out);
  ASSERT_EQ(back.size(), original.size());
  for (std::size_t k = 0; k < back.size(); ++k)
    EXPECT_EQ(back[k].graph, original[k].graph);
}

TEST_F(CliTest, DecodeEmptyAndBadLines) {
  const auto empty = run({ "decode", write("empty.rcmt", "") });
  EXPECT_EQ(empty.status, ExitStatus::kOk);
  EXPECT_TRUE(empty.out.empty());

  const std::string good = "C@0.0000,0.0000,0.0000 O@1.2000,0.0000,0.0000 | 1-2:2";
  const auto r = run({ "decode",
                       write("bad.rcmt", good + "\n" + "C@0.0000,0.0000,0.0000 "
                                         "O@1.2000,0.0000,0.0000 | 2-1:1\n") });
  EXPECT_EQ(r.status, ExitStatus::kInput);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  EXPECT_EQ(parse_sdf(r.out).size(), 1u);
}

TEST_F(CliTest, RoundtripPasses) {
  const auto r = run({ "roundtrip", test::data_path("qm9_sample.sdf") });
  EXPECT_EQ(r.status, ExitStatus::kOk);
  EXPECT_NE(r.out.find("record 100 PASS rmsd 0.0000"), std::string::npos);
  EXPECT_NE(r.out.find("passed 100 failed 0 unparsed 0"), std::string::npos);
}

TEST_F(CliTest, RoundtripParseFailure) {
  const auto r = run({ "roundtrip", write("bad.sdf", bad_ten_atom()) });
  EXPECT_EQ(r.status, ExitStatus::kInput);
}

TEST_F(CliTest, RoundtripCorruptedDecoder) {
  cli::Hooks hooks;
  hooks.roundtrip_decoder = [](std::string_view text) {
    const auto g = decode(text);
    auto atoms = g.atoms();
    atoms[0].position = QuantizedCoord(atoms[0].position.x() + 1,
                                       atoms[0].position.y(),
                                       atoms[0].position.z());
    return MolecularGraph(atoms, g.bonds());
  };
  const std::string ten = test::read_data("ten_atom.sdf");
  const auto r = run({ "roundtrip", write("ten.sdf", ten + bad_ten_atom()) },
                     hooks);
  EXPECT_EQ(r.status, ExitStatus::kVerification);
  EXPECT_NE(r.out.find("record 1 FAIL"), std::string::npos) << r.out;
}

TEST_F(CliTest, StatsWithBound) {
  const auto r = run({ "stats", "--bound", "100", test::data_path("ten_atom.sdf") });
  EXPECT_EQ(r.status, ExitStatus::kOk);
  EXPECT_NE(r.out.find("0.9499"), std::string::npos) << r.out;

  const auto m = run({ "stats", "--bound", "100", "--format", "machine",
                       test::data_path("ten_atom.sdf") });
  const auto doc = nlohmann::json::parse(m.out);
  EXPECT_NEAR(doc["per_molecule"][0]["bound"].get<double>(),
              1240 / 1305.41854, 1e-6);
  EXPECT_EQ(doc["mean_ratio"], doc["median_ratio"]);

  EXPECT_EQ(run({ "stats", "--bound", "0", test::data_path("ten_atom.sdf") }).status,
            ExitStatus::kUsage);
}

TEST_F(CliTest, StatsFiveMolecules) {
  const auto r = run({ "stats", test::data_path("five_molecules.sdf") });
  EXPECT_EQ(r.status, ExitStatus::kOk);
  for (const char *name: { "ethanol", "acetic_acid", "pyridine", "cyclohexane",
                           "alanine", "mean_rate" })
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
}

TEST_F(CliTest, MetricsDuplicatePair) {
  const std::string sdf = sdf_of({ test::methane(), test::methane() });
  const auto r = run({ "metrics", write("pair.sdf", sdf) });
  EXPECT_EQ(r.status, ExitStatus::kOk);
  EXPECT_NE(r.out.find("Unique (%)"), std::string::npos);
  EXPECT_NE(r.out.find("50.00"), std::string::npos) << r.out;

  // Same molecules through the compact text path.
  const std::string line = encode(test::methane()) + "\n";
  const auto rc = run({ "metrics", "--format", "machine",
                        write("pair.rcmt", line + line) });
  EXPECT_EQ(nlohmann::json::parse(rc.out)["uniqueness_pct"], 50.0);
}

TEST_F(CliTest, MetricsMixedValidity) {
  const std::string sdf = sdf_of({ test::methane(), test::hydride("C", 5) });
  const auto r = run({ "metrics", "--format", "machine", "--mode", "implicit",
                       write("mixed.sdf", sdf) });
  EXPECT_EQ(r.status, ExitStatus::kOk);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["validity_pct"], 50.0);
  EXPECT_EQ(doc["uniqueness_pct"], 100.0);
  const auto table = run({ "metrics", write("mixed2.sdf", sdf) });
  EXPECT_NE(table.out.find("50.00"), std::string::npos);
  EXPECT_EQ(run({ "metrics", "--mode", "loose", path("mixed.sdf") }).status,
            ExitStatus::kUsage);
}

TEST_F(CliTest, RewardDuplicatePair) {
  const std::string sdf = sdf_of({ test::ten_atom_graph(), test::ten_atom_graph() });
  const auto r = run({ "reward", "--format", "machine", write("pair.sdf", sdf) });
  ASSERT_EQ(r.status, ExitStatus::kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  const auto &m = doc["molecules"];
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0]["diversity"], 1.0);
  EXPECT_EQ(m[1]["diversity"], 0.0);
  EXPECT_NEAR(m[0]["total"].get<double>() - m[1]["total"].get<double>(), 0.2,
              1e-15);
}

TEST_F(CliTest, RewardAtReference) {
  const std::string sdf = sdf_of({ test::methane() });
  write("ref.sdf", sdf);
  const auto cfg = write("cfg.json", R"({"reference_corpus": "ref.sdf"})");
  const auto r = run({ "reward", "--format", "machine", "--config", cfg,
                       write("one.sdf", sdf) });
  ASSERT_EQ(r.status, ExitStatus::kOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["molecules"][0]["total"], 1.0);
}

TEST_F(CliTest, RewardBadWeights) {
  const auto cfg = write(
      "cfg.json", R"({"weights": {"mol": 0.1, "atom": 0.1, "div": 0.5, "valid": 0.1}})");
  const auto r = run({ "reward", "--config", cfg,
                       test::data_path("five_molecules.sdf") });
  EXPECT_EQ(r.status, ExitStatus::kUsage);
  EXPECT_NE(r.err.find("w_mol + w_atom > w_div + w_valid"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).status, ExitStatus::kUsage);
  EXPECT_EQ(run({ "compress", "x" }).status, ExitStatus::kUsage);
  EXPECT_EQ(run({ "encode" }).status, ExitStatus::kUsage);
  EXPECT_EQ(run({ "encode", "--format", "xml", "x.sdf" }).status,
            ExitStatus::kUsage);
  EXPECT_EQ(run({ "--help" }).status, ExitStatus::kOk);
}

TEST_F(CliTest, MissingInputFile) {
  const auto r = run({ "encode", path("nope.sdf") });
  EXPECT_EQ(r.status, ExitStatus::kInput);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, DeltaOverride) {
  cli::Hooks hooks;
  hooks.delta = "0.01";
  const auto r = run({ "encode", test::data_path("ten_atom.sdf") }, hooks);
  EXPECT_EQ(r.status, ExitStatus::kOk);
  EXPECT_EQ(r.out.rfind("C@-2.9100,12.7800,-16.4800 ", 0), 0u) << r.out;
  hooks.delta = "0.00005";
  EXPECT_EQ(run({ "encode", test::data_path("ten_atom.sdf") }, hooks).status,
            ExitStatus::kUsage);
}

TEST_F(CliTest, JobsDoNotChangeOutput) {
  const auto one = run({ "encode", "--jobs", "1", test::data_path("qm9_sample.sdf") });
  const auto many = run({ "encode", "--jobs", "7", test::data_path("qm9_sample.sdf") });
  EXPECT_EQ(one.out, many.out);
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 100);
}

TEST_F(CliTest, MachineOutputIsDeterministic) {
  run({ "encode", test::data_path("qm9_sample.sdf"), "-o", path("qm9.rcmt") });
  const std::vector<std::vector<std::string>> commands {
    { "encode", test::data_path("qm9_sample.sdf") },
    { "decode", path("qm9.rcmt") },
    { "roundtrip", test::data_path("qm9_sample.sdf") },
    { "stats", "--bound", "100", test::data_path("qm9_sample.sdf") },
    { "metrics", test::data_path("qm9_sample.sdf") },
    { "reward", test::data_path("qm9_sample.sdf") },
  };
  for (auto args: commands) {
    args.insert(args.begin() + 1, { "--format", "machine" });
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.status, ExitStatus::kOk) << args[0] << ": " << a.err;
    EXPECT_FALSE(a.out.empty()) << args[0];
    EXPECT_EQ(a.out, b.out) << args[0];
  }
}

}  // namespace
}  // namespace rcmt
