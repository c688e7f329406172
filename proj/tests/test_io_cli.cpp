#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "potts_forge/error.hpp"
#include "potts_forge/io.hpp"

using namespace potts_forge;

namespace {

const std::string kData = POTTS_FORGE_DATA_DIR;

std::string data_path(const std::string& name) { return kData + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("potts_forge_test_" + name);
  write_text_file(path.string(), text);
  return path.string();
}

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "potts_forge");
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

ErrorCode parse_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

}  // namespace

TEST(Io, ModelRoundTrip) {
  const ModelFile mf = parse_model(read_text_file(data_path("petersen_ising.json")));
  EXPECT_EQ(mf.model.graph(), petersen());
  EXPECT_EQ(mf.bounds.H_max, std::vector<double>(10, 1.0));
  const ModelFile again = parse_model(model_to_json(mf.model, mf.bounds));
  EXPECT_EQ(again.model.graph(), mf.model.graph());
  EXPECT_EQ(again.model.V_table(), mf.model.V_table());
  EXPECT_EQ(again.bounds.J_min, mf.bounds.J_min);
}

TEST(Io, ModelDefaultsAndErrors) {
  const ModelFile mf = parse_model(R"({"graph": {"n_vertices": 2, "edges": [[1, 2]]}, "bounds": {"H": 1, "J": 2}})");
  EXPECT_EQ(mf.model.U_table(), (std::vector<double>{1, -1}));
  EXPECT_EQ(mf.bounds.J_min, std::vector<double>{-2});

  try {
    parse_model(R"({"graph": {"n_vertices": 2, "edges": [[1, 2]]}, "bounds": {"H": [[0, 1]], "J": 1}})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("bounds.H"), std::string::npos);
  }
  EXPECT_EQ(parse_code([] { parse_model("{"); }), ErrorCode::ParseError);
  EXPECT_EQ(parse_code([] { parse_model(R"({"graph": {"n_vertices": 2, "edges": [[1, 1]]}, "bounds": {"H": 1, "J": 1}})"); }),
            ErrorCode::ParseError);
}

TEST(Io, DataAliases) {
  const PottsModel m = ising(path(2));
  const auto d = parse_data(R"([["+1", "-1"], [2, 2], ["+", "+"]])", m);
  EXPECT_EQ(d, (std::vector<State>{{0, 1}, {1, 1}, {0, 0}}));
  EXPECT_EQ(parse_data(data_to_json(d), m), d);
  EXPECT_EQ(parse_code([&] { parse_data("[[3, 1]]", m); }), ErrorCode::ParseError);
  EXPECT_EQ(parse_code([&] { parse_data("[[1]]", m); }), ErrorCode::ParseError);
  EXPECT_EQ(parse_code([&] { parse_data(R"([["up", 1]])", m); }), ErrorCode::ParseError);
}

TEST(Io, ParamsAndCsv) {
  const PottsModel m = ising(path(2));
  const Params p{{0.5, -1}, {0.25}};
  EXPECT_EQ(parse_params(params_to_json(p), m), p);
  EXPECT_EQ(parse_params(R"({"params": {"H": [0.5, -1], "J": [0.25]}})", m), p);
  EXPECT_EQ(format_csv_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_csv_number(-0.0), "0");
  EXPECT_EQ(format_csv_number(1e-20), "1e-20");
}

TEST(Cli, EstimateDasTwoNode) {
  const CliRun r = run({"estimate-das", "--model", data_path("two_node_ising.json"), "--data",
                     data_path("two_node_data.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  const ModelFile mf = parse_model(read_text_file(data_path("two_node_ising.json")));
  const ResultFile rf = parse_result(r.out, mf.model);
  EXPECT_TRUE(rf.accepted);
  EXPECT_EQ(rf.params, (Params{{0, 0}, {-1}}));
  EXPECT_NE(r.out.find("\"delta_E\": 2.0"), std::string::npos);
  // Byte-identical on a rerun.
  EXPECT_EQ(run({"estimate-das", "--model", data_path("two_node_ising.json"), "--data",
                 data_path("two_node_data.json")}).out,
            r.out);
}

TEST(Cli, RepeatedStateIsInputError) {
  const auto data = temp_file("dup.json", "[[1, 1], [1, 1]]");
  const CliRun r = run({"estimate-das", "--model", data_path("two_node_ising.json"), "--data", data});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("InvalidDataSet"), std::string::npos);
}

TEST(Cli, MissingFileAndUsage) {
  EXPECT_EQ(run({"estimate-das", "--model", "/nonexistent.json", "--data", "/nonexistent.json"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"estimate-gsm", "--model", data_path("k3_ising.json")}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, RejectedEstimation) {
  // On a 3-path, (+,+,+) and (-,+,-) cannot be the only ground states.
  const auto model = temp_file("path3.json", R"({"graph": {"n_vertices": 3, "edges": [[1, 2], [2, 3]]}, "bounds": {"H": 1, "J": 1}})");
  const auto data = temp_file("rej.json", "[[1, 1, 1], [2, 1, 2]]");
  const CliRun r = run({"estimate-das", "--model", model, "--data", data});
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("\"accepted\": false"), std::string::npos);
}

TEST(Cli, EstimateGsmAndOracleK3) {
  const CliRun g = run({"estimate-gsm", "--model", data_path("k3_ising.json"), "--ngs", "1"});
  const CliRun o = run({"gsm-oracle", "--model", data_path("k3_ising.json"), "--ngs", "1"});
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(g.out.find("\"delta_E\": 6.0"), std::string::npos);
  EXPECT_NE(o.out.find("\"delta_E\": 6.0"), std::string::npos);
}

TEST(Cli, NodeLimitIsResourceExit) {
  const CliRun r = run({"estimate-gsm", "--model", data_path("petersen_ising.json"), "--ngs", "2", "--node-limit", "1"});
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST(Cli, Spectrum) {
  const auto params = temp_file("ferro.json", R"({"H": [0, 0], "J": [-1]})");
  const CliRun r = run({"spectrum", "--model", data_path("two_node_ising.json"), "--params", params});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"E0\": -1.0"), std::string::npos);
  EXPECT_NE(r.out.find("\"n_gs\": 2"), std::string::npos);
  const auto zero = temp_file("zero.json", R"({"H": [0, 0], "J": [0]})");
  const CliRun z = run({"spectrum", "--model", data_path("two_node_ising.json"), "--params", zero});
  EXPECT_NE(z.out.find("\"degenerate\": true"), std::string::npos);
}

TEST(Cli, NllCurve) {
  const auto result = temp_file("res.json", "");
  ASSERT_EQ(run({"estimate-das", "--model", data_path("two_node_ising.json"), "--data",
                 data_path("two_node_data.json"), "--out", result})
                .code,
            0);
  const CliRun r = run({"nll-curve", "--model", data_path("two_node_ising.json"), "--params", result, "--beta-min", "0",
                     "--beta-max", "2", "--beta-points", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  EXPECT_EQ(header, "beta,eta,xi_upper,eta_inf,log_eta_excess");
  EXPECT_EQ(row0.substr(0, 17), "0,2.77258872224,2");
  EXPECT_EQ(row1.substr(0, 16), "1,1.64015038321,");

  const auto rejected = temp_file("rejected.json", R"({"params": {"H": [0, 0], "J": [0]}, "accepted": false})");
  EXPECT_EQ(run({"nll-curve", "--model", data_path("two_node_ising.json"), "--params", rejected}).code, 2);
}

TEST(Cli, DefaultGridAndThreadsEnv) {
  const auto params = temp_file("ferro2.json", R"({"H": [0, 0], "J": [-1]})");
  setenv("POTTS_FORGE_THREADS", "2", 1);
  const CliRun r = run({"nll-curve", "--model", data_path("two_node_ising.json"), "--params", params});
  unsetenv("POTTS_FORGE_THREADS");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 65);
  EXPECT_EQ(r.out.substr(r.out.find('\n') + 1, 5), "0.01,");
  setenv("POTTS_FORGE_THREADS", "zero", 1);
  EXPECT_EQ(run({"nll-curve", "--model", data_path("two_node_ising.json"), "--params", params}).code, 1);
  unsetenv("POTTS_FORGE_THREADS");
}

TEST(Cli, CompareK3) {
  const auto summary = temp_file("summary.json", "");
  const CliRun r = run({"compare", "--model", data_path("k3_ising.json"), "--data", data_path("k3_data.json"),
                     "--beta-min", "0", "--beta-max", "10", "--beta-points", "11", "--summary", summary});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string s = read_text_file(summary);
  EXPECT_NE(s.find("\"grad_interior_minimum\": true"), std::string::npos);
  EXPECT_NE(s.find("\"das_monotone\": true"), std::string::npos);
  EXPECT_NE(r.out.find("\n0,8.31776616672,8.31776616672,tie\n"), std::string::npos);
}

TEST(Cli, BetaGrid) {
  const auto g = cli::beta_grid(1e-2, 1e2, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g[0], 1e-2);
  EXPECT_NEAR(g[2], 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(g[4], 1e2);
  EXPECT_EQ(cli::beta_grid(0, 4, 5), (std::vector<double>{0, 1, 2, 3, 4}));
  EXPECT_THROW(cli::beta_grid(2, 1, 5), Error);
}
