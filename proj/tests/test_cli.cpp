#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = causal::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string without_timing(std::string report) {
  const auto at = report.find("elapsed_ms");
  if (at == std::string::npos) return report;
  const auto eol = report.find('\n', at);
  return report.erase(at, eol - at);
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("exit codes follow verdicts across the presets") {
  const std::vector<std::pair<std::vector<std::string>, int>> cases{
      {{"process", "validate", "preset:circular-mixture"}, 0},
      {{"process", "validate", "preset:majority"}, 0},
      {{"process", "validate", "preset:identity-chain"}, 0},
      {{"process", "validate", "preset:two-channel"}, 1},
      {{"process", "validate", "preset:perturbed-mixture"}, 1},
      {{"process", "validate", "preset:cyclic-identity"}, 1},
      {{"process", "classify", "preset:identity-chain"}, 0},
      {{"process", "classify", "preset:majority"}, 1},
      {{"process", "classify", "preset:circular-mixture"}, 1},
      {{"process", "fixpoints", "preset:majority"}, 0},
      {{"process", "fixpoints", "preset:cyclic-identity"}, 1},
      {{"process", "fixpoints", "preset:majority", "--ops", "d_id,d_id,d_not"}, 0},
      {{"process", "decompose-check", "preset:circular-mixture"}, 0},
      {{"process", "decompose-check", "preset:perturbed-mixture"}, 1},
      {{"relations", "infer", "preset:one-way-signaling"}, 0},
      {{"relations", "infer", "preset:two-way-signaling"}, 1},
      {{"membership", "two-party", "preset:one-way-signaling"}, 0},
      {{"membership", "two-party", "preset:two-way-signaling"}, 1},
      {{"quantum", "validate", "preset:w-ocb"}, 0},
      {{"quantum", "validate", "preset:w-state", "--scale", "2"}, 1},
      {{"quantum", "validate", "preset:w-channel-loop"}, 1},
      {{"quantum", "ocb"}, 0},
      {{"quantum", "switch", "X", "Z"}, 0},
      {{"quantum", "switch", "X", "H"}, 1},
      {{"circuit", "check", "preset:not-loop"}, 1},
      {{"circuit", "check", "preset:fixed-point-2-2-2"}, 0},
      {{"circuit", "fpsearch", "3"}, 0},
      {{"circuit", "fpsearch", "preset:fixed-point-1-0"}, 1},
      {{"game", "bound", "game3"}, 0},
  };
  for (const auto& [args, code] : cases) {
    const auto o = call(args);
    INFO(o.out << o.err);
    CHECK(o.code == code);
  }
}

TEST_CASE("reports carry the expected values") {
  const auto bound = call({"game", "bound", "game2"});
  CHECK(bound.code == 0);
  CHECK(bound.out.find("bound: 5/6") != std::string::npos);
  const auto ocb = call({"quantum", "ocb"});
  CHECK(ocb.out.find("value: 0.853553390593") != std::string::npos);
  const auto run = call({"game", "run", "game2", "preset:circular-mixture", "preset:game2-parity"});
  CHECK(run.out.find("success_probability: 1\n") != std::string::npos);
  const auto perturbed = call({"process", "validate", "preset:perturbed-mixture"});
  CHECK(perturbed.out.find("trace: 51/50") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"process", "validate"}).code == 2);
  CHECK(call({"process", "validate", "preset:nope"}).code == 2);
  CHECK(call({"--format", "yaml", "quantum", "ocb"}).code == 2);
  CHECK(call({"process", "fixpoints", "preset:majority", "--ops", "d_id"}).code == 2);
  CHECK(call({"--cap", "10", "process", "validate", "preset:majority"}).code == 2);

  const auto path = temp_file("causal_cli_bad.proc", "party R 2 2\n0 | 0 : 1\n0 | 9 : 1\n");
  const auto bad = call({"process", "validate", path});
  CHECK(bad.code == 2);
  CHECK(bad.err.find(path + ":3:") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("file arguments work like presets") {
  const auto path = temp_file("causal_cli_loop.net", "gate n not\nwire n.0 -> n.0\n");
  CHECK(call({"circuit", "check", path}).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("structured reports round-trip and are reproducible") {
  const std::vector<std::vector<std::string>> commands{
      {"--format", "structured", "game", "bound", "game1"},
      {"--format", "structured", "process", "validate", "preset:majority"},
      {"--format", "structured", "quantum", "probability", "preset:w-ocb", "1", "2"},
      {"--format", "structured", "--seed", "5", "quantum", "probability", "preset:w-superposed", "--instruments",
       "random"},
      {"--format", "structured", "circuit", "run", "preset:cnot", "1", "0"},
  };
  for (const auto& args : commands) {
    const auto a = call(args);
    REQUIRE(a.code == 0);
    const auto parsed = nlohmann::ordered_json::parse(a.out);
    CHECK(parsed.dump(2) + "\n" == a.out);
    CHECK(parsed.contains("command"));
    const auto b = call(args);
    CHECK(without_timing(a.out) == without_timing(b.out));
  }
}

TEST_CASE("the cap can come from the environment") {
  setenv("CAUSAL_CAP", "10", 1);
  CHECK(call({"process", "validate", "preset:majority"}).code == 2);
  CHECK(call({"--cap", "100", "process", "validate", "preset:majority"}).code == 0);
  unsetenv("CAUSAL_CAP");
  CHECK(call({"process", "validate", "preset:majority"}).code == 0);
}
