// fockmod run <scenario> | fockmod list
// Exit codes: 0 all checks pass, 1 some check failed, 2 bad input or usage.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fockmod/error.hpp"
#include "fockmod/scenario.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

int list_kinds(bool as_json) {
  const auto catalog = fockmod::scenario_catalog();
  if (as_json) {
    std::cout << catalog.dump(2) << '\n';
    return 0;
  }
  for (const auto& k : catalog.at("kinds")) {
    std::cout << k.at("kind").get<std::string>() << "  " << k.at("description").get<std::string>() << '\n';
    for (const auto& [name, p] : k.at("parameters").items()) {
      std::cout << "    " << name << ": " << p.at("type").get<std::string>();
      if (p.value("required", false)) std::cout << " (required)";
      else if (p.contains("default") && !p.at("default").is_null()) std::cout << " = " << p.at("default").dump();
      std::cout << '\n';
    }
  }
  std::cout << "common: kind, seed = 0, tol = 1e-9, expect_error\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fockmod: Fock semicrossed product scenarios"};
  app.require_subcommand(1);

  std::string path, json_out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool quiet = false, parallel = false;
  auto* run = app.add_subcommand("run", "run one scenario file (.json or .toml)");
  run->add_option("scenario", path, "scenario file")->required();
  run->add_option("--json", json_out, "write the JSON report here ('-' for stdout)");
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--tol", tol, "override the residual tolerance")->check(CLI::PositiveNumber);
  run->add_flag("--quiet", quiet, "no human-readable output");
  run->add_flag("--parallel", parallel, "run independent checks concurrently");

  bool list_json = false;
  auto* list = app.add_subcommand("list", "print scenario kinds and their parameters");
  list->add_flag("--json", list_json, "machine-readable catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (*list) return list_kinds(list_json);

  try {
    fockmod::RunOptions opts{seed, tol, parallel};
    const auto outcome = fockmod::run_scenario(fockmod::load_scenario_file(path), opts);
    const std::string text = outcome.report.dump(2) + "\n";
    if (json_out == "-") {
      std::cout << text;
    } else if (!json_out.empty()) {
      std::ofstream out(json_out, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write " << json_out << '\n';
        return kExitInput;
      }
      out << text;
    }
    if (!quiet && json_out != "-")
      for (const auto& line : outcome.lines) std::cout << line << '\n';
    return outcome.pass ? 0 : kExitFail;
  } catch (const fockmod::Error& e) {
    std::cerr << e.what() << '\n';
    return e.kind() == fockmod::ErrorKind::ParseError || e.kind() == fockmod::ErrorKind::UnsupportedKind ? kExitInput
                                                                                                            : kExitFail;
  }
}
