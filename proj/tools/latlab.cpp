// latlab <subcommand> [options]: runs one experiment and writes its report.

#include "latlab/common.hpp"
#include "latlab/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "latlab: cannot write " << path << "\n";
    return 2;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using latlab::cli::RunConfig;
  CLI::App app{"Computational lab for lattices in locally compact groups"};
  std::string command, preset, epsilon, word_ball, radius, seed, config_file;
  std::vector<std::string> sets;
  RunConfig cfg;
  bool list = false;

  app.add_option("subcommand", command, "Experiment to run");
  app.add_option("--preset", preset, "Group or space preset");
  app.add_option("--epsilon", epsilon, "Smallness or net parameter");
  app.add_option("--word-ball", word_ball, "Word-ball radius L");
  app.add_option("--radius", radius, "Geometric radius R");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", cfg.out, "Output file (default: standard output)");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--config", config_file, "key = value file; overrides flags");
  app.add_option("--set", sets, "Extra parameter key=value (repeatable)");
  app.add_flag("--timing", cfg.timing, "Add wall-clock time to the report");
  app.add_flag("--list", list, "List subcommands and the results they exercise");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (list) {
    for (const auto& s : latlab::cli::subcommands()) std::cout << s << "\t" << latlab::cli::anchor(s) << "\n";
    return 0;
  }

  cfg.command = command;
  try {
    if (command.empty()) throw latlab::PreconditionError("missing subcommand (see --list)");
    if (!preset.empty()) cfg.params["preset"] = preset;
    if (!epsilon.empty()) cfg.params["epsilon"] = epsilon;
    if (!word_ball.empty()) cfg.params["word-ball"] = word_ball;
    if (!radius.empty()) cfg.params["radius"] = radius;
    if (!seed.empty()) cfg.params["seed"] = seed;
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw latlab::PreconditionError("--set expects key=value: " + kv);
      cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (!config_file.empty()) cfg = latlab::cli::apply_config_file(config_file, cfg);
    const auto report = latlab::cli::run(cfg);
    return emit(latlab::cli::render(report, cfg.format), cfg.out);
  } catch (const latlab::BorderlineError& e) {
    const auto r = latlab::cli::error_report(cfg, "borderline", e.what(), e.candidates());
    emit(r.dump(2) + "\n", cfg.out);
    return latlab::cli::exit_code("borderline");
  } catch (const latlab::PreconditionError& e) {
    const auto r = latlab::cli::error_report(cfg, "precondition", e.what());
    emit(r.dump(2) + "\n", cfg.out);
    return latlab::cli::exit_code("precondition");
  } catch (const latlab::CapExceeded& e) {
    const auto r = latlab::cli::error_report(cfg, "cap-exceeded", e.what());
    emit(r.dump(2) + "\n", cfg.out);
    return latlab::cli::exit_code("cap-exceeded");
  }
}
