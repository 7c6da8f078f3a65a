// Command-line driver: one subcommand per computation, JSON or table output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "padic/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  padic::require(static_cast<bool>(in), padic::Errc::ParseError, "cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic stringy invariants of quotient singularities"};
  app.require_subcommand(0, 1);
  std::string config_path, format = "json";
  bool timing = false;
  app.add_option("--config", config_path, "key = value run configuration (version, command, parameters)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--timing", timing, "include wall-clock timing in the output");

  // Flags mirror the config keys so every invocation has a config equivalent.
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [command, keys] : padic::RunConfig::allowed_keys()) {
    auto* sub = app.add_subcommand(command);
    subs[command] = sub;
    for (const auto& key : keys) sub->add_option("--" + key, values[command][key]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(padic::ExitCode::InvalidInput);
  }

  padic::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = padic::RunConfig::parse_text(read_file(config_path));
    for (const auto& [command, sub] : subs) {
      if (!sub->parsed()) continue;
      padic::require(config_path.empty() || cfg.command == command, padic::Errc::ParseError,
                     "subcommand '" + command + "' does not match config command '" + cfg.command + "'");
      cfg.command = command;
      for (const auto& [key, value] : values[command])
        if (sub->count("--" + key) > 0) cfg.params[key] = value;
    }
    padic::require(!cfg.command.empty(), padic::Errc::ParseError, "no subcommand or --config given");
  } catch (const padic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(padic::ExitCode::InvalidInput);
  }

  const auto result = padic::run(cfg, timing);
  if (result.code == padic::ExitCode::InvalidInput) {
    std::cerr << "error: " << result.error << "\n";
    return static_cast<int>(result.code);
  }
  if (format == "json")
    std::cout << result.report.to_json(timing).dump(2) << "\n";
  else
    std::cout << result.report.to_table(timing);
  return static_cast<int>(result.code);
}
