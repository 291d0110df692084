// qdgate: geometric/dynamic exciton gate toolkit command line.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace fs = std::filesystem;
using namespace qdgate::cli;

namespace {

// QDGATE_OUTPUT_DIR relocates every relative output path.
fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("QDGATE_OUTPUT_DIR"); dir && *dir) p = fs::path(dir) / p;
  }
  return p;
}

void write_file(const std::string& path, const std::string& content) {
  const fs::path p = resolve_output(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write output file '" + p.string() + "'");
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdgate: nonadiabatic geometric and dynamic gates for exciton qubits"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::vector<std::string> sets;
  std::optional<std::string> out_path;
  std::string format_name = "json";

  using Handler = std::function<CommandOutput(const Json&, Format)>;
  const std::map<std::string, std::pair<std::string, Handler>> commands = {
      {"phase", {"cyclic states and total/dynamic/geometric phase of one drive period", cmd_phase}},
      {"evolve", {"propagate the driven dot or the coupled pair, optionally dumping a trajectory", cmd_evolve}},
      {"gate", {"print a gate matrix", cmd_gate}},
      {"iswap-schedule", {"solve the integer timing constraints of the iSWAP window", cmd_iswap_schedule}},
      {"cnot-verify", {"compose the two-iSWAP CNOT sequence and check it", cmd_cnot_verify}},
      {"sweep", {"evaluate a quantity over a parameter grid", cmd_sweep}},
  };

  std::string selected;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--set", sets, "override a config value, key.path=value")->take_all();
    sub->add_option("--out", out_path, "write output here instead of stdout");
    sub->add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->callback([&selected, name = name] { selected = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidConfig;
  }

  const Format format = format_name == "csv" ? Format::Csv : Format::Json;
  try {
    const Json config = load_config(config_path, sets);
    const CommandOutput result = commands.at(selected).second(config, format);
    for (const auto& [path, content] : result.side_files) write_file(path, content);
    if (out_path) {
      write_file(*out_path, result.text);
    } else {
      std::cout << result.text;
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cout << error_json(selected, e).dump(2) << "\n";
    std::cerr << "qdgate " << selected << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}
