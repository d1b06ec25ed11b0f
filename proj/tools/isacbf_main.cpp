// isacbf: ISAC beamforming experiments from the command line.
//
//   isacbf <subcommand> [--config file] [--out dir] [--seed n] [--method zf|joint|both] [--<key> value]...
//
// Every config key is also accepted as an override flag. Overrides are
// applied after the config file, in command-line order.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isacbf/cli/config.hpp"
#include "isacbf/cli/run.hpp"

namespace {

using namespace isacbf::cli;

struct Invocation {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void add_common(CLI::App* sub, Invocation& inv) {
  sub->add_option("--config", inv.config_path, "flat key = value config file");
  auto remember = [&inv](const std::string& key) {
    return [&inv, key](const std::string& v) { inv.overrides.emplace_back(key, v); };
  };
  sub->add_option_function<std::string>("--out", remember("output_dir"), "output directory");
  sub->add_option_function<std::string>("--seed", remember("seed"), "coverage sampling seed");
  sub->add_option_function<std::string>("--method", remember("methods"), "zf | joint | both");
  for (const auto& k : config_keys()) {
    if (k.name == "seed") continue;  // already --seed
    sub->add_option_function<std::string>("--" + k.name, remember(k.name), k.help)->group("Config overrides");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensing and communication beam design for an ISAC access point reading a backscatter tag"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "isacbf " ISACBF_VERSION);

  Invocation inv;
  const std::vector<std::pair<std::string, std::string>> subcommands{
      {"detect-distance", "largest detectable tag range per direction"},
      {"coverage", "coverage-ratio CDF over random user positions"},
      {"power-sweep", "minimum total power per tag direction at a fixed range"},
      {"beam-pattern", "array factor of the sensing and communication beams"},
      {"solve-one", "solve a single scene and print the design"},
  };
  for (const auto& [name, help] : subcommands) add_common(app.add_subcommand(name, help), inv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunConfig cfg;
  try {
    if (!inv.config_path.empty()) cfg = parse_config(read_file(inv.config_path));
    set_value(cfg, "experiment", app.get_subcommands().front()->get_name());
    for (const auto& [k, v] : inv.overrides) set_value(cfg, k, v);
    validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "isacbf: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const RunResult res = run(cfg, &std::cout);
    for (const auto& f : res.files) std::cerr << "wrote " << f.string() << "\n";
    if (res.exit_code == kExitNumerical)
      std::cerr << "isacbf: " << res.numerical_failures << " numerical failure(s); see status columns\n";
    return res.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "isacbf: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "isacbf: " << e.what() << "\n";
    return kExitError;
  }
}
