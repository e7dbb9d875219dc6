// compose: evolve mixtures of two images under a region-covariance fitness.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "covcompose/compose.hpp"
#include "covcompose/config.hpp"
#include "covcompose/error.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw covcompose::Error(covcompose::ErrorCode::MissingInput, "cannot read config '" + path + "'");
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compose two equal-size images by evolving pixel masks under a region covariance fitness"};

  std::string source;
  std::string target;
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::uint64_t seed = 0;
  long generations = 0;
  bool dump_saliency = false;
  bool quiet = false;
  std::vector<std::string> sets;

  app.add_option("--source", source, "Source image S (8-bit PNG)");
  app.add_option("--target", target, "Target image T (8-bit PNG, same size as S)");
  app.add_option("--config", config_path, "Run configuration file (key = value lines)");
  const auto names = covcompose::preset_names();
  auto* preset_opt = app.add_option("--preset", preset, "Experiment preset")
                         ->check(CLI::IsMember(std::vector<std::string>(names.begin(), names.end())));
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");
  auto* gen_opt = app.add_option("--generations", generations, "Number of GA iterations");
  app.add_flag("--dump-saliency", dump_saliency, "Also write saliency_S.png and saliency_T.png");
  app.add_option("--set", sets, "Override any config key, as key=value (repeatable)");
  app.add_flag("-q,--quiet", quiet, "Suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 1;
  }

  try {
    covcompose::KeyValues overrides;
    if (!source.empty()) overrides.emplace_back("source", source);
    if (!target.empty()) overrides.emplace_back("target", target);
    if (*preset_opt) overrides.emplace_back("preset", preset);
    if (*seed_opt) overrides.emplace_back("seed", std::to_string(seed));
    if (*out_opt) overrides.emplace_back("out_dir", out_dir);
    if (*gen_opt) overrides.emplace_back("generations", std::to_string(generations));
    if (dump_saliency) overrides.emplace_back("dump_saliency", "true");
    for (const std::string& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        throw covcompose::Error(covcompose::ErrorCode::BadValue, "--set expects key=value, got '" + kv + "'");
      }
      overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }

    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    const covcompose::RunConfig cfg = covcompose::parse_config(text, overrides);
    const auto summary = covcompose::run_composition(cfg, quiet ? nullptr : &std::cerr);
    if (!quiet) {
      for (std::size_t k = 0; k < summary.slots.size(); ++k) {
        std::cout << summary.images[k].string() << "  fitness " << summary.slots[k].fitness
                  << "  constraint " << summary.slots[k].constraint << '\n';
      }
    }
    return 0;
  } catch (const covcompose::Error& e) {
    std::cerr << "compose: " << e.what() << '\n';
    return covcompose::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "compose: " << e.what() << '\n';
    return 2;
  }
}
