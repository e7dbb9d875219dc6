#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "covcompose/evolution.hpp"
#include "covcompose/features.hpp"
#include "covcompose/spd.hpp"

namespace covcompose {

enum class Weighting { Uniform, Saliency };

/// Fully resolved parameters of one composition run.
///
/// Defaults give Feature Set 1, l = 25, Log-Euclidean distance, saliency
/// weights, mu = 4, 2000 generations, p_c = 0.2 and seed 0.
struct RunConfig {
  std::filesystem::path source;
  std::filesystem::path target;
  std::optional<std::string> preset;
  FeatureSpec features = FeatureSpec::set1();
  int half_width = 25;
  Metric metric = Metric::LogEuclidean;
  Weighting weighting = Weighting::Saliency;
  double w_source = 0.5;
  double w_target = 0.5;
  double sigma_frac = 0.04;
  GaConfig ga;
  std::filesystem::path out_dir = "out";
  bool dump_saliency = false;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines; '#' starts a comment. Throws Error(UnknownKey)
/// or Error(BadValue) with the line number.
KeyValues parse_key_values(std::string_view text);

/// Names accepted by apply_preset.
std::vector<std::string_view> preset_names();

/// Overwrites the experiment parameters of a named preset. Throws Error(UnknownPreset).
void apply_preset(RunConfig& cfg, std::string_view name);

/// Sets one key. Throws Error(UnknownKey) or Error(BadValue) naming the key.
void apply_key(RunConfig& cfg, std::string_view key, std::string_view value);

/// Defaults, then the preset (an override's `preset` wins over the file's),
/// then the file's keys, then the overrides. Throws Error(MissingInput) when
/// source or target is unset and Error(BadValue) for invalid combinations.
RunConfig parse_config(std::string_view text, const KeyValues& overrides = {});

/// Inverse of parse_config: one `key = value` line per parameter, with
/// round-trip precision for reals.
std::string to_config_text(const RunConfig& cfg);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_real(double v);

}  // namespace covcompose
