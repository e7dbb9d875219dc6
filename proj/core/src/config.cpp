#include "covcompose/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "covcompose/error.hpp"

namespace covcompose {
namespace {

constexpr std::array<std::string_view, 24> kKeys{
    "source",   "target",      "preset",     "feature_set", "l",        "metric",
    "weighting", "w_s",        "w_t",        "sigma_frac",  "bound",    "mu",
    "generations", "p_c",      "t_cr",       "t_lb",        "t_ub",     "adapt_factor",
    "adapt_k",  "seed",        "t_init",     "rebuild_interval", "out_dir", "dump_saliency",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorCode::BadValue,
              std::string(key) + " = '" + std::string(value) + "': " + std::string(why));
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, value, "not a number");
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value, "expected true or false");
}

struct PresetSpec {
  std::string_view name;
  int features;
  int half_width;
  Weighting weighting;
  double w_source;
  double w_target;
  Metric metric;
};

constexpr std::array<PresetSpec, 11> kPresets{{
    {"feat1", 1, 25, Weighting::Uniform, 0.5, 0.5, Metric::Euclidean},
    {"feat2", 2, 25, Weighting::Uniform, 0.5, 0.5, Metric::Euclidean},
    {"feat3", 3, 25, Weighting::Uniform, 0.5, 0.5, Metric::Euclidean},
    {"weights-uniform-25", 1, 20, Weighting::Uniform, 0.25, 0.75, Metric::LogEuclidean},
    {"weights-uniform-50", 1, 20, Weighting::Uniform, 0.5, 0.5, Metric::LogEuclidean},
    {"weights-uniform-75", 1, 20, Weighting::Uniform, 0.75, 0.25, Metric::LogEuclidean},
    {"weights-saliency", 1, 20, Weighting::Saliency, 0.5, 0.5, Metric::LogEuclidean},
    {"metric-E", 1, 20, Weighting::Saliency, 0.5, 0.5, Metric::Euclidean},
    {"metric-L", 1, 20, Weighting::Saliency, 0.5, 0.5, Metric::LogEuclidean},
    {"metric-A", 1, 20, Weighting::Saliency, 0.5, 0.5, Metric::AffineInvariant},
    {"best", 1, 20, Weighting::Saliency, 0.5, 0.5, Metric::LogEuclidean},
}};

FeatureSpec preset_features(int set) {
  switch (set) {
    case 2: return FeatureSpec::set2();
    case 3: return FeatureSpec::set3();
    default: return FeatureSpec::set1();
  }
}

std::string_view features_text(const FeatureSpec& spec, std::string& storage) {
  if (spec == FeatureSpec::set1()) return "1";
  if (spec == FeatureSpec::set2()) return "2";
  if (spec == FeatureSpec::set3()) return "3";
  storage = spec.to_string();
  return storage;
}

}  // namespace

std::string format_real(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::BadValue, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw Error(ErrorCode::UnknownKey, "line " + std::to_string(line_no) + ": '" + std::string(key) + "'");
    }
    out.emplace_back(key, value);
  }
  return out;
}

std::vector<std::string_view> preset_names() {
  std::vector<std::string_view> names;
  for (const auto& p : kPresets) names.push_back(p.name);
  return names;
}

void apply_preset(RunConfig& cfg, std::string_view name) {
  const auto it = std::find_if(kPresets.begin(), kPresets.end(),
                               [&](const PresetSpec& p) { return p.name == name; });
  if (it == kPresets.end()) throw Error(ErrorCode::UnknownPreset, "'" + std::string(name) + "'");
  cfg.preset = std::string(name);
  cfg.features = preset_features(it->features);
  cfg.half_width = it->half_width;
  cfg.weighting = it->weighting;
  cfg.w_source = it->w_source;
  cfg.w_target = it->w_target;
  cfg.metric = it->metric;
}

void apply_key(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "source") {
    cfg.source = std::string(value);
  } else if (key == "target") {
    cfg.target = std::string(value);
  } else if (key == "preset") {
    apply_preset(cfg, value);
  } else if (key == "feature_set") {
    try {
      cfg.features = FeatureSpec::parse(value);
    } catch (const Error& e) {
      bad_value(key, value, e.what());
    }
  } else if (key == "l") {
    cfg.half_width = parse_number<int>(key, value);
    if (cfg.half_width < 1) bad_value(key, value, "half-width must be at least 1");
  } else if (key == "metric") {
    try {
      cfg.metric = parse_metric(value);
    } catch (const Error& e) {
      bad_value(key, value, "expected euclidean, logeuclidean or affine");
    }
  } else if (key == "weighting") {
    if (value == "uniform") {
      cfg.weighting = Weighting::Uniform;
    } else if (value == "saliency") {
      cfg.weighting = Weighting::Saliency;
    } else {
      bad_value(key, value, "expected uniform or saliency");
    }
  } else if (key == "w_s") {
    cfg.w_source = parse_number<double>(key, value);
  } else if (key == "w_t") {
    cfg.w_target = parse_number<double>(key, value);
  } else if (key == "sigma_frac") {
    cfg.sigma_frac = parse_number<double>(key, value);
  } else if (key == "bound") {
    cfg.ga.bound = value == "auto" ? std::nullopt : std::optional<long>(parse_number<long>(key, value));
  } else if (key == "mu") {
    cfg.ga.mu = parse_number<int>(key, value);
  } else if (key == "generations") {
    cfg.ga.generations = parse_number<long>(key, value);
  } else if (key == "p_c") {
    cfg.ga.p_c = parse_number<double>(key, value);
  } else if (key == "t_cr") {
    cfg.ga.t_cr = parse_number<long>(key, value);
  } else if (key == "t_lb") {
    cfg.ga.t_lb = parse_number<double>(key, value);
  } else if (key == "t_ub") {
    cfg.ga.t_ub = parse_number<double>(key, value);
  } else if (key == "adapt_factor") {
    cfg.ga.adapt_factor = parse_number<double>(key, value);
  } else if (key == "adapt_k") {
    cfg.ga.adapt_k = parse_number<int>(key, value);
  } else if (key == "seed") {
    cfg.ga.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "t_init") {
    cfg.ga.t_init = value == "auto" ? std::nullopt : std::optional<double>(parse_number<double>(key, value));
  } else if (key == "rebuild_interval") {
    cfg.ga.rebuild_interval = parse_number<long>(key, value);
  } else if (key == "out_dir") {
    cfg.out_dir = std::string(value);
  } else if (key == "dump_saliency") {
    cfg.dump_saliency = parse_bool(key, value);
  } else {
    throw Error(ErrorCode::UnknownKey, "'" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::string_view text, const KeyValues& overrides) {
  const KeyValues file = parse_key_values(text);
  for (const auto& [key, value] : overrides) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw Error(ErrorCode::UnknownKey, "'" + key + "'");
    }
  }
  const auto find_preset = [](const KeyValues& kv) -> std::optional<std::string> {
    std::optional<std::string> found;
    for (const auto& [key, value] : kv) {
      if (key == "preset") found = value;
    }
    return found;
  };

  RunConfig cfg;
  auto preset = find_preset(overrides);
  if (!preset) preset = find_preset(file);
  if (preset) apply_preset(cfg, *preset);
  for (const KeyValues* layer : {&file, &overrides}) {
    for (const auto& [key, value] : *layer) {
      if (key != "preset") apply_key(cfg, key, value);
    }
  }

  if (cfg.source.empty()) throw Error(ErrorCode::MissingInput, "no source image given");
  if (cfg.target.empty()) throw Error(ErrorCode::MissingInput, "no target image given");
  if (!(cfg.w_source >= 0.0 && cfg.w_source <= 1.0)) {
    bad_value("w_s", format_real(cfg.w_source), "must lie in [0,1]");
  }
  if (!(cfg.w_target >= 0.0 && cfg.w_target <= 1.0)) {
    bad_value("w_t", format_real(cfg.w_target), "must lie in [0,1]");
  }
  if (!(cfg.sigma_frac > 0.0 && cfg.sigma_frac < 0.5)) {
    bad_value("sigma_frac", format_real(cfg.sigma_frac), "must lie in (0, 0.5)");
  }
  cfg.ga.validate();
  return cfg;
}

std::string to_config_text(const RunConfig& cfg) {
  std::ostringstream os;
  std::string storage;
  os << "source = " << cfg.source.string() << '\n';
  os << "target = " << cfg.target.string() << '\n';
  if (cfg.preset) os << "preset = " << *cfg.preset << '\n';
  os << "feature_set = " << features_text(cfg.features, storage) << '\n';
  os << "l = " << cfg.half_width << '\n';
  os << "metric = " << metric_name(cfg.metric) << '\n';
  os << "weighting = " << (cfg.weighting == Weighting::Uniform ? "uniform" : "saliency") << '\n';
  os << "w_s = " << format_real(cfg.w_source) << '\n';
  os << "w_t = " << format_real(cfg.w_target) << '\n';
  os << "sigma_frac = " << format_real(cfg.sigma_frac) << '\n';
  os << "bound = " << (cfg.ga.bound ? std::to_string(*cfg.ga.bound) : std::string("auto")) << '\n';
  os << "mu = " << cfg.ga.mu << '\n';
  os << "generations = " << cfg.ga.generations << '\n';
  os << "p_c = " << format_real(cfg.ga.p_c) << '\n';
  os << "t_cr = " << cfg.ga.t_cr << '\n';
  os << "t_lb = " << format_real(cfg.ga.t_lb) << '\n';
  os << "t_ub = " << format_real(cfg.ga.t_ub) << '\n';
  os << "adapt_factor = " << format_real(cfg.ga.adapt_factor) << '\n';
  os << "adapt_k = " << cfg.ga.adapt_k << '\n';
  os << "seed = " << cfg.ga.seed << '\n';
  os << "t_init = " << (cfg.ga.t_init ? format_real(*cfg.ga.t_init) : std::string("auto")) << '\n';
  os << "rebuild_interval = " << cfg.ga.rebuild_interval << '\n';
  os << "out_dir = " << cfg.out_dir.string() << '\n';
  os << "dump_saliency = " << (cfg.dump_saliency ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace covcompose
