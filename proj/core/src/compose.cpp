#include "covcompose/compose.hpp"

#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>

#include "covcompose/png_io.hpp"
#include "covcompose/saliency.hpp"

namespace covcompose {
namespace {

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
}

}  // namespace

std::string format_trace_row(const TraceRecord& rec) {
  std::string row = std::to_string(rec.generation);
  row += ',';
  row += std::to_string(rec.slot);
  row += ',';
  row += operator_name(rec.op);
  row += rec.accepted ? ",1," : ",0,";
  row += format_real(rec.fitness);
  row += ',';
  row += std::to_string(rec.constraint);
  row += ',';
  row += format_real(rec.t_max);
  return row;
}

bool validate_mixture(const RgbImage& source, const RgbImage& target, const RgbImage& x) {
  if (!source.same_shape(target) || !source.same_shape(x)) return false;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] != source[k] && x[k] != target[k]) return false;
  }
  return true;
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::istreambuf_iterator<char> it(in), end; it != end; ++it) {
    h ^= static_cast<unsigned char>(*it);
    h *= 0x100000001b3ULL;
  }
  return h;
}

FitnessContext make_fitness_context(const RunConfig& cfg, const RgbImage& source,
                                    const RgbImage& target) {
  const RegionGrid grid(source.rows(), source.cols(), cfg.half_width);
  WeightMap weights;
  if (cfg.weighting == Weighting::Uniform) {
    weights = uniform_weights(grid, cfg.w_source, cfg.w_target);
  } else {
    weights = saliency_weights(grid, image_signature_saliency(source, cfg.sigma_frac),
                               image_signature_saliency(target, cfg.sigma_frac));
  }
  return FitnessContext(source, target, cfg.features, cfg.half_width, cfg.metric, std::move(weights));
}

RunSummary run_composition(const RunConfig& cfg, std::ostream* log) {
  cfg.ga.validate();
  auto [source, target] = load_png_pair(cfg.source, cfg.target);
  const FitnessContext ctx = make_fitness_context(cfg, source, target);

  std::filesystem::create_directories(cfg.out_dir);
  RunSummary summary;
  if (cfg.dump_saliency) {
    save_grey_png(cfg.out_dir / "saliency_S.png", image_signature_saliency(source, cfg.sigma_frac));
    save_grey_png(cfg.out_dir / "saliency_T.png", image_signature_saliency(target, cfg.sigma_frac));
  }

  summary.trace = cfg.out_dir / "trace.csv";
  std::ofstream trace(summary.trace, std::ios::binary);
  if (!trace) throw Error(ErrorCode::IoError, "cannot write '" + summary.trace.string() + "'");
  trace << kTraceHeader << '\n';
  const long report_every = std::max(1L, cfg.ga.generations / 10);
  const GaResult result = run_ga(ctx, cfg.ga, [&](const TraceRecord& rec) {
    trace << format_trace_row(rec) << '\n';
    if (log != nullptr && (rec.generation + 1) % report_every == 0) {
      *log << "generation " << rec.generation + 1 << '/' << cfg.ga.generations
           << "  t_max " << rec.t_max << '\n';
    }
  });
  trace.close();
  if (!trace) throw Error(ErrorCode::IoError, "cannot write '" + summary.trace.string() + "'");

  for (std::size_t k = 0; k < result.population.size(); ++k) {
    const Individual& ind = result.population[k];
    const auto path = cfg.out_dir / ("pop_" + std::to_string(k) + ".png");
    save_png(path, ind.rendered);
    summary.images.push_back(path);
    summary.slots.push_back({ind.fitness, ind.constraint()});
  }

  std::string manifest = to_config_text(cfg);
  manifest += "# source_fnv1a64 = " + hex64(file_checksum(cfg.source)) + '\n';
  manifest += "# target_fnv1a64 = " + hex64(file_checksum(cfg.target)) + '\n';
  manifest += "# bound_resolved = " + std::to_string(cfg.ga.resolved_bound(ctx.rows(), ctx.cols())) + '\n';
  for (std::size_t k = 0; k < summary.slots.size(); ++k) {
    manifest += "# slot " + std::to_string(k) + " fitness = " + format_real(summary.slots[k].fitness) +
                " constraint = " + std::to_string(summary.slots[k].constraint) + '\n';
  }
  summary.manifest = cfg.out_dir / "run_manifest.txt";
  write_text(summary.manifest, manifest);
  return summary;
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnknownKey:
    case ErrorCode::BadValue:
    case ErrorCode::MissingInput:
    case ErrorCode::UnknownPreset:
    case ErrorCode::WeightOutOfRange:
    case ErrorCode::ImageTooSmall:
    case ErrorCode::DimensionTooSmall:
    case ErrorCode::DimensionMismatch:
      return 1;
    default:
      return 2;
  }
}

}  // namespace covcompose
