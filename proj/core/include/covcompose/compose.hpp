#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "covcompose/config.hpp"
#include "covcompose/error.hpp"
#include "covcompose/evolution.hpp"
#include "covcompose/image.hpp"

namespace covcompose {

inline constexpr std::string_view kTraceHeader =
    "generation,slot,operator,accepted,fitness,constraint,t_max";

/// One CSV line (no newline) in kTraceHeader column order.
std::string format_trace_row(const TraceRecord& rec);

/// True iff every pixel of `x` equals the corresponding pixel of S or T.
bool validate_mixture(const RgbImage& source, const RgbImage& target, const RgbImage& x);

/// 64-bit FNV-1a of a file's bytes. Throws Error(IoError).
std::uint64_t file_checksum(const std::filesystem::path& path);

/// Builds the weight map and fitness context described by `cfg` for S and T.
FitnessContext make_fitness_context(const RunConfig& cfg, const RgbImage& source,
                                    const RgbImage& target);

struct SlotResult {
  double fitness = 0.0;
  long constraint = 0;
};

struct RunSummary {
  std::vector<SlotResult> slots;
  std::vector<std::filesystem::path> images;
  std::filesystem::path trace;
  std::filesystem::path manifest;
};

/// Runs the GA described by `cfg` and writes into cfg.out_dir:
/// pop_<k>.png for every final individual, trace.csv, run_manifest.txt and,
/// when requested, saliency_S.png / saliency_T.png.
RunSummary run_composition(const RunConfig& cfg, std::ostream* log = nullptr);

/// Process exit status for an error: 1 for validation errors, 2 otherwise.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace covcompose
