#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "covcompose/fitness.hpp"
#include "covcompose/rng.hpp"

namespace covcompose {

/// Parameters of the (mu+1) GA and its self-adaptive walk length.
struct GaConfig {
  int mu = 4;
  long generations = 2000;
  double p_c = 0.2;
  long t_cr = 10000;
  double t_lb = 50.0;
  double t_ub = 5000.0;
  double adapt_factor = 2.0;  // F
  int adapt_k = 8;            // k
  std::optional<long> bound;  // B; floor(0.25 m n) when unset
  std::uint64_t seed = 0;
  std::optional<double> t_init;  // initial t_max; t_lb when unset
  long rebuild_interval = 200;   // full cache rebuild cadence, 0 disables

  /// Throws Error(BadValue) naming the offending field.
  void validate() const;
  [[nodiscard]] long resolved_bound(int rows, int cols) const;
};

struct AdaptState {
  double t_max = 50.0;
};

/// Success multiplies t_max by F (capped at t_ub); failure multiplies it by
/// F^(-1/k) (floored at t_lb).
AdaptState adapt_t_max(AdaptState state, bool accepted, const GaConfig& cfg);

/// Visited pixels of a toroidal 4-neighbour walk: a uniform start followed by
/// `steps` uniform moves. Returns steps + 1 pixels in visiting order.
std::vector<Pixel> random_walk_path(int rows, int cols, long steps, Rng& rng);

struct Offspring {
  Individual child;
  std::vector<Pixel> painted;  // every pixel the operator wrote, in order
  std::vector<Pixel> changed;  // pixels whose mask actually flipped
};

/// Paints a walk of `steps` moves with source `z` onto a copy of `parent`.
Offspring random_walk_mutation(const Individual& parent, Source z, long steps, Rng& rng,
                               const FitnessContext& ctx);

/// Copy of `first` with a t_cr-step walk repainted from `second`'s mask.
Offspring random_walk_crossover(const Individual& first, const Individual& second, long t_cr,
                                Rng& rng, const FitnessContext& ctx);

/// Copy of `first` with a random rectangle taken from `second`'s mask. The
/// corner is uniform over all pixels; extents are uniform in
/// {1..max(1, floor(m/10))} rows and {1..max(1, floor(n/10))} columns; the
/// rectangle is clipped at the image border.
Offspring rectangular_crossover(const Individual& first, const Individual& second, Rng& rng,
                                const FitnessContext& ctx);

/// Offspring replaces the parent iff it is no worse in the lexicographic order.
bool offspring_accepted(const Individual& parent, const Individual& offspring, long bound);

struct SelectionResult {
  Individual survivor;
  bool accepted = false;
};

SelectionResult selection(Individual parent, Individual offspring, long bound);

enum class OperatorTag { WalkCrossover, RectCrossover, MutateS, MutateT };

std::string_view operator_name(OperatorTag tag) noexcept;

struct TraceRecord {
  long generation = 0;
  int slot = 0;
  OperatorTag op = OperatorTag::MutateS;
  bool accepted = false;
  double fitness = 0.0;  // of the slot's survivor
  long constraint = 0;   // of the slot's survivor
  double t_max = 0.0;    // after adaptation
};

using TraceSink = std::function<void(const TraceRecord&)>;

/// mu individuals, each a pure copy of S or T chosen by a fair coin.
std::vector<Individual> init_population(const FitnessContext& ctx, const GaConfig& cfg, Rng& rng);

struct GaResult {
  std::vector<Individual> population;
  AdaptState adapt;
};

/// Runs cfg.generations iterations, one offspring per iteration. RNG draws per
/// iteration happen in this order: branch coin, slot, partner (crossover only),
/// operator coin, then the operator's own draws.
GaResult run_ga(const FitnessContext& ctx, const GaConfig& cfg, const TraceSink& sink = {});

}  // namespace covcompose
