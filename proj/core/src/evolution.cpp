#include "covcompose/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covcompose/error.hpp"

namespace covcompose {
namespace {

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) throw Error(ErrorCode::BadValue, std::string(field) + ": " + why);
}

// Copies `parent`, writes `value(px)` at each pixel of `pixels` and re-scores
// the copy incrementally.
template <class ValueAt>
Offspring paint(const Individual& parent, std::vector<Pixel> pixels, ValueAt value,
                const FitnessContext& ctx) {
  Offspring out{parent, std::move(pixels), {}};
  for (const Pixel px : out.painted) {
    const Source v = value(px);
    if (out.child.mask.at(px) != v) {
      out.child.mask.set(px, v);
      out.changed.push_back(px);
    }
  }
  evaluate_incremental(out.child, ctx, out.changed);
  return out;
}

}  // namespace

void GaConfig::validate() const {
  require(mu >= 2, "mu", "population needs at least two individuals");
  require(generations >= 0, "generations", "must be non-negative");
  require(p_c >= 0.0 && p_c <= 1.0, "p_c", "must lie in [0,1]");
  require(t_cr >= 0, "t_cr", "must be non-negative");
  require(t_lb >= 0.0, "t_lb", "must be non-negative");
  require(t_ub >= t_lb, "t_ub", "must be at least t_lb");
  require(adapt_factor > 1.0, "adapt_factor", "must exceed 1");
  require(adapt_k >= 1, "adapt_k", "must be at least 1");
  require(!bound || *bound >= 0, "bound", "must be non-negative");
  require(!t_init || (*t_init >= t_lb && *t_init <= t_ub), "t_init", "must lie in [t_lb, t_ub]");
  require(rebuild_interval >= 0, "rebuild_interval", "must be non-negative");
}

long GaConfig::resolved_bound(int rows, int cols) const {
  return bound.value_or(default_bound(rows, cols));
}

AdaptState adapt_t_max(AdaptState state, bool accepted, const GaConfig& cfg) {
  if (accepted) {
    state.t_max = std::min(cfg.adapt_factor * state.t_max, cfg.t_ub);
  } else {
    state.t_max = std::max(std::pow(cfg.adapt_factor, -1.0 / cfg.adapt_k) * state.t_max, cfg.t_lb);
  }
  return state;
}

std::vector<Pixel> random_walk_path(int rows, int cols, long steps, Rng& rng) {
  std::vector<Pixel> path;
  path.reserve(static_cast<std::size_t>(steps) + 1);
  const auto start = rng.uniform_index(static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols));
  Pixel at{static_cast<int>(start / static_cast<std::uint64_t>(cols)),
           static_cast<int>(start % static_cast<std::uint64_t>(cols))};
  path.push_back(at);
  for (long t = 0; t < steps; ++t) {
    switch (rng.uniform_index(4)) {
      case 0: at.row = at.row == 0 ? rows - 1 : at.row - 1; break;
      case 1: at.row = at.row == rows - 1 ? 0 : at.row + 1; break;
      case 2: at.col = at.col == 0 ? cols - 1 : at.col - 1; break;
      default: at.col = at.col == cols - 1 ? 0 : at.col + 1; break;
    }
    path.push_back(at);
  }
  return path;
}

Offspring random_walk_mutation(const Individual& parent, Source z, long steps, Rng& rng,
                               const FitnessContext& ctx) {
  return paint(parent, random_walk_path(ctx.rows(), ctx.cols(), std::max(0L, steps), rng),
               [z](Pixel) { return z; }, ctx);
}

Offspring random_walk_crossover(const Individual& first, const Individual& second, long t_cr,
                                Rng& rng, const FitnessContext& ctx) {
  return paint(first, random_walk_path(ctx.rows(), ctx.cols(), std::max(0L, t_cr), rng),
               [&second](Pixel px) { return second.mask.at(px); }, ctx);
}

Offspring rectangular_crossover(const Individual& first, const Individual& second, Rng& rng,
                                const FitnessContext& ctx) {
  const int rows = ctx.rows();
  const int cols = ctx.cols();
  const auto corner = rng.uniform_index(static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols));
  const int row0 = static_cast<int>(corner / static_cast<std::uint64_t>(cols));
  const int col0 = static_cast<int>(corner % static_cast<std::uint64_t>(cols));
  const int height = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(std::max(1, rows / 10))));
  const int width = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(std::max(1, cols / 10))));
  const int row1 = std::min(rows, row0 + height);
  const int col1 = std::min(cols, col0 + width);
  std::vector<Pixel> pixels;
  pixels.reserve(static_cast<std::size_t>((row1 - row0) * (col1 - col0)));
  for (int r = row0; r < row1; ++r) {
    for (int c = col0; c < col1; ++c) pixels.push_back({r, c});
  }
  return paint(first, std::move(pixels), [&second](Pixel px) { return second.mask.at(px); }, ctx);
}

bool offspring_accepted(const Individual& parent, const Individual& offspring, long bound) {
  return lex_compare(offspring, parent, bound) <= 0;
}

SelectionResult selection(Individual parent, Individual offspring, long bound) {
  if (offspring_accepted(parent, offspring, bound)) return {std::move(offspring), true};
  return {std::move(parent), false};
}

std::string_view operator_name(OperatorTag tag) noexcept {
  switch (tag) {
    case OperatorTag::WalkCrossover: return "walkX";
    case OperatorTag::RectCrossover: return "rectX";
    case OperatorTag::MutateS: return "mutS";
    case OperatorTag::MutateT: return "mutT";
  }
  return "?";
}

std::vector<Individual> init_population(const FitnessContext& ctx, const GaConfig& cfg, Rng& rng) {
  std::optional<Individual> pure_s;
  std::optional<Individual> pure_t;
  std::vector<Individual> population;
  population.reserve(static_cast<std::size_t>(cfg.mu));
  for (int i = 0; i < cfg.mu; ++i) {
    if (rng.uniform01() < 0.5) {
      if (!pure_s) pure_s = make_individual(ctx, Source::S);
      population.push_back(*pure_s);
    } else {
      if (!pure_t) pure_t = make_individual(ctx, Source::T);
      population.push_back(*pure_t);
    }
  }
  return population;
}

GaResult run_ga(const FitnessContext& ctx, const GaConfig& cfg, const TraceSink& sink) {
  cfg.validate();
  Rng rng(cfg.seed);
  const long bound = cfg.resolved_bound(ctx.rows(), ctx.cols());
  GaResult result{init_population(ctx, cfg, rng), AdaptState{cfg.t_init.value_or(cfg.t_lb)}};
  auto& population = result.population;
  const auto mu = static_cast<std::uint64_t>(cfg.mu);

  for (long gen = 0; gen < cfg.generations; ++gen) {
    const bool crossover = rng.uniform01() < cfg.p_c;
    const auto slot = static_cast<std::size_t>(rng.uniform_index(mu));
    Individual& parent = population[slot];
    Offspring offspring;
    OperatorTag op{};
    if (crossover) {
      auto partner = static_cast<std::size_t>(rng.uniform_index(mu - 1));
      if (partner >= slot) ++partner;
      if (rng.uniform01() < 0.5) {
        op = OperatorTag::WalkCrossover;
        offspring = random_walk_crossover(parent, population[partner], cfg.t_cr, rng, ctx);
      } else {
        op = OperatorTag::RectCrossover;
        offspring = rectangular_crossover(parent, population[partner], rng, ctx);
      }
    } else {
      const Source z = rng.uniform01() < 0.5 ? Source::S : Source::T;
      op = z == Source::S ? OperatorTag::MutateS : OperatorTag::MutateT;
      const auto steps = static_cast<long>(std::floor(result.adapt.t_max));
      offspring = random_walk_mutation(parent, z, steps, rng, ctx);
    }

    const bool accepted = offspring_accepted(parent, offspring.child, bound);
    if (accepted) parent = std::move(offspring.child);
    if (!crossover) result.adapt = adapt_t_max(result.adapt, accepted, cfg);

    if (cfg.rebuild_interval > 0 && (gen + 1) % cfg.rebuild_interval == 0) {
      for (Individual& ind : population) evaluate_full(ind, ctx);
    }
    if (sink) {
      sink(TraceRecord{gen, static_cast<int>(slot), op, accepted, parent.fitness,
                       parent.constraint(), result.adapt.t_max});
    }
  }
  return result;
}

}  // namespace covcompose
