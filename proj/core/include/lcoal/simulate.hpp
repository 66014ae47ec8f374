#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lcoal/measure.hpp"
#include "lcoal/random.hpp"
#include "lcoal/rates.hpp"

namespace lcoal {

// Samplers work on particle counts only. Time is measured on the clock of the
// unit-rate Poisson process of epochs.

struct CoalescentSummary {
  std::int64_t n = 1;
  std::int64_t collisions = 0;     // X_n
  double absorption_time = 0.0;    // tau_n
  std::optional<std::vector<std::int64_t>> merge_sizes;  // k - 1 per collision
};

/// Counts right after one epoch of the coupled construction.
struct EpochRecord {
  double time;
  std::int64_t coalescent;  // Pi_n(t) = primary + secondary
  std::int64_t primary;     // K_n(t)
};

struct CoupledSample {
  std::int64_t n = 0;
  std::int64_t collisions = 0;   // X_n
  double absorption_time = 0.0;  // tau_n
  std::int64_t jumps = 0;        // K_n
  std::int64_t unit_jumps = 0;   // K_{n,1}
  std::int64_t idle_epochs = 0;  // K_{n,0}
  double sigma = 0.0;            // annihilator absorption time
  std::int64_t survivors = 0;    // U_n, secondary particles alive at sigma
  std::int64_t collisions_after = 0;  // coalescent collisions strictly after sigma
  std::vector<std::int64_t> composition;  // primary decrements, in order
  std::optional<std::vector<EpochRecord>> trace;
};

struct TaggedSample {
  double external_branch = 0.0;       // Z_n
  std::int64_t collisions_before = 0;  // including the tagged particle's own
};

/// Epoch loop: every Exponential(1) gap draws 1 - eta and marks each of the m
/// current particles head with that probability; two or more heads merge.
CoalescentSummary simulate_coalescent_epochs(const CharacteristicMeasure& measure, std::int64_t n,
                                             RandomStream& rng, bool record_merges = false);

/// Embedded death chain with Exponential(g_m) holding times. n <= n_max.
CoalescentSummary simulate_coalescent_chain(const RateTable& table, std::int64_t n,
                                            RandomStream& rng, bool record_merges = false);

/// Coalescent and annihilator driven by the same epochs and marks. n >= 2.
CoupledSample simulate_coupled(const CharacteristicMeasure& measure, std::int64_t n,
                               RandomStream& rng, bool record_trace = false);

/// Follows one tagged particle until it first takes part in a collision. n >= 2.
TaggedSample simulate_tagged(const CharacteristicMeasure& measure, std::int64_t n,
                             RandomStream& rng);

}  // namespace lcoal
