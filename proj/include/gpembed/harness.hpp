#pragma once

#include "gpembed/harness_types.hpp"

// =============================================================================
// Experiment protocol.
//
// Per trial: sample one cloud, build each required kernel normalization once,
// and evaluate every (method, k, p) cell against the configured reference
// distance. Within a trial one Gaussian sketch per k serves both GPS and GPB,
// and one Bernoulli sketch per k serves GPSBS and GPSBB; sketches for
// different k are independent draws. The diffusion reference uses the same
// normalization as the embedding and time t = p.
//
// Seeds: master_seed -> per-trial seed -> named sub-streams (cloud,
// gaussian-sketch, bernoulli-sketch) -> per-k sketch seeds. Adding a method
// to a config never changes the randomness any other method sees, and trials
// may run on any number of threads without changing a single output bit.
//
// Statistics are over exactly `trials` values of log L. A collapsed embedding
// (infinite distortion) contributes log(kCollapseCap) and bumps the row's
// collapse_count. std is the population standard deviation, so a single-trial
// run reports 0.
// =============================================================================

namespace gpembed {

// Fixed-power run: report rows are (method, k) for k in [k_min, k_max].
// Requires cfg.powers to be empty.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Multiscale run: fixed k, rows keyed by p over cfg.powers (ascending).
// Requires the Euclidean reference; A^p G is accumulated incrementally, so
// each power continues the previous one's multiplication chain.
ExperimentReport run_power_sweep(const ExperimentConfig& cfg);

} // namespace gpembed
