#pragma once

#include "gpembed/harness_types.hpp"

#include <map>
#include <string>

// =============================================================================
// Flat key-value experiment configs ("key = value" lines, '#' comments).
//
//   manifold = circle | flat_torus | klein | circle_with_outliers
//   n        = points per trial
//   trials   = number of trials
//   eps      = kernel scale
//   methods  = comma list of DMS,DMB,GPS,GPB,GPSBS,GPSBB
//   k        = fixed target dimension   (or kmin = .. / kmax = ..)
//   p        = kernel power             (or P = .. for powers 2,4,...,2^P,
//                                        or powers = explicit comma list)
//   reference = diffusion | euclidean   (default diffusion)
//   delta    = Sinkhorn tolerance       (default 1e-8)
//   seed     = master seed              (default 0)
//   r        = flat_torus radius        a = .. / b = .. for klein
//   outliers = x,y ; x,y ; ...          for circle_with_outliers
//
// Schema violations are collected and reported together, one message per
// offending key.
// =============================================================================

namespace gpembed {

// Raw "key = value" pairs; later duplicates override earlier ones.
std::map<std::string, std::string> parse_key_values(const std::string& content);

// Builds and validates a full config. Throws ValidationError listing every
// offending or missing key. When `seed` is absent the fallback applies.
ExperimentConfig build_experiment_config(const std::map<std::string, std::string>& kv,
                                         std::uint64_t fallback_seed = 0);

ExperimentConfig parse_experiment_config(const std::string& content,
                                         std::uint64_t fallback_seed = 0);

} // namespace gpembed
