#pragma once

#include "gpembed/embed.hpp"
#include "gpembed/manifolds.hpp"

#include <cstdint>
#include <vector>

namespace gpembed {

enum class ReferenceMetric { diffusion, euclidean };

// Collapsed embeddings (infinite distortion) enter the statistics at this cap.
constexpr double kCollapseCap = 1e12;

struct ExperimentConfig {
    ManifoldSpec manifold;            // per-trial seeds are derived; spec.seed is ignored
    std::size_t trials = 0;           // N
    unsigned p = 1;                   // kernel power (ignored when powers is set)
    std::vector<unsigned> powers;     // power sweep; empty for fixed-p runs
    std::size_t k_min = 0;
    std::size_t k_max = 0;            // fixed k when k_min == k_max
    double eps = 0.0;
    std::vector<Method> methods;
    ReferenceMetric reference = ReferenceMetric::diffusion;
    double sinkhorn_delta = 1e-8;
    std::uint64_t master_seed = 0;
    unsigned threads = 1;             // trial-level parallelism; 0 = hardware default

    void validate() const;
};

struct ReportRow {
    Method method;
    std::size_t k;
    unsigned p;
    double mean_logL;
    double std_logL;
    std::size_t collapse_count;
    std::size_t trials;
};

struct RawRecord {
    std::size_t trial;
    Method method;
    std::size_t k;
    unsigned p;
    double logL;
    bool collapsed;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;
    std::vector<RawRecord> raw;  // ordered by (trial, method, k, p)
};

} // namespace gpembed
