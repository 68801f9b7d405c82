#pragma once

#include "gpembed/cloud.hpp"
#include "gpembed/kernel.hpp"
#include "gpembed/matrix.hpp"
#include "gpembed/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>

// =============================================================================
// Embeddings of a kernel matrix into R^k.
//
// diffusion_maps: y_j = (lambda_1^t (v_1)_j, ..., lambda_k^t (v_k)_j), from the
// top k+1 eigenpairs with the top (constant-like) eigenvector dropped.
//
// gp_embedding: Y = (1/sqrt(k)) A^p G for a random N x k sketch G, Gaussian or
// symmetric Bernoulli. Rows of Y are realizations of a random process whose
// covariance is A^{2p}, so straight-line distances in the embedding estimate
// the diffusion distance at time p.
//
// Method naming: DM/GP x {S,B} normalization, trailing BS/BB for Bernoulli
// sketches (DMS, DMB, GPS, GPB, GPSBS, GPSBB).
// =============================================================================

namespace gpembed {

enum class Method { DMS, DMB, GPS, GPB, GPSBS, GPSBB };

enum class SketchDistribution { gaussian, symmetric_bernoulli };

const char* method_name(Method m);
std::optional<Method> parse_method(const std::string& name);
Normalization method_normalization(Method m);
// Empty for the deterministic diffusion-maps methods.
std::optional<SketchDistribution> method_distribution(Method m);

struct SketchMatrix {
    Matrix entries;  // N x k
    SketchDistribution distribution;
    std::uint64_t seed;
};

struct Embedding {
    Matrix coords;  // N x k, row j is the image of x_j
    Method method;
    double power;   // t for diffusion maps, p for sketch embeddings
    std::optional<std::uint64_t> seed;
};

// Deterministic in (n, k, distribution, seed); entries are drawn row-major.
SketchMatrix make_sketch(std::size_t n, std::size_t k, SketchDistribution distribution,
                         std::uint64_t seed);

Embedding diffusion_maps(const KernelMatrix& a, std::size_t k, double t);

// Same map, reusing an existing decomposition with at least k+1 pairs. Output
// is identical to diffusion_maps when the decomposition came from the same
// kernel's dense path; the harness uses this to share one decomposition
// across target dimensions.
Embedding diffusion_maps_from_spectral(const SpectralDecomposition& dec,
                                       Normalization norm, std::size_t k, double t);

Embedding gp_embedding(const KernelMatrix& a, std::size_t k, unsigned p,
                       const SketchMatrix& sketch);

// Cloud-to-embedding pipeline used by the CLI: builds the affinity matrix at
// scale eps, normalizes per the method, and embeds. For sketch methods the
// sketch stream is derive_seed(seed, "sketch"); diffusion maps take t = p.
Embedding embed_cloud(const PointCloud& cloud, Method method, std::size_t k, unsigned p,
                      double eps, double delta, std::uint64_t seed);

} // namespace gpembed
