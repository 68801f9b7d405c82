#include "gpembed/embed.hpp"

#include "gpembed/error.hpp"
#include "gpembed/rng.hpp"
#include "gpembed/simd.hpp"

#include <cmath>
#include <string>

namespace gpembed {

namespace {

constexpr double kEigenvalueClampTol = -1e-10;

Method method_for(Normalization norm, SketchDistribution dist) {
    if (dist == SketchDistribution::gaussian)
        return norm == Normalization::symmetric ? Method::GPS : Method::GPB;
    return norm == Normalization::symmetric ? Method::GPSBS : Method::GPSBB;
}

void require_normalized(const KernelMatrix& a, const char* op) {
    if (a.normalization() == Normalization::raw)
        throw ValidationError(std::string(op) + ": kernel must be symmetric- or bistochastic-normalized");
}

} // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::DMS: return "DMS";
        case Method::DMB: return "DMB";
        case Method::GPS: return "GPS";
        case Method::GPB: return "GPB";
        case Method::GPSBS: return "GPSBS";
        case Method::GPSBB: return "GPSBB";
    }
    return "?";
}

std::optional<Method> parse_method(const std::string& name) {
    for (const Method m : {Method::DMS, Method::DMB, Method::GPS, Method::GPB,
                           Method::GPSBS, Method::GPSBB})
        if (name == method_name(m)) return m;
    return std::nullopt;
}

Normalization method_normalization(Method m) {
    switch (m) {
        case Method::DMS:
        case Method::GPS:
        case Method::GPSBS:
            return Normalization::symmetric;
        default:
            return Normalization::bistochastic;
    }
}

std::optional<SketchDistribution> method_distribution(Method m) {
    switch (m) {
        case Method::GPS:
        case Method::GPB:
            return SketchDistribution::gaussian;
        case Method::GPSBS:
        case Method::GPSBB:
            return SketchDistribution::symmetric_bernoulli;
        default:
            return std::nullopt;
    }
}

SketchMatrix make_sketch(std::size_t n, std::size_t k, SketchDistribution distribution,
                         std::uint64_t seed) {
    if (n == 0 || k == 0)
        throw ValidationError("make_sketch: need n >= 1 and k >= 1");
    Matrix g(n, k);
    Rng rng(seed);
    if (distribution == SketchDistribution::gaussian) {
        for (double& v : g.data()) v = rng.next_gaussian();
    } else {
        for (double& v : g.data()) v = rng.next_sign();
    }
    return SketchMatrix{std::move(g), distribution, seed};
}

Embedding diffusion_maps(const KernelMatrix& a, std::size_t k, double t) {
    require_normalized(a, "diffusion_maps");
    if (k + 1 > a.size())
        throw ValidationError("diffusion_maps: need k+1 <= N");
    if (!(t > 0.0))
        throw ValidationError("diffusion_maps: t must be positive");
    const SpectralDecomposition dec = top_eigenpairs(a, k + 1);
    return diffusion_maps_from_spectral(dec, a.normalization(), k, t);
}

Embedding diffusion_maps_from_spectral(const SpectralDecomposition& dec, Normalization norm,
                                       std::size_t k, double t) {
    if (norm == Normalization::raw)
        throw ValidationError("diffusion_maps: kernel must be normalized");
    if (dec.eigenvalues.size() < k + 1)
        throw ValidationError("diffusion_maps: decomposition holds fewer than k+1 pairs");
    if (!(t > 0.0))
        throw ValidationError("diffusion_maps: t must be positive");

    const std::size_t n = dec.source_size;
    Matrix y(n, k);
    // Index 0 is the constant-like top eigenvector; coordinates start at 1.
    for (std::size_t i = 1; i <= k; ++i) {
        double lambda = dec.eigenvalues[i];
        if (lambda < kEigenvalueClampTol)
            throw NumericalError("diffusion_maps: eigenvalue " + std::to_string(lambda) +
                                 " below PSD clamp tolerance");
        if (lambda < 0.0) lambda = 0.0;
        const double weight = std::pow(lambda, t);
        const double* v = dec.eigenvectors.row(i);
        for (std::size_t j = 0; j < n; ++j) y(j, i - 1) = weight * v[j];
    }
    const Method method = norm == Normalization::symmetric ? Method::DMS : Method::DMB;
    return Embedding{std::move(y), method, t, std::nullopt};
}

Embedding gp_embedding(const KernelMatrix& a, std::size_t k, unsigned p,
                       const SketchMatrix& sketch) {
    require_normalized(a, "gp_embedding");
    if (sketch.entries.rows() != a.size() || sketch.entries.cols() != k)
        throw ValidationError("gp_embedding: sketch shape must be N x k");
    if (p == 0)
        throw ValidationError("gp_embedding: power must be >= 1");

    Matrix y = matrix_power_apply(a, p, sketch.entries);
    simd::scale(y.data().data(), 1.0 / std::sqrt(static_cast<double>(k)), y.data().size());
    return Embedding{std::move(y), method_for(a.normalization(), sketch.distribution),
                     static_cast<double>(p), sketch.seed};
}

Embedding embed_cloud(const PointCloud& cloud, Method method, std::size_t k, unsigned p,
                      double eps, double delta, std::uint64_t seed) {
    const KernelMatrix raw = affinity(cloud, eps);
    const KernelMatrix a = method_normalization(method) == Normalization::symmetric
                               ? normalize_symmetric(raw)
                               : normalize_bistochastic(raw, delta);
    const auto dist = method_distribution(method);
    if (!dist.has_value())
        return diffusion_maps(a, k, static_cast<double>(p));
    const SketchMatrix g = make_sketch(cloud.size(), k, *dist, derive_seed(seed, "sketch"));
    return gp_embedding(a, k, p, g);
}

} // namespace gpembed
