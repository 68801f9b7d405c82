#pragma once

#include "gpembed/cloud.hpp"
#include "gpembed/matrix.hpp"

#include <cstddef>
#include <string>

// =============================================================================
// Gaussian affinity matrices and their normalizations.
//
// affinity()               K_ij = exp(-|x_i - x_j|^2 / eps)
// normalize_symmetric()    two-stage row normalization producing a symmetric
//                          kernel: K~ = D_q^-1 K D_q^-1, A = D_v^-1/2 K~ D_v^-1/2
// normalize_bistochastic() Sinkhorn-style diagonal balancing B = D^-1 K D^-1
//                          with all row and column sums equal to 1
//
// All outputs are constructed upper-triangle-first and mirrored, so symmetry
// holds exactly (bitwise), not merely up to round-off.
// =============================================================================

namespace gpembed {

enum class Normalization { raw, symmetric, bistochastic };

const char* normalization_name(Normalization n);

class KernelMatrix {
public:
    // Wraps an existing symmetric matrix. Validates exact symmetry and
    // finiteness; entry-range and PSD expectations are asserted by tests, not
    // enforced here, to keep stored values bit-reproducible from inputs.
    static KernelMatrix from_matrix(Matrix entries, Normalization norm, double scale_eps);

    const Matrix& entries() const { return entries_; }
    Normalization normalization() const { return norm_; }
    double scale_eps() const { return eps_; }
    std::size_t size() const { return entries_.rows(); }

private:
    KernelMatrix(Matrix entries, Normalization norm, double eps)
        : entries_(std::move(entries)), norm_(norm), eps_(eps) {}

    Matrix entries_;
    Normalization norm_;
    double eps_;
};

KernelMatrix affinity(const PointCloud& cloud, double eps);

KernelMatrix normalize_symmetric(const KernelMatrix& raw);

struct SinkhornInfo {
    std::size_t iterations = 0;
    double final_residual = 0.0;
};

KernelMatrix normalize_bistochastic(const KernelMatrix& raw, double delta = 1e-8,
                                    std::size_t max_iters = 100000,
                                    SinkhornInfo* info = nullptr);

} // namespace gpembed
