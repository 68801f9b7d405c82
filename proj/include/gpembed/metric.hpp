#pragma once

#include "gpembed/kernel.hpp"
#include "gpembed/matrix.hpp"

#include <limits>

// =============================================================================
// Distance matrices and the scale-adjusted biLipschitz distortion.
//
// diffusion_distance(A, t)[i][j] = || row_i(A^t) - row_j(A^t) ||_2, which by
// the spectral identity equals sqrt(sum_l lambda_l^{2t} ((v_l)_i - (v_l)_j)^2).
//
// bilipschitz_distortion = (max dilation) / (min dilation) over unordered
// pairs, where dilation = embedded / reference; 1 means the embedding is a
// similarity. Pairs with reference distance <= zero_tol are excluded; a
// collapsed pair (embedded distance 0 at positive reference) yields +infinity.
// =============================================================================

namespace gpembed {

enum class DistanceKind { diffusion, euclidean_ambient, embedded };

struct DistanceMatrix {
    Matrix entries;  // symmetric, zero diagonal
    DistanceKind kind;
    unsigned time = 0;  // t for diffusion distances
};

DistanceMatrix diffusion_distance(const KernelMatrix& a, unsigned t);

DistanceMatrix pairwise_euclidean(const Matrix& coords,
                                  DistanceKind kind = DistanceKind::embedded);

double bilipschitz_distortion(const DistanceMatrix& embedded, const DistanceMatrix& reference,
                              double zero_tol = 1e-12);

constexpr double kInfiniteDistortion = std::numeric_limits<double>::infinity();

} // namespace gpembed
