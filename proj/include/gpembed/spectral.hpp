#pragma once

#include "gpembed/kernel.hpp"
#include "gpembed/matrix.hpp"

#include <cstddef>
#include <vector>

// =============================================================================
// Symmetric eigendecomposition and matrix powering.
//
// The dense path is a cyclic Jacobi solver built on the simd::rot kernel; it
// computes the full decomposition and slices the top m pairs. The randomized
// path is a subspace-iteration range finder followed by Rayleigh-Ritz, for
// matrices whose spectrum decays too slowly to truncate cheaply; its output is
// residual-checked and falls back to the dense path on failure.
//
// Determinism: eigenvalues are sorted descending; each eigenvector's first
// component of magnitude > 1e-12 is made positive; exact eigenvalue ties are
// ordered by descending lexicographic comparison of the sign-fixed vectors.
// =============================================================================

namespace gpembed {

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // descending, size m
    Matrix eigenvectors;              // m x N; row i pairs with eigenvalues[i]
    std::size_t source_size = 0;
};

enum class EigMethod { dense, randomized };

// Full decomposition of a symmetric matrix (not necessarily PSD).
SpectralDecomposition dense_eigh(const Matrix& a);

SpectralDecomposition top_eigenpairs(const KernelMatrix& a, std::size_t m,
                                     EigMethod method = EigMethod::dense,
                                     std::size_t oversample = 8,
                                     std::size_t power_steps = 4);

// A^p G by p successive multiplications; A^p itself is never formed.
Matrix matrix_power_apply(const KernelMatrix& a, unsigned p, const Matrix& g);

} // namespace gpembed
