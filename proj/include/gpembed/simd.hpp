#pragma once

#include <cstddef>

// =============================================================================
// Low-level array kernels.
//
// Every operation has a scalar reference implementation; ISA-specific variants
// (AVX2+FMA on x86-64) are selected once per process from CPU features. The
// environment variable GPEMBED_SIMD=scalar|avx2 overrides the selection.
// Variants are free to reassociate their accumulation, so results may differ
// from the scalar path by normal floating-point round-off; the equivalence
// tests bound that difference. Within one process the selected table is fixed,
// which keeps repeated runs on the same machine bit-identical.
// =============================================================================

namespace gpembed::simd {

struct KernelTable {
    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i (a[i]-b[i])^2
    double (*sqdist)(const double* a, const double* b, std::size_t n);
    // sum_i a[i]
    double (*sum)(const double* a, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double* y, double alpha, const double* x, std::size_t n);
    // y[i] *= alpha
    void (*scale)(double* y, double alpha, std::size_t n);
    // out[i] = a[i] * b[i]
    void (*mul)(double* out, const double* a, const double* b, std::size_t n);
    // plane rotation: (x[i], y[i]) <- (c*x[i] - s*y[i], s*x[i] + c*y[i])
    void (*rot)(double* x, double* y, double c, double s, std::size_t n);
    const char* name;
};

const KernelTable& scalar_table();

// nullptr when the build target or the running CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

// The table selected for this process.
const KernelTable& active();

// Test hook: replace the active table. Not thread-safe against concurrent use.
void force(const KernelTable& table);

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline double sqdist(const double* a, const double* b, std::size_t n) { return active().sqdist(a, b, n); }
inline double sum(const double* a, std::size_t n) { return active().sum(a, n); }
inline void axpy(double* y, double alpha, const double* x, std::size_t n) { active().axpy(y, alpha, x, n); }
inline void scale(double* y, double alpha, std::size_t n) { active().scale(y, alpha, n); }
inline void mul(double* out, const double* a, const double* b, std::size_t n) { active().mul(out, a, b, n); }
inline void rot(double* x, double* y, double c, double s, std::size_t n) { active().rot(x, y, c, s, n); }

} // namespace gpembed::simd
