#include "gpembed/simd.hpp"

// Scalar reference kernels. Plain sequential loops; these define the semantics
// the vector variants are tested against.

namespace gpembed::simd {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sqdist_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

void axpy_scalar(double* y, double alpha, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double* y, double alpha, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= alpha;
}

void mul_scalar(double* out, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void rot_scalar(double* x, double* y, double c, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable table = {
        dot_scalar, sqdist_scalar, sum_scalar,
        axpy_scalar, scale_scalar, mul_scalar, rot_scalar,
        "scalar",
    };
    return table;
}

} // namespace gpembed::simd
