#include "gpembed/matrix.hpp"

#include "gpembed/error.hpp"
#include "gpembed/simd.hpp"

#include <cmath>
#include <cstring>

namespace gpembed {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw ValidationError("matmul: inner dimensions differ");
    const std::size_t r = a.rows();
    const std::size_t n = a.cols();
    const std::size_t c = b.cols();
    Matrix out(r, c);
    // i-k-j loop: out_row accumulates scaled rows of b, contiguous and
    // vectorizable along c.
    for (std::size_t i = 0; i < r; ++i) {
        double* out_row = out.row(i);
        const double* a_row = a.row(i);
        for (std::size_t k = 0; k < n; ++k)
            simd::axpy(out_row, a_row[k], b.row(k), c);
    }
    return out;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != x.size())
        throw ValidationError("matvec: dimension mismatch");
    std::vector<double> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        out[i] = simd::dot(a.row(i), x.data(), a.cols());
    return out;
}

Matrix transpose(const Matrix& a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(j, i) = a(i, j);
    return out;
}

double frobenius_norm(const Matrix& a) {
    return std::sqrt(simd::dot(a.data().data(), a.data().data(), a.data().size()));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b))
        throw ValidationError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
    return m;
}

bool is_symmetric(const Matrix& a) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j)
            if (a(i, j) != a(j, i)) return false;
    return true;
}

bool all_finite(const Matrix& a) {
    for (const double v : a.data())
        if (!std::isfinite(v)) return false;
    return true;
}

std::vector<double> row_sums(const Matrix& a) {
    std::vector<double> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        out[i] = simd::sum(a.row(i), a.cols());
    return out;
}

std::uint64_t content_hash(const Matrix& a) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    h ^= a.rows();
    h *= 0x100000001B3ULL;
    h ^= a.cols();
    h *= 0x100000001B3ULL;
    for (const double v : a.data()) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int shift = 0; shift < 64; shift += 8) {
            h ^= (bits >> shift) & 0xFF;
            h *= 0x100000001B3ULL;
        }
    }
    return h;
}

} // namespace gpembed
