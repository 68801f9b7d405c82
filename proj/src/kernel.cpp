#include "gpembed/kernel.hpp"

#include "gpembed/error.hpp"
#include "gpembed/simd.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace gpembed {

const char* normalization_name(Normalization n) {
    switch (n) {
        case Normalization::raw: return "raw";
        case Normalization::symmetric: return "symmetric";
        case Normalization::bistochastic: return "bistochastic";
    }
    return "?";
}

KernelMatrix KernelMatrix::from_matrix(Matrix entries, Normalization norm, double scale_eps) {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
        throw ValidationError("kernel matrix must be square and nonempty");
    if (!all_finite(entries))
        throw ValidationError("kernel matrix contains non-finite entries");
    if (!is_symmetric(entries))
        throw ValidationError("kernel matrix must be exactly symmetric");
    return KernelMatrix(std::move(entries), norm, scale_eps);
}

KernelMatrix affinity(const PointCloud& cloud, double eps) {
    if (!(eps > 0.0))
        throw ValidationError("affinity: eps must be positive");
    if (!all_finite(cloud.points()))
        throw ValidationError("affinity: cloud contains non-finite coordinates");

    const std::size_t n = cloud.size();
    const std::size_t d = cloud.dim();
    const Matrix& x = cloud.points();
    Matrix k(n, n);
    const double inv_eps = 1.0 / eps;
    for (std::size_t i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double value = std::exp(-simd::sqdist(x.row(i), x.row(j), d) * inv_eps);
            k(i, j) = value;
            k(j, i) = value;
        }
    }
    return KernelMatrix::from_matrix(std::move(k), Normalization::raw, eps);
}

KernelMatrix normalize_symmetric(const KernelMatrix& raw) {
    if (raw.normalization() != Normalization::raw)
        throw ValidationError("normalize_symmetric: input must be a raw affinity matrix");
    const Matrix& k = raw.entries();
    const std::size_t n = raw.size();

    const std::vector<double> q = row_sums(k);
    std::vector<double> inv_q(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(q[i] > 0.0))
            throw NumericalError("normalize_symmetric: degenerate row sum q[" + std::to_string(i) + "]");
        inv_q[i] = 1.0 / q[i];
    }

    Matrix kt(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        kt(i, i) = (k(i, i) * inv_q[i]) * inv_q[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double value = (k(i, j) * inv_q[i]) * inv_q[j];
            kt(i, j) = value;
            kt(j, i) = value;
        }
    }

    const std::vector<double> v = row_sums(kt);
    std::vector<double> inv_sqrt_v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(v[i] > 0.0))
            throw NumericalError("normalize_symmetric: degenerate row sum v[" + std::to_string(i) + "]");
        inv_sqrt_v[i] = 1.0 / std::sqrt(v[i]);
    }

    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = (kt(i, i) * inv_sqrt_v[i]) * inv_sqrt_v[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double value = (kt(i, j) * inv_sqrt_v[i]) * inv_sqrt_v[j];
            a(i, j) = value;
            a(j, i) = value;
        }
    }
    return KernelMatrix::from_matrix(std::move(a), Normalization::symmetric, raw.scale_eps());
}

namespace {

// max_j |num[j]/den[j] - 1|
double ratio_residual(const std::vector<double>& num, const std::vector<double>& den) {
    double r = 0.0;
    for (std::size_t j = 0; j < num.size(); ++j)
        r = std::max(r, std::fabs(num[j] / den[j] - 1.0));
    return r;
}

std::vector<double> scaled_row_sums(const Matrix& k, const std::vector<double>& d) {
    // K diag(d)^-1 1, i.e. row sums of K after scaling column j by 1/d[j].
    const std::size_t n = k.rows();
    std::vector<double> inv(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(d[j] > 0.0) || !std::isfinite(d[j]))
            throw NumericalError("normalize_bistochastic: degenerate scaling component");
        inv[j] = 1.0 / d[j];
    }
    std::vector<double> out(n);
    std::vector<double> scratch(n);
    for (std::size_t i = 0; i < n; ++i) {
        simd::mul(scratch.data(), k.row(i), inv.data(), n);
        out[i] = simd::sum(scratch.data(), n);
    }
    return out;
}

} // namespace

KernelMatrix normalize_bistochastic(const KernelMatrix& raw, double delta,
                                    std::size_t max_iters, SinkhornInfo* info) {
    if (raw.normalization() != Normalization::raw)
        throw ValidationError("normalize_bistochastic: input must be a raw affinity matrix");
    if (!(delta > 0.0))
        throw ValidationError("normalize_bistochastic: delta must be positive");
    if (max_iters == 0)
        throw ValidationError("normalize_bistochastic: max_iters must be positive");
    const Matrix& k = raw.entries();
    const std::size_t n = raw.size();
    for (std::size_t i = 0; i < n; ++i)
        if (!(k(i, i) > 0.0))
            throw ValidationError("normalize_bistochastic: diagonal must be strictly positive");

    // Three-vector window (d_i, d_{i+1}, d_{i+2}); the stopping test compares
    // d_{i+2} against d_i.
    std::vector<double> d0(n, 1.0);
    std::vector<double> d1 = row_sums(k);
    for (std::size_t i = 0; i < n; ++i)
        if (!(d1[i] > 0.0))
            throw NumericalError("normalize_bistochastic: degenerate row sum");
    std::vector<double> d2 = scaled_row_sums(k, d1);

    std::size_t iterations = 0;
    double residual = ratio_residual(d2, d0);
    while (residual > delta) {
        if (iterations >= max_iters)
            throw NumericalError("normalize_bistochastic: no convergence after " +
                                 std::to_string(max_iters) + " iterations, residual " +
                                 std::to_string(residual));
        ++iterations;
        d0.swap(d1);
        d1.swap(d2);
        d2 = scaled_row_sums(k, d1);
        residual = ratio_residual(d2, d0);
    }
    if (info != nullptr) {
        info->iterations = iterations;
        info->final_residual = residual;
    }

    // The balanced scaling is the geometric mean of the two alternating
    // Sinkhorn limits, approximated here by the freshest iterate of each
    // parity. Combining same-parity iterates would return the unbalanced
    // subsequence limit instead (its row sums stay away from 1).
    std::vector<double> inv_d(n);
    for (std::size_t i = 0; i < n; ++i)
        inv_d[i] = 1.0 / (std::sqrt(d2[i]) * std::sqrt(d1[i]));

    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        b(i, i) = (k(i, i) * inv_d[i]) * inv_d[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double value = (k(i, j) * inv_d[i]) * inv_d[j];
            b(i, j) = value;
            b(j, i) = value;
        }
    }
    return KernelMatrix::from_matrix(std::move(b), Normalization::bistochastic, raw.scale_eps());
}

} // namespace gpembed
