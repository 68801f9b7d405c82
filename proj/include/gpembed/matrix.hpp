#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gpembed {

// Dense row-major double matrix. Deliberately small: the project needs exactly
// the operations below, all layered on the simd kernel table.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// a (r x n) times b (n x c). Accumulation order over the inner index is fixed
// (ascending j) independent of any parallelism above this layer.
Matrix matmul(const Matrix& a, const Matrix& b);

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

Matrix transpose(const Matrix& a);

double frobenius_norm(const Matrix& a);

double max_abs_diff(const Matrix& a, const Matrix& b);

// Exact element equality across the diagonal.
bool is_symmetric(const Matrix& a);

bool all_finite(const Matrix& a);

std::vector<double> row_sums(const Matrix& a);

// FNV-1a over the raw bytes; used to assert matrices were not perturbed.
std::uint64_t content_hash(const Matrix& a);

} // namespace gpembed
