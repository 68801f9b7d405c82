#pragma once

#include "gpembed/cloud.hpp"
#include "gpembed/kernel.hpp"
#include "gpembed/manifolds.hpp"
#include "gpembed/matrix.hpp"
#include "gpembed/rng.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <unistd.h>
#include <vector>

namespace testutil {

inline gpembed::Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    gpembed::Matrix m(rows, cols);
    gpembed::Rng rng(seed);
    for (double& v : m.data()) v = rng.next_gaussian();
    return m;
}

// R^T R / n: symmetric PSD with spread eigenvalues.
inline gpembed::Matrix random_psd(std::size_t n, std::uint64_t seed) {
    const gpembed::Matrix r = random_matrix(n, n, seed);
    gpembed::Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += r(k, i) * r(k, j);
            acc /= static_cast<double>(n);
            out(i, j) = acc;
            out(j, i) = acc;
        }
    return out;
}

inline gpembed::PointCloud random_cloud(std::size_t n, std::size_t dim, std::uint64_t seed,
                                        double spread = 1.0) {
    gpembed::Matrix pts(n, dim);
    gpembed::Rng rng(seed);
    for (double& v : pts.data()) v = spread * rng.next_gaussian();
    return gpembed::PointCloud(std::move(pts), "random n=" + std::to_string(n));
}

inline gpembed::PointCloud circle_cloud(std::size_t n, std::uint64_t seed) {
    gpembed::ManifoldSpec spec;
    spec.kind = gpembed::ManifoldKind::circle;
    spec.n = n;
    spec.seed = seed;
    return gpembed::sample(spec);
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (const double x : v) m = std::max(m, std::fabs(x));
    return m;
}

// Unique temp path; files are small and the OS owns cleanup.
inline std::string temp_path(const std::string& tag) {
    static int counter = 0;
    return "/tmp/gpembed_test_" + std::to_string(::getpid()) + "_" + tag + "_" +
           std::to_string(counter++) + ".csv";
}

inline std::string slurp(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr) return {};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, got);
    std::fclose(f);
    return out;
}

} // namespace testutil
