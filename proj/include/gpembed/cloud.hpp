#pragma once

#include "gpembed/error.hpp"
#include "gpembed/matrix.hpp"

#include <string>
#include <utility>

namespace gpembed {

// N points in R^D, one per row, with free-text provenance.
class PointCloud {
public:
    PointCloud(Matrix points, std::string label)
        : points_(std::move(points)), label_(std::move(label)) {
        if (points_.rows() == 0 || points_.cols() == 0)
            throw ValidationError("point cloud must have N >= 1 points of dimension D >= 1");
        if (!all_finite(points_))
            throw ValidationError("point cloud contains non-finite coordinates");
    }

    std::size_t size() const { return points_.rows(); }
    std::size_t dim() const { return points_.cols(); }
    const Matrix& points() const { return points_; }
    const std::string& label() const { return label_; }

private:
    Matrix points_;
    std::string label_;
};

} // namespace gpembed
