#pragma once

#include <Eigen/Dense>

namespace micropolar {

using Real = double;
using Index = Eigen::Index;

using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

constexpr Real pi = 3.14159265358979323846264338327950288;

/// Two-component field sampled on the quadrature grid, one matrix per component.
/// Layout: rows follow x nodes, columns follow y nodes.
struct GridVec {
    Mat x;
    Mat y;
};

}  // namespace micropolar
