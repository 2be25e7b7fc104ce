#pragma once

#include <Eigen/Dense>
#include <vector>

namespace rkhs {

using Point = Eigen::VectorXd;
using PointSet = std::vector<Point>;

}  // namespace rkhs
