#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace mesp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Zero-based, sorted, duplicate-free index subset of [0, n).
using IndexSet = std::vector<int>;

}  // namespace mesp
