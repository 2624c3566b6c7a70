// expm.hpp — dense real matrix exponential: scaling-and-squaring with the
// fixed degree-13 Pade approximant.

#pragma once

#include <Eigen/Dense>

namespace thermal_link {

Eigen::MatrixXd expm(const Eigen::MatrixXd& matrix);

}  // namespace thermal_link
