#ifndef XXZ_TYPES_HPP
#define XXZ_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace xxz {

using Vector  = Eigen::VectorXd;
using Matrix  = Eigen::MatrixXd;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

}  // namespace xxz

#endif
