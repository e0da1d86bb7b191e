#pragma once

#include <complex>

#include <Eigen/Dense>

namespace hullbeam {

using Real = double;
using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline Real db_to_linear(Real db) { return std::pow(10.0, db / 10.0); }
inline Real linear_to_db(Real v) { return 10.0 * std::log10(v); }

// dBm is referenced to 1 mW; all internal powers are in watts.
inline Real dbm_to_watt(Real dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

}  // namespace hullbeam
