#pragma once

#include <Eigen/Dense>

namespace spdval::math {

// Lawson-Hanson nonnegative least squares: min ||A x - b||, x >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// Least distance programming: min ||x|| s.t. G x >= h. False if infeasible.
bool ldp(const Eigen::MatrixXd& G, const Eigen::VectorXd& h, Eigen::VectorXd& x);

// Inequality-constrained least squares: min ||A x - b|| s.t. G x >= h.
// A must have full column rank. False if the constraints are infeasible.
bool lsi(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
         const Eigen::MatrixXd& G, const Eigen::VectorXd& h, Eigen::VectorXd& x);

// Adds consistent equality constraints E x = e (full row rank), eliminated
// through the nullspace before the inequality solve.
bool lsi_eq(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
            const Eigen::MatrixXd& E, const Eigen::VectorXd& e,
            const Eigen::MatrixXd& G, const Eigen::VectorXd& h, Eigen::VectorXd& x);

} // namespace spdval::math
