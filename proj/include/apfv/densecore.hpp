#ifndef APFV_DENSECORE_HPP
#define APFV_DENSECORE_HPP

#include <Eigen/Dense>

#include "apfv/errors.hpp"

namespace apfv {

// Small dense types used throughout. Dimensions are runtime values, but stay
// tiny (N <= 8) in all four models.
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Solves the constrained linear system
///     C V = J,   Q V = 0,
/// where C is N x N with dim ker(C) = n, ker(C) ∩ im(C) = {0}, and Q is an
/// n x N matrix of rank n. Under these hypotheses the system has a unique
/// solution whenever Q J = 0.
///
/// Method: the stacked (N+n) x N system [[C],[Q]] V = [[J],[0]] has full
/// column rank and is solved by Householder QR. No pivoting, so the result is
/// bitwise reproducible.
///
/// Throws IncompatibleRHS if ||Q J||_inf > 1e-9 (1 + ||J||_inf), and
/// SingularSystem if the stacked matrix is rank-deficient.
Vec solve_constrained(const Mat& C, const Mat& Q, const Vec& J);

/// Generalized inverse with constraint: returns V with L V = b, Q V = 0.
/// Requires Q b = 0. Delegates to solve_constrained.
Vec generalized_inverse_apply(const Mat& L, const Mat& Q, const Vec& b);

/// True if every entry is finite.
bool all_finite(const Mat& m);
bool all_finite(const Vec& v);

} // namespace apfv

#endif
