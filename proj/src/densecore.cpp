#include "apfv/densecore.hpp"

#include <cmath>

namespace apfv {

bool all_finite(const Mat& m) { return m.allFinite(); }
bool all_finite(const Vec& v) { return v.allFinite(); }

Vec solve_constrained(const Mat& C, const Mat& Q, const Vec& J)
{
    const Eigen::Index N = C.rows();
    const Eigen::Index n = Q.rows();
    if (C.cols() != N || Q.cols() != N || J.size() != N)
        throw SolverError("solve_constrained: dimension mismatch");
    if (!all_finite(C) || !all_finite(Q) || !all_finite(J))
        throw SolverError("solve_constrained: non-finite input");

    const double j_inf = J.lpNorm<Eigen::Infinity>();
    const double qj = (Q * J).lpNorm<Eigen::Infinity>();
    if (qj > 1e-9 * (1.0 + j_inf))
        throw IncompatibleRHS("solve_constrained: ||Q J||_inf = " + std::to_string(qj) +
                              " exceeds compatibility tolerance");

    Mat stacked(N + n, N);
    stacked.topRows(N) = C;
    stacked.bottomRows(n) = Q;
    Vec rhs = Vec::Zero(N + n);
    rhs.head(N) = J;

    Eigen::HouseholderQR<Mat> qr(stacked);
    // The R diagonal lives in the upper triangle of the packed factorization.
    const Vec diag = qr.matrixQR().diagonal().head(N).cwiseAbs();
    const double dmax = diag.maxCoeff();
    if (dmax <= 0.0 || diag.minCoeff() < 1e-12 * dmax)
        throw SingularSystem("solve_constrained: stacked system rank-deficient");

    return qr.solve(rhs);
}

Vec generalized_inverse_apply(const Mat& L, const Mat& Q, const Vec& b)
{
    return solve_constrained(L, Q, b);
}

} // namespace apfv
