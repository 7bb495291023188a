#include "apfv/model.hpp"

#include <sstream>

namespace apfv {

double Model::entropy(const Vec&) const
{
    throw EntropyUnavailable(name_ + ": no entropy pair");
}
double Model::entropy_flux(const Vec&) const
{
    throw EntropyUnavailable(name_ + ": no entropy pair");
}
Vec Model::entropy_gradient(const Vec&) const
{
    throw EntropyUnavailable(name_ + ": no entropy pair");
}
Mat Model::entropy_hessian(const Vec&) const
{
    throw EntropyUnavailable(name_ + ": no entropy pair");
}
Vec Model::corrector_nonlinear(const Vec&, const Vec&) const
{
    throw NotLinearRegime(name_ + ": linear-relaxation model, use the constrained solve");
}

const Vec& GridState::cell(int i) const
{
    const int nc = num_cells();
    if (i >= 0 && i < nc) return cells[static_cast<std::size_t>(i)];
    switch (boundary) {
    case Boundary::periodic:
        return cells[static_cast<std::size_t>((i + nc) % nc)];
    case Boundary::outflow:
        return cells[static_cast<std::size_t>(i < 0 ? 0 : nc - 1)];
    }
    throw SolverError("GridState::cell: bad boundary");
}

bool ValidationReport::ok(double tol) const
{
    bool good = qr_violation <= tol && equil_relax_violation <= tol &&
                projection_violation <= tol && equil_flux_violation <= tol && kernel_ok;
    if (entropy_checked) {
        good = good && entropy_relax_sign >= -tol && entropy_symmetry_defect <= tol &&
               entropy_rowspace_defect <= tol;
    }
    return good;
}

std::string ValidationReport::summary() const
{
    std::ostringstream os;
    os << "model " << model << " (" << samples << " samples)\n"
       << "  ||Q R(U)||          " << qr_violation << "\n"
       << "  ||R(E(u))||         " << equil_relax_violation << "\n"
       << "  ||Q E(u) - u||      " << projection_violation << "\n"
       << "  ||Q F(E(u))||       " << equil_flux_violation << "\n"
       << "  kernel structure    " << (kernel_ok ? "ok" : "FAILED") << "\n";
    if (entropy_checked) {
        os << "  min D_UPhi . R      " << entropy_relax_sign << "\n"
           << "  sym(D2Phi A) defect " << entropy_symmetry_defect << "\n"
           << "  rowspace(Q) defect  " << entropy_rowspace_defect << "\n";
    } else {
        os << "  entropy checks      skipped\n";
    }
    return os.str();
}

namespace {

int svd_rank(const Mat& m, double tol)
{
    Eigen::JacobiSVD<Mat> svd(m);
    const Vec sv = svd.singularValues();
    if (sv.size() == 0) return 0;
    const double cutoff = tol * std::max(1.0, sv(0));
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

} // namespace

ValidationReport validate_model(const Model& m, int samples, double tol, std::uint64_t seed)
{
    if (samples < 1) throw SolverError("validate_model: samples must be >= 1");
    ValidationReport rep;
    rep.model = m.name();
    rep.samples = samples;
    rep.entropy_checked = m.has_entropy();
    rep.entropy_relax_sign = rep.entropy_checked ? 1e300 : 0.0;

    const Mat& Q = m.constraint();
    const int N = m.state_dim();
    const int n = m.equil_dim();
    if (svd_rank(Q, 1e-12) != n)
        throw ModelInvalid(m.name() + ": Q is not of full rank n");

    // Projector onto the orthogonal complement of rowspace(Q).
    const Mat qproj = Mat::Identity(N, N) - Q.transpose() * (Q * Q.transpose()).ldlt().solve(Q);

    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        const Vec u = m.sample_equilibrium(rng);
        const Vec U = m.sample_state(rng);
        const Vec Eu = m.equilibrium(u);

        rep.qr_violation = std::max(rep.qr_violation,
                                    (Q * m.relaxation(U)).lpNorm<Eigen::Infinity>());
        rep.equil_relax_violation = std::max(rep.equil_relax_violation,
                                             m.relaxation(Eu).lpNorm<Eigen::Infinity>());
        rep.projection_violation = std::max(rep.projection_violation,
                                            (Q * Eu - u).lpNorm<Eigen::Infinity>());
        rep.equil_flux_violation = std::max(rep.equil_flux_violation,
                                            (Q * m.flux(Eu)).lpNorm<Eigen::Infinity>());

        // Assumption 4: dim ker B(E(u)) = n and ker ∩ im = {0}. The latter is
        // equivalent to rank(B^2) = rank(B). Only meaningful for linear
        // relaxation (q = 1); for q > 1, B(E(u)) vanishes identically and the
        // nonlinear scaling identity takes its place.
        if (m.relax_exponent() == 1) {
            const Mat B = m.relax_jacobian(Eu);
            const int rb = svd_rank(B, 1e-10);
            if (rb != N - n || svd_rank(B * B, 1e-10) != rb) rep.kernel_ok = false;
        }

        if (rep.entropy_checked) {
            rep.entropy_relax_sign =
                std::min(rep.entropy_relax_sign, m.entropy_gradient(U).dot(m.relaxation(U)));
            const Mat HA = m.entropy_hessian(U) * m.flux_jacobian(U);
            rep.entropy_symmetry_defect =
                std::max(rep.entropy_symmetry_defect,
                         (HA - HA.transpose()).lpNorm<Eigen::Infinity>());
            rep.entropy_rowspace_defect =
                std::max(rep.entropy_rowspace_defect,
                         (qproj * m.entropy_gradient(Eu)).lpNorm<Eigen::Infinity>());
        }
    }

    if (!rep.ok(tol))
        throw ModelInvalid(m.name() + ": assumption check failed\n" + rep.summary());
    return rep;
}

Mat jacobian_fd(const std::function<Vec(const Vec&)>& f, const Vec& U, double h,
                const std::function<bool(const Vec&)>& admissible)
{
    if (h <= 0.0) throw SolverError("jacobian_fd: h must be positive");
    const Eigen::Index N = U.size();
    Mat J;
    for (Eigen::Index j = 0; j < N; ++j) {
        Vec up = U, um = U;
        up(j) += h;
        um(j) -= h;
        if (admissible && (!admissible(up) || !admissible(um)))
            throw InadmissiblePerturbation("jacobian_fd: probe left the admissible set");
        const Vec col = (f(up) - f(um)) / (2.0 * h);
        if (J.size() == 0) J.resize(col.size(), N);
        J.col(j) = col;
    }
    return J;
}

} // namespace apfv
