#ifndef APFV_MODEL_HPP
#define APFV_MODEL_HPP

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "apfv/densecore.hpp"

namespace apfv {

enum class Boundary { periodic, outflow };

/// A relaxation system
///     eps dt U + dx F(U) = -R(U)/eps^q,   U in Omega ⊂ R^N,
/// together with the structure that makes its late-time diffusion limit
/// well defined: the n x N matrix Q with Q R = 0, the equilibrium map
/// E : omega -> Omega, Jacobians, an admissibility predicate, and (for two of
/// the models) a convex entropy pair.
class Model {
public:
    virtual ~Model() = default;

    const std::string& name() const { return name_; }
    int state_dim() const { return static_cast<int>(Q_.cols()); }   // N
    int equil_dim() const { return static_cast<int>(Q_.rows()); }   // n
    const Mat& constraint() const { return Q_; }                    // Q

    /// Relaxation exponent q (1 for linear relaxation, 2 for shallow water).
    virtual int relax_exponent() const { return 1; }

    virtual Vec flux(const Vec& U) const = 0;            // F(U)
    virtual Vec relaxation(const Vec& U) const = 0;      // R(U)
    virtual Mat flux_jacobian(const Vec& U) const = 0;   // A = D_U F
    virtual Mat relax_jacobian(const Vec& U) const = 0;  // B = D_U R

    virtual Vec equilibrium(const Vec& u) const = 0;           // E(u)
    virtual Mat equilibrium_jacobian(const Vec& u) const = 0;  // D_u E

    virtual bool admissible(const Vec& U) const = 0;
    virtual bool equilibrium_admissible(const Vec& u) const = 0;  // u in omega

    /// Spectral radius of A(U), evaluated from the model's closed-form
    /// characteristic speeds.
    virtual double max_wave_speed(const Vec& U) const = 0;

    /// Closed-form effective diffusion matrix M with dt u = dx(M dx u).
    /// du_dx only enters for gradient-dependent coefficients (q = 2).
    virtual Mat effective_matrix(const Vec& u, const Vec& du_dx) const = 0;

    // Entropy pair (Phi, Psi); available for euler_friction and
    // shallow_water_friction only.
    virtual bool has_entropy() const { return false; }
    virtual double entropy(const Vec& U) const;        // Phi
    virtual double entropy_flux(const Vec& U) const;   // Psi
    virtual Vec entropy_gradient(const Vec& U) const;  // D_U Phi
    virtual Mat entropy_hessian(const Vec& U) const;   // D^2_U Phi

    /// Corrector for nonlinear relaxation (q >= 2): solves
    /// R(E(u) + M(0) U1) = -A(E(u)) dx E(u), Q U1 = 0.
    /// Default throws NotLinearRegime.
    virtual Vec corrector_nonlinear(const Vec& u, const Vec& du_dx) const;

    // Uniform samplers over boxes strictly inside omega / Omega; used by the
    // assumption validators and property tests.
    virtual Vec sample_equilibrium(std::mt19937_64& rng) const = 0;
    virtual Vec sample_state(std::mt19937_64& rng) const = 0;

protected:
    Model(std::string name, Mat Q) : name_(std::move(name)), Q_(std::move(Q)) {}

private:
    std::string name_;
    Mat Q_;
};

/// Uniform 1-D mesh with one state per cell.
struct GridState {
    double x_min = 0.0;
    double dx = 0.0;
    Boundary boundary = Boundary::periodic;
    std::vector<Vec> cells;
    double time = 0.0;

    int num_cells() const { return static_cast<int>(cells.size()); }
    double cell_center(int i) const { return x_min + (i + 0.5) * dx; }

    /// Cell value with boundary closure: valid for i in [-1, num_cells()].
    const Vec& cell(int i) const;
};

struct ValidationReport {
    std::string model;
    int samples = 0;
    double qr_violation = 0.0;           // ||Q R(U)||_inf
    double equil_relax_violation = 0.0;  // ||R(E(u))||_inf
    double projection_violation = 0.0;   // ||Q E(u) - u||_inf
    double equil_flux_violation = 0.0;   // ||Q F(E(u))||_inf
    bool kernel_ok = true;               // dim ker B(E(u)) = n, ker ∩ im = {0}
    bool entropy_checked = false;
    double entropy_relax_sign = 0.0;     // min of D_U Phi · R over samples
    double entropy_symmetry_defect = 0.0;  // asymmetry of D^2 Phi · A
    double entropy_rowspace_defect = 0.0;  // D_U Phi(E(u)) vs rowspace(Q)

    bool ok(double tol = 1e-8) const;
    std::string summary() const;
};

/// Spot-checks Assumptions 1-4 (and 5-6 when an entropy is present) on
/// randomly sampled interior points. Throws ModelInvalid if any violation
/// exceeds tol.
ValidationReport validate_model(const Model& m, int samples, double tol = 1e-8,
                                std::uint64_t seed = 20220817u);

/// Central-difference Jacobian of f at U with step h; test oracle for the
/// analytic Jacobians. If an admissibility predicate is given, probes leaving
/// the domain raise InadmissiblePerturbation.
Mat jacobian_fd(const std::function<Vec(const Vec&)>& f, const Vec& U, double h,
                const std::function<bool(const Vec&)>& admissible = nullptr);

} // namespace apfv

#endif
