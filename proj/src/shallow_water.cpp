#include <cmath>

#include "apfv/models.hpp"

namespace apfv {
namespace {

constexpr double kFloor = 1e-12;

// U = (h, hv), R = (0, kappa(h)^2 g hv|hv|) with kappa(h) = kappa0/h.
// Nonlinear relaxation regime: R(E(u) + eps U) = eps^2 R(E(u) + M(eps) U)
// with M(eps) = diag(eps, 1), so q = 2.
class ShallowWater final : public Model {
public:
    explicit ShallowWater(const ShallowWaterParams& p)
        : Model("shallow_water_friction", (Mat(1, 2) << 1.0, 0.0).finished()), p_(p)
    {
        if (p_.g <= 0.0) throw ConfigError("shallow_water: g must be > 0");
        if (p_.kappa0 <= 0.0) throw ConfigError("shallow_water: kappa0 must be > 0");
        if (p_.grad_floor <= 0.0) throw ConfigError("shallow_water: grad_floor must be > 0");
    }

    int relax_exponent() const override { return 2; }

    double pressure(double h) const { return 0.5 * p_.g * h * h; }
    double friction(double h) const { return p_.kappa0 / h; }  // kappa(h)

    Vec flux(const Vec& U) const override
    {
        const double v = U(1) / U(0);
        return (Vec(2) << U(1), U(1) * v + pressure(U(0))).finished();
    }
    Vec relaxation(const Vec& U) const override
    {
        const double k = friction(U(0));
        return (Vec(2) << 0.0, k * k * p_.g * U(1) * std::abs(U(1))).finished();
    }
    Mat flux_jacobian(const Vec& U) const override
    {
        const double v = U(1) / U(0);
        return (Mat(2, 2) << 0.0, 1.0, p_.g * U(0) - v * v, 2.0 * v).finished();
    }
    Mat relax_jacobian(const Vec& U) const override
    {
        const double h = U(0), m = U(1);
        const double k2 = p_.kappa0 * p_.kappa0 / (h * h);
        Mat B = Mat::Zero(2, 2);
        B(1, 0) = -2.0 * k2 / h * p_.g * m * std::abs(m);
        B(1, 1) = 2.0 * k2 * p_.g * std::abs(m);
        return B;
    }

    Vec equilibrium(const Vec& u) const override
    {
        return (Vec(2) << u(0), 0.0).finished();
    }
    Mat equilibrium_jacobian(const Vec&) const override
    {
        return (Mat(2, 1) << 1.0, 0.0).finished();
    }

    bool admissible(const Vec& U) const override
    {
        return U.size() == 2 && all_finite(U) && U(0) > kFloor;
    }
    bool equilibrium_admissible(const Vec& u) const override
    {
        return u.size() == 1 && std::isfinite(u(0)) && u(0) > kFloor;
    }

    double max_wave_speed(const Vec& U) const override
    {
        const double v = U(1) / U(0);
        return std::abs(v) + std::sqrt(p_.g * U(0));
    }

    /// Gradient-dependent coefficient sqrt(h)/(kappa(h) sqrt(|dx h|)), with
    /// |dx h| floored at grad_floor to keep the flat-state limit finite.
    Mat effective_matrix(const Vec& u, const Vec& du_dx) const override
    {
        if (!equilibrium_admissible(u)) throw OutOfDomain("shallow_water: h <= 0");
        if (du_dx.size() != 1) throw SolverError("shallow_water: gradient required");
        const double h = u(0);
        const double grad = std::max(std::abs(du_dx(0)), p_.grad_floor);
        return (Mat(1, 1) << std::sqrt(h) / (friction(h) * std::sqrt(grad))).finished();
    }

    /// Solves R(E(u) + M(0) U1) = -A(E(u)) dx E(u), Q U1 = 0 in closed form:
    /// the momentum balance kappa^2 g beta|beta| = -dx p(h) inverted exactly.
    Vec corrector_nonlinear(const Vec& u, const Vec& du_dx) const override
    {
        if (!equilibrium_admissible(u)) throw OutOfDomain("shallow_water: h <= 0");
        const double h = u(0), dh = du_dx(0);
        const double beta =
            -(dh >= 0.0 ? 1.0 : -1.0) * std::sqrt(h * std::abs(dh)) / friction(h);
        return (Vec(2) << 0.0, beta).finished();
    }

    bool has_entropy() const override { return true; }
    double entropy(const Vec& U) const override
    {
        const double h = U(0), v = U(1) / U(0);
        return 0.5 * h * v * v + 0.5 * p_.g * h * h;
    }
    double entropy_flux(const Vec& U) const override
    {
        const double h = U(0), v = U(1) / U(0);
        return (0.5 * h * v * v + p_.g * h * h) * v;
    }
    Vec entropy_gradient(const Vec& U) const override
    {
        const double v = U(1) / U(0);
        return (Vec(2) << -0.5 * v * v + p_.g * U(0), v).finished();
    }
    Mat entropy_hessian(const Vec& U) const override
    {
        const double h = U(0), v = U(1) / U(0);
        return (Mat(2, 2) << (v * v + p_.g * h) / h, -v / h, -v / h, 1.0 / h).finished();
    }

    Vec sample_equilibrium(std::mt19937_64& rng) const override
    {
        std::uniform_real_distribution<double> h(0.3, 3.0);
        return (Vec(1) << h(rng)).finished();
    }
    Vec sample_state(std::mt19937_64& rng) const override
    {
        std::uniform_real_distribution<double> h(0.3, 3.0);
        std::uniform_real_distribution<double> v(-1.0, 1.0);
        const double hv = h(rng);
        return (Vec(2) << hv, hv * v(rng)).finished();
    }

private:
    ShallowWaterParams p_;
};

} // namespace

std::shared_ptr<Model> make_shallow_water(const ShallowWaterParams& p)
{
    return std::make_shared<ShallowWater>(p);
}

} // namespace apfv
