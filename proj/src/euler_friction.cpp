#include <cmath>

#include "apfv/models.hpp"

namespace apfv {
namespace {

constexpr double kVacuumFloor = 1e-12;

// U = (rho, rho v), F = (rho v, rho v^2 + p), R = (0, rho v), Q = (1 0).
class EulerFriction final : public Model {
public:
    explicit EulerFriction(const EulerFrictionParams& p)
        : Model("euler_friction", (Mat(1, 2) << 1.0, 0.0).finished()), p_(p)
    {
        if (p_.kappa_p <= 0.0) throw ConfigError("euler_friction: kappa_p must be > 0");
        if (p_.gamma <= 1.0) throw ConfigError("euler_friction: gamma must be > 1");
    }

    double pressure(double rho) const { return p_.kappa_p * std::pow(rho, p_.gamma); }
    double dpressure(double rho) const
    {
        return p_.kappa_p * p_.gamma * std::pow(rho, p_.gamma - 1.0);
    }
    // internal energy with e'(rho) = p(rho)/rho^2
    double internal_energy(double rho) const
    {
        return p_.kappa_p * std::pow(rho, p_.gamma - 1.0) / (p_.gamma - 1.0);
    }

    Vec flux(const Vec& U) const override
    {
        const double rho = U(0), v = U(1) / U(0);
        return (Vec(2) << U(1), U(1) * v + pressure(rho)).finished();
    }
    Vec relaxation(const Vec& U) const override
    {
        return (Vec(2) << 0.0, U(1)).finished();
    }
    Mat flux_jacobian(const Vec& U) const override
    {
        const double rho = U(0), v = U(1) / U(0);
        return (Mat(2, 2) << 0.0, 1.0, dpressure(rho) - v * v, 2.0 * v).finished();
    }
    Mat relax_jacobian(const Vec&) const override
    {
        return (Mat(2, 2) << 0.0, 0.0, 0.0, 1.0).finished();
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
        return U.size() == 2 && all_finite(U) && U(0) > kVacuumFloor;
    }
    bool equilibrium_admissible(const Vec& u) const override
    {
        return u.size() == 1 && std::isfinite(u(0)) && u(0) > kVacuumFloor;
    }

    double max_wave_speed(const Vec& U) const override
    {
        const double v = U(1) / U(0);
        return std::abs(v) + std::sqrt(dpressure(U(0)));
    }

    Mat effective_matrix(const Vec& u, const Vec&) const override
    {
        if (!equilibrium_admissible(u)) throw OutOfDomain("euler_friction: rho <= 0");
        return (Mat(1, 1) << dpressure(u(0))).finished();
    }

    bool has_entropy() const override { return true; }
    double entropy(const Vec& U) const override
    {
        const double rho = U(0), v = U(1) / U(0);
        return 0.5 * rho * v * v + rho * internal_energy(rho);
    }
    double entropy_flux(const Vec& U) const override
    {
        const double rho = U(0), v = U(1) / U(0);
        return 0.5 * rho * v * v * v + (rho * internal_energy(rho) + pressure(rho)) * v;
    }
    Vec entropy_gradient(const Vec& U) const override
    {
        const double rho = U(0), v = U(1) / U(0);
        return (Vec(2) << -0.5 * v * v + internal_energy(rho) + pressure(rho) / rho, v)
            .finished();
    }
    Mat entropy_hessian(const Vec& U) const override
    {
        const double rho = U(0), v = U(1) / U(0);
        return (Mat(2, 2) << (v * v + dpressure(rho)) / rho, -v / rho, -v / rho, 1.0 / rho)
            .finished();
    }

    Vec sample_equilibrium(std::mt19937_64& rng) const override
    {
        std::uniform_real_distribution<double> rho(0.3, 3.0);
        return (Vec(1) << rho(rng)).finished();
    }
    Vec sample_state(std::mt19937_64& rng) const override
    {
        std::uniform_real_distribution<double> rho(0.3, 3.0);
        std::uniform_real_distribution<double> v(-1.0, 1.0);
        const double r = rho(rng);
        return (Vec(2) << r, r * v(rng)).finished();
    }

private:
    EulerFrictionParams p_;
};

} // namespace

std::shared_ptr<Model> make_euler_friction(const EulerFrictionParams& p)
{
    return std::make_shared<EulerFriction>(p);
}

} // namespace apfv
