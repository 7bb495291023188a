#include <cmath>

#include "apfv/models.hpp"

namespace apfv {
namespace {

constexpr double kFloor = 1e-12;

// U = (rho, rho v, e, f), friction kappa on the matter momentum, opacity
// sigma_a coupling to the radiative flux. Q selects (rho, e).
class EulerM1 final : public Model {
public:
    explicit EulerM1(const EulerM1Params& p)
        : Model("euler_m1",
                (Mat(2, 4) << 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0).finished()),
          p_(p)
    {
        if (p_.kappa <= 0.0 || p_.sigma_a <= 0.0)
            throw ConfigError("euler_m1: kappa and sigma_a must be > 0");
        if (p_.C_p <= 0.0) throw ConfigError("euler_m1: C_p must be > 0");
        if (p_.eta <= 1.0) throw ConfigError("euler_m1: eta must be > 1");
    }

    double pressure(double rho) const { return p_.C_p * std::pow(rho, p_.eta); }
    double dpressure(double rho) const
    {
        return p_.C_p * p_.eta * std::pow(rho, p_.eta - 1.0);
    }

    Vec flux(const Vec& U) const override
    {
        const double v = U(1) / U(0), xi = U(3) / U(2);
        return (Vec(4) << U(1), U(1) * v + pressure(U(0)), U(3), eddington(xi) * U(2))
            .finished();
    }
    Vec relaxation(const Vec& U) const override
    {
        return (Vec(4) << 0.0, p_.kappa * U(1) - p_.sigma_a * U(3), 0.0,
                p_.sigma_a * U(3))
            .finished();
    }
    Mat flux_jacobian(const Vec& U) const override
    {
        const double v = U(1) / U(0), xi = U(3) / U(2);
        const double chi = eddington(xi), dchi = eddington_prime(xi);
        Mat A = Mat::Zero(4, 4);
        A(0, 1) = 1.0;
        A(1, 0) = dpressure(U(0)) - v * v;
        A(1, 1) = 2.0 * v;
        A(2, 3) = 1.0;
        A(3, 2) = chi - xi * dchi;
        A(3, 3) = dchi;
        return A;
    }
    Mat relax_jacobian(const Vec&) const override
    {
        Mat B = Mat::Zero(4, 4);
        B(1, 1) = p_.kappa;
        B(1, 3) = -p_.sigma_a;
        B(3, 3) = p_.sigma_a;
        return B;
    }

    Vec equilibrium(const Vec& u) const override
    {
        return (Vec(4) << u(0), 0.0, u(1), 0.0).finished();
    }
    Mat equilibrium_jacobian(const Vec&) const override
    {
        Mat E = Mat::Zero(4, 2);
        E(0, 0) = 1.0;
        E(2, 1) = 1.0;
        return E;
    }

    bool admissible(const Vec& U) const override
    {
        return U.size() == 4 && all_finite(U) && U(0) > kFloor && U(2) > kFloor &&
               std::abs(U(3)) <= U(2);
    }
    bool equilibrium_admissible(const Vec& u) const override
    {
        return u.size() == 2 && all_finite(u) && u(0) > kFloor && u(1) > kFloor;
    }

    double max_wave_speed(const Vec& U) const override
    {
        const double v = U(1) / U(0), xi = U(3) / U(2);
        const double matter = std::abs(v) + std::sqrt(dpressure(U(0)));
        const double chi = eddington(xi), dchi = eddington_prime(xi);
        const double c0 = chi - xi * dchi;
        const double disc = dchi * dchi + 4.0 * c0;
        const double rad = disc >= 0.0
                               ? 0.5 * (std::abs(dchi) + std::sqrt(disc))
                               : std::sqrt(std::abs(c0));
        return std::max(matter, rad);
    }

    Mat effective_matrix(const Vec& u, const Vec&) const override
    {
        if (!equilibrium_admissible(u)) throw OutOfDomain("euler_m1: u outside omega");
        Mat M(2, 2);
        M << dpressure(u(0)) / p_.kappa, 1.0 / (3.0 * p_.kappa), 0.0,
            1.0 / (3.0 * p_.sigma_a);
        return M;
    }

    Vec sample_equilibrium(std::mt19937_64& rng) const override
    {
        std::uniform_real_distribution<double> box(0.3, 3.0);
        return (Vec(2) << box(rng), box(rng)).finished();
    }
    Vec sample_state(std::mt19937_64& rng) const override
    {
        std::uniform_real_distribution<double> box(0.3, 3.0);
        std::uniform_real_distribution<double> v(-1.0, 1.0);
        std::uniform_real_distribution<double> xi(-0.8, 0.8);
        const double rho = box(rng), e = box(rng);
        return (Vec(4) << rho, rho * v(rng), e, e * xi(rng)).finished();
    }

private:
    EulerM1Params p_;
};

} // namespace

std::shared_ptr<Model> make_euler_m1(const EulerM1Params& p)
{
    return std::make_shared<EulerM1>(p);
}

} // namespace apfv
