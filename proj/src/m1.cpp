#include <cmath>

#include "apfv/models.hpp"

namespace apfv {

double eddington(double xi)
{
    return (3.0 + 4.0 * xi * xi) / (5.0 + 2.0 * std::sqrt(4.0 - 3.0 * xi * xi));
}

double eddington_prime(double xi)
{
    const double s = std::sqrt(4.0 - 3.0 * xi * xi);
    const double num = 3.0 + 4.0 * xi * xi;
    const double den = 5.0 + 2.0 * s;
    return (8.0 * xi * den - num * (-6.0 * xi / s)) / (den * den);
}

double tau_from_u(double u)
{
    if (!(u > 0.0)) throw NonPositive("tau_from_u: u must be > 0");
    // tau + tau^4 is strictly increasing on [0, inf); safeguarded Newton on
    // the bracket [0, min(u, u^(1/4)) upper bound].
    double lo = 0.0, hi = std::min(u, std::pow(u, 0.25) + 1.0);
    double tau = std::min(u, std::pow(u, 0.25));
    for (int it = 0; it < 100; ++it) {
        const double g = tau + tau * tau * tau * tau - u;
        if (std::abs(g) <= 1e-14 * (1.0 + u)) break;
        (g > 0.0 ? hi : lo) = tau;
        const double dg = 1.0 + 4.0 * tau * tau * tau;
        double next = tau - g / dg;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        tau = next;
    }
    return tau;
}

namespace {

constexpr double kFloor = 1e-12;

// U = (e, f, tau), F = (f, chi(f/e) e, 0),
// R = (e - tau^4, f, tau^4 - e), Q = (1 0 1), equilibria u = tau + tau^4.
class M1 final : public Model {
public:
    M1() : Model("m1", (Mat(1, 3) << 1.0, 0.0, 1.0).finished()) {}

    Vec flux(const Vec& U) const override
    {
        const double xi = U(1) / U(0);
        return (Vec(3) << U(1), eddington(xi) * U(0), 0.0).finished();
    }
    Vec relaxation(const Vec& U) const override
    {
        const double t4 = std::pow(U(2), 4);
        return (Vec(3) << U(0) - t4, U(1), t4 - U(0)).finished();
    }
    Mat flux_jacobian(const Vec& U) const override
    {
        const double xi = U(1) / U(0);
        const double chi = eddington(xi), dchi = eddington_prime(xi);
        Mat A = Mat::Zero(3, 3);
        A(0, 1) = 1.0;
        A(1, 0) = chi - xi * dchi;
        A(1, 1) = dchi;
        return A;
    }
    Mat relax_jacobian(const Vec& U) const override
    {
        const double t3 = 4.0 * std::pow(U(2), 3);
        return (Mat(3, 3) << 1.0, 0.0, -t3, 0.0, 1.0, 0.0, -1.0, 0.0, t3).finished();
    }

    Vec equilibrium(const Vec& u) const override
    {
        const double tau = tau_from_u(u(0));
        return (Vec(3) << std::pow(tau, 4), 0.0, tau).finished();
    }
    Mat equilibrium_jacobian(const Vec& u) const override
    {
        const double tau = tau_from_u(u(0));
        const double dtau = 1.0 / (1.0 + 4.0 * std::pow(tau, 3));
        return (Mat(3, 1) << 4.0 * std::pow(tau, 3) * dtau, 0.0, dtau).finished();
    }

    bool admissible(const Vec& U) const override
    {
        return U.size() == 3 && all_finite(U) && U(0) > kFloor &&
               std::abs(U(1)) <= U(0) && U(2) > kFloor;
    }
    bool equilibrium_admissible(const Vec& u) const override
    {
        return u.size() == 1 && std::isfinite(u(0)) && u(0) > kFloor;
    }

    double max_wave_speed(const Vec& U) const override
    {
        // Radiative 2x2 block [[0, 1], [chi - xi chi', chi']].
        const double xi = U(1) / U(0);
        const double chi = eddington(xi), dchi = eddington_prime(xi);
        const double c0 = chi - xi * dchi;
        const double disc = dchi * dchi + 4.0 * c0;
        if (disc >= 0.0) {
            const double r = std::sqrt(disc);
            return 0.5 * std::max(std::abs(dchi + r), std::abs(dchi - r));
        }
        return std::sqrt(std::abs(c0));  // complex pair, |lambda|^2 = |det|
    }

    Mat effective_matrix(const Vec& u, const Vec&) const override
    {
        if (!equilibrium_admissible(u)) throw OutOfDomain("m1: u <= 0");
        const double t3 = std::pow(tau_from_u(u(0)), 3);
        return (Mat(1, 1) << 4.0 * t3 / (3.0 * (1.0 + 4.0 * t3))).finished();
    }

    Vec sample_equilibrium(std::mt19937_64& rng) const override
    {
        std::uniform_real_distribution<double> tau(0.4, 1.6);
        const double t = tau(rng);
        return (Vec(1) << t + std::pow(t, 4)).finished();
    }
    Vec sample_state(std::mt19937_64& rng) const override
    {
        std::uniform_real_distribution<double> e(0.3, 3.0);
        std::uniform_real_distribution<double> xi(-0.8, 0.8);
        std::uniform_real_distribution<double> tau(0.4, 1.6);
        const double ev = e(rng);
        return (Vec(3) << ev, ev * xi(rng), tau(rng)).finished();
    }
};

} // namespace

std::shared_ptr<Model> make_m1(const M1Params&)
{
    return std::make_shared<M1>();
}

} // namespace apfv
