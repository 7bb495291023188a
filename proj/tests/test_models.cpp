#include <doctest.h>

#include "apfv/models.hpp"
#include "test_support.hpp"

using namespace apfv;

TEST_CASE("effective matrices: closed-form anchor values")
{
    const Vec u1 = (Vec(1) << 1.0).finished();
    const Vec du1 = (Vec(1) << 1.0).finished();

    const auto euler = make_euler_friction();  // p = rho^2
    CHECK(effective_matrix_analytic(*euler, u1, du1)(0, 0) == doctest::Approx(2.0));

    const auto m1 = make_m1();
    const Vec u2 = (Vec(1) << 2.0).finished();  // tau = 1
    CHECK(effective_matrix_analytic(*m1, u2, du1)(0, 0) ==
          doctest::Approx(4.0 / 15.0).epsilon(1e-12));

    const auto coupled = make_euler_m1();  // kappa = sigma_a = 1, p = rho^2
    const Vec uc = (Vec(2) << 1.0, 1.0).finished();
    const Mat Mc = effective_matrix_analytic(*coupled, uc, Vec::Ones(2));
    CHECK(Mc(0, 0) == doctest::Approx(2.0));
    CHECK(Mc(0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(Mc(1, 0) == doctest::Approx(0.0));
    CHECK(Mc(1, 1) == doctest::Approx(1.0 / 3.0));

    const auto sw = make_shallow_water();  // g = kappa0 = 1
    CHECK(effective_matrix_analytic(*sw, u1, du1)(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("effective matrices: out-of-domain rejection")
{
    const auto euler = make_euler_friction();
    CHECK_THROWS_AS(
        effective_matrix_analytic(*euler, (Vec(1) << -1.0).finished(), Vec::Ones(1)),
        OutOfDomain);
    const auto m1 = make_m1();
    CHECK_THROWS_AS(
        effective_matrix_analytic(*m1, (Vec(1) << 0.0).finished(), Vec::Ones(1)),
        OutOfDomain);
}

TEST_CASE("tau_from_u: anchors, residuals, and round trips")
{
    CHECK(tau_from_u(2.0) == doctest::Approx(1.0).epsilon(1e-13));

    const double t = tau_from_u(0.1);
    CHECK(t > 0.0);
    CHECK(t < 0.1);
    CHECK(std::abs(t + t * t * t * t - 0.1) <= 1e-12 * 1.1);

    // Bisection oracle, independent of the Newton path.
    double lo = 0.0, hi = 0.1;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mid + std::pow(mid, 4) > 0.1 ? hi : lo) = mid;
    }
    CHECK(t == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));

    for (double tau0 : {0.5, 2.0, 5.0}) {
        const double u = tau0 + std::pow(tau0, 4);
        CHECK(tau_from_u(u) == doctest::Approx(tau0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(tau_from_u(0.0), NonPositive);
    CHECK_THROWS_AS(tau_from_u(-1.0), NonPositive);
}

TEST_CASE("entropy pairs: anchors and availability")
{
    const auto euler = make_euler_friction();
    const auto [phi_e, psi_e] = entropy_pair(*euler, (Vec(2) << 1.0, 0.0).finished());
    CHECK(phi_e == doctest::Approx(1.0));  // rho e(rho) = rho^2/(gamma-1)... = 1
    CHECK(psi_e == doctest::Approx(0.0));

    const auto sw = make_shallow_water();
    const auto [phi_s, psi_s] = entropy_pair(*sw, (Vec(2) << 1.0, 0.0).finished());
    CHECK(phi_s == doctest::Approx(0.5));
    CHECK(psi_s == doctest::Approx(0.0));

    CHECK_THROWS_AS(entropy_pair(*make_m1(), (Vec(3) << 1.0, 0.0, 1.0).finished()),
                    EntropyUnavailable);
    CHECK_THROWS_AS(
        entropy_pair(*make_euler_m1(), (Vec(4) << 1.0, 0.0, 1.0, 0.0).finished()),
        EntropyUnavailable);
}

TEST_CASE("entropy-pair compatibility D_U Phi . A = D_U Psi")
{
    std::mt19937_64 rng(42u);
    for (const char* name : {"euler_friction", "shallow_water_friction"}) {
        CAPTURE(name);
        const auto m = make_model(name);
        for (int s = 0; s < 100; ++s) {
            const Vec U = m->sample_state(rng);
            const Vec lhs = m->flux_jacobian(U).transpose() * m->entropy_gradient(U);
            Vec rhs(U.size());
            for (Eigen::Index j = 0; j < U.size(); ++j) {
                const double h = 1e-6 * (1.0 + std::abs(U(j)));
                Vec up = U, um = U;
                up(j) += h;
                um(j) -= h;
                rhs(j) = (m->entropy_flux(up) - m->entropy_flux(um)) / (2.0 * h);
            }
            CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <=
                  1e-6 * (1.0 + rhs.lpNorm<Eigen::Infinity>()));
        }
    }
}

TEST_CASE("entropy gradients and Hessians match finite differences")
{
    std::mt19937_64 rng(4242u);
    for (const char* name : {"euler_friction", "shallow_water_friction"}) {
        CAPTURE(name);
        const auto m = make_model(name);
        for (int s = 0; s < 50; ++s) {
            const Vec U = m->sample_state(rng);
            Vec grad_fd(U.size());
            for (Eigen::Index j = 0; j < U.size(); ++j) {
                const double h = 1e-6 * (1.0 + std::abs(U(j)));
                Vec up = U, um = U;
                up(j) += h;
                um(j) -= h;
                grad_fd(j) = (m->entropy(up) - m->entropy(um)) / (2.0 * h);
            }
            CHECK((m->entropy_gradient(U) - grad_fd).lpNorm<Eigen::Infinity>() <= 1e-5);
            const Mat hess_fd = jacobian_fd(
                [&](const Vec& V) { return m->entropy_gradient(V); }, U, 1e-5);
            CHECK((m->entropy_hessian(U) - hess_fd).lpNorm<Eigen::Infinity>() <= 1e-5);
        }
    }
}

TEST_CASE("Eddington factor endpoints and shape")
{
    CHECK(eddington(0.0) == 1.0 / 3.0);  // (3+0)/(5+2*2) exactly
    CHECK(eddington(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eddington(-1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // Derivative vs finite differences on the open interval.
    for (double xi : {-0.9, -0.3, 0.0, 0.45, 0.8}) {
        const double h = 1e-6;
        const double fd = (eddington(xi + h) - eddington(xi - h)) / (2.0 * h);
        CHECK(eddington_prime(xi) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("Euler-friction equilibrium Jacobian structure")
{
    const auto m = make_euler_friction();
    const Vec u = (Vec(1) << 1.5).finished();
    const Mat A = m->flux_jacobian(m->equilibrium(u));
    CHECK(A(0, 0) == 0.0);
    CHECK(A(0, 1) == 1.0);
    CHECK(A(1, 0) == doctest::Approx(2.0 * 1.5));  // p'(rho)
    CHECK(A(1, 1) == 0.0);
}

TEST_CASE("M1 equilibrium flux is (0, tau^4/3, 0)")
{
    const auto m = make_m1();
    for (double tau : {0.5, 1.0, 1.4}) {
        const Vec u = (Vec(1) << tau + std::pow(tau, 4)).finished();
        const Vec F = m->flux(m->equilibrium(u));
        CHECK(std::abs(F(0)) < 1e-14);
        CHECK(F(1) == doctest::Approx(std::pow(tau, 4) / 3.0).epsilon(1e-10));
        CHECK(std::abs(F(2)) < 1e-14);
    }
}

TEST_CASE("shallow-water relaxation scaling identity")
{
    // R(E(u) + eps U) = eps^2 R(E(u) + M(eps) U) with M(eps) = diag(eps, 1).
    std::mt19937_64 rng(11u);
    std::uniform_real_distribution<double> epsd(1e-4, 0.3);
    const auto m = make_shallow_water();
    for (int s = 0; s < 100; ++s) {
        const Vec u = m->sample_equilibrium(rng);
        const Vec U = m->sample_state(rng);
        const double eps = epsd(rng);
        const Vec lhs = m->relaxation(m->equilibrium(u) + eps * U);
        Vec scaled = U;
        scaled(0) *= eps;
        const Vec rhs = eps * eps * m->relaxation(m->equilibrium(u) + scaled);
        CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <=
              1e-12 * (1.0 + rhs.lpNorm<Eigen::Infinity>()));
    }
}

TEST_CASE("entropy compatibility sign D_U Phi . R >= 0")
{
    std::mt19937_64 rng(21u);
    for (const char* name : {"euler_friction", "shallow_water_friction"}) {
        CAPTURE(name);
        const auto m = make_model(name);
        for (int s = 0; s < 100; ++s) {
            const Vec U = m->sample_state(rng);
            CHECK(m->entropy_gradient(U).dot(m->relaxation(U)) >= -1e-12);
        }
        const Vec u = m->sample_equilibrium(rng);
        const Vec Eu = m->equilibrium(u);
        CHECK(m->entropy_gradient(Eu).dot(m->relaxation(Eu)) == 0.0);
    }
}

TEST_CASE("registry: names, parameters, and rejection of unknowns")
{
    CHECK(make_model("euler_friction")->name() == "euler_friction");
    CHECK(make_model("m1")->name() == "m1");
    CHECK(make_model("euler_m1")->name() == "euler_m1");
    CHECK(make_model("shallow_water_friction")->name() == "shallow_water_friction");

    const auto m = make_model("euler_friction", {{"kappa_p", 2.0}, {"gamma", 3.0}});
    // p(rho) = 2 rho^3, p'(2) = 24
    CHECK(effective_matrix_analytic(*m, (Vec(1) << 2.0).finished(), Vec::Ones(1))(0, 0) ==
          doctest::Approx(24.0));

    CHECK_THROWS_AS(make_model("navier_stokes"), ConfigError);
    CHECK_THROWS_AS(make_model("euler_friction", {{"not_a_key", 1.0}}), ConfigError);
    CHECK_THROWS_AS(make_model("euler_friction", {{"gamma", 0.5}}), ConfigError);
    CHECK_THROWS_AS(make_model("shallow_water_friction", {{"kappa0", -1.0}}),
                    ConfigError);
}

TEST_CASE("admissibility predicates delimit the documented domains")
{
    const auto m1 = make_m1();
    CHECK(m1->admissible((Vec(3) << 1.0, 0.9, 1.0).finished()));
    CHECK_FALSE(m1->admissible((Vec(3) << 1.0, 1.1, 1.0).finished()));  // |f| > e
    CHECK_FALSE(m1->admissible((Vec(3) << -1.0, 0.0, 1.0).finished()));
    CHECK_FALSE(m1->admissible((Vec(3) << 1.0, 0.0, 0.0).finished()));  // tau = 0

    const auto euler = make_euler_friction();
    CHECK(euler->admissible((Vec(2) << 0.5, -3.0).finished()));
    CHECK_FALSE(euler->admissible((Vec(2) << 0.0, 0.0).finished()));

    const auto coupled = make_euler_m1();
    CHECK(coupled->admissible((Vec(4) << 1.0, 0.0, 1.0, -0.5).finished()));
    CHECK_FALSE(coupled->admissible((Vec(4) << 1.0, 0.0, 0.5, 1.0).finished()));
}
