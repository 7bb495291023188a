#include <doctest.h>

#include "apfv/densecore.hpp"
#include "apfv/models.hpp"
#include "test_support.hpp"

using namespace apfv;
using apfv_test::random_constrained_instance;
using apfv_test::stacked_lsq_oracle;

TEST_CASE("diagonal case: constraint kills the first component")
{
    const Mat C = (Mat(2, 2) << 0.0, 0.0, 0.0, 1.0).finished();
    const Mat Q = (Mat(1, 2) << 1.0, 0.0).finished();
    const Vec J = (Vec(2) << 0.0, 3.0).finished();
    const Vec V = solve_constrained(C, Q, J);
    CHECK(V(0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(V(1) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("M1 corrector system at tau = 1")
{
    const Mat C =
        (Mat(3, 3) << 1.0, 0.0, -4.0, 0.0, 1.0, 0.0, -1.0, 0.0, 4.0).finished();
    const Mat Q = (Mat(1, 3) << 1.0, 0.0, 1.0).finished();
    const Vec J = (Vec(3) << 0.0, -4.0 / 3.0, 0.0).finished();
    const Vec V = solve_constrained(C, Q, J);
    CHECK(std::abs(V(0)) < 1e-13);
    CHECK(V(1) == doctest::Approx(-4.0 / 3.0).epsilon(1e-13));
    CHECK(std::abs(V(2)) < 1e-13);
}

TEST_CASE("random instances match the stacked least-squares oracle")
{
    std::mt19937_64 rng(4401u);
    std::uniform_int_distribution<int> dimN(2, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const int N = dimN(rng);
        std::uniform_int_distribution<int> dimn(1, std::min(3, N - 1));
        const int n = dimn(rng);
        const auto inst = random_constrained_instance(rng, N, n);
        const Vec V = solve_constrained(inst.C, inst.Q, inst.J);
        const Vec W = stacked_lsq_oracle(inst.C, inst.Q, inst.J);
        const double scale = inst.V_expected.lpNorm<Eigen::Infinity>();
        CHECK((V - W).lpNorm<Eigen::Infinity>() <= 1e-10 * (1.0 + scale));
        CHECK((V - inst.V_expected).lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + scale));
        CHECK((inst.Q * V).lpNorm<Eigen::Infinity>() <= 1e-10 * (1.0 + scale));
    }
}

TEST_CASE("round trip: solve_constrained(C, Q, C V0) = V0")
{
    std::mt19937_64 rng(77u);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = random_constrained_instance(rng, 5, 2);
        const Vec V = solve_constrained(inst.C, inst.Q, inst.J);
        CHECK((V - inst.V_expected).lpNorm<Eigen::Infinity>() <=
              1e-10 * (1.0 + inst.V_expected.lpNorm<Eigen::Infinity>()));
    }
}

TEST_CASE("scaling equivariance in the matrix and right-hand side")
{
    std::mt19937_64 rng(12u);
    const auto inst = random_constrained_instance(rng, 4, 1);
    const Vec V = solve_constrained(inst.C, inst.Q, inst.J);
    for (double s : {2.0, 0.125, 1e3}) {
        const Vec Vs = solve_constrained(s * inst.C, inst.Q, Vec(s * inst.J));
        CHECK((V - Vs).lpNorm<Eigen::Infinity>() <=
              1e-12 * (1.0 + V.lpNorm<Eigen::Infinity>()));
    }
}

TEST_CASE("determinism: identical inputs give bitwise-identical output")
{
    std::mt19937_64 rng(99u);
    const auto inst = random_constrained_instance(rng, 6, 3);
    const Vec a = solve_constrained(inst.C, inst.Q, inst.J);
    const Vec b = solve_constrained(inst.C, inst.Q, inst.J);
    for (Eigen::Index i = 0; i < a.size(); ++i) CHECK(a(i) == b(i));
}

TEST_CASE("incompatible right-hand side is rejected, not projected")
{
    std::mt19937_64 rng(5u);
    const auto inst = random_constrained_instance(rng, 4, 2);
    Vec bad = inst.J;
    bad += 1e-3 * inst.Q.row(0).transpose();  // push J out of ker(Q)
    CHECK_THROWS_AS(solve_constrained(inst.C, inst.Q, bad), IncompatibleRHS);
}

TEST_CASE("rank-deficient stacked system is detected")
{
    const Mat C = Mat::Zero(2, 2);
    const Mat Q = (Mat(1, 2) << 1.0, 0.0).finished();  // ker C = R^2, too big
    const Vec J = Vec::Zero(2);
    CHECK_THROWS_AS(solve_constrained(C, Q, J), SingularSystem);
}

TEST_CASE("dimension and finiteness guards")
{
    const Mat C = Mat::Identity(2, 2);
    const Mat Q = (Mat(1, 3) << 1.0, 0.0, 0.0).finished();
    CHECK_THROWS_AS(solve_constrained(C, Q, Vec::Zero(2)), SolverError);
    Mat Cbad = (Mat(2, 2) << 0.0, 0.0, 0.0, 1.0).finished();
    Cbad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(
        solve_constrained(Cbad, (Mat(1, 2) << 1.0, 0.0).finished(), Vec::Zero(2)),
        SolverError);
}

TEST_CASE("generalized inverse: zero right-hand side")
{
    const Mat L = (Mat(2, 2) << 0.0, 0.0, 0.0, 1.0).finished();
    const Mat Q = (Mat(1, 2) << 1.0, 0.0).finished();
    const Vec V = generalized_inverse_apply(L, Q, Vec::Zero(2));
    CHECK(V.lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("generalized inverse: Euler-friction entropy operator at rho = 1")
{
    // Lcal = D^2 Phi(E(u)) B(E(u)) = diag(p'(1), 1) [[0,0],[0,1]] = diag(0, 1).
    const auto m = make_euler_friction();
    const Vec u = (Vec(1) << 1.0).finished();
    const Vec Eu = m->equilibrium(u);
    const Mat L = m->entropy_hessian(Eu) * m->relax_jacobian(Eu);
    const Vec b = (Vec(2) << 0.0, 1.0).finished();
    const Vec V = generalized_inverse_apply(L, m->constraint(), b);
    CHECK(std::abs(V(0)) < 1e-13);
    CHECK(V(1) == doctest::Approx(1.0).epsilon(1e-12));
    // Oracle: the same 2x2 stacked system by hand-rolled normal equations.
    const Vec W = stacked_lsq_oracle(L, m->constraint(), b);
    CHECK((V - W).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("generalized inverse round trip on model relaxation operators")
{
    std::mt19937_64 rng(314u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const char* name : {"euler_friction", "m1", "euler_m1"}) {
        const auto m = make_model(name);
        const Mat& Q = m->constraint();
        const int N = m->state_dim();
        for (int s = 0; s < 100; ++s) {
            const Vec u = m->sample_equilibrium(rng);
            const Mat B = m->relax_jacobian(m->equilibrium(u));
            // Random V0 in ker(Q) via one orthogonal projection.
            Vec w(N);
            for (int i = 0; i < N; ++i) w(i) = gauss(rng);
            const Mat QQt = Q * Q.transpose();
            const Vec V0 =
                w - Q.transpose() * apfv_test::gauss_solve(QQt, Vec(Q * w));
            const Vec V = generalized_inverse_apply(B, Q, Vec(B * V0));
            CHECK((V - V0).lpNorm<Eigen::Infinity>() <=
                  1e-10 * (1.0 + V0.lpNorm<Eigen::Infinity>()));
        }
    }
}

TEST_CASE("entropy operator round trip for the two entropy models")
{
    std::mt19937_64 rng(217u);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto m = make_euler_friction();
    const Mat& Q = m->constraint();
    for (int s = 0; s < 100; ++s) {
        const Vec u = m->sample_equilibrium(rng);
        const Vec Eu = m->equilibrium(u);
        const Mat L = m->entropy_hessian(Eu) * m->relax_jacobian(Eu);
        const Vec V0 = (Vec(2) << 0.0, gauss(rng)).finished();  // ker Q
        const Vec V = generalized_inverse_apply(L, Q, Vec(L * V0));
        CHECK((V - V0).lpNorm<Eigen::Infinity>() <=
              1e-10 * (1.0 + V0.lpNorm<Eigen::Infinity>()));
    }
}
