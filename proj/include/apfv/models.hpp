#ifndef APFV_MODELS_HPP
#define APFV_MODELS_HPP

#include <map>
#include <memory>
#include <string>

#include "apfv/model.hpp"

namespace apfv {

// Euler equations with linear friction, p(rho) = kappa_p rho^gamma.
struct EulerFrictionParams {
    double kappa_p = 1.0;
    double gamma = 2.0;
};

// M1 moment model of radiative transfer; fixed Eddington closure.
struct M1Params {};

// Coupled Euler/M1 model, p(rho) = C_p rho^eta.
struct EulerM1Params {
    double kappa = 1.0;
    double sigma_a = 1.0;
    double C_p = 1.0;
    double eta = 2.0;
};

// Shallow water with nonlinear friction, kappa(h) = kappa0/h, p(h) = g h^2/2.
struct ShallowWaterParams {
    double g = 1.0;
    double kappa0 = 1.0;
    double grad_floor = 1e-8;
};

std::shared_ptr<Model> make_euler_friction(const EulerFrictionParams& p = {});
std::shared_ptr<Model> make_m1(const M1Params& p = {});
std::shared_ptr<Model> make_euler_m1(const EulerM1Params& p = {});
std::shared_ptr<Model> make_shallow_water(const ShallowWaterParams& p = {});

/// Registry keyed by the exact CLI identifiers: "euler_friction", "m1",
/// "euler_m1", "shallow_water_friction". Parameter keys: kappa_p, gamma,
/// kappa, sigma_a, C_p, eta, g, kappa0, grad_floor. Unknown names or keys
/// throw ConfigError.
std::shared_ptr<Model> make_model(const std::string& name,
                                  const std::map<std::string, double>& params = {});

/// Eddington factor chi(xi) = (3 + 4 xi^2) / (5 + 2 sqrt(4 - 3 xi^2)) and its
/// derivative, defined for |xi| <= 1.
double eddington(double xi);
double eddington_prime(double xi);

/// Unique positive root of tau + tau^4 = u (the M1 equilibrium relation).
/// Throws NonPositive for u <= 0.
double tau_from_u(double u);

/// Entropy pair (Phi, Psi) at U; EntropyUnavailable for m1 / euler_m1.
std::pair<double, double> entropy_pair(const Model& m, const Vec& U);

/// Closed-form effective diffusion matrix, forwarded from the model.
Mat effective_matrix_analytic(const Model& m, const Vec& u, const Vec& du_dx);

} // namespace apfv

#endif
