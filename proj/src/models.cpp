#include "apfv/models.hpp"

#include <set>

namespace apfv {
namespace {

double take(std::map<std::string, double>& kv, const std::string& key, double fallback)
{
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const double v = it->second;
    kv.erase(it);
    return v;
}

} // namespace

std::shared_ptr<Model> make_model(const std::string& name,
                                  const std::map<std::string, double>& params)
{
    std::map<std::string, double> kv = params;
    std::shared_ptr<Model> m;
    if (name == "euler_friction") {
        EulerFrictionParams p;
        p.kappa_p = take(kv, "kappa_p", p.kappa_p);
        p.gamma = take(kv, "gamma", p.gamma);
        m = make_euler_friction(p);
    } else if (name == "m1") {
        m = make_m1({});
    } else if (name == "euler_m1") {
        EulerM1Params p;
        p.kappa = take(kv, "kappa", p.kappa);
        p.sigma_a = take(kv, "sigma_a", p.sigma_a);
        p.C_p = take(kv, "C_p", p.C_p);
        p.eta = take(kv, "eta", p.eta);
        m = make_euler_m1(p);
    } else if (name == "shallow_water_friction") {
        ShallowWaterParams p;
        p.g = take(kv, "g", p.g);
        p.kappa0 = take(kv, "kappa0", p.kappa0);
        p.grad_floor = take(kv, "grad_floor", p.grad_floor);
        m = make_shallow_water(p);
    } else {
        throw ConfigError("unknown model: " + name);
    }
    if (!kv.empty())
        throw ConfigError("model " + name + ": unknown parameter '" + kv.begin()->first + "'");
    return m;
}

std::pair<double, double> entropy_pair(const Model& m, const Vec& U)
{
    if (!m.has_entropy()) throw EntropyUnavailable(m.name() + ": no entropy pair");
    if (!m.admissible(U)) throw OutOfDomain(m.name() + ": state not admissible");
    return {m.entropy(U), m.entropy_flux(U)};
}

Mat effective_matrix_analytic(const Model& m, const Vec& u, const Vec& du_dx)
{
    return m.effective_matrix(u, du_dx);
}

} // namespace apfv
