#include "apfv/hll.hpp"

#include <cmath>
#include <sstream>

namespace apfv {

Vec hll_flux(const Model& m, const Vec& UL, const Vec& UR, double b)
{
    return 0.5 * (m.flux(UL) + m.flux(UR)) - 0.5 * b * (UR - UL);
}

Vec intermediate_state(const Model& m, const Vec& UL, const Vec& UR, double b)
{
    return 0.5 * (UL + UR) - (m.flux(UR) - m.flux(UL)) / (2.0 * b);
}

double wave_speed(const Model& m, const GridState& state, double safety)
{
    double bmax = 0.0;
    for (const Vec& U : state.cells) {
        const double s = m.max_wave_speed(U);
        if (!std::isfinite(s)) throw DegenerateState(m.name() + ": non-finite wave speed");
        bmax = std::max(bmax, s);
    }
    return std::max(safety * bmax, 1e-8);
}

GridState step_homogeneous(const Model& m, const GridState& state, double dt, double b)
{
    const int nc = state.num_cells();
    if (b * dt / state.dx > 0.5 * (1.0 + 1e-12))
        throw CFLViolation("step_homogeneous: b dt/dx > 1/2");

    // Face j sits between cells j-1 and j; each face flux is computed once,
    // so the periodic total telescopes exactly.
    std::vector<Vec> face(static_cast<std::size_t>(nc) + 1);
    for (int j = 0; j <= nc; ++j)
        face[static_cast<std::size_t>(j)] = hll_flux(m, state.cell(j - 1), state.cell(j), b);

    GridState next = state;
    const double lam = dt / state.dx;
    for (int i = 0; i < nc; ++i) {
        next.cells[static_cast<std::size_t>(i)] =
            state.cells[static_cast<std::size_t>(i)] -
            lam * (face[static_cast<std::size_t>(i) + 1] - face[static_cast<std::size_t>(i)]);
        if (!m.admissible(next.cells[static_cast<std::size_t>(i)])) {
            std::ostringstream os;
            os << "step_homogeneous: cell " << i << " left the admissible set at t="
               << state.time << " (state: " << next.cells[static_cast<std::size_t>(i)].transpose()
               << ")";
            throw InadmissibleResult(os.str());
        }
    }
    next.time = state.time + dt;
    return next;
}

} // namespace apfv
