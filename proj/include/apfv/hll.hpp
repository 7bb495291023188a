#ifndef APFV_HLL_HPP
#define APFV_HLL_HPP

#include "apfv/model.hpp"

namespace apfv {

/// Single-speed HLL flux: (F(UL) + F(UR))/2 - (b/2)(UR - UL).
Vec hll_flux(const Model& m, const Vec& UL, const Vec& UR, double b);

/// Intermediate state (UL + UR)/2 - (F(UR) - F(UL))/(2b).
Vec intermediate_state(const Model& m, const Vec& UL, const Vec& UR, double b);

/// Global wave speed: safety x max spectral radius of A over cells, floored
/// at 1e-8. Throws DegenerateState on non-finite speeds.
double wave_speed(const Model& m, const GridState& state, double safety = 1.1);

/// One step of the homogeneous HLL scheme. Requires b dt/dx <= 1/2.
GridState step_homogeneous(const Model& m, const GridState& state, double dt, double b);

} // namespace apfv

#endif
