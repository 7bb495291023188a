#ifndef APFV_PARABOLIC_HPP
#define APFV_PARABOLIC_HPP

#include <vector>

#include "apfv/model.hpp"

namespace apfv {

/// Face diffusion matrices from the analytic effective coefficient evaluated
/// at interface midpoints (num_cells+1 entries).
std::vector<Mat> effective_face_matrices(const Model& m, const std::vector<Vec>& u,
                                         double dx, Boundary boundary);

/// One explicit step of the reference parabolic solver; shares the stencil of
/// the discrete asymptotic system. Throws StabilityViolation if dt exceeds
/// dx^2 / (2 max spectral radius of the face coefficients).
std::vector<Vec> parabolic_step(const Model& m, const std::vector<Vec>& u, double dt,
                                double dx, Boundary boundary);

/// Marches parabolic_step to time T with dt = safety x stability bound,
/// truncating the last step to land exactly on T.
std::vector<Vec> solve_to_time(const Model& m, std::vector<Vec> u, double T, double dx,
                               Boundary boundary, double safety = 0.9);

} // namespace apfv

#endif
