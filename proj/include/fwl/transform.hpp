#pragma once

#include "fwl/gridfn.hpp"
#include "fwl/perturbation.hpp"
#include "fwl/polyhedral.hpp"
#include "fwl/pwl.hpp"

namespace fwl {

// u_t = (u* + t zeta)*, exact on the polyhedral track. Negative t is allowed;
// validity is detected a posteriori (an improper conjugate throws
// "perturbation too large").
PolyhedralFn perturb(const PolyhedralFn& u, const Perturbation& zeta, double t);

// Grid-track perturbation: sample u* + t zeta on an automatically selected
// dual box, conjugate back onto primal_box. The dual box is
// [-L - margin, L + margin]^n with L = max discrete gradient of u.
GridFn perturb_grid(const GridFn& u, const Perturbation& zeta, double t,
                    std::array<Interval, 2> primal_box, std::array<int, 2> primal_shape,
                    double dual_margin = 2.0);

struct ResidualField {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    int nodes = 0;
};

// Finite-difference estimate of d/dt w + zeta(grad w) for w(t,.) = u_t at
// interior nodes inside eval_box (kept away from the domain boundary, where
// the gradient jumps). Diagnostic for the Hamilton-Jacobi consistency of the
// perturbation flow.
ResidualField hopf_lax_residual(const GridFn& u, const Perturbation& zeta, double t, double h,
                                std::array<Interval, 2> primal_box,
                                std::array<int, 2> primal_shape,
                                std::array<Interval, 2> eval_box);

}  // namespace fwl
