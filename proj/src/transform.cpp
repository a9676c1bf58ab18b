#include "fwl/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace fwl {

PolyhedralFn perturb(const PolyhedralFn& u, const Perturbation& zeta, double t) {
    PwlFn dual = legendre(u);
    if (t != 0.0) dual += zeta.pwl().scaled(t);
    try {
        return dual.conjugate();
    } catch (const std::domain_error&) {
        throw std::runtime_error("perturbation too large");
    }
}

GridFn perturb_grid(const GridFn& u, const Perturbation& zeta, double t,
                    std::array<Interval, 2> primal_box, std::array<int, 2> primal_shape,
                    double dual_margin) {
    double L = u.max_gradient() + dual_margin;
    std::array<Interval, 2> dual_box{Interval{-L, L}, Interval{-L, L}};
    std::array<int, 2> dual_shape = primal_shape;
    if (u.dim() == 1) dual_shape[1] = 1;
    GridFn ustar = grid_legendre(u, dual_box, dual_shape);

    std::vector<double> vals(ustar.values());
    bool proper = false;
    if (ustar.dim() == 1) {
        for (int i = 0; i < dual_shape[0]; ++i) {
            double y = ustar.coord(0, i);
            if (is_finite(vals[static_cast<size_t>(i)])) {
                vals[static_cast<size_t>(i)] += t * zeta(y);
                proper = true;
            }
        }
    } else {
        for (int i = 0; i < dual_shape[0]; ++i)
            for (int j = 0; j < dual_shape[1]; ++j) {
                size_t idx = static_cast<size_t>(i) * dual_shape[1] + j;
                if (!is_finite(vals[idx])) continue;
                vals[idx] += t * zeta(ustar.coord(0, i), ustar.coord(1, j));
                proper = true;
            }
    }
    if (!proper) throw std::runtime_error("perturbation too large");
    GridFn shifted(ustar.dim(), dual_box, dual_shape, std::move(vals));
    return grid_legendre(shifted, primal_box, primal_shape);
}

ResidualField hopf_lax_residual(const GridFn& u, const Perturbation& zeta, double t, double h,
                                std::array<Interval, 2> primal_box,
                                std::array<int, 2> primal_shape,
                                std::array<Interval, 2> eval_box) {
    GridFn w0 = perturb_grid(u, zeta, t, primal_box, primal_shape);
    GridFn wp = perturb_grid(u, zeta, t + h, primal_box, primal_shape);
    GridFn wm = perturb_grid(u, zeta, t - h, primal_box, primal_shape);

    ResidualField out;
    double sum = 0.0;
    auto push = [&](double r) {
        r = std::abs(r);
        out.max_abs = std::max(out.max_abs, r);
        sum += r;
        ++out.nodes;
    };
    if (u.dim() == 1) {
        double dx = w0.step(0);
        for (int i = 1; i + 1 < primal_shape[0]; ++i) {
            if (!eval_box[0].contains(w0.coord(0, i))) continue;
            double c = w0.at(i), l = w0.at(i - 1), r = w0.at(i + 1);
            double p = wp.at(i), m = wm.at(i);
            if (!is_finite(c) || !is_finite(l) || !is_finite(r) || !is_finite(p) ||
                !is_finite(m))
                continue;
            double wt = (p - m) / (2.0 * h);
            double wx = (r - l) / (2.0 * dx);
            push(wt + zeta(wx));
        }
    } else {
        double dx = w0.step(0), dy = w0.step(1);
        for (int i = 1; i + 1 < primal_shape[0]; ++i)
            for (int j = 1; j + 1 < primal_shape[1]; ++j) {
                if (!eval_box[0].contains(w0.coord(0, i)) ||
                    !eval_box[1].contains(w0.coord(1, j)))
                    continue;
                double c = w0.at(i, j);
                double xl = w0.at(i - 1, j), xr = w0.at(i + 1, j);
                double yl = w0.at(i, j - 1), yr = w0.at(i, j + 1);
                double p = wp.at(i, j), m = wm.at(i, j);
                if (!is_finite(c) || !is_finite(xl) || !is_finite(xr) || !is_finite(yl) ||
                    !is_finite(yr) || !is_finite(p) || !is_finite(m))
                    continue;
                double wt = (p - m) / (2.0 * h);
                push(wt + zeta((xr - xl) / (2.0 * dx), (yr - yl) / (2.0 * dy)));
            }
    }
    out.mean_abs = out.nodes ? sum / out.nodes : 0.0;
    return out;
}

}  // namespace fwl
