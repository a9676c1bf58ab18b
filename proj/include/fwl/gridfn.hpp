#pragma once

#include <array>
#include <vector>

#include "fwl/ext.hpp"

namespace fwl {

// Extended-real samples of a convex function on a regular box grid, n in {1,2}.
class GridFn {
public:
    GridFn(int dim, std::array<Interval, 2> box, std::array<int, 2> shape,
           std::vector<double> values, bool convexified = false);

    template <class F>
    static GridFn sample(int dim, std::array<Interval, 2> box, std::array<int, 2> shape, F&& f) {
        std::vector<double> vals;
        if (dim == 1) {
            vals.reserve(static_cast<size_t>(shape[0]));
            for (int i = 0; i < shape[0]; ++i) vals.push_back(f(node(box[0], shape[0], i), 0.0));
        } else {
            vals.reserve(static_cast<size_t>(shape[0]) * shape[1]);
            for (int i = 0; i < shape[0]; ++i)
                for (int j = 0; j < shape[1]; ++j)
                    vals.push_back(f(node(box[0], shape[0], i), node(box[1], shape[1], j)));
        }
        return GridFn(dim, box, shape, std::move(vals));
    }

    int dim() const { return dim_; }
    const std::array<Interval, 2>& box() const { return box_; }
    const std::array<int, 2>& shape() const { return shape_; }
    const std::vector<double>& values() const { return values_; }
    bool convexified() const { return convexified_; }

    double step(int axis) const;
    double coord(int axis, int idx) const { return node(box_[axis], shape_[axis], idx); }

    double at(int i, int j = 0) const;
    // Multilinear interpolation; +inf when the containing cell touches +inf
    // or the point leaves the box.
    double operator()(double x, double y = 0.0) const;

    // Largest |discrete gradient| over finite links, used for dual box selection.
    double max_gradient() const;

    // Midpoint-convexity check along grid lines.
    bool discretely_convex(double tol = 1e-9) const;

    bool has_finite_value() const;

private:
    static double node(const Interval& iv, int n, int i) {
        return iv.lo + (iv.hi - iv.lo) * i / (n - 1);
    }
    int dim_;
    std::array<Interval, 2> box_;
    std::array<int, 2> shape_;
    std::vector<double> values_;
    bool convexified_;
};

// Discrete Legendre transform of grid samples onto a dual grid
// (monotone sorted-slope sweep per line, dimension-separable in 2D).
GridFn grid_legendre(const GridFn& u, std::array<Interval, 2> dual_box,
                     std::array<int, 2> dual_shape);

// Conjugate twice back onto a chosen primal box (convex envelope on the grid).
GridFn grid_biconjugate(const GridFn& u, std::array<Interval, 2> primal_box,
                        std::array<int, 2> primal_shape);

}  // namespace fwl
