#include "fwl/gridfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwl {

GridFn::GridFn(int dim, std::array<Interval, 2> box, std::array<int, 2> shape,
               std::vector<double> values, bool convexified)
    : dim_(dim), box_(box), shape_(shape), values_(std::move(values)), convexified_(convexified) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("GridFn: dim must be 1 or 2");
    if (shape_[0] < 2 || (dim == 2 && shape_[1] < 2))
        throw std::invalid_argument("GridFn: need at least 2 nodes per axis");
    size_t expect = static_cast<size_t>(shape_[0]) * (dim == 2 ? shape_[1] : 1);
    if (values_.size() != expect) throw std::invalid_argument("GridFn: value count mismatch");
    if (!has_finite_value()) throw std::invalid_argument("GridFn: no finite values");
}

double GridFn::step(int axis) const {
    return (box_[axis].hi - box_[axis].lo) / (shape_[axis] - 1);
}

double GridFn::at(int i, int j) const {
    if (dim_ == 1) return values_[static_cast<size_t>(i)];
    return values_[static_cast<size_t>(i) * shape_[1] + j];
}

double GridFn::operator()(double x, double y) const {
    auto locate = [&](int axis, double v, int& i0, double& t) -> bool {
        const Interval& iv = box_[axis];
        double h = step(axis);
        if (v < iv.lo - 1e-12 * (1 + std::abs(iv.lo)) || v > iv.hi + 1e-12 * (1 + std::abs(iv.hi)))
            return false;
        double s = (v - iv.lo) / h;
        i0 = std::min(shape_[axis] - 2, std::max(0, static_cast<int>(std::floor(s))));
        t = std::clamp(s - i0, 0.0, 1.0);
        return true;
    };
    int i0, j0 = 0;
    double tx, ty = 0.0;
    if (!locate(0, x, i0, tx)) return kInf;
    if (dim_ == 2 && !locate(1, y, j0, ty)) return kInf;
    if (dim_ == 1) {
        double a = at(i0), b = at(i0 + 1);
        if (!is_finite(a) || !is_finite(b)) return kInf;
        return a + tx * (b - a);
    }
    double c00 = at(i0, j0), c10 = at(i0 + 1, j0), c01 = at(i0, j0 + 1), c11 = at(i0 + 1, j0 + 1);
    if (!is_finite(c00) || !is_finite(c10) || !is_finite(c01) || !is_finite(c11)) return kInf;
    return (1 - tx) * (1 - ty) * c00 + tx * (1 - ty) * c10 + (1 - tx) * ty * c01 + tx * ty * c11;
}

double GridFn::max_gradient() const {
    double m = 0.0;
    if (dim_ == 1) {
        for (int i = 0; i + 1 < shape_[0]; ++i)
            if (is_finite(at(i)) && is_finite(at(i + 1)))
                m = std::max(m, std::abs(at(i + 1) - at(i)) / step(0));
        return m;
    }
    for (int i = 0; i < shape_[0]; ++i)
        for (int j = 0; j < shape_[1]; ++j) {
            if (!is_finite(at(i, j))) continue;
            if (i + 1 < shape_[0] && is_finite(at(i + 1, j)))
                m = std::max(m, std::abs(at(i + 1, j) - at(i, j)) / step(0));
            if (j + 1 < shape_[1] && is_finite(at(i, j + 1)))
                m = std::max(m, std::abs(at(i, j + 1) - at(i, j)) / step(1));
        }
    return m;
}

bool GridFn::discretely_convex(double tol) const {
    auto check_line = [&](auto value) {
        return [&, value](int n) {
            for (int i = 1; i + 1 < n; ++i) {
                double a = value(i - 1), b = value(i), c = value(i + 1);
                if (!is_finite(b) && is_finite(a) && is_finite(c)) return false;
                if (is_finite(a) && is_finite(b) && is_finite(c) && 2 * b > a + c + tol)
                    return false;
            }
            return true;
        };
    };
    if (dim_ == 1) {
        return check_line([&](int i) { return at(i); })(shape_[0]);
    }
    for (int i = 0; i < shape_[0]; ++i)
        if (!check_line([&](int j) { return at(i, j); })(shape_[1])) return false;
    for (int j = 0; j < shape_[1]; ++j)
        if (!check_line([&](int i) { return at(i, j); })(shape_[0])) return false;
    return true;
}

bool GridFn::has_finite_value() const {
    return std::any_of(values_.begin(), values_.end(), [](double v) { return is_finite(v); });
}

namespace {

struct Pt {
    double x, v;
};

// max_j (x_j * y - v_j) at sorted query slopes: lower hull + monotone sweep.
void conj_line(const std::vector<Pt>& pts, const std::vector<double>& ys, std::vector<double>& out) {
    std::vector<Pt> hull;
    hull.reserve(pts.size());
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull.back();
            if ((b.x - a.x) * (p.v - a.v) - (b.v - a.v) * (p.x - a.x) <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    size_t k = 0;
    out.resize(ys.size());
    for (size_t q = 0; q < ys.size(); ++q) {
        double y = ys[q];
        while (k + 1 < hull.size() &&
               hull[k + 1].x * y - hull[k + 1].v >= hull[k].x * y - hull[k].v)
            ++k;
        out[q] = hull[k].x * y - hull[k].v;
    }
}

std::vector<double> axis_nodes(const Interval& iv, int n) {
    std::vector<double> xs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<size_t>(i)] = iv.lo + (iv.hi - iv.lo) * i / (n - 1);
    return xs;
}

}  // namespace

GridFn grid_legendre(const GridFn& u, std::array<Interval, 2> dual_box,
                     std::array<int, 2> dual_shape) {
    if (u.dim() == 1) {
        auto ys = axis_nodes(dual_box[0], dual_shape[0]);
        std::vector<Pt> pts;
        for (int i = 0; i < u.shape()[0]; ++i)
            if (is_finite(u.at(i))) pts.push_back({u.coord(0, i), u.at(i)});
        std::vector<double> out;
        conj_line(pts, ys, out);
        return GridFn(1, dual_box, {dual_shape[0], 1}, std::move(out), true);
    }
    const int n0 = u.shape()[0], n1 = u.shape()[1];
    const int m0 = dual_shape[0], m1 = dual_shape[1];
    auto y1s = axis_nodes(dual_box[1], m1);
    auto y0s = axis_nodes(dual_box[0], m0);
    // Pass 1: conjugate each x0-line in x1. Lines with no finite sample stay empty.
    std::vector<double> g(static_cast<size_t>(n0) * m1, -kInf);
    std::vector<Pt> pts;
    std::vector<double> out;
    for (int i = 0; i < n0; ++i) {
        pts.clear();
        for (int j = 0; j < n1; ++j)
            if (is_finite(u.at(i, j))) pts.push_back({u.coord(1, j), u.at(i, j)});
        if (pts.empty()) continue;
        conj_line(pts, y1s, out);
        for (int k = 0; k < m1; ++k) g[static_cast<size_t>(i) * m1 + k] = out[k];
    }
    // Pass 2: for fixed y1, conjugate -g over x0.
    std::vector<double> res(static_cast<size_t>(m0) * m1, -kInf);
    for (int k = 0; k < m1; ++k) {
        pts.clear();
        for (int i = 0; i < n0; ++i) {
            double gv = g[static_cast<size_t>(i) * m1 + k];
            if (gv > -kInf) pts.push_back({u.coord(0, i), -gv});
        }
        if (pts.empty()) throw std::domain_error("grid_legendre: no finite samples");
        conj_line(pts, y0s, out);
        for (int l = 0; l < m0; ++l) res[static_cast<size_t>(l) * m1 + k] = out[l];
    }
    return GridFn(2, dual_box, dual_shape, std::move(res), true);
}

GridFn grid_biconjugate(const GridFn& u, std::array<Interval, 2> primal_box,
                        std::array<int, 2> primal_shape) {
    double L = u.max_gradient() + 1.0;
    std::array<Interval, 2> dual_box = {Interval{-L, L}, Interval{-L, L}};
    std::array<int, 2> dual_shape = u.shape();
    if (u.dim() == 1) dual_shape[1] = 1;
    GridFn star = grid_legendre(u, dual_box, dual_shape);
    return grid_legendre(star, primal_box, primal_shape);
}

}  // namespace fwl
