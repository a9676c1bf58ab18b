#include "fwl/perturbation.hpp"

#include <cmath>
#include <stdexcept>

namespace fwl {

Perturbation Perturbation::support(std::vector<std::array<double, 2>> points) {
    if (points.empty()) throw std::invalid_argument("support atom: empty point set");
    Perturbation p;
    p.kind_ = Kind::Support;
    p.pts_ = std::move(points);
    return p;
}

Perturbation Perturbation::support(double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("support atom: lo > hi");
    return support({{lo, 0.0}, {hi, 0.0}});
}

Perturbation Perturbation::norm(double coeff) {
    Perturbation p;
    p.kind_ = Kind::Norm;
    p.c_ = coeff;
    return p;
}

Perturbation Perturbation::constant(double value) {
    Perturbation p;
    p.kind_ = Kind::Constant;
    p.c_ = value;
    return p;
}

Perturbation Perturbation::soft_norm() {
    Perturbation p;
    p.kind_ = Kind::SoftNorm;
    return p;
}

Perturbation Perturbation::sum(std::vector<Perturbation> terms) {
    if (terms.empty()) throw std::invalid_argument("sum atom: empty term list");
    Perturbation p;
    p.kind_ = Kind::Sum;
    p.terms_ = std::move(terms);
    return p;
}

double Perturbation::operator()(double x, double y) const {
    switch (kind_) {
        case Kind::Support: {
            double best = -kInf;
            for (const auto& v : pts_) best = std::max(best, v[0] * x + v[1] * y);
            return best;
        }
        case Kind::Norm:
            return c_ * std::hypot(x, y);
        case Kind::Constant:
            return c_;
        case Kind::SoftNorm:
            return std::sqrt(1.0 + x * x + y * y);
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& t : terms_) s += t(x, y);
            return s;
        }
    }
    return 0.0;
}

double Perturbation::recession(double x, double y) const {
    switch (kind_) {
        case Kind::Support:
            return (*this)(x, y);  // already 1-homogeneous
        case Kind::Norm:
            return c_ * std::hypot(x, y);
        case Kind::Constant:
            return 0.0;
        case Kind::SoftNorm:
            return std::hypot(x, y);
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& t : terms_) s += t.recession(x, y);
            return s;
        }
    }
    return 0.0;
}

double Perturbation::recession_ladder(double x, double y) const {
    double r[4];
    double scale = 10.0;
    for (int k = 0; k < 4; ++k, scale *= 10.0) r[k] = (*this)(scale * x, scale * y) / scale;
    double d1 = std::abs(r[1] - r[0]);
    double d2 = std::abs(r[2] - r[1]);
    double d3 = std::abs(r[3] - r[2]);
    double tol = 1e-12 * (1.0 + std::abs(r[3]));
    if (d2 > d1 + tol || d3 > d2 + tol)
        throw std::runtime_error("recession estimate diverges");
    // Error is O(1/R) and the ladder shrinks R by 10x per rung.
    return r[3] + (r[3] - r[2]) / 9.0;
}

double Perturbation::recession_gap_bound() const {
    switch (kind_) {
        case Kind::Support:
        case Kind::Norm:
            return 0.0;
        case Kind::Constant:
            return std::abs(c_);
        case Kind::SoftNorm:
            return 1.0;  // sqrt(1+r^2) - r <= 1
        case Kind::Sum: {
            double s = 0.0;
            for (const auto& t : terms_) s += t.recession_gap_bound();
            return s;
        }
    }
    return 0.0;
}

PwlFn Perturbation::pwl(double radius, int nodes) const {
    switch (kind_) {
        case Kind::Support: {
            std::vector<Line> lines;
            lines.reserve(pts_.size());
            for (const auto& v : pts_) lines.push_back({v[0], 0.0});
            return PwlFn::from_lines(std::move(lines));
        }
        case Kind::Norm:
            return PwlFn::from_lines({{1.0, 0.0}, {-1.0, 0.0}}).scaled(c_);
        case Kind::Constant:
            return PwlFn::affine(0.0, c_);
        case Kind::SoftNorm: {
            // Tangent at s: slope s/sqrt(1+s^2), intercept 1/sqrt(1+s^2).
            std::vector<Line> lines;
            lines.reserve(static_cast<size_t>(nodes));
            for (int i = 0; i < nodes; ++i) {
                double s = -radius + 2.0 * radius * i / (nodes - 1);
                double w = std::sqrt(1.0 + s * s);
                lines.push_back({s / w, 1.0 / w});
            }
            return PwlFn::from_lines(std::move(lines));
        }
        case Kind::Sum: {
            PwlFn acc = terms_.front().pwl(radius, nodes);
            for (size_t i = 1; i < terms_.size(); ++i) acc += terms_[i].pwl(radius, nodes);
            return acc;
        }
    }
    return PwlFn::affine(0.0, 0.0);
}

bool Perturbation::pwl_exact() const {
    if (kind_ == Kind::SoftNorm) return false;
    if (kind_ == Kind::Sum)
        for (const auto& t : terms_)
            if (!t.pwl_exact()) return false;
    return true;
}

}  // namespace fwl
