#include "fwl/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwl {

PwlFn PwlFn::affine(double slope, double value_at_0) {
    PwlFn f;
    f.kx_ = {0.0};
    f.kv_ = {value_at_0};
    f.sl_ = f.sr_ = slope;
    return f;
}

PwlFn PwlFn::from_lines(std::vector<Line> lines) {
    if (lines.empty()) throw std::invalid_argument("from_lines: empty");
    std::sort(lines.begin(), lines.end(), [](const Line& l, const Line& r) {
        return l.a < r.a || (l.a == r.a && l.b < r.b);
    });
    // Equal slopes: only the largest intercept can contribute.
    std::vector<Line> uniq;
    for (const auto& l : lines) {
        if (!uniq.empty() && uniq.back().a == l.a)
            uniq.back() = l;
        else
            uniq.push_back(l);
    }
    // Convex-hull-trick prune for the upper envelope.
    auto meet = [](const Line& p, const Line& q) { return (p.b - q.b) / (q.a - p.a); };
    std::vector<Line> env;
    for (const auto& l : uniq) {
        while (env.size() >= 2 && meet(env[env.size() - 2], l) <= meet(env[env.size() - 2], env.back()))
            env.pop_back();
        while (env.size() == 1 && l.b >= env.back().b && l.a == env.back().a)
            env.pop_back();
        env.push_back(l);
    }
    PwlFn f;
    if (env.size() == 1) {
        f.kx_ = {0.0};
        f.kv_ = {env[0].b};
        f.sl_ = f.sr_ = env[0].a;
        return f;
    }
    for (size_t i = 0; i + 1 < env.size(); ++i) {
        double x = meet(env[i], env[i + 1]);
        f.kx_.push_back(x);
        f.kv_.push_back(env[i].a * x + env[i].b);
    }
    // Coincident kinks can appear when three lines meet at a point.
    for (size_t i = 1; i < f.kx_.size();) {
        if (f.kx_[i] <= f.kx_[i - 1]) {
            f.kx_.erase(f.kx_.begin() + static_cast<long>(i));
            f.kv_.erase(f.kv_.begin() + static_cast<long>(i));
        } else {
            ++i;
        }
    }
    f.sl_ = env.front().a;
    f.sr_ = env.back().a;
    return f;
}

double PwlFn::operator()(double y) const {
    if (y <= kx_.front()) return kv_.front() + sl_ * (y - kx_.front());
    if (y >= kx_.back()) return kv_.back() + sr_ * (y - kx_.back());
    auto it = std::lower_bound(kx_.begin(), kx_.end(), y);
    size_t i = static_cast<size_t>(it - kx_.begin());
    double t = (y - kx_[i - 1]) / (kx_[i] - kx_[i - 1]);
    return kv_[i - 1] + t * (kv_[i] - kv_[i - 1]);
}

PwlFn& PwlFn::operator+=(const PwlFn& o) {
    std::vector<double> xs;
    xs.reserve(kx_.size() + o.kx_.size());
    std::merge(kx_.begin(), kx_.end(), o.kx_.begin(), o.kx_.end(), std::back_inserter(xs));
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<double> vs(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) vs[i] = (*this)(xs[i]) + o(xs[i]);
    kx_ = std::move(xs);
    kv_ = std::move(vs);
    sl_ += o.sl_;
    sr_ += o.sr_;
    return *this;
}

PwlFn PwlFn::scaled(double t) const {
    PwlFn f = *this;
    for (auto& v : f.kv_) v *= t;
    f.sl_ *= t;
    f.sr_ *= t;
    return f;
}

bool PwlFn::is_convex(double tol) const {
    double prev = sl_;
    for (size_t i = 0; i + 1 < kx_.size(); ++i) {
        double s = (kv_[i + 1] - kv_[i]) / (kx_[i + 1] - kx_[i]);
        if (s < prev - tol) return false;
        prev = s;
    }
    if (sr_ < prev - tol) return false;
    return true;
}

PolyhedralFn PwlFn::conjugate() const {
    // sup_y(x y - f(y)) is finite exactly for x in [slope_left, slope_right];
    // inside, the sup sits at a kink. Nonconvex input is convexified for free
    // by the envelope of the kink lines.
    if (sl_ > sr_) throw std::domain_error("conjugate improper: decreasing tails");
    std::vector<Line> lines;
    lines.reserve(kx_.size());
    for (size_t i = 0; i < kx_.size(); ++i) lines.push_back({kx_[i], -kv_[i]});
    if (sl_ == sr_) {
        double best = -kInf;
        for (const auto& l : lines) best = std::max(best, l.a * sl_ + l.b);
        return PolyhedralFn::canonicalize({{sl_, best}});
    }
    PwlFn env = from_lines(std::move(lines));
    std::vector<PolyhedralFn::Generator> gens;
    gens.push_back({sl_, env(sl_)});
    for (double k : env.kx_)
        if (k > sl_ && k < sr_) gens.push_back({k, env(k)});
    gens.push_back({sr_, env(sr_)});
    return PolyhedralFn::canonicalize(std::move(gens));
}

PwlFn legendre(const PolyhedralFn& u) {
    std::vector<Line> lines;
    lines.reserve(u.generators().size());
    for (const auto& g : u.generators()) lines.push_back({g.x, -g.z});
    return PwlFn::from_lines(std::move(lines));
}

PolyhedralFn biconjugate(const PolyhedralFn& u) { return legendre(u).conjugate(); }

PolyhedralFn inf_conv(const PolyhedralFn& u, const PolyhedralFn& v) {
    return (legendre(u) + legendre(v)).conjugate();
}

PolyhedralFn epi_scale(double t, const PolyhedralFn& u) {
    if (t < 0) throw std::invalid_argument("epi_scale: negative t");
    if (t == 0) return PolyhedralFn::canonicalize({{0.0, 0.0}});
    std::vector<PolyhedralFn::Generator> g;
    for (const auto& p : u.generators()) g.push_back({t * p.x, t * p.z});
    return PolyhedralFn::canonicalize(std::move(g));
}

}  // namespace fwl
