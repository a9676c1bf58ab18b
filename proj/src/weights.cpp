#include "fwl/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwl {

WeightSpec WeightSpec::exp_weight(PsiKind psi, std::optional<double> q) {
    WeightSpec w;
    w.phi_kind_ = PhiKind::Exp;
    w.psi_kind_ = psi;
    w.q_ = q;
    w.validate();
    return w;
}

WeightSpec WeightSpec::tabulated(std::vector<double> z, std::vector<double> phi,
                                 PsiKind psi, std::optional<double> q) {
    if (z.size() != phi.size() || z.size() < 2)
        throw std::invalid_argument("tabulated phi: need >= 2 samples");
    if (!std::is_sorted(z.begin(), z.end()))
        throw std::invalid_argument("tabulated phi: abscissas not sorted");
    WeightSpec w;
    w.phi_kind_ = PhiKind::Table;
    w.psi_kind_ = psi;
    w.q_ = q;
    w.tz_ = std::move(z);
    w.tphi_ = std::move(phi);
    // Exponential tail fitted over the last decade of the table span.
    double span = w.tz_.back() - w.tz_.front();
    double z0 = w.tz_.back() - 0.1 * span;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t i = 0; i < w.tz_.size(); ++i) {
        if (w.tz_[i] < z0 || w.tphi_[i] <= 0) continue;
        double lx = w.tz_[i], ly = std::log(w.tphi_[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++cnt;
    }
    double lambda = 1.0;
    if (cnt >= 2) {
        double denom = cnt * sxx - sx * sx;
        if (denom > 0) lambda = -(cnt * sxy - sx * sy) / denom;
    }
    w.tail_rate_ = std::max(lambda, 1e-6);
    // Cumulative trapezoid from the right, anchored at the fitted tail mass.
    w.tcum_.assign(w.tz_.size(), 0.0);
    w.tcum_.back() = w.tphi_.back() / w.tail_rate_;
    for (size_t i = w.tz_.size() - 1; i-- > 0;) {
        w.tcum_[i] = w.tcum_[i + 1] +
                     0.5 * (w.tphi_[i] + w.tphi_[i + 1]) * (w.tz_[i + 1] - w.tz_[i]);
    }
    w.validate();
    return w;
}

double WeightSpec::phi(double z) const {
    if (phi_kind_ == PhiKind::Exp) return std::exp(-z);
    if (z <= tz_.front()) return tphi_.front();
    if (z >= tz_.back()) return tphi_.back() * std::exp(-tail_rate_ * (z - tz_.back()));
    auto it = std::lower_bound(tz_.begin(), tz_.end(), z);
    size_t i = static_cast<size_t>(it - tz_.begin());
    double t = (z - tz_[i - 1]) / (tz_[i] - tz_[i - 1]);
    return tphi_[i - 1] + t * (tphi_[i] - tphi_[i - 1]);
}

double WeightSpec::survival(double t) const {
    if (t == kInf) return 0.0;
    if (phi_kind_ == PhiKind::Exp) return std::exp(-t);
    if (t >= tz_.back())
        return tphi_.back() * std::exp(-tail_rate_ * (t - tz_.back())) / tail_rate_;
    if (t <= tz_.front()) return tcum_.front() + tphi_.front() * (tz_.front() - t);
    auto it = std::lower_bound(tz_.begin(), tz_.end(), t);
    size_t i = static_cast<size_t>(it - tz_.begin());
    double pt = phi(t);
    return tcum_[i] + 0.5 * (pt + tphi_[i]) * (tz_[i] - t);
}

double WeightSpec::psi1(double x) const {
    return psi_kind_ == PsiKind::One ? 1.0 : std::exp(-0.5 * x * x);
}

double WeightSpec::psi2(double x, double y) const {
    return psi_kind_ == PsiKind::One ? 1.0 : std::exp(-0.5 * (x * x + y * y));
}

void WeightSpec::validate() const {
    if (q_ && *q_ <= 0) throw std::invalid_argument("WeightSpec: q must be positive");
    if (phi_kind_ == PhiKind::Table) {
        for (double p : tphi_)
            if (p < 0) throw std::invalid_argument("WeightSpec: phi < 0");
    }
    // Sampled decay and monotonicity of the survival function.
    double prev = survival(-5.0);
    for (int i = -4; i <= 40; ++i) {
        double cur = survival(static_cast<double>(i));
        if (cur > prev + 1e-12 * (1 + std::abs(prev)))
            throw std::invalid_argument("WeightSpec: survival not nonincreasing");
        prev = cur;
    }
    if (survival(40.0) > 1e-3 * (1 + survival(0.0)))
        throw std::invalid_argument("WeightSpec: phi does not decay");
}

}  // namespace fwl
