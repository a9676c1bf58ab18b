#pragma once

#include <optional>
#include <vector>

#include "fwl/ext.hpp"

namespace fwl {

// The measure d_mu(x,z) = phi(z) psi(x) |x|^(q-n) dz dx together with the
// survival function Phi(t) = int_t^inf phi.
class WeightSpec {
public:
    enum class PhiKind { Exp, Table };
    enum class PsiKind { One, Gauss };

    static WeightSpec exp_weight(PsiKind psi = PsiKind::One,
                                 std::optional<double> q = std::nullopt);
    // Tabulated phi on sorted abscissas; Phi uses a trapezoid tail on the
    // table plus an exponential tail fitted to the last decade.
    static WeightSpec tabulated(std::vector<double> z, std::vector<double> phi,
                                PsiKind psi = PsiKind::One,
                                std::optional<double> q = std::nullopt);

    double phi(double z) const;
    double survival(double t) const;  // Phi(t); Phi(+inf) = 0
    double psi1(double x) const;
    double psi2(double x, double y) const;

    PhiKind phi_kind() const { return phi_kind_; }
    PsiKind psi_kind() const { return psi_kind_; }
    const std::optional<double>& q() const { return q_; }
    // Effective radial exponent in ambient dimension n (q absent -> n).
    double radial_exponent(int n) const { return q_ ? *q_ : static_cast<double>(n); }

    // phi >= 0 with sampled decay, Phi nonincreasing, q > 0.
    void validate() const;

private:
    WeightSpec() = default;
    PhiKind phi_kind_ = PhiKind::Exp;
    PsiKind psi_kind_ = PsiKind::One;
    std::optional<double> q_;
    std::vector<double> tz_, tphi_, tcum_;  // cumulative from the right
    double tail_rate_ = 1.0;                // fitted lambda for the tail
};

}  // namespace fwl
