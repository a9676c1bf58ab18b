#include "fwl/symdiff.hpp"

#include <cmath>

namespace fwl {

double GaussianStream::uniform() {
    // (0,1), never exactly 0
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * M_PI * u2;
    spare_ = r * std::sin(th);
    has_spare_ = true;
    return r * std::cos(th);
}

SymDiffEstimate sym_diff_distance(const MembershipOracle& a, const MembershipOracle& b,
                                  std::uint64_t samples, std::uint64_t seed) {
    GaussianStream g(seed);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Vec2 p{g.next(), g.next()};
        if (a(p) != b(p)) ++hits;
    }
    double p = static_cast<double>(hits) / static_cast<double>(samples);
    double se = std::sqrt(std::max(p * (1.0 - p), 1.0 / static_cast<double>(samples)) /
                          static_cast<double>(samples));
    return {p, se, seed, samples};
}

SymDiffEstimate sym_diff_distance(const EpigraphBody& a, const EpigraphBody& b,
                                  std::uint64_t samples, std::uint64_t seed) {
    return sym_diff_distance([&](Vec2 p) { return a.contains(p); },
                             [&](Vec2 p) { return b.contains(p); }, samples, seed);
}

MembershipOracle epigraph_oracle(const PolyhedralFn& u) {
    return [u](Vec2 p) { return u(p.x) <= p.z; };
}

}  // namespace fwl
