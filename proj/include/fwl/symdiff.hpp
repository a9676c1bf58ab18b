#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "fwl/body.hpp"

namespace fwl {

struct SymDiffEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
};

using MembershipOracle = std::function<bool(Vec2)>;

// Monte-Carlo estimate of the Gaussian measure of the symmetric difference
// of two planar convex sets. Deterministic for a fixed seed.
SymDiffEstimate sym_diff_distance(const MembershipOracle& a, const MembershipOracle& b,
                                  std::uint64_t samples = 1'000'000, std::uint64_t seed = 20240901);

SymDiffEstimate sym_diff_distance(const EpigraphBody& a, const EpigraphBody& b,
                                  std::uint64_t samples = 1'000'000, std::uint64_t seed = 20240901);

MembershipOracle epigraph_oracle(const PolyhedralFn& u);

// Deterministic standard normal stream (explicit Box-Muller over mt19937_64,
// so results do not depend on the standard library's distribution).
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}
    double next();

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
    double uniform();
};

}  // namespace fwl
