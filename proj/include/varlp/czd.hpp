#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "varlp/grid.hpp"

namespace varlp {

// The splitting of an input pair at height 1: h1 = f1 on {f1 > 1} and 0
// elsewhere, h2 = f1 - h1, and likewise h3, h4 from f2. rho maps the piece
// index to the weight index it pairs with.
struct SplitFunctions {
    SampledFunction h1, h2, h3, h4;
    static constexpr int rho(int l) { return (l == 1 || l == 2) ? 1 : 2; }
};

SplitFunctions split(const SampledFunction& f1, const SampledFunction& f2);

struct CZCube {
    DyadicCube cube;
    double avg1 = 0.0;   // <g1>_Q
    double avg2 = 0.0;   // <g2>_Q
    std::vector<std::uint32_t> e_cells;  // E = Q \ Omega_{k+1}
    bool interior = false;               // invariants asserted only on these
};

struct CZLevel {
    int k = 0;
    std::vector<CZCube> cubes;
    std::vector<std::uint32_t> omega_cells;  // Omega_k = { M^d(g1,g2) > a^k }
};

// Per-level maximal-cube decomposition of the level sets of the dyadic
// bilinear maximal function of (g1, g2), thresholds a^k.
struct CZDecomposition {
    double base_a = 0.0;
    int k_min = 0, k_max = 0;
    std::vector<CZLevel> levels;             // nonempty levels only, ascending k
    std::vector<std::string> warnings;       // boundary anomalies, if any

    const CZLevel* level(int k) const;
    std::string to_text(const Grid& g) const;
};

// Requires a > 2^{2 dim} and nonnegative inputs. Cubes are drawn from the
// t=0 family; cubes touching the domain edge are flagged non-interior.
CZDecomposition cz_decompose(const SampledFunction& g1, const SampledFunction& g2,
                             double a, const CubeFamily& t0_family);

}  // namespace varlp
