#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "varlp/exponent.hpp"
#include "varlp/grid.hpp"
#include "varlp/norms.hpp"
#include "varlp/weights.hpp"

namespace varlp {

struct OperatorOutput {
    SampledFunction result;
    // Diagnostics for the maximal operators: per cell, the level and family
    // tag of a cube attaining the supremum. Empty when not tracked.
    std::vector<std::int16_t> argmax_level;
    std::vector<std::uint8_t> argmax_family;
};

// Hardy-Littlewood maximal function over the union of the given families:
// per cell, max over all cubes containing it of the average of |f|.
OperatorOutput maximal(const SampledFunction& f,
                       std::span<const CubeFamily> families);

// dim 1 only: supremum over every grid-aligned interval, not just dyadic ones.
OperatorOutput maximal_brute_intervals(const SampledFunction& f);

// Weighted dyadic maximal M_sigma: max over t=0 cubes of <|f|>_{sigma,Q}.
OperatorOutput weighted_dyadic_maximal(const SampledFunction& f, const Weight& sigma,
                                       const CubeFamily& t0_family);

// Bilinear maximal: max over cubes of the product of the averages of |f1|, |f2|.
OperatorOutput bilinear_maximal(const SampledFunction& f1, const SampledFunction& f2,
                                std::span<const CubeFamily> families);

OperatorOutput bilinear_maximal_brute(const SampledFunction& f1,
                                      const SampledFunction& f2);

struct OneThirdResult {
    double constant = 0.0;       // max over cells of full / sum-of-translates
    SampledFunction full;        // all-cube (or union-family) bilinear maximal
    SampledFunction translate_sum;
};

// Measures the domination of the full bilinear maximal operator by the sum
// of the 2^dim translated dyadic ones. dim 1 uses the exhaustive interval
// sweep for the numerator; dim 2 the union of the translated families.
OneThirdResult one_third_domination(const SampledFunction& f1,
                                    const SampledFunction& f2);

// A_Q(f1,f2) = <f1>_Q <f2>_Q chi_Q (signed averages).
SampledFunction averaging_AQ(const DyadicCube& q, const SampledFunction& f1,
                             const SampledFunction& f2);

// T_Q over a disjoint family; throws if cubes overlap.
SampledFunction averaging_TQ(std::span<const DyadicCube> cubes,
                             const SampledFunction& f1, const SampledFunction& f2);

// <h>_{p(.),Q} = ||h chi_Q||_{p(.)} / ||chi_Q||_{p(.)}.
double p_average(const SampledFunction& h, const Exponent& p, const DyadicCube& q,
                 const NormOptions& opts = {});

// T_{p(.),Q} h = sum_Q <h>_{p(.),Q} chi_Q over a disjoint family.
SampledFunction p_averaging_TQ(const SampledFunction& h, const Exponent& p,
                               std::span<const DyadicCube> cubes,
                               const NormOptions& opts = {});

// Bilinear variant: sum_Q ||f1 chi_Q||_{p1} ||f2 chi_Q||_{p2} / ||chi_Q||_p chi_Q.
SampledFunction bilinear_p_averaging_TQ(const SampledFunction& f1,
                                        const SampledFunction& f2, const Exponent& p1,
                                        const Exponent& p2, const Exponent& p,
                                        std::span<const DyadicCube> cubes,
                                        const NormOptions& opts = {});

// Sharp maximal function M#_delta f = M#(|f|^delta)^{1/delta}; delta = 1
// gives the plain Fefferman-Stein operator.
OperatorOutput sharp_maximal(const SampledFunction& f, double delta,
                             std::span<const CubeFamily> families);

}  // namespace varlp
