#pragma once

#include <string>

#include "varlp/exponent.hpp"
#include "varlp/grid.hpp"
#include "varlp/norms.hpp"

namespace varlp {

// A weight: 0 < w(x) < inf on every cell. Power-weight singularities at the
// origin are regularized automatically because cells are sampled at centers,
// which never hit 0.
struct Weight {
    SampledFunction samples;

    Weight() = default;
    explicit Weight(SampledFunction s);

    const Grid& grid() const { return samples.grid; }
    double at(std::size_t i) const { return samples.values[i]; }
};

Weight constant_weight(const Grid& g, double c);
Weight power_weight(const Grid& g, double a);          // |x|^a
Weight shifted_power_weight(const Grid& g, double a);  // (1+|x|)^a
Weight product_weight(const Weight& a, const Weight& b);
// (1 + eps*cos(pi x / L)) * base, |eps| < 1.
Weight perturbed_weight(const Weight& base, double eps);

Weight pointwise_pow(const Weight& w, double s);                    // w^s
Weight pointwise_pow(const Weight& w, const Exponent& p, double s); // w^{s*p(x)}

// The triple (w1, w2, w = w1 w2) with the derived measures u = w^{p(.)} and
// sigma_l = w_l^{-p_l'(.)}; p = combine(p1, p2).
struct VectorWeight {
    Weight w1, w2, w;
    Weight u, sigma1, sigma2;
    Exponent p1, p2, p;

    VectorWeight(Weight w1_, Weight w2_, const Exponent& p1_, const Exponent& p2_);
};

// sup over the family of |Q|^{-1} ||w chi_Q||_{p(.)} ||w^{-1} chi_Q||_{p'(.)}.
// The supremum over all cubes is realized as a maximum over the enumerated
// family, so the result is a certified lower bound of the true constant.
// p_dual overrides the conjugate exponent when the caller has one.
double ap_constant(const Weight& w, const Exponent& p, const CubeFamily& family,
                   const NormOptions& opts = {}, const Exponent* p_dual = nullptr);

// sup |Q|^{-2} ||w chi_Q||_{p(.)} ||w1^{-1} chi_Q||_{p1'(.)} ||w2^{-1} chi_Q||_{p2'(.)}.
double vec_ap_constant(const VectorWeight& vw, const CubeFamily& family,
                       const NormOptions& opts = {});

// The three scalar constants of the characterization: c_j for w_j^{-1/2} in
// the 2 p_j'(.) class and c3 for w^{1/2} in the 2 p(.) class.
struct ScalarCharacterization {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0;
    double max() const;
    double product() const { return c1 * c2 * c3; }
};
ScalarCharacterization scalar_characterization(const VectorWeight& vw,
                                               const CubeFamily& family,
                                               const NormOptions& opts = {});

// Empirical A-infinity density: min over cubes Q and a deterministic family
// of subsets E with |E| >= alpha |Q| of w(E)/w(Q).
double ainfty_density(const Weight& w, const CubeFamily& family, double alpha);

}  // namespace varlp
