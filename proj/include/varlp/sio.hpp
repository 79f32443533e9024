#pragma once

#include <array>
#include <functional>
#include <string>

#include "varlp/grid.hpp"
#include "varlp/operators.hpp"

namespace varlp {

using Point = std::array<double, 2>;  // second coordinate unused in dim 1

// Bilinear Calderon-Zygmund kernel candidate: an evaluator defined off the
// diagonal plus the declared size/smoothness constants it claims to satisfy.
struct BilinearKernel {
    std::string name;
    int dim = 1;
    std::function<double(const Point&, const Point&, const Point&)> eval;
    double constant_A = 1.0;
    double holder_delta = 1.0;
    double support_radius = 0.0;  // <= 0 means no truncation
};

// ((x-y)+(x-z)) / (|x-y|+|x-z|+|y-z|)^3, dim 1. Size bound holds with A = 1;
// the Holder bound needs A >= ~13 because of near-collapsed triples with
// y ~ z, so the shipped constant is 16.
BilinearKernel difference_quotient_kernel(double A = 16.0, double delta = 1.0);

// phi(x-y) phi(x-z) with phi a cosine bump of the given radius. Compactly
// supported and smooth; factorizes through two convolutions, which is the
// oracle the tests use.
BilinearKernel separable_bump_kernel(int dim, double radius);

// 1/|x-y|^3 in dim 1: violates the size bound as |x-y| -> 0 with |x-z| ~ 1.
BilinearKernel size_violating_kernel();

struct KernelCheckReport {
    double worst_size_ratio = 0.0;    // max |K| (sum)^{2n} / A
    double worst_smooth_ratio = 0.0;  // max |dK| (sum)^{2n+d} / (A |dx|^d)
    long samples = 0;
    bool pass = false;
};

struct KernelCheckOptions {
    long sample_count = 20000;
    double tolerance = 1e-9;  // pass iff ratios <= 1 + tolerance
};

// Deterministic low-discrepancy sampling of off-diagonal triples across
// scales h .. 2L, plus perturbation triples obeying the 1/2-max constraint.
KernelCheckReport check_kernel_bounds(const BilinearKernel& k, const Grid& g,
                                      const KernelCheckOptions& opts = {});

// Worst size ratio over triples with |x-y| ~ sep and |x-z| ~ 1; monitors
// how the size bound degenerates as sep -> 0.
double kernel_size_ratio_at(const BilinearKernel& k, const Grid& g, double sep);

struct SioOptions {
    double exclusion_radius = 0.0;  // 0: one cell diameter
    int threads = 1;
};

// Truncated principal-value surrogate: double Riemann sum over cell centers
// excluding y- and z-cells within the exclusion radius of x. Bilinear in
// each argument exactly (fixed summation order, long double accumulation).
SampledFunction apply_bilinear_sio(const BilinearKernel& k, const SampledFunction& f1,
                                   const SampledFunction& f2, const SioOptions& opts = {});

struct SharpDominationResult {
    double constant = 0.0;  // max of M#_delta(T(f1,f2)) / M(f1,f2) above the floor
    SampledFunction sharp;
    SampledFunction bilinear_max;
};

// Measures the pointwise domination of M#_delta(T(f1,f2)) by the bilinear
// maximal function. Cells where the maximal function is below floor_eps are
// skipped.
SharpDominationResult sharp_domination_test(const BilinearKernel& k,
                                            const SampledFunction& f1,
                                            const SampledFunction& f2, double delta,
                                            std::span<const CubeFamily> families,
                                            double floor_eps = 1e-12,
                                            const SioOptions& opts = {});

}  // namespace varlp
