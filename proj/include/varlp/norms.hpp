#pragma once

#include <functional>
#include <optional>

#include "varlp/exponent.hpp"
#include "varlp/grid.hpp"

namespace varlp {

struct NormOptions {
    double tol = 1e-10;  // target for the modular residual |rho(f/lambda)-1|
    int max_iter = 200;
    double bracket_min = 1e-12;
    double bracket_max = 1e12;
};

struct NormResult {
    double value = 0.0;
    int iterations = 0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double residual = 0.0;  // |rho(f/value) - 1|, 0 when value == 0
    bool converged = true;
};

// rho(f) = h^dim sum |f|^{p(x)}, fixed index order. Returns +inf on overflow,
// which callers treat as "modular exceeds 1".
double modular(const SampledFunction& f, const Exponent& p);
double modular(const SampledFunction& f, const Exponent& p, double lambda);

// Luxemburg norm inf{lambda > 0 : rho(f/lambda) <= 1} by bisection; the
// modular is strictly decreasing in lambda since p_plus < infinity.
NormResult luxemburg_norm(const SampledFunction& f, const Exponent& p,
                          const NormOptions& opts = {});

// Same, restricted to a cube: the norm of f * chi_Q.
NormResult luxemburg_norm_on(const SampledFunction& f, const Exponent& p,
                             const DyadicCube& q, const NormOptions& opts = {});

// ||f w||_{p(.)}: membership of f in L^{p(.)}(w).
double weighted_norm(const SampledFunction& f, const SampledFunction& w,
                     const Exponent& p, const NormOptions& opts = {});

// Norm with Lebesgue measure replaced by v dx.
NormResult measure_norm(const SampledFunction& f, const Exponent& p,
                        const SampledFunction& v, const NormOptions& opts = {});
NormResult measure_norm_on(const SampledFunction& f, const Exponent& p,
                           const SampledFunction& v, const DyadicCube& q,
                           const NormOptions& opts = {});

// Relative defect of the rescaling identity || |f|^s ||_{p(.)} = ||f||_{s p(.)}^s.
double rescale_check(const SampledFunction& f, const Exponent& p, double s,
                     const NormOptions& opts = {});

// Dual-pairing ratio: integral |fg| / (||f||_{p(.)} ||g||_{p'(.)}).
double holder_defect(const SampledFunction& f, const SampledFunction& g,
                     const Exponent& p, const NormOptions& opts = {});

// Bisection core shared by all norm variants. rho_of must be strictly
// decreasing in lambda; lambda0 is the initial bracket seed.
NormResult luxemburg_core(const std::function<double(double)>& rho_of,
                          double lambda0, const NormOptions& opts);

struct NormConvergenceError : std::runtime_error {
    NormResult result;
    NormConvergenceError(const std::string& what, NormResult r)
        : std::runtime_error(what), result(r) {}
};

}  // namespace varlp
