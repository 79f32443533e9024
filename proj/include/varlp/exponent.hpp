#pragma once

#include <cstdint>
#include <optional>

#include "varlp/grid.hpp"

namespace varlp {

// Variable exponent p(.): positive samples with cached extremes, a declared
// limit value p_infty used by the LH-infinity checks, and the log-Holder
// constants carried over from the constructor family (0 when unknown).
//
// p_minus and p_plus are always recomputed from the samples; the truncated
// domain cannot observe a limit at infinity, so p_infty is metadata.
class Exponent {
public:
    Exponent(SampledFunction samples, double p_infty,
             double lh0_constant = 0.0, double lhinf_constant = 0.0);

    static Exponent constant(const Grid& g, double p0);
    // p0 + amp * cos(pi x / L) (* cos(pi y / L) in dim 2); Lipschitz, hence LH.
    static Exponent smooth_bump(const Grid& g, double p0, double amp);
    // p_infty + amp / log(e + |x|); the canonical LH-infinity profile.
    static Exponent radial_lh(const Grid& g, double p_infty, double amp);
    // p0 + amp / log(e + 1/|x|); borderline LH0 profile, C0 = amp / p0^2.
    static Exponent lh0_profile(const Grid& g, double p0, double amp);
    // Jump across x = 0 on the first axis; deliberately not log-Holder.
    static Exponent piecewise_jump(const Grid& g, double left, double right);

    const SampledFunction& samples() const { return samples_; }
    const Grid& grid() const { return samples_.grid; }
    double at(std::size_t i) const { return samples_.values[i]; }
    std::size_t size() const { return samples_.size(); }

    double p_minus() const { return p_minus_; }
    double p_plus() const { return p_plus_; }
    double p_infty() const { return p_infty_; }
    double lh0_constant() const { return lh0_constant_; }
    double lhinf_constant() const { return lhinf_constant_; }
    bool is_constant() const { return p_minus_ == p_plus_; }

    double p_minus_on(const DyadicCube& q) const;
    double p_plus_on(const DyadicCube& q) const;

private:
    SampledFunction samples_;
    double p_minus_;
    double p_plus_;
    double p_infty_;
    double lh0_constant_;
    double lhinf_constant_;
};

// Pointwise p'(x) = p(x)/(p(x)-1); requires p_minus > 1.
Exponent conjugate(const Exponent& p);

// Pointwise 1/p = 1/p1 + 1/p2 (same grid). Always gives p_minus >= 1/2.
Exponent combine(const Exponent& p1, const Exponent& p2);

// Pointwise s*p(x), s > 0; legitimate since p_plus < infinity.
Exponent scale_exponent(const Exponent& p, double s);

// Harmonic mean p_Q: 1/p_Q = average of 1/p over the cube.
double harmonic_mean(const Exponent& p, const DyadicCube& q);

struct LhDiagnostics {
    double c0_est = 0.0;    // sup |1/p(x)-1/p(y)| * (-log|x-y|), |x-y| < 1/2
    double cinf_est = 0.0;  // sup |1/p(x)-1/p_infty| * log(e+|x|)
};

struct LhDiagnosticsOptions {
    std::size_t max_pairs = 2'000'000;  // cap on near pairs
    std::size_t random_pairs = 20'000;  // extra long-range pairs
    std::uint64_t seed = 1;
};

LhDiagnostics lh_diagnostics(const Exponent& p, const LhDiagnosticsOptions& opts = {});

// Average of p over the cells on the domain boundary; the default declared
// p_infty for families without a natural limit value.
double boundary_average(const SampledFunction& samples);

}  // namespace varlp
