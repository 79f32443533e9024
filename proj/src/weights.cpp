#include "varlp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace varlp {

Weight::Weight(SampledFunction s) : samples(std::move(s)) {
    for (double v : samples.values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Weight: values must lie in (0, inf)");
}

Weight constant_weight(const Grid& g, double c) {
    return Weight(SampledFunction(g, c));
}

Weight power_weight(const Grid& g, double a) {
    return Weight(SampledFunction::from_function(g, [&](double x, double y = 0.0) {
        double r = g.dim == 1 ? std::abs(x) : std::hypot(x, y);
        return std::pow(r, a);
    }));
}

Weight shifted_power_weight(const Grid& g, double a) {
    return Weight(SampledFunction::from_function(g, [&](double x, double y = 0.0) {
        double r = g.dim == 1 ? std::abs(x) : std::hypot(x, y);
        return std::pow(1.0 + r, a);
    }));
}

Weight product_weight(const Weight& a, const Weight& b) {
    return Weight(multiply(a.samples, b.samples));
}

Weight perturbed_weight(const Weight& base, double eps) {
    if (!(std::abs(eps) < 1.0))
        throw std::invalid_argument("perturbed_weight: |eps| must be < 1");
    const Grid& g = base.grid();
    SampledFunction out = base.samples;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        auto c = g.center(i);
        double mod = 1.0 + eps * std::cos(std::numbers::pi * c[0] / g.half_width);
        if (g.dim == 2) mod = 1.0 + eps * std::cos(std::numbers::pi * c[0] / g.half_width) *
                                   std::cos(std::numbers::pi * c[1] / g.half_width);
        out.values[i] *= mod;
    }
    return Weight(std::move(out));
}

Weight pointwise_pow(const Weight& w, double s) {
    return Weight(pow_pointwise(w.samples, s));
}

Weight pointwise_pow(const Weight& w, const Exponent& p, double s) {
    require_same_grid(w.grid(), p.grid(), "pointwise_pow");
    SampledFunction out = w.samples;
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = std::pow(out.values[i], s * p.at(i));
    return Weight(std::move(out));
}

VectorWeight::VectorWeight(Weight w1_, Weight w2_, const Exponent& p1_, const Exponent& p2_)
    : w1(std::move(w1_)),
      w2(std::move(w2_)),
      w(product_weight(w1, w2)),
      u(pointwise_pow(w, combine(p1_, p2_), 1.0)),
      sigma1(pointwise_pow(w1, conjugate(p1_), -1.0)),
      sigma2(pointwise_pow(w2, conjugate(p2_), -1.0)),
      p1(p1_),
      p2(p2_),
      p(combine(p1_, p2_)) {
    require_same_grid(w1.grid(), w2.grid(), "VectorWeight");
    require_same_grid(w1.grid(), p1.grid(), "VectorWeight");
}

namespace {

NormResult cube_norm_or_throw(const SampledFunction& f, const Exponent& p,
                              const DyadicCube& q, const NormOptions& opts,
                              const Grid& g, const char* what) {
    NormResult r = luxemburg_norm_on(f, p, q, opts);
    if (!r.converged)
        throw NormConvergenceError(std::string(what) + ": norm did not converge on " +
                                       q.describe(g),
                                   r);
    return r;
}

}  // namespace

double ap_constant(const Weight& w, const Exponent& p, const CubeFamily& family,
                   const NormOptions& opts, const Exponent* p_dual) {
    require_same_grid(w.grid(), p.grid(), "ap_constant");
    require_same_grid(w.grid(), family.grid, "ap_constant");
    Exponent pd = p_dual ? *p_dual : conjugate(p);
    SampledFunction winv = pow_pointwise(w.samples, -1.0);
    double best = 0.0;
    for (const DyadicCube& q : family.cubes) {
        double measure = q.measure(family.grid);
        double a = cube_norm_or_throw(w.samples, p, q, opts, family.grid, "ap_constant").value;
        double b = cube_norm_or_throw(winv, pd, q, opts, family.grid, "ap_constant").value;
        best = std::max(best, a * b / measure);
    }
    return best;
}

double vec_ap_constant(const VectorWeight& vw, const CubeFamily& family,
                       const NormOptions& opts) {
    require_same_grid(vw.w.grid(), family.grid, "vec_ap_constant");
    Exponent p1d = conjugate(vw.p1);
    Exponent p2d = conjugate(vw.p2);
    SampledFunction w1inv = pow_pointwise(vw.w1.samples, -1.0);
    SampledFunction w2inv = pow_pointwise(vw.w2.samples, -1.0);
    double best = 0.0;
    for (const DyadicCube& q : family.cubes) {
        double measure = q.measure(family.grid);
        double a =
            cube_norm_or_throw(vw.w.samples, vw.p, q, opts, family.grid, "vec_ap_constant")
                .value;
        double b =
            cube_norm_or_throw(w1inv, p1d, q, opts, family.grid, "vec_ap_constant").value;
        double c =
            cube_norm_or_throw(w2inv, p2d, q, opts, family.grid, "vec_ap_constant").value;
        best = std::max(best, a * b * c / (measure * measure));
    }
    return best;
}

double ScalarCharacterization::max() const { return std::max({c1, c2, c3}); }

ScalarCharacterization scalar_characterization(const VectorWeight& vw,
                                               const CubeFamily& family,
                                               const NormOptions& opts) {
    ScalarCharacterization out;
    Exponent e1 = scale_exponent(conjugate(vw.p1), 2.0);
    Exponent e2 = scale_exponent(conjugate(vw.p2), 2.0);
    Exponent e3 = scale_exponent(vw.p, 2.0);
    out.c1 = ap_constant(pointwise_pow(vw.w1, -0.5), e1, family, opts);
    out.c2 = ap_constant(pointwise_pow(vw.w2, -0.5), e2, family, opts);
    out.c3 = ap_constant(pointwise_pow(vw.w, 0.5), e3, family, opts);
    return out;
}

double ainfty_density(const Weight& w, const CubeFamily& family, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ainfty_density: alpha must be in (0,1)");
    const Grid& g = family.grid;
    require_same_grid(w.grid(), g, "ainfty_density");
    PrefixTable table(w.samples);
    double beta = 1.0;

    auto box_w = [&](std::array<int, 2> lo, std::array<int, 2> hi) {
        return table.box_sum(lo, hi);
    };

    for (const DyadicCube& q : family.cubes) {
        double wq = box_w(q.cell_lo, q.cell_hi);
        if (wq <= 0.0) continue;
        int nx = q.cell_hi[0] - q.cell_lo[0];
        int ny = g.dim == 2 ? q.cell_hi[1] - q.cell_lo[1] : 1;
        std::int64_t total = static_cast<std::int64_t>(nx) * ny;

        // Contiguous windows along the first axis covering >= alpha of the cube.
        int want = static_cast<int>(std::ceil(alpha * nx));
        want = std::max(want, 1);
        for (int s = q.cell_lo[0]; s + want <= q.cell_hi[0]; ++s) {
            double we = box_w({s, q.cell_lo[1]}, {s + want, q.cell_hi[1]});
            beta = std::min(beta, we / wq);
        }
        // Complements of dyadic children, when large enough.
        if (nx >= 2 && total >= 2) {
            double child_fraction = std::ldexp(1.0, -g.dim);
            if (1.0 - child_fraction >= alpha) {
                int hx = nx / 2;
                for (int cx = 0; cx < 2; ++cx) {
                    std::array<int, 2> clo = {q.cell_lo[0] + cx * hx, q.cell_lo[1]};
                    std::array<int, 2> chi = {clo[0] + hx, q.cell_hi[1]};
                    if (g.dim == 1) {
                        double we = wq - box_w(clo, chi);
                        beta = std::min(beta, we / wq);
                    } else {
                        int hy = (q.cell_hi[1] - q.cell_lo[1]) / 2;
                        if (hy == 0) continue;
                        for (int cy = 0; cy < 2; ++cy) {
                            std::array<int, 2> qlo = {clo[0], q.cell_lo[1] + cy * hy};
                            std::array<int, 2> qhi = {chi[0], qlo[1] + hy};
                            double we = wq - box_w(qlo, qhi);
                            beta = std::min(beta, we / wq);
                        }
                    }
                }
            }
        }
    }
    return beta;
}

}  // namespace varlp
