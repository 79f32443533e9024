#include "varlp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace varlp {

namespace {

double cell_term(double v, double p, double lambda) {
    double a = std::abs(v);
    if (a == 0.0) return 0.0;
    return std::pow(a / lambda, p);
}

// Modular of f/lambda over an index box with an optional density v.
double modular_box(const SampledFunction& f, const Exponent& p,
                   const SampledFunction* v, const std::array<int, 2>& lo,
                   const std::array<int, 2>& hi, double lambda) {
    const Grid& g = f.grid;
    double sum = 0.0;
    if (g.dim == 1) {
        for (int i = lo[0]; i < hi[0]; ++i) {
            double t = cell_term(f.values[i], p.at(i), lambda);
            sum += v ? t * v->values[i] : t;
        }
    } else {
        for (int ix = lo[0]; ix < hi[0]; ++ix)
            for (int iy = lo[1]; iy < hi[1]; ++iy) {
                std::size_t i = g.index(ix, iy);
                double t = cell_term(f.values[i], p.at(i), lambda);
                sum += v ? t * v->values[i] : t;
            }
    }
    return sum * g.cell_measure();
}

std::array<int, 2> full_lo() { return {0, 0}; }
std::array<int, 2> full_hi(const Grid& g) {
    return {g.cells_per_axis, g.dim == 2 ? g.cells_per_axis : 1};
}

double max_abs_box(const SampledFunction& f, const std::array<int, 2>& lo,
                   const std::array<int, 2>& hi) {
    const Grid& g = f.grid;
    double m = 0.0;
    if (g.dim == 1) {
        for (int i = lo[0]; i < hi[0]; ++i) m = std::max(m, std::abs(f.values[i]));
    } else {
        for (int ix = lo[0]; ix < hi[0]; ++ix)
            for (int iy = lo[1]; iy < hi[1]; ++iy)
                m = std::max(m, std::abs(f.values[g.index(ix, iy)]));
    }
    return m;
}

double seed_lambda(double sup, double measure, double p_minus) {
    if (sup == 0.0) return 0.0;
    double lam = sup * std::pow(measure, 1.0 / p_minus);
    if (!std::isfinite(lam) || lam <= 0.0) lam = sup;
    return lam;
}

NormResult norm_over_box(const SampledFunction& f, const Exponent& p,
                         const SampledFunction* v, const std::array<int, 2>& lo,
                         const std::array<int, 2>& hi, const NormOptions& opts) {
    require_same_grid(f.grid, p.grid(), "luxemburg_norm");
    if (v) require_same_grid(f.grid, v->grid, "measure_norm");
    double sup = max_abs_box(f, lo, hi);
    if (sup == 0.0) return NormResult{};
    double n1 = hi[0] - lo[0];
    double n2 = f.grid.dim == 2 ? hi[1] - lo[1] : 1.0;
    double measure = n1 * n2 * f.grid.cell_measure();
    double lam0 = seed_lambda(sup, measure, p.p_minus());
    auto rho = [&](double lam) { return modular_box(f, p, v, lo, hi, lam); };
    return luxemburg_core(rho, lam0, opts);
}

}  // namespace

double modular(const SampledFunction& f, const Exponent& p) {
    return modular(f, p, 1.0);
}

double modular(const SampledFunction& f, const Exponent& p, double lambda) {
    require_same_grid(f.grid, p.grid(), "modular");
    if (!(lambda > 0.0)) throw std::invalid_argument("modular: lambda must be positive");
    return modular_box(f, p, nullptr, full_lo(), full_hi(f.grid), lambda);
}

NormResult luxemburg_core(const std::function<double(double)>& rho_of,
                          double lambda0, const NormOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("luxemburg_core: tol must be positive");
    NormResult r;
    double lo = std::clamp(lambda0, opts.bracket_min, opts.bracket_max);
    double hi = lo;
    int iter = 0;

    // rho overflowing to +inf counts as > 1: the lambda is too small.
    double rho_hi = rho_of(hi);
    while (!(rho_hi <= 1.0) && iter < opts.max_iter && hi <= opts.bracket_max) {
        hi *= 2.0;
        rho_hi = rho_of(hi);
        ++iter;
    }
    while (rho_of(lo) <= 1.0 && iter < opts.max_iter && lo >= opts.bracket_min) {
        lo *= 0.5;
        ++iter;
    }

    // Bisect, keeping the invariant rho(hi) <= 1 < rho(lo), until the modular
    // residual at the certified end hi is within tol.
    while (iter < opts.max_iter && 1.0 - rho_hi > opts.tol) {
        double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;  // bracket at floating resolution
        double rv = rho_of(mid);
        ++iter;
        if (rv <= 1.0) {
            hi = mid;
            rho_hi = rv;
        } else {
            lo = mid;
        }
    }
    r.value = hi;
    r.iterations = iter;
    r.bracket_lo = lo;
    r.bracket_hi = hi;
    r.residual = std::isfinite(rho_hi) ? std::abs(rho_hi - 1.0)
                                       : std::numeric_limits<double>::infinity();
    r.converged = r.residual <= opts.tol || (hi - lo) / hi <= 4e-16;
    return r;
}

NormResult luxemburg_norm(const SampledFunction& f, const Exponent& p,
                          const NormOptions& opts) {
    return norm_over_box(f, p, nullptr, full_lo(), full_hi(f.grid), opts);
}

NormResult luxemburg_norm_on(const SampledFunction& f, const Exponent& p,
                             const DyadicCube& q, const NormOptions& opts) {
    return norm_over_box(f, p, nullptr, q.cell_lo, q.cell_hi, opts);
}

double weighted_norm(const SampledFunction& f, const SampledFunction& w,
                     const Exponent& p, const NormOptions& opts) {
    return luxemburg_norm(multiply(f, w), p, opts).value;
}

NormResult measure_norm(const SampledFunction& f, const Exponent& p,
                        const SampledFunction& v, const NormOptions& opts) {
    return norm_over_box(f, p, &v, full_lo(), full_hi(f.grid), opts);
}

NormResult measure_norm_on(const SampledFunction& f, const Exponent& p,
                           const SampledFunction& v, const DyadicCube& q,
                           const NormOptions& opts) {
    return norm_over_box(f, p, &v, q.cell_lo, q.cell_hi, opts);
}

double rescale_check(const SampledFunction& f, const Exponent& p, double s,
                     const NormOptions& opts) {
    if (!(s > 0.0)) throw std::invalid_argument("rescale_check: s must be positive");
    double lhs = luxemburg_norm(pow_pointwise(abs(f), s), p, opts).value;
    double rhs = std::pow(luxemburg_norm(f, scale_exponent(p, s), opts).value, s);
    double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / denom;
}

double holder_defect(const SampledFunction& f, const SampledFunction& g,
                     const Exponent& p, const NormOptions& opts) {
    require_same_grid(f.grid, g.grid, "holder_defect");
    double pairing = integrate(abs(multiply(f, g)));
    if (pairing == 0.0) return 0.0;
    double nf = luxemburg_norm(f, p, opts).value;
    double ng = luxemburg_norm(g, conjugate(p), opts).value;
    return pairing / (nf * ng);
}

}  // namespace varlp
