#include "varlp/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "varlp/rng.hpp"

namespace varlp {

Exponent::Exponent(SampledFunction samples, double p_infty,
                   double lh0_constant, double lhinf_constant)
    : samples_(std::move(samples)),
      p_infty_(p_infty),
      lh0_constant_(lh0_constant),
      lhinf_constant_(lhinf_constant) {
    if (samples_.values.empty())
        throw std::invalid_argument("Exponent: empty samples");
    p_minus_ = samples_.values[0];
    p_plus_ = samples_.values[0];
    for (double v : samples_.values) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Exponent: samples must be positive and finite");
        p_minus_ = std::min(p_minus_, v);
        p_plus_ = std::max(p_plus_, v);
    }
    if (!(p_infty_ > 0.0))
        throw std::invalid_argument("Exponent: p_infty must be positive");
}

double boundary_average(const SampledFunction& samples) {
    const Grid& g = samples.grid;
    double sum = 0.0;
    std::size_t n = 0;
    if (g.dim == 1) {
        sum = samples.values.front() + samples.values.back();
        n = 2;
    } else {
        int last = g.cells_per_axis - 1;
        for (int i = 0; i < g.cells_per_axis; ++i) {
            sum += samples.values[g.index(0, i)] + samples.values[g.index(last, i)];
            n += 2;
            if (i != 0 && i != last) {
                sum += samples.values[g.index(i, 0)] + samples.values[g.index(i, last)];
                n += 2;
            }
        }
    }
    return sum / static_cast<double>(n);
}

Exponent Exponent::constant(const Grid& g, double p0) {
    if (!(p0 > 0.0)) throw std::invalid_argument("Exponent::constant: p0 must be positive");
    return Exponent(SampledFunction(g, p0), p0, 0.0, 0.0);
}

Exponent Exponent::smooth_bump(const Grid& g, double p0, double amp) {
    if (!(p0 - std::abs(amp) > 0.0))
        throw std::invalid_argument("Exponent::smooth_bump: p0 - |amp| must be positive");
    double L = g.half_width;
    auto f = SampledFunction::from_function(g, [&](double x, double y = 0.0) {
        double v = p0 + amp * std::cos(std::numbers::pi * x / L);
        if (g.dim == 2) v = p0 + amp * std::cos(std::numbers::pi * x / L) *
                                std::cos(std::numbers::pi * y / L);
        return v;
    });
    // Lipschitz constant of 1/p is bounded by |grad p| / p_minus^2; for
    // |x-y| < 1/2 the quotient against 1/(-log|x-y|) is largest at 1/2.
    double lip = std::abs(amp) * std::numbers::pi / L * (g.dim == 2 ? 2.0 : 1.0);
    double pmin = p0 - std::abs(amp);
    double c0 = lip / (pmin * pmin) * 0.5 / std::log(2.0);
    double pinf = boundary_average(f);
    double cinf = 0.0;  // estimated, not constructed; diagnostics report it
    return Exponent(std::move(f), pinf, c0, cinf);
}

Exponent Exponent::radial_lh(const Grid& g, double p_infty, double amp) {
    if (!(p_infty > 0.0) || !(amp >= 0.0))
        throw std::invalid_argument("Exponent::radial_lh: bad parameters");
    auto f = SampledFunction::from_function(g, [&](double x, double y = 0.0) {
        double r = g.dim == 1 ? std::abs(x) : std::hypot(x, y);
        return p_infty + amp / std::log(std::numbers::e + r);
    });
    double cinf = amp / (p_infty * p_infty);  // |1/p - 1/pinf| <= amp/(p pinf log(e+|x|))
    double c0 = amp / (p_infty * p_infty);    // profile is 1/e-Lipschitz in r
    return Exponent(std::move(f), p_infty, c0, cinf);
}

Exponent Exponent::lh0_profile(const Grid& g, double p0, double amp) {
    if (!(p0 > 0.0) || !(amp >= 0.0))
        throw std::invalid_argument("Exponent::lh0_profile: bad parameters");
    auto f = SampledFunction::from_function(g, [&](double x, double y = 0.0) {
        double r = g.dim == 1 ? std::abs(x) : std::hypot(x, y);
        if (r == 0.0) return p0;
        return p0 + amp / std::log(std::numbers::e + 1.0 / r);
    });
    // |1/p(x)-1/p(y)| <= amp * phi(|x-y|) / p0^2 with phi(d) <= 1/(-log d).
    double c0 = amp / (p0 * p0);
    double pinf = boundary_average(f);
    return Exponent(std::move(f), pinf, c0, 0.0);
}

Exponent Exponent::piecewise_jump(const Grid& g, double left, double right) {
    if (!(left > 0.0) || !(right > 0.0))
        throw std::invalid_argument("Exponent::piecewise_jump: exponents must be positive");
    auto f = SampledFunction::from_function(
        g, [&](double x, double = 0.0) { return x < 0.0 ? left : right; });
    double pinf = boundary_average(f);
    return Exponent(std::move(f), pinf, 0.0, 0.0);
}

double Exponent::p_minus_on(const DyadicCube& q) const {
    const Grid& g = samples_.grid;
    double m = p_plus_;
    if (g.dim == 1) {
        for (int i = q.cell_lo[0]; i < q.cell_hi[0]; ++i)
            m = std::min(m, samples_.values[i]);
    } else {
        for (int ix = q.cell_lo[0]; ix < q.cell_hi[0]; ++ix)
            for (int iy = q.cell_lo[1]; iy < q.cell_hi[1]; ++iy)
                m = std::min(m, samples_.values[g.index(ix, iy)]);
    }
    return m;
}

double Exponent::p_plus_on(const DyadicCube& q) const {
    const Grid& g = samples_.grid;
    double m = p_minus_;
    if (g.dim == 1) {
        for (int i = q.cell_lo[0]; i < q.cell_hi[0]; ++i)
            m = std::max(m, samples_.values[i]);
    } else {
        for (int ix = q.cell_lo[0]; ix < q.cell_hi[0]; ++ix)
            for (int iy = q.cell_lo[1]; iy < q.cell_hi[1]; ++iy)
                m = std::max(m, samples_.values[g.index(ix, iy)]);
    }
    return m;
}

Exponent conjugate(const Exponent& p) {
    if (!(p.p_minus() > 1.0))
        throw std::invalid_argument("conjugate: requires p_minus > 1");
    SampledFunction out = p.samples();
    for (double& v : out.values) v = v / (v - 1.0);
    double pinf = p.p_infty() / (p.p_infty() - 1.0);
    // |1/p' - 1/q'| = |1/p - 1/q|: the LH constants carry over unchanged.
    return Exponent(std::move(out), pinf, p.lh0_constant(), p.lhinf_constant());
}

Exponent combine(const Exponent& p1, const Exponent& p2) {
    require_same_grid(p1.grid(), p2.grid(), "combine");
    SampledFunction out = p1.samples();
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = 1.0 / (1.0 / p1.at(i) + 1.0 / p2.at(i));
    double pinf = 1.0 / (1.0 / p1.p_infty() + 1.0 / p2.p_infty());
    return Exponent(std::move(out), pinf, p1.lh0_constant() + p2.lh0_constant(),
                    p1.lhinf_constant() + p2.lhinf_constant());
}

Exponent scale_exponent(const Exponent& p, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("scale_exponent: s must be positive");
    SampledFunction out = p.samples();
    for (double& v : out.values) v *= s;
    return Exponent(std::move(out), s * p.p_infty(), p.lh0_constant() / s,
                    p.lhinf_constant() / s);
}

double harmonic_mean(const Exponent& p, const DyadicCube& q) {
    const Grid& g = p.grid();
    double sum = 0.0;
    std::int64_t n = 0;
    if (g.dim == 1) {
        for (int i = q.cell_lo[0]; i < q.cell_hi[0]; ++i) sum += 1.0 / p.at(i);
        n = q.cell_hi[0] - q.cell_lo[0];
    } else {
        for (int ix = q.cell_lo[0]; ix < q.cell_hi[0]; ++ix)
            for (int iy = q.cell_lo[1]; iy < q.cell_hi[1]; ++iy)
                sum += 1.0 / p.at(g.index(ix, iy));
        n = q.cell_count(2);
    }
    if (n == 0) throw std::invalid_argument("harmonic_mean: empty cube");
    return static_cast<double>(n) / sum;
}

LhDiagnostics lh_diagnostics(const Exponent& p, const LhDiagnosticsOptions& opts) {
    const Grid& g = p.grid();
    const std::size_t n = p.size();
    LhDiagnostics d;

    auto center = [&](std::size_t i) { return g.center(i); };
    auto dist = [&](std::size_t i, std::size_t j) {
        auto a = center(i), b = center(j);
        return g.dim == 1 ? std::abs(a[0] - b[0]) : std::hypot(a[0] - b[0], a[1] - b[1]);
    };
    auto quotient = [&](std::size_t i, std::size_t j) {
        double r = dist(i, j);
        if (!(r > 0.0) || r >= 0.5) return 0.0;
        return std::abs(1.0 / p.at(i) - 1.0 / p.at(j)) * (-std::log(r));
    };

    // All pairs within a window of radius 1/2, up to the configured cap.
    int win = std::max(1, static_cast<int>(std::ceil(0.5 / g.cell_side())));
    std::size_t budget = opts.max_pairs;
    if (g.dim == 1) {
        for (std::size_t i = 0; i < n && budget > 0; ++i)
            for (std::size_t j = i + 1; j < std::min(n, i + 1 + win) && budget > 0; ++j, --budget)
                d.c0_est = std::max(d.c0_est, quotient(i, j));
    } else {
        int na = g.cells_per_axis;
        for (int ix = 0; ix < na && budget > 0; ++ix)
            for (int iy = 0; iy < na && budget > 0; ++iy) {
                std::size_t i = g.index(ix, iy);
                for (int jx = ix; jx < std::min(na, ix + win + 1) && budget > 0; ++jx)
                    for (int jy = (jx == ix ? iy + 1 : std::max(0, iy - win));
                         jy < std::min(na, iy + win + 1) && budget > 0; ++jy, --budget)
                        d.c0_est = std::max(d.c0_est, quotient(i, g.index(jx, jy)));
            }
    }
    // Random long pairs as a safety net past the window.
    SplitMix rng(opts.seed);
    for (std::size_t t = 0; t < opts.random_pairs; ++t) {
        std::size_t i = rng.below(n), j = rng.below(n);
        if (i != j) d.c0_est = std::max(d.c0_est, quotient(i, j));
    }

    for (std::size_t i = 0; i < n; ++i) {
        auto c = center(i);
        double r = g.dim == 1 ? std::abs(c[0]) : std::hypot(c[0], c[1]);
        double q = std::abs(1.0 / p.at(i) - 1.0 / p.p_infty()) * std::log(std::numbers::e + r);
        d.cinf_est = std::max(d.cinf_est, q);
    }
    return d;
}

}  // namespace varlp
