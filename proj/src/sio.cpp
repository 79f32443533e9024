#include "varlp/sio.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "varlp/parallel.hpp"

namespace varlp {

namespace {

double dist(const Point& a, const Point& b, int dim) {
    return dim == 1 ? std::abs(a[0] - b[0]) : std::hypot(a[0] - b[0], a[1] - b[1]);
}

double triple_sum(const Point& x, const Point& y, const Point& z, int dim) {
    return dist(x, y, dim) + dist(x, z, dim) + dist(y, z, dim);
}

// Smooth compactly supported bump, phi(0) = 1, support |r| <= radius.
double cosine_bump(double r, double radius) {
    double t = std::abs(r) / radius;
    if (t >= 1.0) return 0.0;
    double c = std::cos(0.5 * std::numbers::pi * t);
    return c * c;
}

// Van der Corput radical inverse; bases 2,3,5,... give a Halton sequence.
double radical_inverse(long i, int base) {
    double f = 1.0, r = 0.0;
    for (long n = i + 1; n > 0; n /= base) {
        f /= base;
        r += f * (n % base);
    }
    return r;
}

}  // namespace

BilinearKernel difference_quotient_kernel(double A, double delta) {
    BilinearKernel k;
    k.name = "difference_quotient";
    k.dim = 1;
    k.constant_A = A;
    k.holder_delta = delta;
    k.eval = [](const Point& x, const Point& y, const Point& z) {
        double s = std::abs(x[0] - y[0]) + std::abs(x[0] - z[0]) + std::abs(y[0] - z[0]);
        if (s == 0.0) return 0.0;
        return ((x[0] - y[0]) + (x[0] - z[0])) / (s * s * s);
    };
    return k;
}

BilinearKernel separable_bump_kernel(int dim, double radius) {
    if (!(radius > 0.0))
        throw std::invalid_argument("separable_bump_kernel: radius must be positive");
    BilinearKernel k;
    k.name = "separable_bump";
    k.dim = dim;
    // |K| <= 1 and the triple sum stays below 4*radius wherever K is nonzero,
    // and below 8*radius wherever a constrained perturbation can change K;
    // the Lipschitz constant of K is pi/radius. These give honest declared
    // constants for which the checker passes.
    double size_need = std::pow(4.0 * radius, 2 * dim);
    double smooth_need =
        std::numbers::pi / radius * std::pow(8.0 * radius, 2 * dim + 1);
    k.constant_A = 1.1 * std::max(size_need, smooth_need);
    k.holder_delta = 1.0;
    k.support_radius = radius;
    k.eval = [radius, dim](const Point& x, const Point& y, const Point& z) {
        return cosine_bump(dist(x, y, dim), radius) * cosine_bump(dist(x, z, dim), radius);
    };
    return k;
}

BilinearKernel size_violating_kernel() {
    BilinearKernel k;
    k.name = "inverse_cube";
    k.dim = 1;
    k.constant_A = 1.0;
    k.holder_delta = 1.0;
    k.eval = [](const Point& x, const Point& y, const Point&) {
        double d = std::abs(x[0] - y[0]);
        if (d == 0.0) return 0.0;
        return 1.0 / (d * d * d);
    };
    return k;
}

KernelCheckReport check_kernel_bounds(const BilinearKernel& k, const Grid& g,
                                      const KernelCheckOptions& opts) {
    if (opts.sample_count < 1)
        throw std::invalid_argument("check_kernel_bounds: sample_count must be >= 1");
    KernelCheckReport rep;
    const int dim = k.dim;
    const double L = g.half_width;
    const double h = g.cell_side();
    const int two_n = 2 * dim;
    const double A = k.constant_A;
    const double del = k.holder_delta;

    auto size_ratio = [&](const Point& x, const Point& y, const Point& z) {
        double s = triple_sum(x, y, z, dim);
        if (s == 0.0) return 0.0;
        return std::abs(k.eval(x, y, z)) * std::pow(s, two_n) / A;
    };

    // Low-discrepancy triples: position, two offset directions, and a scale
    // swept geometrically from h to 2L.
    for (long i = 0; i < opts.sample_count; ++i) {
        double u0 = radical_inverse(i, 2);
        double u1 = radical_inverse(i, 3);
        double u2 = radical_inverse(i, 5);
        double u3 = radical_inverse(i, 7);
        double u4 = radical_inverse(i, 11);
        double u5 = radical_inverse(i, 13);

        double scale = h * std::pow(2.0 * L / h, u0);
        Point x{(2.0 * u1 - 1.0) * L, dim == 2 ? (2.0 * u2 - 1.0) * L : 0.0};
        auto offset = [&](double mag, double ang, double par) {
            Point p = x;
            if (dim == 1) {
                p[0] += (par < 0.5 ? mag : -mag);
            } else {
                p[0] += mag * std::cos(2.0 * std::numbers::pi * ang);
                p[1] += mag * std::sin(2.0 * std::numbers::pi * ang);
            }
            return p;
        };
        Point y = offset(scale * (0.05 + 0.95 * u3), u4, u3);
        Point z = offset(scale * (0.05 + 0.95 * u5), u2, u5);
        double s = triple_sum(x, y, z, dim);
        if (s == 0.0) continue;
        ++rep.samples;
        rep.worst_size_ratio = std::max(rep.worst_size_ratio, size_ratio(x, y, z));

        // Perturbation triples within the 1/2 max constraint, in each slot.
        double base = std::pow(s, two_n + del) / A;
        double mx = std::max(dist(x, z, dim), dist(x, y, dim));
        double step = 0.5 * mx * (0.1 + 0.9 * u4);
        for (int sgn = -1; sgn <= 1; sgn += 2) {
            Point xt = x;
            xt[0] += sgn * step;
            if (dim == 2) {
                xt = x;
                xt[0] += sgn * step * std::cos(2.0 * std::numbers::pi * u5);
                xt[1] += sgn * step * std::sin(2.0 * std::numbers::pi * u5);
            }
            double d = dist(x, xt, dim);
            if (d == 0.0 || d > 0.5 * mx) continue;
            double r =
                std::abs(k.eval(x, y, z) - k.eval(xt, y, z)) * base / std::pow(d, del);
            rep.worst_smooth_ratio = std::max(rep.worst_smooth_ratio, r);
        }
        double my = std::max(dist(y, x, dim), dist(y, z, dim));
        double stepy = 0.5 * my * (0.1 + 0.9 * u1);
        Point yt = y;
        yt[0] += (u0 < 0.5 ? stepy : -stepy);
        if (dim == 2) {
            yt = y;
            yt[0] += stepy * std::cos(2.0 * std::numbers::pi * u3);
            yt[1] += stepy * std::sin(2.0 * std::numbers::pi * u3);
        }
        double dy = dist(y, yt, dim);
        if (dy > 0.0 && dy <= 0.5 * my) {
            double r =
                std::abs(k.eval(x, y, z) - k.eval(x, yt, z)) * base / std::pow(dy, del);
            rep.worst_smooth_ratio = std::max(rep.worst_smooth_ratio, r);
        }
        double mz = std::max(dist(z, x, dim), dist(z, y, dim));
        double stepz = 0.5 * mz * (0.1 + 0.9 * u2);
        Point zt = z;
        zt[0] += (u1 < 0.5 ? stepz : -stepz);
        if (dim == 2) {
            zt = z;
            zt[0] += stepz * std::cos(2.0 * std::numbers::pi * u0);
            zt[1] += stepz * std::sin(2.0 * std::numbers::pi * u0);
        }
        double dz = dist(z, zt, dim);
        if (dz > 0.0 && dz <= 0.5 * mz) {
            double r =
                std::abs(k.eval(x, y, z) - k.eval(x, y, zt)) * base / std::pow(dz, del);
            rep.worst_smooth_ratio = std::max(rep.worst_smooth_ratio, r);
        }
    }
    rep.pass = rep.worst_size_ratio <= 1.0 + opts.tolerance &&
               rep.worst_smooth_ratio <= 1.0 + opts.tolerance;
    return rep;
}

double kernel_size_ratio_at(const BilinearKernel& k, const Grid& g, double sep) {
    const int dim = k.dim;
    double worst = 0.0;
    // Deterministic fan of triples with |x-y| = sep, |x-z| = 1.
    for (int i = 0; i < 64; ++i) {
        double u = (i + 0.5) / 64.0;
        Point x{(2.0 * u - 1.0) * (g.half_width - 1.0 - sep), 0.0};
        for (int sy = -1; sy <= 1; sy += 2)
            for (int sz = -1; sz <= 1; sz += 2) {
                Point y = x, z = x;
                y[0] += sy * sep;
                z[0] += sz * 1.0;
                double s = triple_sum(x, y, z, dim);
                if (s == 0.0) continue;
                worst = std::max(worst, std::abs(k.eval(x, y, z)) *
                                            std::pow(s, 2 * dim) / k.constant_A);
            }
    }
    return worst;
}

SampledFunction apply_bilinear_sio(const BilinearKernel& k, const SampledFunction& f1,
                                   const SampledFunction& f2, const SioOptions& opts) {
    require_same_grid(f1.grid, f2.grid, "apply_bilinear_sio");
    const Grid& g = f1.grid;
    if (k.dim != g.dim) throw std::invalid_argument("apply_bilinear_sio: kernel dim mismatch");
    const std::size_t n = f1.size();
    double excl = opts.exclusion_radius > 0.0
                      ? opts.exclusion_radius
                      : g.cell_side() * std::sqrt(static_cast<double>(g.dim));
    double trunc = k.support_radius > 0.0 ? k.support_radius
                                          : std::numeric_limits<double>::infinity();
    double cell2 = g.cell_measure() * g.cell_measure();

    std::vector<Point> centers(n);
    for (std::size_t i = 0; i < n; ++i) centers[i] = g.center(i);

    SampledFunction out(g, 0.0);
    parallel_for(n, opts.threads, [&](std::size_t ix) {
        const Point& x = centers[ix];
        // Admissible y/z cells: outside the exclusion ball, inside truncation.
        std::vector<std::uint32_t> ys;
        ys.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            double d = dist(x, centers[j], g.dim);
            if (d < excl || d > trunc) continue;
            ys.push_back(static_cast<std::uint32_t>(j));
        }
        long double acc = 0.0L;
        for (std::uint32_t j : ys) {
            double fy = f1.values[j];
            if (fy == 0.0) continue;
            const Point& y = centers[j];
            for (std::uint32_t l : ys) {
                double fz = f2.values[l];
                if (fz == 0.0) continue;
                acc += static_cast<long double>(k.eval(x, y, centers[l]) * fy * fz);
            }
        }
        out.values[ix] = static_cast<double>(acc * cell2);
    });
    return out;
}

SharpDominationResult sharp_domination_test(const BilinearKernel& k,
                                            const SampledFunction& f1,
                                            const SampledFunction& f2, double delta,
                                            std::span<const CubeFamily> families,
                                            double floor_eps, const SioOptions& opts) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("sharp_domination_test: delta must be in (0, 1/2)");
    SharpDominationResult r;
    SampledFunction t = apply_bilinear_sio(k, f1, f2, opts);
    r.sharp = sharp_maximal(t, delta, families).result;
    r.bilinear_max = bilinear_maximal(f1, f2, families).result;
    double best = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double m = r.bilinear_max.values[i];
        if (m > floor_eps) best = std::max(best, r.sharp.values[i] / m);
    }
    r.constant = best;
    return r;
}

}  // namespace varlp
