#include "varlp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace varlp {

namespace {

void check_families(const Grid& g, std::span<const CubeFamily> families, const char* what) {
    if (families.empty()) throw std::invalid_argument(std::string(what) + ": no families");
    for (const auto& fam : families) require_same_grid(g, fam.grid, what);
}

template <typename F>
void for_each_cell(const Grid& g, const DyadicCube& q, F&& fn) {
    if (g.dim == 1) {
        for (int i = q.cell_lo[0]; i < q.cell_hi[0]; ++i) fn(static_cast<std::size_t>(i));
    } else {
        for (int ix = q.cell_lo[0]; ix < q.cell_hi[0]; ++ix)
            for (int iy = q.cell_lo[1]; iy < q.cell_hi[1]; ++iy) fn(g.index(ix, iy));
    }
}

// Plain index-order cell sum; the same arithmetic as integrate() without the
// h^dim factor, so per-cube averages agree bit-for-bit across operators.
double cell_sum(const SampledFunction& f, const DyadicCube& q, bool absolute) {
    double sum = 0.0;
    for_each_cell(f.grid, q, [&](std::size_t i) {
        sum += absolute ? std::abs(f.values[i]) : f.values[i];
    });
    return sum;
}

}  // namespace

OperatorOutput maximal(const SampledFunction& f, std::span<const CubeFamily> families) {
    check_families(f.grid, families, "maximal");
    OperatorOutput out;
    out.result = SampledFunction(f.grid, 0.0);
    out.argmax_level.assign(f.size(), 0);
    out.argmax_family.assign(f.size(), 0);
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        for (const DyadicCube& q : families[fi].cubes) {
            double avg = cell_sum(f, q, true) / static_cast<double>(q.cell_count(f.grid.dim));
            for_each_cell(f.grid, q, [&](std::size_t i) {
                if (avg > out.result.values[i]) {
                    out.result.values[i] = avg;
                    out.argmax_level[i] = static_cast<std::int16_t>(q.level);
                    out.argmax_family[i] = static_cast<std::uint8_t>(fi);
                }
            });
        }
    }
    return out;
}

OperatorOutput maximal_brute_intervals(const SampledFunction& f) {
    if (f.grid.dim != 1)
        throw std::invalid_argument("maximal_brute_intervals: dim 1 only");
    int n = f.grid.cells_per_axis;
    std::vector<double> prefix(n + 1, 0.0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::abs(f.values[i]);
    OperatorOutput out;
    out.result = SampledFunction(f.grid, 0.0);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            double avg = (prefix[b] - prefix[a]) / static_cast<double>(b - a);
            for (int i = a; i < b; ++i)
                out.result.values[i] = std::max(out.result.values[i], avg);
        }
    }
    return out;
}

OperatorOutput weighted_dyadic_maximal(const SampledFunction& f, const Weight& sigma,
                                       const CubeFamily& t0_family) {
    require_same_grid(f.grid, sigma.grid(), "weighted_dyadic_maximal");
    require_same_grid(f.grid, t0_family.grid, "weighted_dyadic_maximal");
    if (t0_family.translate_mask != 0)
        throw std::invalid_argument("weighted_dyadic_maximal: expects the t=0 family");
    SampledFunction fs = multiply(abs(f), sigma.samples);
    OperatorOutput out;
    out.result = SampledFunction(f.grid, 0.0);
    for (const DyadicCube& q : t0_family.cubes) {
        double den = cell_sum(sigma.samples, q, false);
        if (den <= 0.0) continue;
        double avg = cell_sum(fs, q, false) / den;
        for_each_cell(f.grid, q, [&](std::size_t i) {
            out.result.values[i] = std::max(out.result.values[i], avg);
        });
    }
    return out;
}

OperatorOutput bilinear_maximal(const SampledFunction& f1, const SampledFunction& f2,
                                std::span<const CubeFamily> families) {
    require_same_grid(f1.grid, f2.grid, "bilinear_maximal");
    check_families(f1.grid, families, "bilinear_maximal");
    OperatorOutput out;
    out.result = SampledFunction(f1.grid, 0.0);
    out.argmax_level.assign(f1.size(), 0);
    out.argmax_family.assign(f1.size(), 0);
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        for (const DyadicCube& q : families[fi].cubes) {
            double cells = static_cast<double>(q.cell_count(f1.grid.dim));
            double prod = (cell_sum(f1, q, true) / cells) * (cell_sum(f2, q, true) / cells);
            for_each_cell(f1.grid, q, [&](std::size_t i) {
                if (prod > out.result.values[i]) {
                    out.result.values[i] = prod;
                    out.argmax_level[i] = static_cast<std::int16_t>(q.level);
                    out.argmax_family[i] = static_cast<std::uint8_t>(fi);
                }
            });
        }
    }
    return out;
}

OperatorOutput bilinear_maximal_brute(const SampledFunction& f1,
                                      const SampledFunction& f2) {
    require_same_grid(f1.grid, f2.grid, "bilinear_maximal_brute");
    if (f1.grid.dim != 1)
        throw std::invalid_argument("bilinear_maximal_brute: dim 1 only");
    int n = f1.grid.cells_per_axis;
    std::vector<double> p1(n + 1, 0.0), p2(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        p1[i + 1] = p1[i] + std::abs(f1.values[i]);
        p2[i + 1] = p2[i] + std::abs(f2.values[i]);
    }
    OperatorOutput out;
    out.result = SampledFunction(f1.grid, 0.0);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            double len = static_cast<double>(b - a);
            double prod = ((p1[b] - p1[a]) / len) * ((p2[b] - p2[a]) / len);
            for (int i = a; i < b; ++i)
                out.result.values[i] = std::max(out.result.values[i], prod);
        }
    }
    return out;
}

OneThirdResult one_third_domination(const SampledFunction& f1,
                                    const SampledFunction& f2) {
    require_same_grid(f1.grid, f2.grid, "one_third_domination");
    const Grid& g = f1.grid;
    std::vector<CubeFamily> translates;
    for (unsigned mask = 0; mask < (1u << g.dim); ++mask)
        translates.push_back(dyadic_family(g, mask));

    OneThirdResult out;
    if (g.dim == 1) {
        out.full = bilinear_maximal_brute(f1, f2).result;
    } else {
        out.full = bilinear_maximal(f1, f2, translates).result;
    }
    out.translate_sum = SampledFunction(g, 0.0);
    for (const auto& fam : translates) {
        std::span<const CubeFamily> one(&fam, 1);
        SampledFunction part = bilinear_maximal(f1, f2, one).result;
        out.translate_sum = add(out.translate_sum, part);
    }
    double ratio = 0.0;
    for (std::size_t i = 0; i < out.full.size(); ++i) {
        if (out.translate_sum.values[i] > 0.0)
            ratio = std::max(ratio, out.full.values[i] / out.translate_sum.values[i]);
    }
    out.constant = ratio;
    return out;
}

SampledFunction averaging_AQ(const DyadicCube& q, const SampledFunction& f1,
                             const SampledFunction& f2) {
    require_same_grid(f1.grid, f2.grid, "averaging_AQ");
    const Grid& g = f1.grid;
    double cells = static_cast<double>(q.cell_count(g.dim));
    double a1 = cell_sum(f1, q, false) / cells;
    double a2 = cell_sum(f2, q, false) / cells;
    SampledFunction out(g, 0.0);
    for_each_cell(g, q, [&](std::size_t i) { out.values[i] = a1 * a2; });
    return out;
}

namespace {

void require_disjoint(const Grid& g, std::span<const DyadicCube> cubes, const char* what) {
    std::vector<std::uint8_t> seen(g.cell_count(), 0);
    for (const DyadicCube& q : cubes)
        for_each_cell(g, q, [&](std::size_t i) {
            if (seen[i]++) throw std::invalid_argument(std::string(what) + ": cubes overlap");
        });
}

}  // namespace

SampledFunction averaging_TQ(std::span<const DyadicCube> cubes,
                             const SampledFunction& f1, const SampledFunction& f2) {
    require_same_grid(f1.grid, f2.grid, "averaging_TQ");
    require_disjoint(f1.grid, cubes, "averaging_TQ");
    const Grid& g = f1.grid;
    SampledFunction out(g, 0.0);
    for (const DyadicCube& q : cubes) {
        double cells = static_cast<double>(q.cell_count(g.dim));
        double v = (cell_sum(f1, q, false) / cells) * (cell_sum(f2, q, false) / cells);
        for_each_cell(g, q, [&](std::size_t i) { out.values[i] = v; });
    }
    return out;
}

double p_average(const SampledFunction& h, const Exponent& p, const DyadicCube& q,
                 const NormOptions& opts) {
    double num = luxemburg_norm_on(h, p, q, opts).value;
    SampledFunction ones(h.grid, 1.0);
    double den = luxemburg_norm_on(ones, p, q, opts).value;
    return num / den;
}

SampledFunction p_averaging_TQ(const SampledFunction& h, const Exponent& p,
                               std::span<const DyadicCube> cubes,
                               const NormOptions& opts) {
    require_disjoint(h.grid, cubes, "p_averaging_TQ");
    const Grid& g = h.grid;
    SampledFunction out(g, 0.0);
    for (const DyadicCube& q : cubes) {
        double v = p_average(h, p, q, opts);
        for_each_cell(g, q, [&](std::size_t i) { out.values[i] = v; });
    }
    return out;
}

SampledFunction bilinear_p_averaging_TQ(const SampledFunction& f1,
                                        const SampledFunction& f2, const Exponent& p1,
                                        const Exponent& p2, const Exponent& p,
                                        std::span<const DyadicCube> cubes,
                                        const NormOptions& opts) {
    require_same_grid(f1.grid, f2.grid, "bilinear_p_averaging_TQ");
    require_disjoint(f1.grid, cubes, "bilinear_p_averaging_TQ");
    const Grid& g = f1.grid;
    SampledFunction ones(g, 1.0);
    SampledFunction out(g, 0.0);
    for (const DyadicCube& q : cubes) {
        double a = luxemburg_norm_on(f1, p1, q, opts).value;
        double b = luxemburg_norm_on(f2, p2, q, opts).value;
        double c = luxemburg_norm_on(ones, p, q, opts).value;
        double v = a * b / c;
        for_each_cell(g, q, [&](std::size_t i) { out.values[i] = v; });
    }
    return out;
}

OperatorOutput sharp_maximal(const SampledFunction& f, double delta,
                             std::span<const CubeFamily> families) {
    if (!(delta > 0.0)) throw std::invalid_argument("sharp_maximal: delta must be positive");
    check_families(f.grid, families, "sharp_maximal");
    const Grid& g = f.grid;
    SampledFunction fd = delta == 1.0 ? abs(f) : pow_pointwise(abs(f), delta);

    OperatorOutput out;
    out.result = SampledFunction(g, 0.0);
    for (const auto& fam : families) {
        for (const DyadicCube& q : fam.cubes) {
            double cells = static_cast<double>(q.cell_count(g.dim));
            double mean = cell_sum(fd, q, false) / cells;
            double osc = 0.0;
            for_each_cell(g, q, [&](std::size_t i) {
                osc += std::abs(fd.values[i] - mean);
            });
            osc /= cells;
            for_each_cell(g, q, [&](std::size_t i) {
                out.result.values[i] = std::max(out.result.values[i], osc);
            });
        }
    }
    if (delta != 1.0)
        for (double& v : out.result.values) v = std::pow(v, 1.0 / delta);
    return out;
}

}  // namespace varlp
