#include "varlp/czd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "varlp/operators.hpp"

namespace varlp {

SplitFunctions split(const SampledFunction& f1, const SampledFunction& f2) {
    require_same_grid(f1.grid, f2.grid, "split");
    SplitFunctions s;
    s.h1 = SampledFunction(f1.grid, 0.0);
    s.h2 = SampledFunction(f1.grid, 0.0);
    s.h3 = SampledFunction(f1.grid, 0.0);
    s.h4 = SampledFunction(f1.grid, 0.0);
    for (std::size_t i = 0; i < f1.size(); ++i) {
        (f1.values[i] > 1.0 ? s.h1 : s.h2).values[i] = f1.values[i];
        (f2.values[i] > 1.0 ? s.h3 : s.h4).values[i] = f2.values[i];
    }
    return s;
}

const CZLevel* CZDecomposition::level(int k) const {
    for (const auto& lv : levels)
        if (lv.k == k) return &lv;
    return nullptr;
}

std::string CZDecomposition::to_text(const Grid& g) const {
    std::ostringstream os;
    os << "cz decomposition: a = " << base_a << ", levels " << k_min << ".." << k_max
       << " (" << levels.size() << " nonempty)\n";
    for (const auto& lv : levels) {
        os << "level k=" << lv.k << " threshold=" << std::pow(base_a, lv.k)
           << " |Omega_k|=" << lv.omega_cells.size() << " cells, " << lv.cubes.size()
           << " cubes\n";
        for (const auto& c : lv.cubes) {
            os << "  " << c.cube.describe(g) << " avg1=" << c.avg1 << " avg2=" << c.avg2
               << " product=" << c.avg1 * c.avg2 << " |E|=" << c.e_cells.size()
               << (c.interior ? "" : " [boundary]") << "\n";
        }
    }
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    return os.str();
}

namespace {

void collect_cells(const Grid& g, const DyadicCube& q, std::vector<std::uint32_t>& out) {
    if (g.dim == 1) {
        for (int i = q.cell_lo[0]; i < q.cell_hi[0]; ++i)
            out.push_back(static_cast<std::uint32_t>(i));
    } else {
        for (int ix = q.cell_lo[0]; ix < q.cell_hi[0]; ++ix)
            for (int iy = q.cell_lo[1]; iy < q.cell_hi[1]; ++iy)
                out.push_back(static_cast<std::uint32_t>(g.index(ix, iy)));
    }
}

// Per-cube averages of both inputs, aligned with fam.cubes. The arithmetic
// (plain index-order sums) matches bilinear_maximal exactly, so coverage of
// the level sets by the selected cubes is exact, not approximate.
void cube_averages(const SampledFunction& f, const CubeFamily& fam,
                   std::vector<double>& out) {
    const Grid& g = fam.grid;
    out.resize(fam.cubes.size());
    for (std::size_t i = 0; i < fam.cubes.size(); ++i) {
        const DyadicCube& q = fam.cubes[i];
        double sum = 0.0;
        if (g.dim == 1) {
            for (int c = q.cell_lo[0]; c < q.cell_hi[0]; ++c)
                sum += std::abs(f.values[c]);
        } else {
            for (int ix = q.cell_lo[0]; ix < q.cell_hi[0]; ++ix)
                for (int iy = q.cell_lo[1]; iy < q.cell_hi[1]; ++iy)
                    sum += std::abs(f.values[g.index(ix, iy)]);
        }
        out[i] = sum / static_cast<double>(q.cell_count(g.dim));
    }
}

// Maximal (topmost) cubes of the t=0 tree whose product of averages exceeds
// thr: scan levels coarse to fine, skipping cubes below an already selected
// ancestor via a covered-cell mask.
void select_maximal(const CubeFamily& fam, const std::vector<double>& a1,
                    const std::vector<double>& a2, double thr,
                    std::vector<CZCube>& out, std::vector<std::uint8_t>& covered) {
    const Grid& g = fam.grid;
    std::fill(covered.begin(), covered.end(), 0);
    for (std::size_t i = 0; i < fam.cubes.size(); ++i) {
        const DyadicCube& q = fam.cubes[i];
        std::size_t probe = g.dim == 1 ? static_cast<std::size_t>(q.cell_lo[0])
                                       : g.index(q.cell_lo[0], q.cell_lo[1]);
        if (covered[probe]) continue;  // ancestor already selected
        if (a1[i] * a2[i] > thr) {
            CZCube c;
            c.cube = q;
            c.avg1 = a1[i];
            c.avg2 = a2[i];
            c.interior = !q.boundary;
            out.push_back(std::move(c));
            if (g.dim == 1) {
                for (int cx = q.cell_lo[0]; cx < q.cell_hi[0]; ++cx) covered[cx] = 1;
            } else {
                for (int ix = q.cell_lo[0]; ix < q.cell_hi[0]; ++ix)
                    for (int iy = q.cell_lo[1]; iy < q.cell_hi[1]; ++iy)
                        covered[g.index(ix, iy)] = 1;
            }
        }
    }
}

}  // namespace

CZDecomposition cz_decompose(const SampledFunction& g1, const SampledFunction& g2,
                             double a, const CubeFamily& t0_family) {
    require_same_grid(g1.grid, g2.grid, "cz_decompose");
    require_same_grid(g1.grid, t0_family.grid, "cz_decompose");
    if (t0_family.translate_mask != 0)
        throw std::invalid_argument("cz_decompose: expects the t=0 family");
    const Grid& g = g1.grid;
    double need = std::ldexp(1.0, 2 * g.dim);
    if (!(a > need))
        throw std::invalid_argument("cz_decompose: base must exceed 2^(2 dim)");
    for (std::size_t i = 0; i < g1.size(); ++i)
        if (g1.values[i] < 0.0 || g2.values[i] < 0.0)
            throw std::invalid_argument("cz_decompose: inputs must be nonnegative");

    CZDecomposition out;
    out.base_a = a;

    std::vector<CubeFamily> one{t0_family};
    SampledFunction md = bilinear_maximal(g1, g2, one).result;

    double md_max = 0.0;
    double md_min_pos = std::numeric_limits<double>::infinity();
    for (double v : md.values) {
        md_max = std::max(md_max, v);
        if (v > 0.0) md_min_pos = std::min(md_min_pos, v);
    }
    if (md_max == 0.0) {
        out.k_min = 0;
        out.k_max = -1;
        return out;  // empty decomposition
    }
    double la = std::log(a);
    out.k_min = static_cast<int>(std::floor(std::log(md_min_pos) / la));
    out.k_max = static_cast<int>(std::ceil(std::log(md_max) / la));

    std::vector<double> avg1, avg2;
    cube_averages(g1, t0_family, avg1);
    cube_averages(g2, t0_family, avg2);
    std::vector<std::uint8_t> covered(g1.size(), 0);

    std::vector<std::uint32_t> omega_above;  // Omega_{k+1} of the previous pass
    bool have_above = false;
    for (int k = out.k_max; k >= out.k_min; --k) {
        double thr = std::pow(a, k);
        CZLevel lv;
        lv.k = k;
        for (std::size_t i = 0; i < md.size(); ++i)
            if (md.values[i] > thr) lv.omega_cells.push_back(static_cast<std::uint32_t>(i));
        if (lv.omega_cells.empty()) {
            omega_above.clear();
            have_above = true;
            continue;
        }
        select_maximal(t0_family, avg1, avg2, thr, lv.cubes, covered);
        if (lv.cubes.empty())
            out.warnings.push_back("level " + std::to_string(k) +
                                   ": Omega nonempty but no cube qualifies");

        // E = Q \ Omega_{k+1}, computed against the previous (finer) level set.
        std::vector<std::uint8_t> in_above(md.size(), 0);
        if (have_above) {
            for (std::uint32_t c : omega_above) in_above[c] = 1;
        } else {
            for (std::size_t i = 0; i < md.size(); ++i)
                if (md.values[i] > thr * a) in_above[i] = 1;
        }
        std::vector<std::uint32_t> cells;
        for (auto& c : lv.cubes) {
            cells.clear();
            collect_cells(g, c.cube, cells);
            for (std::uint32_t idx : cells)
                if (!in_above[idx]) c.e_cells.push_back(idx);
        }
        omega_above = lv.omega_cells;
        have_above = true;
        out.levels.push_back(std::move(lv));
    }
    std::reverse(out.levels.begin(), out.levels.end());
    return out;
}

}  // namespace varlp
