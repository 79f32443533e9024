#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace varlp {

// Uniform cell lattice over the truncated box [-L, L)^dim, dim = 1 or 2.
// L is a power of two and the cell side is h = 2^-m, so every dyadic cube
// with side >= h is aligned to cell boundaries.
struct Grid {
    int dim = 1;
    double half_width = 1.0;   // L
    int cell_exponent = 1;     // m, h = 2^-m
    int cells_per_axis = 4;    // 2L * 2^m

    double cell_side() const { return std::ldexp(1.0, -cell_exponent); }
    double cell_measure() const {
        double h = cell_side();
        return dim == 1 ? h : h * h;
    }
    std::size_t cell_count() const {
        std::size_t n = static_cast<std::size_t>(cells_per_axis);
        return dim == 1 ? n : n * n;
    }

    // Cell (ix, iy) -> flat index; iy ignored for dim 1.
    std::size_t index(int ix, int iy = 0) const {
        return dim == 1 ? static_cast<std::size_t>(ix)
                        : static_cast<std::size_t>(ix) * cells_per_axis + iy;
    }
    std::array<int, 2> coords(std::size_t idx) const {
        if (dim == 1) return {static_cast<int>(idx), 0};
        return {static_cast<int>(idx / cells_per_axis),
                static_cast<int>(idx % cells_per_axis)};
    }
    double axis_center(int i) const {
        return (i + 0.5) * cell_side() - half_width;
    }
    std::array<double, 2> center(std::size_t idx) const {
        auto c = coords(idx);
        if (dim == 1) return {axis_center(c[0]), 0.0};
        return {axis_center(c[0]), axis_center(c[1])};
    }

    bool operator==(const Grid&) const = default;
};

// Builds the lattice; rejects non-power-of-two L and oversized grids.
Grid build_grid(int dim, double half_width, int cell_exponent,
                std::size_t max_cells = (std::size_t{1} << 24));

// Real-valued samples, one per cell. The function is the step function that
// is constant on each cell; norms and integrals computed from it are exact
// for that step function, not approximations of anything finer.
struct SampledFunction {
    Grid grid;
    std::vector<double> values;

    SampledFunction() = default;
    SampledFunction(const Grid& g, double fill = 0.0)
        : grid(g), values(g.cell_count(), fill) {}
    SampledFunction(const Grid& g, std::vector<double> v);

    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    std::size_t size() const { return values.size(); }

    template <typename F>
    static SampledFunction from_function(const Grid& g, F&& f) {
        SampledFunction out(g);
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            auto c = g.center(i);
            if (g.dim == 1)
                out.values[i] = f(c[0]);
            else
                out.values[i] = f(c[0], c[1]);
        }
        return out;
    }
};

void require_same_grid(const Grid& a, const Grid& b, const char* what);

// Pointwise helpers (same grid required).
SampledFunction abs(const SampledFunction& f);
SampledFunction multiply(const SampledFunction& a, const SampledFunction& b);
SampledFunction add(const SampledFunction& a, const SampledFunction& b);
SampledFunction scale(const SampledFunction& f, double c);
SampledFunction pow_pointwise(const SampledFunction& f, double s);
double max_abs(const SampledFunction& f);

// One cube of a (possibly translated) dyadic lattice, intersected with the
// domain. The cell set is always an axis-aligned index box [lo, hi) per axis,
// since cube membership is decided by cell centers.
struct DyadicCube {
    int level = 0;                      // k, side 2^-k
    std::array<std::int64_t, 2> offset{0, 0};
    unsigned translate_mask = 0;        // bit a set: axis a shifted by (-1)^k/3
    bool root = false;                  // whole-domain cube of the t=0 tree
    bool boundary = false;              // touches the domain edge
    std::array<int, 2> cell_lo{0, 0};
    std::array<int, 2> cell_hi{1, 1};   // exclusive

    double side() const { return std::ldexp(1.0, -level); }
    std::int64_t cell_count(int dim) const {
        std::int64_t n = cell_hi[0] - cell_lo[0];
        if (dim == 2) n *= cell_hi[1] - cell_lo[1];
        return n;
    }
    bool contains_cell(const Grid& g, std::size_t idx) const {
        auto c = g.coords(idx);
        for (int a = 0; a < g.dim; ++a)
            if (c[a] < cell_lo[a] || c[a] >= cell_hi[a]) return false;
        return true;
    }
    double measure(const Grid& g) const {
        return static_cast<double>(cell_count(g.dim)) * g.cell_measure();
    }
    std::string describe(const Grid& g) const;
};

// All cubes of one translated dyadic lattice restricted to the domain,
// sides h up to 2L. For t = 0 this is the binary subdivision tree of the
// domain: every level except the root consists of standard dyadic cubes,
// and the root cube is the whole box.
struct CubeFamily {
    Grid grid;
    unsigned translate_mask = 0;
    int level_min = 0;   // coarsest (side 2L)
    int level_max = 0;   // finest (side h), equals grid.cell_exponent
    std::vector<DyadicCube> cubes;                 // grouped by level, coarse first
    std::vector<std::size_t> level_begin;          // index into cubes per level

    std::span<const DyadicCube> level(int k) const {
        std::size_t a = level_begin[static_cast<std::size_t>(k - level_min)];
        std::size_t b = level_begin[static_cast<std::size_t>(k - level_min) + 1];
        return {cubes.data() + a, b - a};
    }
    int level_count() const { return level_max - level_min + 1; }

    // The cube of level k whose real set contains the center of cell idx,
    // or the root for the coarsest t=0 level. Always exists.
    DyadicCube cube_at(int k, std::size_t cell_idx) const;
};

CubeFamily dyadic_family(const Grid& grid, unsigned translate_mask);

// Riemann sum h^dim * sum of f over the region, in fixed index order.
// Exact (no rounding) whenever the sampled values are dyadic rationals of
// moderate magnitude, which is what the additivity property tests use.
double integrate(const SampledFunction& f, const DyadicCube& cube);
double integrate(const SampledFunction& f, std::span<const std::uint32_t> cells);
double integrate(const SampledFunction& f);

// Summed-area table for O(1) box sums of the raw cell values.
class PrefixTable {
public:
    explicit PrefixTable(const SampledFunction& f);
    // Sum of values over the index box [lo, hi).
    double box_sum(const std::array<int, 2>& lo, const std::array<int, 2>& hi) const;
    double box_sum(const DyadicCube& c) const { return box_sum(c.cell_lo, c.cell_hi); }

private:
    int dim_;
    int n_;
    std::vector<double> p_;
};

}  // namespace varlp
