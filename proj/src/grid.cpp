#include "varlp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace varlp {

namespace {

bool is_power_of_two(double x) {
    if (x <= 0.0) return false;
    int e = 0;
    double m = std::frexp(x, &e);
    return m == 0.5;
}

}  // namespace

Grid build_grid(int dim, double half_width, int cell_exponent, std::size_t max_cells) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("build_grid: dim must be 1 or 2");
    if (!is_power_of_two(half_width) || half_width < 1.0)
        throw std::invalid_argument("build_grid: half_width must be a power of 2, >= 1");
    if (cell_exponent < 1)
        throw std::invalid_argument("build_grid: cell_exponent must be >= 1");

    double per_axis = 2.0 * half_width * std::ldexp(1.0, cell_exponent);
    if (per_axis > 1e9)
        throw std::invalid_argument("build_grid: grid too large");
    Grid g;
    g.dim = dim;
    g.half_width = half_width;
    g.cell_exponent = cell_exponent;
    g.cells_per_axis = static_cast<int>(per_axis);
    if (g.cell_count() > max_cells)
        throw std::invalid_argument("build_grid: cell count exceeds memory budget");
    return g;
}

SampledFunction::SampledFunction(const Grid& g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (values.size() != g.cell_count())
        throw std::invalid_argument("SampledFunction: value count does not match grid");
    for (double x : values)
        if (!std::isfinite(x))
            throw std::invalid_argument("SampledFunction: non-finite sample");
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grids differ");
}

SampledFunction abs(const SampledFunction& f) {
    SampledFunction out = f;
    for (double& x : out.values) x = std::abs(x);
    return out;
}

SampledFunction multiply(const SampledFunction& a, const SampledFunction& b) {
    require_same_grid(a.grid, b.grid, "multiply");
    SampledFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
    return out;
}

SampledFunction add(const SampledFunction& a, const SampledFunction& b) {
    require_same_grid(a.grid, b.grid, "add");
    SampledFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    return out;
}

SampledFunction scale(const SampledFunction& f, double c) {
    SampledFunction out = f;
    for (double& x : out.values) x *= c;
    return out;
}

SampledFunction pow_pointwise(const SampledFunction& f, double s) {
    SampledFunction out = f;
    for (double& x : out.values) x = std::pow(x, s);
    return out;
}

double max_abs(const SampledFunction& f) {
    double m = 0.0;
    for (double x : f.values) m = std::max(m, std::abs(x));
    return m;
}

std::string DyadicCube::describe(const Grid& g) const {
    std::ostringstream os;
    os << "cube(level=" << level << ", side=" << side();
    if (root) {
        os << ", root";
    } else {
        os << ", offset=[" << offset[0];
        if (g.dim == 2) os << "," << offset[1];
        os << "]";
    }
    if (translate_mask) os << ", t=1/3 mask=" << translate_mask;
    os << ", cells=[" << cell_lo[0] << "," << cell_hi[0] << ")";
    if (g.dim == 2) os << "x[" << cell_lo[1] << "," << cell_hi[1] << ")";
    os << ")";
    return os.str();
}

namespace {

// Axis translate of the lattice at level k: (-1)^k * t, t in {0, 1/3}.
double axis_translate(int level, unsigned translate_mask, int axis) {
    if (!(translate_mask & (1u << axis))) return 0.0;
    return (level & 1) ? -1.0 / 3.0 : 1.0 / 3.0;
}

// First cell index whose center is >= coordinate x, clamped to [0, n].
int first_center_at_or_after(const Grid& g, double x) {
    double t = (x + g.half_width) / g.cell_side() - 0.5;
    int i = static_cast<int>(std::ceil(t));
    // ceil returns the knife-edge index itself when t is integral: the cell
    // center equal to x belongs to [x, ...).
    return std::clamp(i, 0, g.cells_per_axis);
}

// Builds the cube object for lattice coordinates (level, offset) and marks
// boundary contact. Returns false if the cube misses the domain entirely.
bool make_cube(const Grid& g, int level, std::array<std::int64_t, 2> offset,
               unsigned translate_mask, DyadicCube& out) {
    double side = std::ldexp(1.0, -level);
    out = DyadicCube{};
    out.level = level;
    out.offset = offset;
    out.translate_mask = translate_mask;
    bool touches_edge = false;
    for (int a = 0; a < g.dim; ++a) {
        double tau = axis_translate(level, translate_mask, a);
        double lo = side * (static_cast<double>(offset[a]) + tau);
        double hi = lo + side;
        int ilo = first_center_at_or_after(g, lo);
        int ihi = first_center_at_or_after(g, hi);
        if (ilo >= ihi) return false;
        out.cell_lo[a] = ilo;
        out.cell_hi[a] = ihi;
        if (lo <= -g.half_width || hi >= g.half_width) touches_edge = true;
    }
    out.boundary = touches_edge;
    return true;
}

}  // namespace

CubeFamily dyadic_family(const Grid& grid, unsigned translate_mask) {
    if (translate_mask >= (1u << grid.dim))
        throw std::invalid_argument("dyadic_family: translate mask out of range for dim");
    CubeFamily fam;
    fam.grid = grid;
    fam.translate_mask = translate_mask;
    int m0 = static_cast<int>(std::lround(std::log2(grid.half_width)));
    fam.level_min = -(m0 + 1);  // side 2L
    fam.level_max = grid.cell_exponent;

    for (int k = fam.level_min; k <= fam.level_max; ++k) {
        fam.level_begin.push_back(fam.cubes.size());
        if (translate_mask == 0 && k == fam.level_min) {
            // Root of the t=0 tree: the whole domain. The standard lattice has
            // no single cube of side 2L covering the box.
            DyadicCube root;
            root.level = k;
            root.root = true;
            root.boundary = true;
            root.cell_lo = {0, 0};
            root.cell_hi = {grid.cells_per_axis, grid.dim == 2 ? grid.cells_per_axis : 1};
            fam.cubes.push_back(root);
            continue;
        }
        double side = std::ldexp(1.0, -k);
        // Offsets whose cube can meet [-L, L): side*(j + tau + 1) > -L and
        // side*(j + tau) < L.
        std::array<std::int64_t, 2> jlo{0, 0}, jhi{1, 1};
        for (int a = 0; a < grid.dim; ++a) {
            double tau = axis_translate(k, translate_mask, a);
            jlo[a] = static_cast<std::int64_t>(std::floor(-grid.half_width / side - tau));
            jhi[a] = static_cast<std::int64_t>(std::ceil(grid.half_width / side - tau));
        }
        for (std::int64_t jx = jlo[0]; jx < jhi[0]; ++jx) {
            if (grid.dim == 1) {
                DyadicCube c;
                if (make_cube(grid, k, {jx, 0}, translate_mask, c)) fam.cubes.push_back(c);
            } else {
                for (std::int64_t jy = jlo[1]; jy < jhi[1]; ++jy) {
                    DyadicCube c;
                    if (make_cube(grid, k, {jx, jy}, translate_mask, c)) fam.cubes.push_back(c);
                }
            }
        }
    }
    fam.level_begin.push_back(fam.cubes.size());
    return fam;
}

DyadicCube CubeFamily::cube_at(int k, std::size_t cell_idx) const {
    if (translate_mask == 0 && k == level_min) {
        return cubes[level_begin[0]];  // root
    }
    double side = std::ldexp(1.0, -k);
    auto c = grid.center(cell_idx);
    std::array<std::int64_t, 2> off{0, 0};
    for (int a = 0; a < grid.dim; ++a) {
        double tau = axis_translate(k, translate_mask, a);
        off[a] = static_cast<std::int64_t>(std::floor(c[a] / side - tau));
    }
    DyadicCube cube;
    if (!make_cube(grid, k, off, translate_mask, cube))
        throw std::logic_error("cube_at: located cube misses the domain");
    return cube;
}

double integrate(const SampledFunction& f, const DyadicCube& cube) {
    const Grid& g = f.grid;
    double sum = 0.0;
    if (g.dim == 1) {
        for (int i = cube.cell_lo[0]; i < cube.cell_hi[0]; ++i) sum += f.values[i];
    } else {
        for (int ix = cube.cell_lo[0]; ix < cube.cell_hi[0]; ++ix)
            for (int iy = cube.cell_lo[1]; iy < cube.cell_hi[1]; ++iy)
                sum += f.values[g.index(ix, iy)];
    }
    return sum * g.cell_measure();
}

double integrate(const SampledFunction& f, std::span<const std::uint32_t> cells) {
    double sum = 0.0;
    for (std::uint32_t i : cells) sum += f.values[i];
    return sum * f.grid.cell_measure();
}

double integrate(const SampledFunction& f) {
    double sum = 0.0;
    for (double x : f.values) sum += x;
    return sum * f.grid.cell_measure();
}

PrefixTable::PrefixTable(const SampledFunction& f)
    : dim_(f.grid.dim), n_(f.grid.cells_per_axis) {
    if (dim_ == 1) {
        p_.assign(static_cast<std::size_t>(n_) + 1, 0.0);
        for (int i = 0; i < n_; ++i) p_[i + 1] = p_[i] + f.values[i];
    } else {
        std::size_t stride = static_cast<std::size_t>(n_) + 1;
        p_.assign(stride * stride, 0.0);
        for (int ix = 0; ix < n_; ++ix) {
            double row = 0.0;
            for (int iy = 0; iy < n_; ++iy) {
                row += f.values[f.grid.index(ix, iy)];
                p_[(ix + 1) * stride + (iy + 1)] = p_[ix * stride + (iy + 1)] + row;
            }
        }
    }
}

double PrefixTable::box_sum(const std::array<int, 2>& lo, const std::array<int, 2>& hi) const {
    if (dim_ == 1) return p_[hi[0]] - p_[lo[0]];
    std::size_t stride = static_cast<std::size_t>(n_) + 1;
    return p_[hi[0] * stride + hi[1]] - p_[lo[0] * stride + hi[1]] -
           p_[hi[0] * stride + lo[1]] + p_[lo[0] * stride + lo[1]];
}

}  // namespace varlp
