#include "swspectra/oracle.hpp"

#include "swspectra/matrix.hpp"
#include "swspectra/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace sw {

namespace {

using kernels::Exec;

// Deterministic start vectors for the iterative 2D solver: a fixed 64-bit LCG
// mapped to [-1/2, 1/2).  Identical across platforms and runs.
class Lcg {
public:
    double next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state_ >> 11) * (1.0 / 9007199254740992.0) - 0.5;
    }

private:
    std::uint64_t state_ = 0x9E3779B97F4A7C15ULL;
};

std::vector<double> cartesian_1d_eigenvalues(const PotentialSpec& pot, const GridSpec& g) {
    const int n = g.nx;
    const double h = (g.x_max - g.x_min) / (n + 1);
    const double c = pot.hbar * pot.hbar / (2.0 * pot.m_eff * h * h);
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n) - 1, -c);
    for (int i = 1; i <= n; ++i) d[static_cast<std::size_t>(i) - 1] = 2.0 * c + pot.v1(g.x_min + i * h);
    return tridiag_eigenvalues(std::move(d), std::move(e));
}

// Cell-centered finite-volume discretization of the radial operator
//   -(hbar^2/2m) (1/r) d/dr (r d/dr) + (hbar^2/2m) l^2/r^2 + V(r)
// on (0, R].  Cell centers r_j = (j-1/2)h with h = R/(n+1/2); the inner flux
// face sits exactly at r=0 where the measure vanishes, which gives the natural
// regular boundary condition without any special-casing, and the r-weighted
// flux form keeps second-order convergence even for a Coulomb cusp at the
// origin.  Symmetrized by sqrt(r_j).
std::vector<double> radial_eigenvalues(const PotentialSpec& pot, const GridSpec& g) {
    const int n = g.nx;
    const double R = g.x_max;
    const double h = R / (n + 0.5);
    const double c = pot.hbar * pot.hbar / (2.0 * pot.m_eff);
    const double l2 = static_cast<double>(pot.wave_index) * pot.wave_index;

    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n) - 1);
    for (int j = 1; j <= n; ++j) {
        const double r = (j - 0.5) * h;
        const double r_plus = j * h;
        const double r_minus = (j - 1) * h;
        d[static_cast<std::size_t>(j) - 1] =
            c * (r_plus + r_minus) / (r * h * h) + c * l2 / (r * r) + pot.v1(r);
        if (j < n) {
            const double r_next = (j + 0.5) * h;
            e[static_cast<std::size_t>(j) - 1] = -c * r_plus / (h * h * std::sqrt(r * r_next));
        }
    }
    return tridiag_eigenvalues(std::move(d), std::move(e));
}

} // namespace

std::vector<double> solve_1d(const PotentialSpec& pot, const GridSpec& grid, int count) {
    if (grid.coord == GridSpec::Coord::cartesian_2d)
        throw std::invalid_argument("solve_1d: grid must be one-dimensional");
    if (grid.nx < 16) throw std::invalid_argument("solve_1d: at least 16 grid points required");
    if (count < 1 || count > grid.nx / 4)
        throw std::invalid_argument("solve_1d: count must be in [1, points/4]");
    if (!pot.v1) throw std::invalid_argument("solve_1d: 1D potential not set");

    std::vector<double> all = grid.coord == GridSpec::Coord::radial_half_line
                                  ? radial_eigenvalues(pot, grid)
                                  : cartesian_1d_eigenvalues(pot, grid);
    all.resize(static_cast<std::size_t>(count));
    return all;
}

namespace {

struct Grid2d {
    int nx, ny;
    double hx, hy;
    double cx, cy;               // off-diagonal couplings (negative)
    std::vector<double> diag;    // 2cx+2cy+V, with positive 2|c| parts
    std::vector<double> vxy;     // sampled potential
    std::vector<double> xs, ys;
};

Grid2d build_grid(const PotentialSpec& pot, const GridSpec& g) {
    Grid2d gr;
    gr.nx = g.nx;
    gr.ny = g.ny;
    gr.hx = (g.x_max - g.x_min) / (g.nx + 1);
    gr.hy = (g.y_max - g.y_min) / (g.ny + 1);
    const double kx = pot.hbar * pot.hbar / (2.0 * pot.m_eff * gr.hx * gr.hx);
    const double ky = pot.hbar * pot.hbar / (2.0 * pot.m_eff * gr.hy * gr.hy);
    gr.cx = -kx;
    gr.cy = -ky;
    gr.xs.resize(static_cast<std::size_t>(g.nx));
    gr.ys.resize(static_cast<std::size_t>(g.ny));
    for (int i = 0; i < g.nx; ++i) gr.xs[static_cast<std::size_t>(i)] = g.x_min + (i + 1) * gr.hx;
    for (int j = 0; j < g.ny; ++j) gr.ys[static_cast<std::size_t>(j)] = g.y_min + (j + 1) * gr.hy;

    const std::size_t total = static_cast<std::size_t>(g.nx) * g.ny;
    gr.vxy.resize(total);
    gr.diag.resize(total);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * g.ny + j;
            const double v = pot.v2(gr.xs[static_cast<std::size_t>(i)], gr.ys[static_cast<std::size_t>(j)]);
            if (!std::isfinite(v))
                throw std::invalid_argument("solve_2d: potential not finite at a grid point");
            gr.vxy[idx] = v;
            gr.diag[idx] = 2.0 * kx + 2.0 * ky + v;
        }
    return gr;
}

// A potential is treated as separable when its mixed second difference
// vanishes to rounding at every grid point.
bool is_separable(const Grid2d& gr) {
    for (int i = 0; i < gr.nx; ++i)
        for (int j = 0; j < gr.ny; ++j) {
            const double vij = gr.vxy[static_cast<std::size_t>(i) * gr.ny + j];
            const double vi0 = gr.vxy[static_cast<std::size_t>(i) * gr.ny];
            const double v0j = gr.vxy[static_cast<std::size_t>(j)];
            const double v00 = gr.vxy[0];
            const double dev = std::abs(vij - vi0 - v0j + v00);
            const double scale =
                std::max({1.0, std::abs(vij), std::abs(vi0), std::abs(v0j), std::abs(v00)});
            if (dev > 1e-10 * scale) return false;
        }
    return true;
}

// Exact tensor path: the stencil matrix of a separable potential is the
// Kronecker sum of two tridiagonal operators, so its full eigenvalue list
// (with true multiplicities) is the sum set of the two 1D spectra.
std::vector<double> tensor_eigenvalues(const Grid2d& gr, int count) {
    std::vector<double> dx(static_cast<std::size_t>(gr.nx)), dy(static_cast<std::size_t>(gr.ny));
    const double v00 = gr.vxy[0];
    for (int i = 0; i < gr.nx; ++i)
        dx[static_cast<std::size_t>(i)] =
            -2.0 * gr.cx + gr.vxy[static_cast<std::size_t>(i) * gr.ny] - 0.5 * v00;
    for (int j = 0; j < gr.ny; ++j)
        dy[static_cast<std::size_t>(j)] = -2.0 * gr.cy + gr.vxy[static_cast<std::size_t>(j)] - 0.5 * v00;

    std::vector<double> ex = tridiag_eigenvalues(dx, std::vector<double>(static_cast<std::size_t>(gr.nx) - 1, gr.cx));
    std::vector<double> ey = tridiag_eigenvalues(dy, std::vector<double>(static_cast<std::size_t>(gr.ny) - 1, gr.cy));

    std::vector<double> sums;
    sums.reserve(ex.size() * ey.size());
    for (double a : ex)
        for (double b : ey) sums.push_back(a + b);
    std::sort(sums.begin(), sums.end());
    sums.resize(static_cast<std::size_t>(count));
    return sums;
}

// Conjugate gradients for the SPD shifted operator (H - sigma I).
// Deterministic: fixed start x=0, fixed reduction order via the kernels.
int cg_solve(const Grid2d& gr, double sigma, const std::vector<double>& rhs,
             std::vector<double>& x, double tol, Exec how) {
    const std::size_t n = rhs.size();
    x.assign(n, 0.0);
    std::vector<double> r = rhs, p = rhs, hp(n);
    double rs = kernels::norm_sq(r.data(), n, how);
    const double stop2 = tol * tol * std::max(1.0, rs);
    const int maxit = 10000;
    int it = 0;
    while (rs > stop2 && it < maxit) {
        kernels::stencil5_apply(p.data(), hp.data(), gr.diag.data(), -sigma, gr.cx, gr.cy,
                                gr.nx, gr.ny, how);
        const double alpha = rs / kernels::dot(p.data(), hp.data(), n, how);
        kernels::axpy(alpha, p.data(), x.data(), n, how);
        kernels::axpy(-alpha, hp.data(), r.data(), n, how);
        const double rs_new = kernels::norm_sq(r.data(), n, how);
        kernels::aypx(rs_new / rs, r.data(), p.data(), n, how);
        rs = rs_new;
        ++it;
    }
    return it;
}

// Block shifted inverse iteration with Gram-Schmidt deflation and
// Rayleigh-Ritz extraction.  A single-vector version stalls on clustered
// eigenvalues; the block version resolves degenerate and near-degenerate
// multiplicities exactly.
Solve2dReport block_inverse_iteration(const Grid2d& gr, int count, double tol, Exec how) {
    const std::size_t n = gr.diag.size();
    const int guard = std::max(2, count / 2);
    const int b = count + guard;

    // Gershgorin lower bound minus a margin keeps H - sigma I positive definite.
    double lower = std::numeric_limits<double>::infinity();
    for (int i = 0; i < gr.nx; ++i)
        for (int j = 0; j < gr.ny; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * gr.ny + j;
            const double offsum = -gr.cx * ((i > 0) + (i < gr.nx - 1)) -
                                  gr.cy * ((j > 0) + (j < gr.ny - 1));
            lower = std::min(lower, gr.diag[idx] - offsum);
        }
    const double sigma = lower - 1e-6;

    Lcg rng;
    std::vector<std::vector<double>> X(static_cast<std::size_t>(b), std::vector<double>(n));
    for (auto& col : X)
        for (double& v : col) v = rng.next();

    std::vector<std::vector<double>> Y(static_cast<std::size_t>(b), std::vector<double>(n));
    std::vector<std::vector<double>> HY(static_cast<std::size_t>(b), std::vector<double>(n));
    std::vector<double> ritz;
    Matrix U;

    Solve2dReport rep;
    const int outer_cap = 200;
    for (int sweep = 1; sweep <= outer_cap; ++sweep) {
        rep.sweeps = sweep;

        for (int k = 0; k < b; ++k)
            cg_solve(gr, sigma, X[static_cast<std::size_t>(k)], Y[static_cast<std::size_t>(k)], 1e-10, how);

        // Modified Gram-Schmidt; a numerically null column is reseeded from
        // the deterministic stream.
        for (int k = 0; k < b; ++k) {
            auto& yk = Y[static_cast<std::size_t>(k)];
            for (int attempt = 0; attempt < 3; ++attempt) {
                for (int j = 0; j < k; ++j) {
                    const double proj =
                        kernels::dot(Y[static_cast<std::size_t>(j)].data(), yk.data(), n, how);
                    kernels::axpy(-proj, Y[static_cast<std::size_t>(j)].data(), yk.data(), n, how);
                }
                const double nrm = std::sqrt(kernels::norm_sq(yk.data(), n, how));
                if (nrm > 1e-150) {
                    for (double& v : yk) v /= nrm;
                    break;
                }
                for (double& v : yk) v = rng.next();
            }
        }

        // Rayleigh-Ritz on the block.
        for (int k = 0; k < b; ++k)
            kernels::stencil5_apply(Y[static_cast<std::size_t>(k)].data(),
                                    HY[static_cast<std::size_t>(k)].data(), gr.diag.data(), 0.0,
                                    gr.cx, gr.cy, gr.nx, gr.ny, how);
        Matrix S(b);
        for (int j = 0; j < b; ++j)
            for (int k = j; k < b; ++k) {
                const double s = kernels::dot(Y[static_cast<std::size_t>(j)].data(),
                                              HY[static_cast<std::size_t>(k)].data(), n, how);
                S(j, k) = s;
                S(k, j) = s;
            }
        symmetric_eigen(S, ritz, &U);

        // X <- Y * U, and the same rotation applied to HY gives H*X for free.
        std::vector<std::vector<double>> Xn(static_cast<std::size_t>(b), std::vector<double>(n));
        std::vector<std::vector<double>> HXn(static_cast<std::size_t>(b), std::vector<double>(n));
        for (int k = 0; k < b; ++k) {
            auto& xk = Xn[static_cast<std::size_t>(k)];
            auto& hxk = HXn[static_cast<std::size_t>(k)];
            for (int j = 0; j < b; ++j) {
                const double u = U(j, k);
                if (u == 0.0) continue;
                kernels::axpy(u, Y[static_cast<std::size_t>(j)].data(), xk.data(), n, how);
                kernels::axpy(u, HY[static_cast<std::size_t>(j)].data(), hxk.data(), n, how);
            }
        }

        bool done = true;
        for (int k = 0; k < count; ++k) {
            std::vector<double> res = HXn[static_cast<std::size_t>(k)];
            kernels::axpy(-ritz[static_cast<std::size_t>(k)], Xn[static_cast<std::size_t>(k)].data(),
                          res.data(), n, how);
            const double rn = std::sqrt(kernels::norm_sq(res.data(), n, how));
            if (rn > tol * std::max(1.0, std::abs(ritz[static_cast<std::size_t>(k)]))) {
                done = false;
                break;
            }
        }

        X = std::move(Xn);
        if (done) {
            rep.converged = true;
            rep.values.assign(ritz.begin(), ritz.begin() + count);
            return rep;
        }
    }

    rep.converged = false; // sweep cap reached; report the current Ritz values
    rep.values.assign(ritz.begin(), ritz.begin() + count);
    return rep;
}

} // namespace

Solve2dReport solve_2d(const PotentialSpec& pot, const GridSpec& grid, int count, double tol,
                       kernels::Exec how) {
    if (grid.coord != GridSpec::Coord::cartesian_2d)
        throw std::invalid_argument("solve_2d: grid must be two-dimensional");
    if (grid.nx < 16 || grid.ny < 16)
        throw std::invalid_argument("solve_2d: at least 16 points per axis required");
    if (static_cast<long long>(grid.nx) * grid.ny > 250000)
        throw std::invalid_argument("solve_2d: grid exceeds 250000 points");
    if (count < 1 || count > grid.nx * grid.ny / 4)
        throw std::invalid_argument("solve_2d: invalid eigenvalue count");
    if (!pot.v2) throw std::invalid_argument("solve_2d: 2D potential not set");

    Grid2d gr = build_grid(pot, grid);

    Solve2dReport rep;
    if (is_separable(gr)) {
        rep.values = tensor_eigenvalues(gr, count);
        rep.separable_path = true;
        rep.converged = true;
        return rep;
    }
    return block_inverse_iteration(gr, count, tol, how);
}

double richardson(double value_coarse, double h_coarse, double value_fine, double h_fine) {
    const double c2 = h_coarse * h_coarse, f2 = h_fine * h_fine;
    return (value_fine * c2 - value_coarse * f2) / (c2 - f2);
}

SpectrumMatch compare_spectra(const std::vector<double>& algebraic,
                              const std::vector<double>& numeric, double tol) {
    SpectrumMatch m;
    std::size_t i = 0, j = 0;
    while (i < algebraic.size() && j < numeric.size()) {
        const double a = algebraic[i], v = numeric[j];
        const double scale = std::max(1.0, std::abs(a));
        if (std::abs(a - v) <= tol * scale) {
            m.matched.push_back({a, v, std::abs(a - v) / scale});
            m.max_rel_err = std::max(m.max_rel_err, m.matched.back().rel_err);
            ++i;
            ++j;
        } else if (v < a) {
            m.unmatched_numeric.push_back(v);
            ++j;
        } else {
            m.unmatched_algebraic.push_back(a);
            ++i;
        }
    }
    for (; i < algebraic.size(); ++i) m.unmatched_algebraic.push_back(algebraic[i]);
    for (; j < numeric.size(); ++j) m.unmatched_numeric.push_back(numeric[j]);
    m.all_algebraic_matched = m.unmatched_algebraic.empty();
    return m;
}

} // namespace sw
