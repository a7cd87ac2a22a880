#pragma once

#include "swspectra/kernels.hpp"

#include <functional>
#include <string>
#include <vector>

namespace sw {

// Grid description for the finite-difference oracles.  Boundary condition is
// Dirichlet on every finite edge; the radial grid has a natural zero-flux
// inner boundary at r=0 and an effective Dirichlet wall at r=R.
struct GridSpec {
    enum class Coord { cartesian_1d, cartesian_2d, radial_half_line };

    Coord coord = Coord::cartesian_1d;
    double x_min = 0.0, x_max = 0.0; // axis 1; for radial grids x_max = R, x_min = 0
    double y_min = 0.0, y_max = 0.0; // axis 2 (2D only)
    int nx = 0, ny = 0;              // interior points per axis

    static GridSpec line(double a, double b, int n) {
        GridSpec g;
        g.coord = Coord::cartesian_1d;
        g.x_min = a;
        g.x_max = b;
        g.nx = n;
        return g;
    }

    static GridSpec plane(double ax, double bx, int nx, double ay, double by, int ny) {
        GridSpec g;
        g.coord = Coord::cartesian_2d;
        g.x_min = ax;
        g.x_max = bx;
        g.nx = nx;
        g.y_min = ay;
        g.y_max = by;
        g.ny = ny;
        return g;
    }

    static GridSpec radial(double R, int n) {
        GridSpec g;
        g.coord = Coord::radial_half_line;
        g.x_max = R;
        g.nx = n;
        return g;
    }
};

// Potential + kinetic parameters for one oracle solve.  The potential is a
// free-form callable sampled on the grid; it must be finite at every grid
// point (grids for singular potentials keep the singularity off-grid).
struct PotentialSpec {
    std::function<double(double)> v1;            // 1D / radial potential
    std::function<double(double, double)> v2;    // 2D potential
    double m_eff = 1.0;                          // effective mass in -(hbar^2/2m) Laplacian
    double hbar = 1.0;
    int wave_index = 0;                          // angular index of the radial channel
};

struct Solve2dReport {
    std::vector<double> values;   // ascending; lowest `count`
    bool converged = true;        // false: sweep cap reached, values are partial
    int sweeps = 0;               // outer iterations used (0 on the tensor path)
    bool separable_path = false;  // solved by exact tensor decomposition
};

// Lowest `count` eigenvalues of -(hbar^2/2m) d2/dx2 + V on a 1D grid
// (second-order central differences; symmetric tridiagonal QL), or of the
// radial operator in the given angular channel on the half-line grid
// (cell-centered finite-volume discretization in polar measure).
std::vector<double> solve_1d(const PotentialSpec& pot, const GridSpec& grid, int count);

// Lowest `count` eigenvalues of the five-point-stencil discretization on a 2D
// grid.  Exactly separable potentials are detected and solved by a tensor
// decomposition into two tridiagonal problems (same stencil eigenvalues, true
// multiplicities).  The general engine is block shifted inverse iteration:
// deterministic start block, conjugate-gradient inner solves, modified
// Gram-Schmidt deflation, Rayleigh-Ritz extraction per sweep.
Solve2dReport solve_2d(const PotentialSpec& pot, const GridSpec& grid, int count,
                       double tol = 1e-9, kernels::Exec how = kernels::Exec::parallel);

// h^2 Richardson extrapolation of a second-order-convergent quantity from an
// arbitrary pair of grid spacings.
double richardson(double value_coarse, double h_coarse, double value_fine, double h_fine);

// Greedy ascending one-to-one matching of two sorted spectra.
struct SpectrumMatch {
    struct Pair {
        double algebraic;
        double numeric;
        double rel_err;
    };
    std::vector<Pair> matched;
    std::vector<double> unmatched_algebraic;
    std::vector<double> unmatched_numeric;
    double max_rel_err = 0.0;
    bool all_algebraic_matched = false;
};

SpectrumMatch compare_spectra(const std::vector<double>& algebraic,
                              const std::vector<double>& numeric, double tol);

} // namespace sw
