#pragma once

#include <cstddef>

namespace sw::kernels {

// Execution policy for the data-parallel primitives.  `parallel` uses OpenMP
// when the build has it and falls back to the serial path otherwise.  Both
// paths are bit-identical by construction: every reduction is accumulated in
// fixed blocks that are combined sequentially in block order, so the summation
// order never depends on the thread count.
enum class Exec { serial, parallel };

inline constexpr std::size_t reduction_block = 4096;

// True when the parallel path actually runs multi-threaded in this build.
bool parallel_available();

// Dot product with block-sequential reduction.
double dot(const double* x, const double* y, std::size_t n, Exec how);

// Squared Euclidean norm (same reduction scheme).
double norm_sq(const double* x, std::size_t n, Exec how);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n, Exec how);

// y = x + alpha * y
void aypx(double alpha, const double* x, double* y, std::size_t n, Exec how);

// Five-point-stencil operator on an nx-by-ny grid with Dirichlet boundary
// (row-major, index = ix*ny + iy):
//   y[i] = (diag[i] + shift) * x[i] + cx*(x west + x east) + cy*(x south + x north)
// The caller folds the sign of the couplings into cx, cy.
void stencil5_apply(const double* x, double* y, const double* diag, double shift,
                    double cx, double cy, int nx, int ny, Exec how);

} // namespace sw::kernels
