#include "swspectra/kernels.hpp"

#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sw::kernels {

bool parallel_available() {
#ifdef _OPENMP
    return omp_get_max_threads() > 1;
#else
    return false;
#endif
}

namespace {

inline double block_sum_dot(const double* x, const double* y, std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i] * y[i];
    return s;
}

} // namespace

double dot(const double* x, const double* y, std::size_t n, Exec how) {
    const std::size_t nblocks = (n + reduction_block - 1) / reduction_block;
    if (nblocks <= 1) return block_sum_dot(x, y, 0, n);

    std::vector<double> partial(nblocks);
#ifdef _OPENMP
    if (how == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * reduction_block;
            const std::size_t hi = lo + reduction_block < n ? lo + reduction_block : n;
            partial[static_cast<std::size_t>(b)] = block_sum_dot(x, y, lo, hi);
        }
    } else
#else
    (void)how;
#endif
    {
        for (std::size_t b = 0; b < nblocks; ++b) {
            const std::size_t lo = b * reduction_block;
            const std::size_t hi = lo + reduction_block < n ? lo + reduction_block : n;
            partial[b] = block_sum_dot(x, y, lo, hi);
        }
    }

    // Sequential combine in block order: identical for both policies.
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

double norm_sq(const double* x, std::size_t n, Exec how) { return dot(x, x, n, how); }

void axpy(double alpha, const double* x, double* y, std::size_t n, Exec how) {
#ifdef _OPENMP
    if (how == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            y[i] += alpha * x[i];
        return;
    }
#else
    (void)how;
#endif
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void aypx(double alpha, const double* x, double* y, std::size_t n, Exec how) {
#ifdef _OPENMP
    if (how == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(n); ++i)
            y[i] = x[i] + alpha * y[i];
        return;
    }
#else
    (void)how;
#endif
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + alpha * y[i];
}

namespace {

inline void stencil_row(const double* x, double* y, const double* diag, double shift,
                        double cx, double cy, int ix, int nx, int ny) {
    const std::size_t base = static_cast<std::size_t>(ix) * ny;
    for (int iy = 0; iy < ny; ++iy) {
        const std::size_t i = base + static_cast<std::size_t>(iy);
        double v = (diag[i] + shift) * x[i];
        if (iy > 0) v += cy * x[i - 1];
        if (iy < ny - 1) v += cy * x[i + 1];
        if (ix > 0) v += cx * x[i - static_cast<std::size_t>(ny)];
        if (ix < nx - 1) v += cx * x[i + static_cast<std::size_t>(ny)];
        y[i] = v;
    }
}

} // namespace

void stencil5_apply(const double* x, double* y, const double* diag, double shift,
                    double cx, double cy, int nx, int ny, Exec how) {
#ifdef _OPENMP
    if (how == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int ix = 0; ix < nx; ++ix)
            stencil_row(x, y, diag, shift, cx, cy, ix, nx, ny);
        return;
    }
#else
    (void)how;
#endif
    for (int ix = 0; ix < nx; ++ix)
        stencil_row(x, y, diag, shift, cx, cy, ix, nx, ny);
}

} // namespace sw::kernels
