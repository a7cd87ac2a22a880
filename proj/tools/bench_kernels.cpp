// Benchmark of the data-parallel kernels against their serial reference
// path, with a bitwise-identity check: both paths must produce identical
// results regardless of thread count, or the comparison fails the run.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "swspectra/kernels.hpp"

namespace {

using sw::kernels::Exec;

// Deterministic fill so the benchmark is reproducible run to run.
void fill(std::vector<double>& v, std::uint64_t seed) {
    std::uint64_t s = 0x9E3779B97F4A7C15ull ^ seed;
    for (double& x : v) {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        x = static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
    }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool bits_equal(const double* a, const double* b, std::size_t n) {
    return std::memcmp(a, b, n * sizeof(double)) == 0;
}

bool bits_equal(double a, double b) { return bits_equal(&a, &b, 1); }

struct Timing {
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool identical = false;
};

void report(const char* name, std::size_t n, const Timing& t, bool& all_identical) {
    std::printf("%-10s n=%-9zu serial %8.2f ms   parallel %8.2f ms   speedup %5.2fx   %s\n",
                name, n, t.serial_ms, t.parallel_ms,
                t.parallel_ms > 0.0 ? t.serial_ms / t.parallel_ms : 0.0,
                t.identical ? "bit-identical" : "MISMATCH");
    all_identical = all_identical && t.identical;
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n = 1u << 21;
    int reps = 40;
    int edge = 700;
    CLI::App app{"Serial vs parallel kernel benchmark with bitwise-identity check"};
    app.add_option("--n", n, "Vector length for dot/norm/axpy");
    app.add_option("--reps", reps, "Repetitions per kernel");
    app.add_option("--edge", edge, "Grid edge for the five-point stencil");
    CLI11_PARSE(app, argc, argv);

    std::printf("parallel path: %s\n",
                sw::kernels::parallel_available() ? "multi-threaded" : "serial fallback");

    std::vector<double> x(n), y(n), ys(n), yp(n);
    fill(x, 1);
    fill(y, 2);
    bool all_identical = true;

    {
        Timing t;
        double rs = 0.0, rp = 0.0;
        auto t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r) rs += sw::kernels::dot(x.data(), y.data(), n, Exec::serial);
        t.serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r)
            rp += sw::kernels::dot(x.data(), y.data(), n, Exec::parallel);
        t.parallel_ms = ms_since(t0);
        t.identical = bits_equal(rs, rp);
        report("dot", n, t, all_identical);
    }
    {
        Timing t;
        double rs = 0.0, rp = 0.0;
        auto t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r) rs += sw::kernels::norm_sq(x.data(), n, Exec::serial);
        t.serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r) rp += sw::kernels::norm_sq(x.data(), n, Exec::parallel);
        t.parallel_ms = ms_since(t0);
        t.identical = bits_equal(rs, rp);
        report("norm_sq", n, t, all_identical);
    }
    {
        Timing t;
        ys = y;
        auto t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r) sw::kernels::axpy(0.5, x.data(), ys.data(), n, Exec::serial);
        t.serial_ms = ms_since(t0);
        yp = y;
        t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r)
            sw::kernels::axpy(0.5, x.data(), yp.data(), n, Exec::parallel);
        t.parallel_ms = ms_since(t0);
        t.identical = bits_equal(ys.data(), yp.data(), n);
        report("axpy", n, t, all_identical);
    }
    {
        Timing t;
        const std::size_t g = static_cast<std::size_t>(edge) * edge;
        std::vector<double> gx(g), diag(g), outs(g), outp(g);
        fill(gx, 3);
        fill(diag, 4);
        auto t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r)
            sw::kernels::stencil5_apply(gx.data(), outs.data(), diag.data(), 0.25, -1.0, -1.0,
                                        edge, edge, Exec::serial);
        t.serial_ms = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r)
            sw::kernels::stencil5_apply(gx.data(), outp.data(), diag.data(), 0.25, -1.0, -1.0,
                                        edge, edge, Exec::parallel);
        t.parallel_ms = ms_since(t0);
        t.identical = bits_equal(outs.data(), outp.data(), g);
        report("stencil5", g, t, all_identical);
    }

    if (!all_identical) {
        std::fprintf(stderr, "serial and parallel paths disagree bitwise\n");
        return 1;
    }
    return 0;
}
