// Serial vs OpenMP timing for the dense kernels: matrix products and the
// Chebyshev propagator recursion.

#include "specnorm/graphs.hpp"
#include "specnorm/matrix.hpp"
#include "specnorm/treeops.hpp"

#include <chrono>
#include <cstdio>
#include <random>

using namespace specnorm;
using clk = std::chrono::steady_clock;

static double secs(clk::time_point t0) {
    return std::chrono::duration<double>(clk::now() - t0).count();
}

int main(int argc, char** argv) {
    int n = (argc > 1) ? std::atoi(argv[1]) : 600;
    int reps = (argc > 2) ? std::atoi(argv[2]) : 3;

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a(i, j) = u(rng);
            b(i, j) = u(rng);
        }

    std::printf("dense %dx%d matmul, %d reps\n", n, n, reps);
    Matrix c_serial, c_par;
    auto t0 = clk::now();
    for (int r = 0; r < reps; ++r) c_serial = matmul_serial(a, b);
    double ts = secs(t0);
    t0 = clk::now();
    for (int r = 0; r < reps; ++r) c_par = matmul(a, b);
    double tp = secs(t0);
    std::printf("  serial  %8.3f s  (%.2f GFLOP/s)\n", ts, 2.0e-9 * n * n * n * reps / ts);
    std::printf("  openmp  %8.3f s  (%.2f GFLOP/s, speedup %.2fx)\n", tp,
                2.0e-9 * n * n * n * reps / tp, ts / tp);
    std::printf("  max |serial - openmp| = %.3e\n", c_serial.max_abs_diff(c_par));

    GraphBuildSpec spec;
    spec.kind = GraphKind::random_regular;
    spec.n = 400;
    spec.degree = 4;
    spec.seed = 99;
    RegularGraph g = build_graph(spec);
    std::printf("chebyshev_props on random 4-regular n=%d, n_max=20\n", g.num_vertices);
    t0 = clk::now();
    auto props = chebyshev_props(g, 20);
    std::printf("  %8.3f s (%zu operators)\n", secs(t0), props.size());
    return 0;
}
