// Benchmark comparing the OpenMP kernels against their serial reference
// implementations: the Hirzebruch-Jung pair sweep, the radial Monge-Ampere
// Newton solve, and the batch momentum quadrature grid.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kecalc/calabi.hpp"
#include "kecalc/hj.hpp"
#include "kecalc/ma_radial.hpp"

using namespace kecalc;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return seconds(t0, t1);
}

void report(const char* kernel, double serial_s, double parallel_s, bool equal) {
    std::printf("%-24s %10.3f ms %10.3f ms   x%-6.2f %s\n", kernel, serial_s * 1e3, parallel_s * 1e3,
                parallel_s > 0 ? serial_s / parallel_s : 0.0, equal ? "results match" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    bool smoke = false;
    long long pmax = 800;
    int nodes = 1 << 16;
    int rows = 4096;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--smoke") == 0) smoke = true;
        else if (std::strcmp(argv[i], "--pmax") == 0 && i + 1 < argc) pmax = std::atoll(argv[++i]);
        else if (std::strcmp(argv[i], "--nodes") == 0 && i + 1 < argc) nodes = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--rows") == 0 && i + 1 < argc) rows = std::atoi(argv[++i]);
    }
    if (smoke) {
        pmax = 120;
        nodes = 8192;
        rows = 256;
    }

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both columns run the serial path\n");
#endif
    std::printf("%-24s %13s %13s   %-7s\n", "kernel", "serial", "parallel", "speedup");

    {
        sweep_report rs, rp;
        double ts = timed([&] { rs = hj_sweep(pmax, false); });
        double tp = timed([&] { rp = hj_sweep(pmax, true); });
        bool equal = rs.pairs == rp.pairs && rs.all_ok == rp.all_ok &&
                     rs.total_entries == rp.total_entries && rs.max_length == rp.max_length;
        char label[64];
        std::snprintf(label, sizeof(label), "hj_sweep p<=%lld", pmax);
        report(label, ts, tp, equal);
    }

    {
        radial_problem prob = manufactured_problem(2, 1e-3, nodes, 3, 0.3);
        // the residual floor scales like 1e-16/h^2
        double tol = std::max(1e-10, 1e-15 * double(nodes) * double(nodes));
        radial_solution ss, sp;
        double ts = timed([&] { ss = newton_solve_serial(prob, tol, 40); });
        double tp = timed([&] { sp = newton_solve(prob, tol, 40); });
        bool equal = sup_diff(ss.u, sp.u) == 0.0 && ss.iterations == sp.iterations;
        char label[64];
        std::snprintf(label, sizeof(label), "newton_solve N=%d", nodes);
        report(label, ts, tp, equal);
    }

    {
        einstein_profile prof = canonical_profile(2, 3);
        double tau0 = positive_root(prof) + 0.5 - 1.0;
        std::vector<double> taus(rows);
        double s0 = 1.0 + tau0;
        for (int j = 0; j < rows; ++j)
            taus[j] = s0 * std::pow(1000.0, double(j + 1) / rows) - 1.0;
        std::vector<double> gs, gp;
        double ts = timed([&] { gs = momentum_grid(prof, tau0, taus, false); });
        double tp = timed([&] { gp = momentum_grid(prof, tau0, taus, true); });
        bool equal = sup_diff(gs, gp) == 0.0;
        char label[64];
        std::snprintf(label, sizeof(label), "momentum_grid m=%d", rows);
        report(label, ts, tp, equal);
    }

    return 0;
}
