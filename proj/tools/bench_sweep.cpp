// Compares the serial reference sweep against the OpenMP kernel: times both
// and checks the records are bit-identical.
//
//   bench_sweep [n]    (default n = 100000)

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "propeller/invariants.hpp"

using namespace propeller;

namespace {

double run_ms(const ConcentricPair& pair, int n, Exec policy,
              std::vector<SampleRecord>& out) {
    const auto start = std::chrono::steady_clock::now();
    out = evaluate_samples(pair, n, policy);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

bool records_identical(const std::vector<SampleRecord>& a, const std::vector<SampleRecord>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        const SampleRecord& x = a[i];
        const SampleRecord& y = b[i];
        if (x.skipped != y.skipped) return false;
        if (std::memcmp(&x.t, &y.t, sizeof(double)) != 0) return false;
        const double* xs[] = {&x.s1, &x.s2, &x.s3, &x.inradius, &x.circumradius, &x.rho,
                              &x.delta_o, &x.delta_1, &x.delta_2, &x.delta_3, &x.sigma_o,
                              &x.ratio_sum, &x.closure_residual};
        const double* ys[] = {&y.s1, &y.s2, &y.s3, &y.inradius, &y.circumradius, &y.rho,
                              &y.delta_o, &y.delta_1, &y.delta_2, &y.delta_3, &y.sigma_o,
                              &y.ratio_sum, &y.closure_residual};
        for (size_t j = 0; j < std::size(xs); ++j)
            if (std::memcmp(xs[j], ys[j], sizeof(double)) != 0) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 100000;
    if (n < 1) {
        std::fprintf(stderr, "usage: bench_sweep [n >= 1]\n");
        return 2;
    }
    const ConcentricPair pair = incircle_pair(1.5, 1.0);

    std::vector<SampleRecord> serial, parallel;
    const double t_serial = run_ms(pair, n, Exec::serial, serial);
    const double t_parallel = run_ms(pair, n, Exec::parallel, parallel);

#ifdef _OPENMP
    std::printf("openmp: enabled\n");
#else
    std::printf("openmp: disabled (parallel falls back to serial)\n");
#endif
    std::printf("samples:  %d\n", n);
    std::printf("serial:   %.1f ms\n", t_serial);
    std::printf("parallel: %.1f ms\n", t_parallel);
    std::printf("speedup:  %.2fx\n", t_serial / t_parallel);

    if (!records_identical(serial, parallel)) {
        std::printf("records: MISMATCH between serial and parallel\n");
        return 1;
    }
    std::printf("records: bit-identical\n");
    return 0;
}
