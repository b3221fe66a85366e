// bench_kernels.cpp -- serial reference vs OpenMP kernels, wall-clock table.
#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "charfun/distance.hpp"
#include "charfun/fft.hpp"
#include "charfun/norms.hpp"
#include "charfun/shapes.hpp"

using namespace charfun;

namespace {

template <class F>
double time_best_of(int reps, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const std::string& name, double serial, double parallel) {
    std::printf("%-28s %9.3f ms %9.3f ms  %5.2fx\n", name.c_str(), serial * 1e3, parallel * 1e3, serial / parallel);
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 1024;
    const GridSpec g = make_grid(2, n, 1.0);
    int threads = 1;
#ifdef _OPENMP
#pragma omp parallel
    {
#pragma omp single
        threads = omp_get_num_threads();
    }
#endif
    std::printf("n = %d, threads = %d\n", n, threads);
    std::printf("%-28s %12s %12s %7s\n", "kernel", "serial", "parallel", "speedup");

    const Shape disk = Disk{{0.5, 0.5}, 0.25};
    const Shape koch = KochSnowflake{{0.5, 0.5}, 0.3, 6};

    row("rasterize disk",
        time_best_of(3, [&] { rasterize(disk, g, {}, Exec::serial); }),
        time_best_of(3, [&] { rasterize(disk, g, {}, Exec::parallel); }));

    row("rasterize koch depth 6",
        time_best_of(3, [&] { rasterize(koch, g, {}, Exec::serial); }),
        time_best_of(3, [&] { rasterize(koch, g, {}, Exec::parallel); }));

    const ScalarField chi = rasterize(disk, g);

    row("distance transform",
        time_best_of(3, [&] { distance_transform(chi, Exec::serial); }),
        time_best_of(3, [&] { distance_transform(chi, Exec::parallel); }));

    row("forward fft",
        time_best_of(3, [&] { forward_transform(chi, Exec::serial); }),
        time_best_of(3, [&] { forward_transform(chi, Exec::parallel); }));

    const Spectrum s = forward_transform(chi);
    row("inverse fft",
        time_best_of(3, [&] { inverse_transform(s, Exec::serial); }),
        time_best_of(3, [&] { inverse_transform(s, Exec::parallel); }));

    row("lp norm (p=4/3, annulus)",
        time_best_of(5, [&] { lp_norm(s, 4.0 / 3.0, Annulus{2.0, n / 4.0}, Exec::serial); }),
        time_best_of(5, [&] { lp_norm(s, 4.0 / 3.0, Annulus{2.0, n / 4.0}, Exec::parallel); }));

    // Parity spot check: the parallel paths must reproduce the serial
    // reference bitwise.
    const Spectrum s2 = forward_transform(chi, Exec::serial);
    bool same = s.values == s2.values;
    const DistanceMap d1 = distance_transform(chi, Exec::serial);
    const DistanceMap d2 = distance_transform(chi, Exec::parallel);
    same = same && d1.values == d2.values;
    std::printf("serial/parallel parity: %s\n", same ? "bitwise identical" : "MISMATCH");
    return same ? 0 : 1;
}
