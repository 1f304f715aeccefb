// Compares the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>
#include <functional>

#include "ag/fq.hpp"
#include "ag/padic.hpp"
#include "ag/poly.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace ag;

namespace {

double time_ms(const std::function<void()>& fn, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        double dt = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (dt < best) best = dt;
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without openmp; both columns run the serial code\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    {
        auto R3 = make_ring({"x", "y", "z"});
        Morphism f = make_morphism(R3, {parse_polynomial("x*y*(x+y)*(x+y*z)", R3)});
        Ideal F = fiber_ideal(f, {Rational(0)});
        unsigned long long a = 0, b = 0;
        double s = time_ms([&] { a = count_points_serial(F, 7).count; });
        double p = time_ms([&] { b = count_points(F, 7).count; });
        if (a != b) std::printf("count_points DISAGREES: %llu vs %llu\n", a, b);
        row("count_points F_7 (6 vars)", s, p);
    }

    {
        auto R = make_ring({"x", "y"});
        Morphism blow = make_morphism(R, {poly_var(R, 0), poly_mul(poly_var(R, 0), poly_var(R, 1))});
        auto ball = haar_ball(3, 4, 2, {0, 0}, 1, 1);
        LevelMeasure a, b;
        double s = time_ms([&] { a = pushforward_serial(ball, blow); });
        double p = time_ms([&] { b = pushforward(ball, blow); });
        if (!(a == b)) std::printf("pushforward DISAGREES\n");
        row("pushforward 3^8 cosets", s, p);

        auto m = mu_n(2, 6, 1);
        LevelMeasure c, d;
        double cs = time_ms([&] { c = convolve_serial(m, m); });
        double cp = time_ms([&] { d = convolve(m, m); });
        if (!(c == d)) std::printf("convolve DISAGREES\n");
        row("convolve level 6", cs, cp);

        auto mu = mu_n(3, 3, 1);
        FourierTable ft, fs;
        double fs_ms = time_ms([&] { fs = fourier_serial(mu); });
        double fp_ms = time_ms([&] { ft = fourier(mu); });
        if (!(fs.values == ft.values)) std::printf("fourier DISAGREES\n");
        row("fourier 3^6 dual points", fs_ms, fp_ms);
    }

    return 0;
}
