// Compare the serial reference kernels against the OpenMP ones on the
// matrix shapes the chopper actually hits.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>

#include "altsieve/ff.hpp"

using namespace altsieve::ff;

namespace {

double time_once(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void bench_field(int p, int k, int n, int reps) {
    const Field& F = Field::get(p, k);
    std::mt19937_64 rng(42);
    Mat A = Mat::random(F, n, n, rng);
    Mat B = Mat::random(F, n, n, rng);

    Mat ref;
    double ts = 0, tp = 0;
    for (int r = 0; r < reps; r++) ts += time_once([&] { ref = kernels::mul_serial(A, B); });
    Mat par;
    for (int r = 0; r < reps; r++) tp += time_once([&] { par = kernels::mul_parallel(A, B); });
    bool same = (ref == par);

    Mat R1 = A, R2 = A;
    double rs = time_once([&] { kernels::rref_serial(R1); });
    double rp = time_once([&] { kernels::rref_parallel(R2); });
    bool rsame = (R1 == R2);

    std::cout << "GF(" << F.q << ") n=" << n << "  mul serial " << ts / reps << "s, parallel " << tp / reps
              << "s, speedup " << (tp > 0 ? ts / tp : 0) << (same ? "" : "  MISMATCH") << " | rref serial " << rs
              << "s, parallel " << rp << "s" << (rsame ? "" : "  MISMATCH") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    int n = (argc > 1) ? std::atoi(argv[1]) : 512;
    std::cout << "OpenMP available: " << (kernels::parallel_available() ? "yes" : "no") << "\n";
    bench_field(2, 1, n, 3);       // bit-packed path
    bench_field(5, 1, n, 1);       // table arithmetic
    bench_field(5, 2, n / 2, 1);   // Zech arithmetic
    bench_field(2, 2, n / 2, 1);
    return 0;
}
