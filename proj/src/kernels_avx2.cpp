// Compiled with -mavx2 in a separate translation unit; only reached through
// the runtime dispatch in kernels.cpp when the CPU reports AVX2.

#include "qsr/kernels.hpp"

#include <immintrin.h>

namespace qsr::kernels {

namespace {

double hsum(__m256d v) {
    alignas(32) double buf[4];
    _mm256_store_pd(buf, v);
    return (buf[0] + buf[1]) + (buf[2] + buf[3]);
}

double nrm2sq_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vx, vy));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

} // namespace

const Ops& avx2_ops_impl() {
    static const Ops ops{"avx2", nrm2sq_avx2, dot_avx2, axpy_avx2, scale_avx2};
    return ops;
}

} // namespace qsr::kernels
