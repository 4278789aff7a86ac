#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qsr::kernels {

/// Flat array kernels used by the numeric layer's hot loops. Complex data is
/// viewed as interleaved doubles of twice the length. Each operation has a
/// scalar reference implementation and (on x86-64 with AVX2) a vectorized
/// variant selected at runtime; the two are equivalence-tested.
struct Ops {
    const char* name;
    double (*nrm2sq)(const double* x, std::size_t n);                 ///< sum x_i^2
    double (*dot)(const double* x, const double* y, std::size_t n);   ///< sum x_i y_i
    void (*axpy)(double a, const double* x, double* y, std::size_t n); ///< y += a x
    void (*scale)(double a, double* x, std::size_t n);                 ///< x *= a
};

const Ops& scalar_ops();
/// nullptr when AVX2 was not compiled in or the CPU lacks it.
const Ops* avx2_ops();

/// The backend in effect (AVX2 when available unless overridden).
const Ops& active();

/// Force a backend by name ("scalar", "avx2", "auto"). Returns false and
/// leaves the selection unchanged when the name is unknown or unavailable.
bool select_backend(std::string_view name);

using cspan = std::span<const std::complex<double>>;
using span = std::span<std::complex<double>>;

inline const double* as_doubles(cspan x) {
    return reinterpret_cast<const double*>(x.data());
}
inline double* as_doubles(span x) {
    return reinterpret_cast<double*>(x.data());
}

/// Squared Frobenius norm of a complex array.
inline double nrm2sq(cspan x) {
    return active().nrm2sq(as_doubles(x), 2 * x.size());
}

/// Real part of the Hermitian inner product <x, y> = sum conj(x_i) y_i,
/// i.e. the flat real dot product. This is the real inner product the
/// gradient formulas are stated in.
inline double dot_re(cspan x, cspan y) {
    return active().dot(as_doubles(x), as_doubles(y), 2 * x.size());
}

/// y += a * x with a real coefficient.
inline void axpy(double a, cspan x, span y) {
    active().axpy(a, as_doubles(x), as_doubles(y), 2 * x.size());
}

/// x *= a with a real coefficient.
inline void scale(double a, span x) {
    active().scale(a, as_doubles(x), 2 * x.size());
}

} // namespace qsr::kernels
