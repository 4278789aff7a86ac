#include "qsr/kernels.hpp"

namespace qsr::kernels {

namespace {

double nrm2sq_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{"scalar", nrm2sq_scalar, dot_scalar, axpy_scalar, scale_scalar};
    return ops;
}

} // namespace qsr::kernels
