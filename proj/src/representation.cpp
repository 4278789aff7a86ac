#include "qsr/representation.hpp"

#include <cmath>

#include "qsr/kernels.hpp"

namespace qsr {

Representation::Representation(Quiver quiver, DimensionVector dims)
    : quiver_(std::move(quiver)), dims_(std::move(dims)) {
    if (dims_.size() != quiver_.vertices.size())
        throw DomainError("dimension vector does not match quiver");
    for (long long d : dims_.v)
        if (d < 0) throw DomainError("negative dimension");
    for (const Edge& e : quiver_.edges)
        if (e.tail < 0 || e.tail >= quiver_.vertex_count() || e.head < 0 ||
            e.head >= quiver_.vertex_count())
            throw DomainError("edge with unknown vertex");

    std::ptrdiff_t total = 0;
    offset_.reserve(quiver_.edges.size());
    for (int a = 0; a < quiver_.edge_count(); ++a) {
        offset_.push_back(total);
        total += static_cast<std::ptrdiff_t>(rows(a) * cols(a));
    }
    data_.assign(static_cast<std::size_t>(total), Complex(0.0, 0.0));
}

double Representation::norm2sq() const {
    return kernels::nrm2sq(flat());
}

bool Representation::all_finite() const {
    for (const Complex& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

Matrix gaussian_matrix(long long rows, long long cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(rows, cols);
    for (long long c = 0; c < cols; ++c)
        for (long long r = 0; r < rows; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(r, c) = Complex(re, im);
        }
    return m;
}

Matrix orthonormalize(const Matrix& y) {
    if (y.cols() == 0) return Matrix(y.rows(), 0);
    Eigen::HouseholderQR<Matrix> qr(y);
    Matrix q = qr.householderQ() * Matrix::Identity(y.rows(), y.cols());
    const Matrix r = qr.matrixQR().topRows(y.cols()).triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < y.cols(); ++i) {
        const Complex d = r(i, i);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(i) *= std::conj(d) / mag;
    }
    return q;
}

std::vector<Matrix> random_unitaries(const DimensionVector& dims, std::mt19937_64& rng) {
    std::vector<Matrix> out;
    out.reserve(dims.size());
    for (long long d : dims.v) {
        if (d == 0) {
            out.emplace_back(0, 0);
            continue;
        }
        out.push_back(orthonormalize(gaussian_matrix(d, d, rng)));
    }
    return out;
}

Representation gauge_transform(const Representation& rep, const std::vector<Matrix>& g) {
    if (g.size() != rep.dims().size()) throw DomainError("gauge tuple size mismatch");
    Representation out(rep.quiver(), rep.dims());
    for (int a = 0; a < rep.edge_count(); ++a) {
        const Edge& e = rep.quiver().edges[static_cast<std::size_t>(a)];
        out.matrix(a) = g[static_cast<std::size_t>(e.head)] * rep.matrix(a) *
                        g[static_cast<std::size_t>(e.tail)].adjoint();
    }
    return out;
}

Representation plant_instance(const QuiverSetup& setup,
                              const std::optional<DimensionVector>& sub, std::uint64_t seed) {
    if (sub) {
        if (!sub->fits_within(setup.dims))
            throw DomainError("planted sub-dimension vector exceeds ambient dimensions");
        if (sub->is_zero() || *sub == setup.dims)
            throw DomainError("planted sub-dimension vector must be proper and nonzero");
    }
    std::mt19937_64 rng(seed);
    Representation rep(setup.quiver, setup.dims);
    for (int a = 0; a < rep.edge_count(); ++a) {
        const Edge& e = rep.quiver().edges[static_cast<std::size_t>(a)];
        Matrix m = gaussian_matrix(rep.rows(a), rep.cols(a), rng);
        if (sub) {
            // Zero the block mapping the leading v'_{t} coordinates outside
            // the leading v'_{h} coordinates, so the coordinate tuple is
            // preserved.
            const long long sh = (*sub)[static_cast<std::size_t>(e.head)];
            const long long st = (*sub)[static_cast<std::size_t>(e.tail)];
            if (st > 0 && sh < rep.rows(a))
                m.block(sh, 0, rep.rows(a) - sh, st).setZero();
        }
        rep.matrix(a) = m;
    }
    if (sub) {
        auto g = random_unitaries(setup.dims, rng);
        return gauge_transform(rep, g);
    }
    return rep;
}

} // namespace qsr
