#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qsr/quiver.hpp"

namespace qsr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// One dense complex matrix per edge, of shape v_{h(a)} x v_{t(a)}, stored
/// contiguously (column-major per edge) so flow updates and norms can run
/// over the flat array. Immutable topology; matrix entries are mutable.
class Representation {
public:
    Representation(Quiver quiver, DimensionVector dims);

    [[nodiscard]] const Quiver& quiver() const { return quiver_; }
    [[nodiscard]] const DimensionVector& dims() const { return dims_; }
    [[nodiscard]] int edge_count() const { return quiver_.edge_count(); }

    [[nodiscard]] long long rows(int a) const {
        return dims_[static_cast<std::size_t>(quiver_.edges[static_cast<std::size_t>(a)].head)];
    }
    [[nodiscard]] long long cols(int a) const {
        return dims_[static_cast<std::size_t>(quiver_.edges[static_cast<std::size_t>(a)].tail)];
    }

    [[nodiscard]] Eigen::Map<Matrix> matrix(int a) {
        return {data_.data() + offset_[static_cast<std::size_t>(a)], rows(a), cols(a)};
    }
    [[nodiscard]] Eigen::Map<const Matrix> matrix(int a) const {
        return {data_.data() + offset_[static_cast<std::size_t>(a)], rows(a), cols(a)};
    }

    [[nodiscard]] std::span<Complex> flat() { return data_; }
    [[nodiscard]] std::span<const Complex> flat() const { return data_; }

    [[nodiscard]] double norm2sq() const;
    [[nodiscard]] bool all_finite() const;

private:
    Quiver quiver_;
    DimensionVector dims_;
    std::vector<std::ptrdiff_t> offset_;
    std::vector<Complex> data_;
};

/// Seeded test-instance generator. With a sub-dimension vector it builds a
/// representation preserving the leading coordinate subspaces of those
/// dimensions (lower-left blocks zeroed) and then conjugates by seeded
/// random unitaries per vertex, hiding the planted subspace tuple. Without
/// one it fills every entry with iid complex Gaussians. Deterministic per
/// seed.
Representation plant_instance(const QuiverSetup& setup,
                              const std::optional<DimensionVector>& sub, std::uint64_t seed);

/// A_a -> g_{h(a)} A_a g_{t(a)}^*; g must be one unitary matrix per vertex.
Representation gauge_transform(const Representation& rep, const std::vector<Matrix>& g);

/// One Haar-ish unitary per vertex (QR of a Gaussian matrix with the
/// R-diagonal sign fixed).
std::vector<Matrix> random_unitaries(const DimensionVector& dims, std::mt19937_64& rng);

/// Q factor of the thin QR of y with positive-real R diagonal. The columns
/// span the same space as y; y must have full column rank.
Matrix orthonormalize(const Matrix& y);

/// Gaussian complex matrix with iid entries (re, im) ~ N(0, 1).
Matrix gaussian_matrix(long long rows, long long cols, std::mt19937_64& rng);

} // namespace qsr
