#pragma once

#include <optional>
#include <vector>

#include "qsr/slope.hpp"

namespace qsr {

/// Complex dimensions of the vertex-wise and edge-wise Hom spaces from a
/// sub-dimension vector to its complement inside the ambient spaces:
///   hom0 = sum_j v'_j (v_j - v'_j)
///   hom1 = sum_a v'_{t(a)} (v_{h(a)} - v'_{h(a)})
/// Real dimensions are twice these.
struct HomDims {
    long long hom0_complex = 0;
    long long hom1_complex = 0;
};

HomDims hom_dims(const Quiver& quiver, const DimensionVector& dims, const DimensionVector& sub);

/// chi = hom0 - hom1 (complex). The candidate value entering d_min is -2*chi.
long long euler_characteristic(const Quiver& quiver, const DimensionVector& dims,
                               const DimensionVector& sub);

struct DminCandidate {
    DimensionVector dims;
    long long minus_two_chi = 0; ///< 2 * (hom1 - hom0), a real dimension difference
    SlopeReport report;
};

/// Minimum of -2*chi over all destabilizing sub-dimension vectors.
/// d_min is empty exactly when the destabilizing set is empty (minimum over
/// nothing, reported as +infinity downstream). The witness is the
/// lexicographically least minimizer; all minimizers are recoverable from
/// per_candidate.
struct DminReport {
    std::optional<long long> d_min;
    std::optional<DimensionVector> witness;
    std::vector<DminCandidate> per_candidate;
    Rational shift;

    [[nodiscard]] bool is_infinite() const { return !d_min.has_value(); }
};

DminReport d_min(const QuiverSetup& setup, const DestabilizerOptions& opts = {});

/// Exact minimal value 2(k + n - 1) for the framed-instanton family,
/// cross-checked against exhaustive enumeration in the test suite.
long long adhm_dmin_closed_form(long long k, long long n);

/// Largest level l >= 0 such that every l-element subset J of the sides
/// satisfies sum_J s_j < sum_{not J} s_j. Only the l largest sides need
/// checking. Returns 0 when even single sides can be half the total.
long long strictly_short_level(const std::vector<Rational>& sides);

/// Closed-form d_min for polygon setups keyed on the strictly-short level:
/// 0 -> 0, 1 -> 2, >= 2 -> 4.
long long polygon_dmin_table(long long level);

} // namespace qsr
