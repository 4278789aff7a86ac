#pragma once

#include <cstddef>
#include <vector>

#include "qsr/quiver.hpp"

namespace qsr {

/// Exact rank/degree/slope of a (sub-)dimension vector.
struct SlopeReport {
    long long rank = 0;
    Rational degree;
    Rational slope;
};

/// Total dimension sum(v_j).
long long rank(const DimensionVector& dims);

/// sum_j (-alpha_j) * v_j, exact.
Rational degree_alpha(const DimensionVector& dims, const StabilityParameter& alpha);

/// degree / rank; rejects rank 0.
Rational slope_alpha(const DimensionVector& dims, const StabilityParameter& alpha);

SlopeReport slope_report(const DimensionVector& dims, const StabilityParameter& alpha);

/// The uniform shift c = -(sum alpha_j v_j) / rank(v) that makes the
/// weighted sum vanish. Slope comparisons between sub-vectors of v are
/// invariant under this shift.
Rational normalization_shift(const QuiverSetup& setup);

/// alpha with the normalization shift applied; returns alpha unchanged when
/// the setup is already trace-free.
StabilityParameter normalize_alpha(const QuiverSetup& setup);

struct Destabilizer {
    DimensionVector dims;
    SlopeReport report; // with respect to the normalized parameter
};

struct DestabilizerList {
    Rational shift;                    ///< shift applied to alpha before comparing
    std::vector<Destabilizer> entries; ///< ascending lexicographic order
};

struct DestabilizerOptions {
    bool strict = false;          ///< keep only slope > 0 (default: slope >= 0)
    std::size_t cap = 1'000'000;  ///< max sub-dimension vectors to enumerate
};

/// Every proper nonzero v' <= v whose slope under the normalized parameter
/// is >= 0 (or > 0 with strict), with its SlopeReport. Fails with
/// EnumerationLimitError when the enumeration domain exceeds the cap.
DestabilizerList destabilizing_dimension_vectors(const QuiverSetup& setup,
                                                 const DestabilizerOptions& opts = {});

} // namespace qsr
