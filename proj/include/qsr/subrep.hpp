#pragma once

#include <optional>

#include "qsr/moment.hpp"
#include "qsr/representation.hpp"
#include "qsr/slope.hpp"

namespace qsr {

/// One orthogonal projection per vertex; rank(P_j) is the sub-dimension at
/// that vertex.
struct ProjectionTuple {
    std::vector<Matrix> P;

    [[nodiscard]] DimensionVector ranks() const;
};

/// sum_a || (I - P_{h(a)}) A_a P_{t(a)} ||_F^2 - zero exactly when the
/// projections cut out an invariant subspace tuple.
double subrep_residual(const Representation& rep, const ProjectionTuple& proj);

/// Complex dimension of { u = (u_j) : u_{h(a)} A_a = A_a u_{t(a)} for all a },
/// computed as the nullity of the assembled linear system via singular
/// values (threshold rel_threshold * sigma_max). At least 1 (scalars).
long long endomorphism_dimension(const Representation& rep, double rel_threshold = 1e-8);

struct SubrepSearchOptions {
    int restarts = 20;
    long long max_iters = 400;
    double tol = 1e-8; ///< accepted residual, Frobenius-squared over ||A||_F^2
    std::uint64_t seed = 0;
};

enum class SearchStatus {
    Found,              ///< certified invariant tuple below tolerance
    ExhaustedConverged, ///< every restart reached a stationary point above tolerance
    ExhaustedBudget,    ///< some restart ran out of iterations mid-descent
};

struct SubrepSearchResult {
    SearchStatus status = SearchStatus::ExhaustedConverged;
    std::optional<ProjectionTuple> projection; ///< set when status == Found
    double residual = 0.0;                     ///< normalized; best seen when not found
};

/// Gradient descent over the product of Grassmannians Gr(v'_j, v_j) in the
/// orthonormal-frame parametrization with QR retraction, from seeded random
/// starts. A hit is re-verified after rounding each projection to the
/// nearest exact one (spectral truncation); only certified hits count.
SubrepSearchResult search_subrepresentation(const Representation& rep, const DimensionVector& sub,
                                            const SubrepSearchOptions& opts = {});

/// Convenience wrapper returning the certified tuple and its residual.
std::optional<std::pair<ProjectionTuple, double>> find_subrepresentation(
    const Representation& rep, const DimensionVector& sub, const SubrepSearchOptions& opts = {});

enum class Verdict { Stable, StrictlySemistable, Unstable, Inconclusive };

const char* verdict_name(Verdict v);

struct VerdictEvidence {
    DimensionVector sub;
    ProjectionTuple projection;
    double residual = 0.0;
    Rational slope; ///< under the normalized parameter
};

struct StabilityVerdict {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<VerdictEvidence> evidence; ///< for Unstable / StrictlySemistable
    double flow_energy = 0.0;
    bool flow_converged = false;
    long long flow_iterations = 0;
};

struct VerdictOptions {
    SubrepSearchOptions search;
    FlowOptions flow;
    std::size_t enumeration_cap = 1'000'000;
};

/// Runs the subrepresentation search over every destabilizing sub-dimension
/// vector: a realized strictly-positive slope gives Unstable, a realized
/// zero slope gives StrictlySemistable, and an empty haul gives Stable when
/// every search completed (Inconclusive when some restart hit its iteration
/// cap). Also records the final energy of the descent flow from A.
StabilityVerdict stability_verdict(const Representation& rep, const QuiverSetup& setup,
                                   const VerdictOptions& opts = {});

} // namespace qsr
