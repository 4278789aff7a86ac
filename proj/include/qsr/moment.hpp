#pragma once

#include "qsr/representation.hpp"

namespace qsr {

/// Vertex-wise Hermitian matrices H_j with
///   H_j = sum_{h(a)=j} A_a A_a^* - sum_{t(a)=j} A_a^* A_a .
/// The commutator structure makes the traces sum to zero exactly (up to
/// roundoff); the skew-Hermitian moment map itself is sqrt(-1) H_j.
struct MomentValue {
    std::vector<Matrix> H;
};

MomentValue moment_map(const Representation& rep);

/// f(A) = sum_j || H_j - alpha_j I ||_F^2 with alpha as reals.
double energy(const Representation& rep, const StabilityParameter& alpha);

/// Gradient of the energy with respect to the flat real inner product
/// Re tr(X^* Y): component at edge a is 4 (G_{h(a)} A_a - A_a G_{t(a)})
/// with G_j = H_j - alpha_j I. Validated against central finite differences.
Representation energy_gradient(const Representation& rep, const StabilityParameter& alpha);

/// Directional derivative pairing for the gradient above (flat real dot).
double directional_derivative(const Representation& gradient, const Representation& direction);

struct FlowOptions {
    long long max_steps = 100'000;
    double grad_tol = 1e-6;
    double initial_step = 0.0; ///< 0 = auto: 1e-2 / (1 + ||A||_F^2)
    bool record_trace = true;
};

struct TracePoint {
    long long step = 0;
    double time = 0.0;
    double energy = 0.0;
    double grad_norm = 0.0;
};

struct FlowResult {
    Representation final;
    std::vector<TracePoint> trace; ///< energy is nonincreasing along the trace
    bool converged = false;        ///< gradient norm fell below grad_tol
    long long iterations = 0;
    double final_energy = 0.0;
    double final_grad_norm = 0.0;
};

/// Explicit Euler descent of the energy with backtracking: the step halves
/// whenever it would increase the energy and doubles after five clean
/// steps. Expects a trace-free alpha (normalize first); returns with
/// converged = false when max_steps runs out or the step size collapses.
FlowResult flow(const Representation& start, const StabilityParameter& alpha,
                const FlowOptions& opts = {});

} // namespace qsr
