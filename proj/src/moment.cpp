#include "qsr/moment.hpp"

#include <cmath>

#include "qsr/kernels.hpp"

namespace qsr {

MomentValue moment_map(const Representation& rep) {
    MomentValue mv;
    mv.H.reserve(rep.dims().size());
    for (long long d : rep.dims().v) mv.H.push_back(Matrix::Zero(d, d));
    for (int a = 0; a < rep.edge_count(); ++a) {
        const Edge& e = rep.quiver().edges[static_cast<std::size_t>(a)];
        const auto m = rep.matrix(a);
        mv.H[static_cast<std::size_t>(e.head)] += m * m.adjoint();
        mv.H[static_cast<std::size_t>(e.tail)] -= m.adjoint() * m;
    }
    return mv;
}

namespace {

// H_j - alpha_j I per vertex; the residual whose norm is the energy.
std::vector<Matrix> centered_moment(const Representation& rep, const StabilityParameter& alpha) {
    if (alpha.size() != rep.dims().size())
        throw DomainError("stability parameter does not match representation");
    MomentValue mv = moment_map(rep);
    for (std::size_t j = 0; j < mv.H.size(); ++j) {
        const double aj = alpha[j].to_double();
        mv.H[j].diagonal().array() -= Complex(aj, 0.0);
    }
    return std::move(mv.H);
}

double matrices_nrm2sq(const std::vector<Matrix>& ms) {
    double f = 0.0;
    for (const Matrix& m : ms)
        f += kernels::nrm2sq({m.data(), static_cast<std::size_t>(m.size())});
    return f;
}

} // namespace

double energy(const Representation& rep, const StabilityParameter& alpha) {
    return matrices_nrm2sq(centered_moment(rep, alpha));
}

Representation energy_gradient(const Representation& rep, const StabilityParameter& alpha) {
    const std::vector<Matrix> g = centered_moment(rep, alpha);
    Representation grad(rep.quiver(), rep.dims());
    for (int a = 0; a < rep.edge_count(); ++a) {
        const Edge& e = rep.quiver().edges[static_cast<std::size_t>(a)];
        grad.matrix(a) = 4.0 * (g[static_cast<std::size_t>(e.head)] * rep.matrix(a) -
                                rep.matrix(a) * g[static_cast<std::size_t>(e.tail)]);
    }
    return grad;
}

double directional_derivative(const Representation& gradient, const Representation& direction) {
    return kernels::dot_re(gradient.flat(), direction.flat());
}

FlowResult flow(const Representation& start, const StabilityParameter& alpha,
                const FlowOptions& opts) {
    FlowResult result{start, {}, false, 0, 0.0, 0.0};
    Representation& a = result.final;

    double f = energy(a, alpha);
    double step = opts.initial_step > 0.0 ? opts.initial_step : 1e-2 / (1.0 + a.norm2sq());
    const double step_floor = step * 1e-16;
    int clean_steps = 0;

    Representation grad = energy_gradient(a, alpha);
    double grad_norm = std::sqrt(grad.norm2sq());
    double t = 0.0;
    if (opts.record_trace) result.trace.push_back({0, t, f, grad_norm});

    while (result.iterations < opts.max_steps) {
        if (grad_norm < opts.grad_tol) break;
        // Backtrack until the Euler step does not increase the energy.
        Representation trial = a;
        double f_trial;
        for (;;) {
            kernels::axpy(-step, grad.flat(), trial.flat());
            f_trial = energy(trial, alpha);
            if (f_trial <= f) break;
            step *= 0.5;
            clean_steps = 0;
            if (step < step_floor) break;
            trial = a;
        }
        if (f_trial > f) break; // step size collapsed at a rough spot
        a = std::move(trial);
        t += step;
        f = f_trial;
        ++result.iterations;
        grad = energy_gradient(a, alpha);
        grad_norm = std::sqrt(grad.norm2sq());
        if (opts.record_trace) result.trace.push_back({result.iterations, t, f, grad_norm});
        if (++clean_steps >= 5) {
            step *= 2.0;
            clean_steps = 0;
        }
    }

    result.converged = grad_norm < opts.grad_tol;
    result.final_energy = f;
    result.final_grad_norm = grad_norm;
    return result;
}

} // namespace qsr
