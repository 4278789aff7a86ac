#include "qsr/subrep.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

#include "qsr/kernels.hpp"

namespace qsr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

DimensionVector ProjectionTuple::ranks() const {
    DimensionVector r;
    r.v.reserve(P.size());
    for (const Matrix& p : P) r.v.push_back(std::llround(p.trace().real()));
    return r;
}

double subrep_residual(const Representation& rep, const ProjectionTuple& proj) {
    if (proj.P.size() != rep.dims().size())
        throw DomainError("projection tuple size does not match representation");
    for (std::size_t j = 0; j < proj.P.size(); ++j)
        if (proj.P[j].rows() != rep.dims()[j] || proj.P[j].cols() != rep.dims()[j])
            throw DomainError("projection shape mismatch");
    double res = 0.0;
    Matrix scratch;
    for (int a = 0; a < rep.edge_count(); ++a) {
        const Edge& e = rep.quiver().edges[static_cast<std::size_t>(a)];
        const Matrix& ph = proj.P[static_cast<std::size_t>(e.head)];
        const Matrix& pt = proj.P[static_cast<std::size_t>(e.tail)];
        scratch = rep.matrix(a) * pt;
        scratch -= ph * scratch;
        res += kernels::nrm2sq({scratch.data(), static_cast<std::size_t>(scratch.size())});
    }
    return res;
}

long long endomorphism_dimension(const Representation& rep, double rel_threshold) {
    const auto& dims = rep.dims();
    long long cols = 0;
    std::vector<long long> col_offset(dims.size(), 0);
    for (std::size_t j = 0; j < dims.size(); ++j) {
        col_offset[j] = cols;
        cols += dims[j] * dims[j];
    }
    long long rows = 0;
    for (int a = 0; a < rep.edge_count(); ++a) rows += rep.rows(a) * rep.cols(a);
    if (cols == 0) return 0;
    if (rows == 0) return cols; // no edges: everything commutes

    // Row block per edge: vec(u_h A - A u_t) as a linear map of the stacked
    // vec(u_j). Column (j, p, q) corresponds to the matrix unit E_pq at j.
    Matrix system = Matrix::Zero(rows, cols);
    long long row0 = 0;
    for (int a = 0; a < rep.edge_count(); ++a) {
        const Edge& e = rep.quiver().edges[static_cast<std::size_t>(a)];
        const auto m = rep.matrix(a);
        const long long rh = rep.rows(a), ct = rep.cols(a);
        const auto h = static_cast<std::size_t>(e.head);
        const auto t = static_cast<std::size_t>(e.tail);
        // u_h A: entry (r, c) = sum_q (u_h)_{r q} A_{q c} -> column of E_pq at
        // head contributes A_{q c} to rows (p, c).
        for (long long p = 0; p < rh; ++p)
            for (long long q = 0; q < rh; ++q) {
                const long long col = col_offset[h] + q * rh + p; // vec is column-major
                for (long long c = 0; c < ct; ++c)
                    system(row0 + c * rh + p, col) += m(q, c);
            }
        // -A u_t: entry (r, c) = -sum_p A_{r p} (u_t)_{p c}.
        for (long long p = 0; p < ct; ++p)
            for (long long q = 0; q < ct; ++q) {
                const long long col = col_offset[t] + q * ct + p;
                for (long long r = 0; r < rh; ++r)
                    system(row0 + q * rh + r, col) -= m(r, p);
            }
        row0 += rh * ct;
    }

    Eigen::JacobiSVD<Matrix> svd(system);
    const auto& sigma = svd.singularValues();
    const double cutoff = rel_threshold * (sigma.size() > 0 ? sigma(0) : 0.0);
    long long rank_est = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
        if (sigma(i) > cutoff) ++rank_est;
    return cols - rank_est;
}

namespace {

struct SearchProblem {
    const Representation& rep;
    DimensionVector sub;
    std::vector<int> free_vertices;       // 0 < v'_j < v_j
    std::vector<Matrix> fixed_projection; // I or 0 for pinned vertices
    double norm2;                         // max(||A||_F^2, tiny)
};

ProjectionTuple projections_from_frames(const SearchProblem& prob,
                                        const std::vector<Matrix>& frames) {
    ProjectionTuple proj;
    proj.P = prob.fixed_projection;
    for (std::size_t i = 0; i < prob.free_vertices.size(); ++i) {
        const auto j = static_cast<std::size_t>(prob.free_vertices[i]);
        proj.P[j] = frames[i] * frames[i].adjoint();
    }
    return proj;
}

/// Objective sum_a ||(I - P_h) A_a P_t||^2 with P from the frames on free
/// vertices and the pinned identity/zero values elsewhere.
double frame_objective(const SearchProblem& prob, const ProjectionTuple& proj) {
    double f = 0.0;
    Matrix scratch;
    for (int a = 0; a < prob.rep.edge_count(); ++a) {
        const Edge& e = prob.rep.quiver().edges[static_cast<std::size_t>(a)];
        const auto t = static_cast<std::size_t>(e.tail);
        const auto h = static_cast<std::size_t>(e.head);
        if (prob.sub[t] == 0) continue;
        scratch = prob.rep.matrix(a) * proj.P[t];
        scratch -= proj.P[h] * scratch;
        f += kernels::nrm2sq({scratch.data(), static_cast<std::size_t>(scratch.size())});
    }
    return f;
}

/// Euclidean gradient of the objective with respect to each free frame,
/// then projected to the Grassmannian horizontal space (I - X X^*) G.
std::vector<Matrix> frame_gradient(const SearchProblem& prob, const std::vector<Matrix>& frames,
                                   const ProjectionTuple& proj) {
    std::vector<Matrix> grad(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i)
        grad[i] = Matrix::Zero(frames[i].rows(), frames[i].cols());
    std::vector<int> slot(prob.rep.dims().size(), -1);
    for (std::size_t i = 0; i < prob.free_vertices.size(); ++i)
        slot[static_cast<std::size_t>(prob.free_vertices[i])] = static_cast<int>(i);

    for (int a = 0; a < prob.rep.edge_count(); ++a) {
        const Edge& e = prob.rep.quiver().edges[static_cast<std::size_t>(a)];
        const auto t = static_cast<std::size_t>(e.tail);
        const auto h = static_cast<std::size_t>(e.head);
        if (prob.sub[t] == 0) continue;
        const auto m = prob.rep.matrix(a);
        const Matrix mq = Matrix::Identity(m.rows(), m.rows()) - proj.P[h]; // I - P_h
        if (slot[t] >= 0) {
            // d/dX_t of ||(I-P_h) A X_t X_t^* ... || reduced form: 2 A^*(I-P_h)A X_t
            grad[static_cast<std::size_t>(slot[t])] +=
                2.0 * (m.adjoint() * (mq * (m * frames[static_cast<std::size_t>(slot[t])])));
        }
        if (slot[h] >= 0) {
            // -2 (A P_t A^*) X_h
            const Matrix c = m * proj.P[t] * m.adjoint();
            grad[static_cast<std::size_t>(slot[h])] -=
                2.0 * (c * frames[static_cast<std::size_t>(slot[h])]);
        }
    }
    for (std::size_t i = 0; i < frames.size(); ++i)
        grad[i] -= frames[i] * (frames[i].adjoint() * grad[i]);
    return grad;
}

double frames_nrm2sq(const std::vector<Matrix>& ms) {
    double s = 0.0;
    for (const Matrix& m : ms)
        s += kernels::nrm2sq({m.data(), static_cast<std::size_t>(m.size())});
    return s;
}

/// Spectral truncation: nearest rank-v'_j orthogonal projection per vertex.
ProjectionTuple round_projection(const ProjectionTuple& proj, const DimensionVector& sub) {
    ProjectionTuple out;
    out.P.reserve(proj.P.size());
    for (std::size_t j = 0; j < proj.P.size(); ++j) {
        const long long n = proj.P[j].rows();
        const long long r = sub[j];
        if (r == 0) {
            out.P.push_back(Matrix::Zero(n, n));
        } else if (r == n) {
            out.P.push_back(Matrix::Identity(n, n));
        } else {
            const Matrix herm = 0.5 * (proj.P[j] + proj.P[j].adjoint());
            Eigen::SelfAdjointEigenSolver<Matrix> eig(herm);
            const Matrix v = eig.eigenvectors().rightCols(r); // eigenvalues ascend
            out.P.push_back(v * v.adjoint());
        }
    }
    return out;
}

} // namespace

SubrepSearchResult search_subrepresentation(const Representation& rep, const DimensionVector& sub,
                                            const SubrepSearchOptions& opts) {
    if (!sub.fits_within(rep.dims()))
        throw DomainError("sub-dimension vector exceeds ambient dimensions");
    if (sub.is_zero() || sub == rep.dims())
        throw DomainError("sub-dimension vector must be proper and nonzero");
    if (opts.restarts < 1) throw DomainError("search needs at least one restart");

    SearchProblem prob{rep, sub, {}, {}, std::max(rep.norm2sq(), 1e-300)};
    prob.fixed_projection.reserve(rep.dims().size());
    for (std::size_t j = 0; j < rep.dims().size(); ++j) {
        const long long n = rep.dims()[j];
        if (sub[j] == 0)
            prob.fixed_projection.push_back(Matrix::Zero(n, n));
        else if (sub[j] == n)
            prob.fixed_projection.push_back(Matrix::Identity(n, n));
        else {
            prob.free_vertices.push_back(static_cast<int>(j));
            prob.fixed_projection.push_back(Matrix::Zero(n, n)); // overwritten from frames
        }
    }

    SubrepSearchResult result;
    result.residual = std::numeric_limits<double>::infinity();

    auto certify = [&](const ProjectionTuple& proj) -> std::optional<double> {
        const ProjectionTuple rounded = round_projection(proj, sub);
        const double res = subrep_residual(rep, rounded) / prob.norm2;
        if (res < opts.tol) {
            result.status = SearchStatus::Found;
            result.projection = rounded;
            result.residual = res;
            return res;
        }
        return std::nullopt;
    };

    // No free Grassmannian factors: the tuple is unique, just evaluate it.
    if (prob.free_vertices.empty()) {
        const ProjectionTuple proj = projections_from_frames(prob, {});
        if (certify(proj)) return result;
        result.status = SearchStatus::ExhaustedConverged;
        result.residual = subrep_residual(rep, proj) / prob.norm2;
        return result;
    }

    const double grad_tol2 = 1e-18 * prob.norm2 * prob.norm2;
    bool budget_hit = false;

    for (int restart = 0; restart < opts.restarts; ++restart) {
        std::mt19937_64 rng(splitmix64(
            opts.seed ^ (0x51ef3a1c0c9d2bb1ULL * (static_cast<std::uint64_t>(restart) + 1))));
        std::vector<Matrix> frames;
        frames.reserve(prob.free_vertices.size());
        for (int j : prob.free_vertices) {
            const auto ju = static_cast<std::size_t>(j);
            frames.push_back(orthonormalize(gaussian_matrix(rep.dims()[ju], sub[ju], rng)));
        }

        ProjectionTuple proj = projections_from_frames(prob, frames);
        double f = frame_objective(prob, proj);
        double step = 1.0 / (1.0 + prob.norm2);
        bool stationary = false;
        int stalled = 0;

        long long iter = 0;
        for (; iter < opts.max_iters; ++iter) {
            if (f / prob.norm2 < opts.tol && certify(proj)) return result;
            std::vector<Matrix> grad = frame_gradient(prob, frames, proj);
            const double g2 = frames_nrm2sq(grad);
            if (g2 < grad_tol2) {
                stationary = true;
                break;
            }
            // Armijo backtracking on the retracted step.
            bool accepted = false;
            double f_new = f;
            for (int half = 0; half < 60; ++half) {
                std::vector<Matrix> trial(frames.size());
                for (std::size_t i = 0; i < frames.size(); ++i)
                    trial[i] = orthonormalize(frames[i] - step * grad[i]);
                const ProjectionTuple trial_proj = projections_from_frames(prob, trial);
                const double f_trial = frame_objective(prob, trial_proj);
                if (f_trial <= f - 1e-4 * step * g2) {
                    frames = std::move(trial);
                    proj = trial_proj;
                    f_new = f_trial;
                    step *= 1.5;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                stationary = true; // line search collapsed
                break;
            }
            // A run of near-zero relative decreases means the restart has
            // settled on a local minimum above tolerance.
            if (f - f_new <= 1e-4 * f_new)
                ++stalled;
            else
                stalled = 0;
            f = f_new;
            if (stalled >= 20) {
                stationary = true;
                break;
            }
        }
        if (certify(proj)) return result; // rounding can still land a near-miss
        if (!stationary && iter >= opts.max_iters) budget_hit = true;
        result.residual = std::min(result.residual, f / prob.norm2);
    }

    result.status = budget_hit ? SearchStatus::ExhaustedBudget : SearchStatus::ExhaustedConverged;
    return result;
}

std::optional<std::pair<ProjectionTuple, double>> find_subrepresentation(
    const Representation& rep, const DimensionVector& sub, const SubrepSearchOptions& opts) {
    SubrepSearchResult result = search_subrepresentation(rep, sub, opts);
    if (result.status != SearchStatus::Found) return std::nullopt;
    return std::make_pair(std::move(*result.projection), result.residual);
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "Stable";
        case Verdict::StrictlySemistable: return "StrictlySemistable";
        case Verdict::Unstable: return "Unstable";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

StabilityVerdict stability_verdict(const Representation& rep, const QuiverSetup& setup,
                                   const VerdictOptions& opts) {
    if (rep.dims() != setup.dims) throw DomainError("representation does not match setup dims");

    DestabilizerOptions enumeration;
    enumeration.cap = opts.enumeration_cap;
    const DestabilizerList destab = destabilizing_dimension_vectors(setup, enumeration);

    StabilityVerdict verdict;
    bool budget_hit = false;

    auto hunt = [&](bool strict_only) -> std::optional<VerdictEvidence> {
        for (std::size_t i = 0; i < destab.entries.size(); ++i) {
            const Destabilizer& cand = destab.entries[i];
            const bool strict = cand.report.degree > Rational(0);
            if (strict != strict_only) continue;
            SubrepSearchOptions search = opts.search;
            search.seed = splitmix64(opts.search.seed ^ (0xa2e90dd1537bd1f5ULL + i));
            const SubrepSearchResult found = search_subrepresentation(rep, cand.dims, search);
            if (found.status == SearchStatus::Found)
                return VerdictEvidence{cand.dims, std::move(*found.projection), found.residual,
                                       cand.report.slope};
            if (found.status == SearchStatus::ExhaustedBudget) budget_hit = true;
        }
        return std::nullopt;
    };

    if (auto unstable = hunt(/*strict_only=*/true)) {
        verdict.verdict = Verdict::Unstable;
        verdict.evidence = std::move(unstable);
    } else if (auto semi = hunt(/*strict_only=*/false)) {
        verdict.verdict = Verdict::StrictlySemistable;
        verdict.evidence = std::move(semi);
    } else {
        verdict.verdict = budget_hit ? Verdict::Inconclusive : Verdict::Stable;
    }

    QuiverSetup normalized = setup;
    normalized.alpha = normalize_alpha(setup);
    FlowOptions flow_opts = opts.flow;
    flow_opts.record_trace = false;
    const FlowResult flowed = flow(rep, normalized.alpha, flow_opts);
    verdict.flow_energy = flowed.final_energy;
    verdict.flow_converged = flowed.converged;
    verdict.flow_iterations = flowed.iterations;
    return verdict;
}

} // namespace qsr
