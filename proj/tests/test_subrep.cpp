#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qsr/subrep.hpp"

using namespace qsr;

namespace {

DimensionVector dv(std::vector<long long> v) { return DimensionVector{std::move(v)}; }

ProjectionTuple full_tuple(const DimensionVector& dims, bool identity) {
    ProjectionTuple p;
    for (long long d : dims.v) {
        Matrix m = identity ? Matrix(Matrix::Identity(d, d)) : Matrix(Matrix::Zero(d, d));
        p.P.push_back(std::move(m));
    }
    return p;
}

ProjectionTuple coordinate_tuple(const DimensionVector& dims, const DimensionVector& sub) {
    ProjectionTuple p;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        Matrix m = Matrix::Zero(dims[j], dims[j]);
        for (long long i = 0; i < sub[j]; ++i) m(i, i) = 1.0;
        p.P.push_back(std::move(m));
    }
    return p;
}

} // namespace

TEST_CASE("subrep residual: trivial tuples and planted blocks") {
    const QuiverSetup s = gen_adhm(2, 2);
    const Representation a = plant_instance(s, std::nullopt, 5);
    CHECK(subrep_residual(a, full_tuple(s.dims, true)) == 0.0);
    CHECK(subrep_residual(a, full_tuple(s.dims, false)) == 0.0);

    // block-upper-triangular in coordinates, conjugated: residual ~ roundoff
    std::mt19937_64 rng(6);
    const DimensionVector sub = dv({1, 1});
    Representation planted(s.quiver, s.dims);
    {
        std::mt19937_64 gen(7);
        for (int e = 0; e < planted.edge_count(); ++e) {
            Matrix m = gaussian_matrix(planted.rows(e), planted.cols(e), gen);
            const Edge& edge = s.quiver.edges[static_cast<std::size_t>(e)];
            const long long sh = sub[static_cast<std::size_t>(edge.head)];
            const long long st = sub[static_cast<std::size_t>(edge.tail)];
            if (st > 0 && sh < planted.rows(e))
                m.block(sh, 0, planted.rows(e) - sh, st).setZero();
            planted.matrix(e) = m;
        }
    }
    CHECK(subrep_residual(planted, coordinate_tuple(s.dims, sub)) <= 1e-24);

    const auto g = random_unitaries(s.dims, rng);
    const Representation conjugated = gauge_transform(planted, g);
    ProjectionTuple moved = coordinate_tuple(s.dims, sub);
    for (std::size_t j = 0; j < moved.P.size(); ++j)
        moved.P[j] = g[j] * moved.P[j] * g[j].adjoint();
    CHECK(subrep_residual(conjugated, moved) <= 1e-12 * (1.0 + conjugated.norm2sq()));
}

TEST_CASE("subrep residual is gauge equivariant") {
    const QuiverSetup s = gen_polygon({1, 1, 1, 1});
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const Representation a = plant_instance(s, std::nullopt, 50 + trial);
        ProjectionTuple p;
        for (long long d : s.dims.v) {
            const Matrix x = orthonormalize(gaussian_matrix(d, d > 1 ? 1 : d, rng));
            p.P.push_back(x * x.adjoint());
        }
        const double base = subrep_residual(a, p);
        const auto g = random_unitaries(s.dims, rng);
        ProjectionTuple moved;
        for (std::size_t j = 0; j < p.P.size(); ++j)
            moved.P.push_back(g[j] * p.P[j] * g[j].adjoint());
        const double transformed = subrep_residual(gauge_transform(a, g), moved);
        CHECK(std::abs(base - transformed) <= 1e-10 * (1.0 + base));
    }
}

TEST_CASE("endomorphism dimension") {
    const QuiverSetup s = gen_adhm(2, 1);
    // generic representations have scalar endomorphisms only
    CHECK(endomorphism_dimension(plant_instance(s, std::nullopt, 1)) == 1);

    // zero representation: everything commutes, sum v_j^2
    const Representation zero(s.quiver, s.dims);
    CHECK(endomorphism_dimension(zero) == 5);

    // block direct sum of two non-isomorphic one-dimensional pieces on a loop
    QuiverSetup loop;
    loop.quiver.vertices = {"a"};
    loop.quiver.edges.push_back({0, 0});
    loop.dims.v = {2};
    loop.alpha.alpha = {Rational(0)};
    Representation split(loop.quiver, loop.dims);
    split.matrix(0) << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(2, 0);
    CHECK(endomorphism_dimension(split) == 2);

    // quiver with no edges: no constraints at all
    QuiverSetup edgeless;
    edgeless.quiver.vertices = {"a", "b"};
    edgeless.dims.v = {2, 1};
    edgeless.alpha.alpha = {Rational(0), Rational(0)};
    CHECK(endomorphism_dimension(Representation(edgeless.quiver, edgeless.dims)) == 5);
}

TEST_CASE("search finds planted tuples and certifies them") {
    const std::vector<std::pair<QuiverSetup, DimensionVector>> cases = {
        {gen_adhm(2, 1), dv({1, 1})},
        {gen_adhm(3, 1), dv({2, 1})},
        {gen_polygon({1, 1, 1, 1}), dv({1, 1, 1, 0, 0})},
        {gen_polygon({1, 1, 1, 1, 1}), dv({1, 0, 1, 1, 0, 0})},
    };
    SubrepSearchOptions opts;
    opts.restarts = 10;
    opts.seed = 99;
    for (const auto& [setup, sub] : cases) {
        const Representation a = plant_instance(setup, sub, 123);
        const auto found = find_subrepresentation(a, sub, opts);
        REQUIRE(found.has_value());
        CHECK(found->second < opts.tol);
        // certified: the returned projections are exactly idempotent tuples
        for (std::size_t j = 0; j < found->first.P.size(); ++j) {
            const Matrix& p = found->first.P[j];
            CHECK((p * p - p).norm() <= 1e-10);
            CHECK((p - p.adjoint()).norm() <= 1e-10);
        }
        CHECK(found->first.ranks() == sub);
        CHECK(subrep_residual(a, found->first) / a.norm2sq() < opts.tol);
    }
}

TEST_CASE("star quivers always admit a line through a single edge image") {
    // Only edge 1 maps into the center, so any line containing its image is
    // invariant; the search must find it even on generic representations.
    const QuiverSetup s = gen_polygon({1, 1, 1, 1});
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Representation a = plant_instance(s, std::nullopt, 600 + seed);
        SubrepSearchOptions opts;
        opts.seed = seed;
        const auto found = find_subrepresentation(a, dv({1, 1, 0, 0, 0}), opts);
        REQUIRE(found.has_value());
        CHECK(found->second < opts.tol);
    }
}

TEST_CASE("plant_instance is deterministic per seed and keeps scalar endomorphisms") {
    const QuiverSetup s = gen_adhm(3, 2);
    const Representation a = plant_instance(s, std::nullopt, 31);
    const Representation b = plant_instance(s, std::nullopt, 31);
    REQUIRE(a.flat().size() == b.flat().size());
    for (std::size_t i = 0; i < a.flat().size(); ++i) CHECK(a.flat()[i] == b.flat()[i]);

    const Representation planted = plant_instance(s, dv({1, 1}), 32);
    CHECK(endomorphism_dimension(planted) >= 1);
    CHECK_THROWS_AS(plant_instance(s, dv({3, 1}), 1), DomainError); // equals ambient
    CHECK_THROWS_AS(plant_instance(s, dv({0, 0}), 1), DomainError);
}

TEST_CASE("search rejects invalid sub-dimension vectors") {
    const QuiverSetup s = gen_adhm(2, 1);
    const Representation a = plant_instance(s, std::nullopt, 4);
    CHECK_THROWS_AS(search_subrepresentation(a, dv({0, 0}), {}), DomainError);
    CHECK_THROWS_AS(search_subrepresentation(a, dv({2, 1}), {}), DomainError);
    CHECK_THROWS_AS(search_subrepresentation(a, dv({3, 0}), {}), DomainError);
}

TEST_CASE("two generic loops share no invariant line") {
    QuiverSetup s;
    s.quiver.vertices = {"a"};
    s.quiver.edges.push_back({0, 0});
    s.quiver.edges.push_back({0, 0});
    s.dims.v = {2};
    s.alpha.alpha = {Rational(0)};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Representation a = plant_instance(s, std::nullopt, seed);
        Eigen::Matrix2cd b1 = a.matrix(0), b2 = a.matrix(1);
        REQUIRE(!oracles::common_eigenvector_2x2(b1, b2, 1e-6));
        SubrepSearchOptions opts;
        opts.restarts = 8;
        opts.seed = seed;
        const auto found = find_subrepresentation(a, dv({1}), opts);
        CHECK(!found.has_value());
    }
    // sanity: planting an invariant line makes the same search succeed
    const Representation planted = plant_instance(s, dv({1}), 17);
    Eigen::Matrix2cd b1 = planted.matrix(0), b2 = planted.matrix(1);
    CHECK(oracles::common_eigenvector_2x2(b1, b2, 1e-8));
    CHECK(find_subrepresentation(planted, dv({1}), {}).has_value());
}

TEST_CASE("verdict: planted parallel edges give StrictlySemistable with the planted witness") {
    const QuiverSetup s = gen_polygon({1, 1, 1, 1});
    const DimensionVector witness = dv({1, 1, 1, 0, 0});
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Representation a = plant_instance(s, witness, 200 + seed);
        const StabilityVerdict v = stability_verdict(a, s, {});
        CHECK(v.verdict == Verdict::StrictlySemistable);
        REQUIRE(v.evidence.has_value());
        CHECK(v.evidence->sub == witness);
        CHECK(v.evidence->slope == Rational(0));
    }
}

TEST_CASE("verdict: generic square-polygon representations are stable") {
    const QuiverSetup s = gen_polygon({1, 1, 1, 1});
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Representation a = plant_instance(s, std::nullopt, 300 + seed);
        const StabilityVerdict v = stability_verdict(a, s, {});
        CHECK(v.verdict == Verdict::Stable);
        CHECK(v.flow_energy < 1e-8);
        CHECK(endomorphism_dimension(a) == 1);
    }
}

TEST_CASE("verdict: zero representation on the square polygon is unstable") {
    // the zero representation realizes every candidate; the strict ones
    // (positive slope) win, witnessed by the lex-least strict candidate
    const QuiverSetup s = gen_polygon({1, 1, 1, 1});
    const Representation zero(s.quiver, s.dims);
    const StabilityVerdict v = stability_verdict(zero, s, {});
    CHECK(v.verdict == Verdict::Unstable);
    REQUIRE(v.evidence.has_value());
    CHECK(v.evidence->slope > Rational(0));
    CHECK(v.evidence->sub.v == std::vector<long long>{0, 0, 0, 0, 1});
}

TEST_CASE("verdict: truncated searches come back Inconclusive, not Stable") {
    const QuiverSetup s = gen_polygon({1, 1, 1, 1});
    const Representation a = plant_instance(s, std::nullopt, 880);
    VerdictOptions opts;
    opts.search.restarts = 1;
    opts.search.max_iters = 1; // cut every descent off mid-flight
    const StabilityVerdict v = stability_verdict(a, s, opts);
    CHECK(v.verdict == Verdict::Inconclusive);
    CHECK(!v.evidence.has_value());
}

TEST_CASE("verdict: zero representation is strictly semistable when alpha = 0") {
    const QuiverSetup s = gen_adhm(1, 1);
    const Representation zero(s.quiver, s.dims);
    const StabilityVerdict v = stability_verdict(zero, s, {});
    CHECK(v.verdict == Verdict::StrictlySemistable);
    REQUIRE(v.evidence.has_value());
    CHECK(v.evidence->slope == Rational(0)); // alpha = 0 means no strict destabilizers
}

TEST_CASE("verdict: mismatched representation is rejected") {
    const QuiverSetup square = gen_polygon({1, 1, 1, 1});
    const QuiverSetup adhm = gen_adhm(2, 1);
    const Representation a = plant_instance(adhm, std::nullopt, 1);
    CHECK_THROWS_AS(stability_verdict(a, square, {}), DomainError);
}
