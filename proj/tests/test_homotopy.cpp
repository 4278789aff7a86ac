#include <doctest.h>

#include "oracles.hpp"
#include "qsr/homotopy.hpp"

using namespace qsr;

namespace {
DimensionVector dv(std::vector<long long> v) { return DimensionVector{std::move(v)}; }

FGAbelianGroup pg_via_snf(const DimensionVector& dims) {
    std::vector<long long> relation;
    for (long long d : dims.v)
        if (d > 0) relation.push_back(d);
    const auto [free_rank, torsion] = oracles::abelian_quotient(relation.size(), {relation});
    return FGAbelianGroup::make(free_rank, torsion);
}
} // namespace

TEST_CASE("group rendering strings") {
    CHECK(FGAbelianGroup::trivial().str() == "0");
    CHECK(FGAbelianGroup::free(1).str() == "Z");
    CHECK(FGAbelianGroup::free(4).str() == "Z^4");
    CHECK(FGAbelianGroup::cyclic(2).str() == "Z/2");
    CHECK(FGAbelianGroup::cyclic(1).str() == "0");
    CHECK(FGAbelianGroup::make(1, {2}).str() == "Z + Z/2");
    CHECK(FGAbelianGroup::make(2, {2, 4}).str() == "Z^2 + Z/2 + Z/4");
    CHECK(FGAbelianGroup::unknown().str() == "unknown");
}

TEST_CASE("direct sums renormalize to invariant factors") {
    // Z/2 + Z/3 = Z/6; Z/4 + Z/6 = Z/2 + Z/12
    CHECK(FGAbelianGroup::cyclic(2) + FGAbelianGroup::cyclic(3) == FGAbelianGroup::cyclic(6));
    const auto g = FGAbelianGroup::cyclic(4) + FGAbelianGroup::cyclic(6);
    CHECK(g.torsion() == std::vector<long long>{2, 12});
    const auto h = FGAbelianGroup::cyclic(2) + FGAbelianGroup::cyclic(2);
    CHECK(h.torsion() == std::vector<long long>{2, 2});
    CHECK((FGAbelianGroup::free(2) + FGAbelianGroup::unknown()).known() == false);
}

TEST_CASE("unitary homotopy table") {
    for (long long n = 1; n <= 6; ++n) {
        CHECK(unitary_homotopy(n, 0).is_trivial());
        CHECK(unitary_homotopy(n, 1) == FGAbelianGroup::free(1));
        CHECK(unitary_homotopy(n, 2).is_trivial());
    }
    CHECK(unitary_homotopy(1, 3).is_trivial());
    CHECK(unitary_homotopy(2, 3) == FGAbelianGroup::free(1));
    CHECK(unitary_homotopy(2, 4) == FGAbelianGroup::cyclic(2));
    CHECK(unitary_homotopy(2, 5) == FGAbelianGroup::cyclic(2));
    CHECK(unitary_homotopy(3, 4).is_trivial());    // stable range
    CHECK(unitary_homotopy(3, 5) == FGAbelianGroup::free(1));
    CHECK(!unitary_homotopy(2, 6).known());
    CHECK(!unitary_homotopy(3, 6).known());
    CHECK(unitary_homotopy(4, 7) == FGAbelianGroup::free(1)); // 7 <= 2*4-1
    CHECK_THROWS_AS(unitary_homotopy(0, 1), DomainError);
}

TEST_CASE("gauge group homotopy") {
    CHECK(gauge_group_homotopy(dv({2, 1, 1, 1, 1}), 1) == FGAbelianGroup::free(5));
    CHECK(gauge_group_homotopy(dv({2, 1}), 3) == FGAbelianGroup::free(1));
    CHECK(gauge_group_homotopy(dv({3, 0, 2}), 2).is_trivial());
    CHECK(gauge_group_homotopy(dv({0, 0}), 1).is_trivial());
    CHECK(!gauge_group_homotopy(dv({2, 3}), 6).known()); // unknown propagates
}

TEST_CASE("pg homotopy via the scalar-circle quotient") {
    CHECK(pg_homotopy(dv({2}), 1) == FGAbelianGroup::cyclic(2));
    CHECK(pg_homotopy(dv({2, 1, 1, 1, 1}), 1) == FGAbelianGroup::free(4));
    CHECK(pg_homotopy(dv({2, 1}), 1) == FGAbelianGroup::free(1));
    CHECK(pg_homotopy(dv({6, 10, 15}), 1) == FGAbelianGroup::free(2));
    CHECK(pg_homotopy(dv({2, 4}), 1) == FGAbelianGroup::make(1, {2}));
    CHECK(pg_homotopy(dv({3}), 0).is_trivial());
    CHECK_THROWS_AS(pg_homotopy(dv({0, 0}), 1), DomainError);

    // k >= 2 sees only the gauge group
    for (long long k = 2; k <= 5; ++k) {
        const auto v = dv({2, 1, 1});
        CHECK(pg_homotopy(v, k) == gauge_group_homotopy(v, k));
    }
}

TEST_CASE("pg homotopy degree 1 matches the integer row-reduction oracle") {
    const std::vector<DimensionVector> cases = {
        dv({2}),        dv({2, 1, 1, 1, 1}), dv({6, 10, 15}), dv({2, 4}), dv({3, 1}),
        dv({4, 6, 10}), dv({5}),             dv({0, 3, 6}),   dv({1, 1, 1}),
    };
    for (const auto& v : cases) CHECK(pg_homotopy(v, 1) == pg_via_snf(v));
}

TEST_CASE("pg homotopy cross-checks against the classical quotients") {
    // framed instanton dims (k,1): the quotient is U(k)
    for (long long k = 1; k <= 4; ++k)
        for (long long deg = 0; deg <= 5; ++deg)
            CHECK(pg_homotopy(dv({k, 1}), deg) == unitary_homotopy(k, deg));
    // polygon dims: the quotient is U(2) x U(1)^(n-1)
    for (long long n = 3; n <= 6; ++n)
        for (long long deg = 0; deg <= 5; ++deg) {
            DimensionVector v;
            v.v.assign(static_cast<std::size_t>(n) + 1, 1);
            v.v[0] = 2;
            FGAbelianGroup expected = unitary_homotopy(2, deg);
            for (long long j = 1; j < n; ++j) expected = expected + unitary_homotopy(1, deg);
            CHECK(pg_homotopy(v, deg) == expected);
        }
}

TEST_CASE("moduli dimension") {
    for (long long n = 4; n <= 7; ++n) {
        std::vector<Rational> sides(static_cast<std::size_t>(n), Rational(1));
        const QuiverSetup s = gen_polygon(sides);
        CHECK(moduli_dimension(s.quiver, s.dims) == n - 3);
    }
    for (long long k = 1; k <= 3; ++k)
        for (long long n = 1; n <= 3; ++n) {
            const QuiverSetup s = gen_adhm(k, n);
            CHECK(moduli_dimension(s.quiver, s.dims) == k * k + 2 * k * n);
        }
    Quiver loop;
    loop.vertices = {"a"};
    loop.edges.push_back({0, 0});
    CHECK(moduli_dimension(loop, dv({1})) == 1);
}

TEST_CASE("homotopy report gates on n + 1 < d_min") {
    const HomotopyReport r = homotopy_report(gen_adhm(2, 2), 5);
    REQUIRE(r.d_min == 6);
    for (const auto& e : r.entries)
        CHECK(e.conclusive == (e.degree + 1 < 6));
    CHECK(r.entries[1].moduli_group.is_trivial());               // pi_0(PG)
    CHECK(r.entries[2].moduli_group == FGAbelianGroup::free(1)); // pi_1(PG) = Z
    CHECK(r.entries[4].moduli_group == FGAbelianGroup::free(1)); // pi_3(PG) = Z
    CHECK(r.entries[0].conclusive);                              // connected
    CHECK(!r.entries[5].conclusive);                             // boundary n+1 = d_min

    const HomotopyReport square = homotopy_report(gen_polygon({1, 1, 1, 1}), 3);
    REQUIRE(square.d_min == 2);
    CHECK(square.entries[0].conclusive);
    for (std::size_t n = 1; n < square.entries.size(); ++n) CHECK(!square.entries[n].conclusive);

    const HomotopyReport pentagon = homotopy_report(gen_polygon({1, 1, 1, 1, 1}), 2);
    REQUIRE(pentagon.d_min == 4);
    CHECK(pentagon.entries[1].conclusive);
    CHECK(pentagon.entries[1].moduli_group.is_trivial());
    CHECK(pentagon.entries[2].conclusive);
    CHECK(pentagon.entries[2].moduli_group == FGAbelianGroup::free(5));
}

TEST_CASE("degrees above the implemented table surface unknown, never a silent zero") {
    // d_min = 2(2+4-1) = 10, so degree 7 concludes but needs pi_6(U(2))
    const HomotopyReport r = homotopy_report(gen_adhm(2, 4), 7);
    REQUIRE(r.d_min == 10);
    CHECK(r.entries[7].conclusive);
    CHECK(!r.entries[7].moduli_group.known());
    CHECK(r.entries[7].moduli_group.str() == "unknown");
    CHECK(r.entries[6].moduli_group == FGAbelianGroup::cyclic(2)); // pi_5(U(2))
}

TEST_CASE("infinite d_min concludes at every degree") {
    QuiverSetup s;
    s.quiver.vertices = {"a", "b"};
    s.quiver.edges.push_back({0, 1});
    s.dims = dv({1, 0});
    s.alpha.alpha = {Rational(0), Rational(0)};
    const HomotopyReport r = homotopy_report(s, 4);
    CHECK(!r.d_min.has_value());
    for (const auto& e : r.entries) {
        CHECK(e.conclusive);
        CHECK(e.rep_group.is_trivial());
    }
}
