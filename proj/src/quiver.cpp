#include "qsr/quiver.hpp"

#include <unordered_set>

namespace qsr {

ValidationReport validate_setup(const QuiverSetup& setup) {
    ValidationReport report;
    const Quiver& q = setup.quiver;

    std::unordered_set<std::string_view> seen;
    for (const auto& id : q.vertices) {
        if (!seen.insert(id).second)
            report.errors.push_back("duplicate vertex id '" + id + "'");
    }

    for (std::size_t a = 0; a < q.edges.size(); ++a) {
        const Edge& e = q.edges[a];
        if (e.tail < 0 || e.tail >= q.vertex_count() || e.head < 0 || e.head >= q.vertex_count())
            report.errors.push_back("edge " + std::to_string(a) + ": unknown vertex");
    }

    if (setup.dims.size() != q.vertices.size())
        report.errors.push_back("dimension vector has " + std::to_string(setup.dims.size()) +
                                " entries for " + std::to_string(q.vertices.size()) + " vertices");
    if (setup.alpha.size() != q.vertices.size())
        report.errors.push_back("stability parameter has " + std::to_string(setup.alpha.size()) +
                                " entries for " + std::to_string(q.vertices.size()) + " vertices");

    for (std::size_t j = 0; j < setup.dims.size() && j < q.vertices.size(); ++j) {
        if (setup.dims[j] < 0)
            report.errors.push_back("negative dimension at vertex '" + q.vertices[j] + "'");
    }

    if (report.ok()) {
        Rational sum = 0;
        for (std::size_t j = 0; j < setup.dims.size(); ++j)
            sum += setup.alpha[j] * Rational(setup.dims[j]);
        if (!sum.is_zero())
            report.warnings.push_back("sum of alpha_j * v_j = " + sum.str() +
                                      " != 0 (normalizable by a uniform shift)");
    }
    return report;
}

QuiverSetup gen_adhm(long long k, long long n) {
    if (k < 1 || n < 1) throw DomainError("gen_adhm requires k >= 1 and n >= 1");
    QuiverSetup s;
    s.quiver.vertices = {"v", "w"};
    for (long long i = 0; i < n; ++i) s.quiver.edges.push_back({0, 1}); // v -> w
    for (long long i = 0; i < n; ++i) s.quiver.edges.push_back({1, 0}); // w -> v
    s.quiver.edges.push_back({0, 0});
    s.quiver.edges.push_back({0, 0});
    s.dims.v = {k, 1};
    s.alpha.alpha = {Rational(0), Rational(0)};
    return s;
}

QuiverSetup gen_polygon(const std::vector<Rational>& sides) {
    const auto n = static_cast<long long>(sides.size());
    if (n < 3) throw DomainError("gen_polygon requires at least 3 sides");
    Rational total = 0;
    for (const auto& side : sides) {
        if (side <= Rational(0)) throw DomainError("gen_polygon requires positive side lengths");
        total += side;
    }
    QuiverSetup s;
    s.quiver.vertices.push_back("c");
    s.dims.v.push_back(2);
    s.alpha.alpha.push_back(total / Rational(2));
    for (long long j = 0; j < n; ++j) {
        s.quiver.vertices.push_back("s" + std::to_string(j + 1));
        s.dims.v.push_back(1);
        s.alpha.alpha.push_back(-sides[static_cast<std::size_t>(j)]);
        s.quiver.edges.push_back({static_cast<int>(j + 1), 0});
    }
    return s;
}

GroupProfile group_profile(const DimensionVector& dims) {
    GroupProfile profile;
    profile.blocks = dims.v;
    for (long long d : dims.v) profile.dim_g += d * d;
    profile.dim_pg = profile.dim_g - 1;
    return profile;
}

std::optional<unsigned long long> sub_dimension_vector_count(const DimensionVector& dims) {
    unsigned long long prod = 1;
    for (long long d : dims.v) {
        const auto factor = static_cast<unsigned long long>(d) + 1ULL;
        if (prod > ~0ULL / factor) return std::nullopt;
        prod *= factor;
    }
    return prod >= 2 ? prod - 2 : 0;
}

} // namespace qsr
