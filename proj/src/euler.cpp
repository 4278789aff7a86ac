#include "qsr/euler.hpp"

#include <algorithm>

namespace qsr {

HomDims hom_dims(const Quiver& quiver, const DimensionVector& dims, const DimensionVector& sub) {
    if (dims.size() != quiver.vertices.size())
        throw DomainError("dimension vector does not match quiver");
    if (!sub.fits_within(dims))
        throw DomainError("sub-dimension vector exceeds ambient dimensions");

    HomDims h;
    for (std::size_t j = 0; j < dims.size(); ++j)
        h.hom0_complex += sub[j] * (dims[j] - sub[j]);
    for (const Edge& e : quiver.edges) {
        const auto t = static_cast<std::size_t>(e.tail);
        const auto hd = static_cast<std::size_t>(e.head);
        h.hom1_complex += sub[t] * (dims[hd] - sub[hd]);
    }
    return h;
}

long long euler_characteristic(const Quiver& quiver, const DimensionVector& dims,
                               const DimensionVector& sub) {
    const HomDims h = hom_dims(quiver, dims, sub);
    return h.hom0_complex - h.hom1_complex;
}

DminReport d_min(const QuiverSetup& setup, const DestabilizerOptions& opts) {
    DestabilizerOptions enumeration = opts;
    enumeration.strict = false; // d_min ranges over slope >= 0
    DestabilizerList destab = destabilizing_dimension_vectors(setup, enumeration);

    DminReport report;
    report.shift = destab.shift;
    report.per_candidate.reserve(destab.entries.size());
    for (auto& entry : destab.entries) {
        const HomDims h = hom_dims(setup.quiver, setup.dims, entry.dims);
        DminCandidate c;
        c.minus_two_chi = 2 * (h.hom1_complex - h.hom0_complex);
        c.report = entry.report;
        c.dims = std::move(entry.dims);
        if (!report.d_min || c.minus_two_chi < *report.d_min) {
            report.d_min = c.minus_two_chi;
            report.witness = c.dims; // entries arrive in ascending lex order
        }
        report.per_candidate.push_back(std::move(c));
    }
    return report;
}

long long adhm_dmin_closed_form(long long k, long long n) {
    if (k < 1 || n < 1) throw DomainError("adhm_dmin_closed_form requires k, n >= 1");
    return 2 * (k + n - 1);
}

long long strictly_short_level(const std::vector<Rational>& sides) {
    if (sides.size() < 3) throw DomainError("strictly_short_level requires at least 3 sides");
    Rational total = 0;
    for (const auto& s : sides) {
        if (s <= Rational(0)) throw DomainError("strictly_short_level requires positive sides");
        total += s;
    }
    std::vector<Rational> sorted = sides;
    std::sort(sorted.begin(), sorted.end(), [](const Rational& a, const Rational& b) { return b < a; });

    // The worst l-subset is the l largest sides; once it fails, larger l fail too.
    Rational prefix = 0;
    long long level = 0;
    for (std::size_t l = 1; l <= sorted.size(); ++l) {
        prefix += sorted[l - 1];
        if (prefix + prefix < total)
            level = static_cast<long long>(l);
        else
            break;
    }
    return level;
}

long long polygon_dmin_table(long long level) {
    if (level < 0) throw DomainError("polygon_dmin_table requires level >= 0");
    if (level == 0) return 0;
    if (level == 1) return 2;
    return 4;
}

} // namespace qsr
