#include "qsr/slope.hpp"

namespace qsr {

long long rank(const DimensionVector& dims) {
    return dims.total();
}

Rational degree_alpha(const DimensionVector& dims, const StabilityParameter& alpha) {
    if (dims.size() != alpha.size())
        throw DomainError("dimension vector and stability parameter sizes differ");
    Rational deg = 0;
    for (std::size_t j = 0; j < dims.size(); ++j)
        deg -= alpha[j] * Rational(dims[j]);
    return deg;
}

Rational slope_alpha(const DimensionVector& dims, const StabilityParameter& alpha) {
    const long long r = rank(dims);
    if (r <= 0) throw DomainError("slope of a rank-zero dimension vector");
    return degree_alpha(dims, alpha) / Rational(r);
}

SlopeReport slope_report(const DimensionVector& dims, const StabilityParameter& alpha) {
    SlopeReport rep;
    rep.rank = rank(dims);
    rep.degree = degree_alpha(dims, alpha);
    rep.slope = slope_alpha(dims, alpha);
    return rep;
}

Rational normalization_shift(const QuiverSetup& setup) {
    const long long r = rank(setup.dims);
    if (r <= 0) throw DomainError("cannot normalize alpha for a rank-zero dimension vector");
    Rational weighted = 0;
    for (std::size_t j = 0; j < setup.dims.size(); ++j)
        weighted += setup.alpha[j] * Rational(setup.dims[j]);
    return -weighted / Rational(r);
}

StabilityParameter normalize_alpha(const QuiverSetup& setup) {
    const Rational c = normalization_shift(setup);
    if (c.is_zero()) return setup.alpha;
    StabilityParameter out = setup.alpha;
    for (auto& a : out.alpha) a += c;
    return out;
}

DestabilizerList destabilizing_dimension_vectors(const QuiverSetup& setup,
                                                 const DestabilizerOptions& opts) {
    const auto report = validate_setup(setup);
    if (!report.ok()) throw DomainError("invalid setup: " + report.errors.front());

    const auto domain = sub_dimension_vector_count(setup.dims);
    if (!domain || *domain > opts.cap)
        throw EnumerationLimitError("sub-dimension vector enumeration exceeds cap of " +
                                    std::to_string(opts.cap) + " candidates");

    DestabilizerList out;
    out.shift = normalization_shift(setup);
    const StabilityParameter normalized = normalize_alpha(setup);

    for_each_sub_dimension_vector(setup.dims, [&](const DimensionVector& sub) {
        const Rational deg = degree_alpha(sub, normalized);
        const bool keep = opts.strict ? deg > Rational(0) : deg >= Rational(0);
        if (!keep) return;
        Destabilizer d;
        d.dims = sub;
        d.report.rank = rank(sub);
        d.report.degree = deg;
        d.report.slope = deg / Rational(d.report.rank);
        out.entries.push_back(std::move(d));
    });
    return out;
}

} // namespace qsr
