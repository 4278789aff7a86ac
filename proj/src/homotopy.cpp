#include "qsr/homotopy.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qsr {

FGAbelianGroup FGAbelianGroup::free(long long rank) {
    if (rank < 0) throw DomainError("negative free rank");
    FGAbelianGroup g;
    g.free_rank_ = rank;
    return g;
}

FGAbelianGroup FGAbelianGroup::cyclic(long long order) {
    if (order < 1) throw DomainError("cyclic group order must be positive");
    FGAbelianGroup g;
    if (order >= 2) g.torsion_ = {order};
    return g;
}

namespace {

std::map<long long, std::vector<long long>> prime_power_profile(const std::vector<long long>& torsion) {
    std::map<long long, std::vector<long long>> exponents; // prime -> exponents, one per factor
    for (long long d : torsion) {
        for (long long p = 2; p * p <= d; ++p) {
            if (d % p != 0) continue;
            long long e = 0;
            while (d % p == 0) { d /= p; ++e; }
            exponents[p].push_back(e);
        }
        if (d > 1) exponents[d].push_back(1);
    }
    return exponents;
}

std::vector<long long> invariant_factors(const std::vector<long long>& torsion) {
    auto profile = prime_power_profile(torsion);
    std::size_t count = 0;
    for (auto& [p, exps] : profile) {
        std::sort(exps.begin(), exps.end(), std::greater<>());
        count = std::max(count, exps.size());
    }
    std::vector<long long> factors(count, 1);
    for (const auto& [p, exps] : profile) {
        for (std::size_t i = 0; i < exps.size(); ++i) {
            long long pw = 1;
            for (long long e = 0; e < exps[i]; ++e) pw *= p;
            factors[i] *= pw; // factors[0] is the largest invariant factor
        }
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
}

} // namespace

FGAbelianGroup FGAbelianGroup::make(long long free_rank, std::vector<long long> torsion) {
    if (free_rank < 0) throw DomainError("negative free rank");
    for (long long d : torsion)
        if (d < 2) throw DomainError("torsion orders must be >= 2");
    FGAbelianGroup g;
    g.free_rank_ = free_rank;
    g.torsion_ = invariant_factors(torsion);
    return g;
}

FGAbelianGroup operator+(const FGAbelianGroup& a, const FGAbelianGroup& b) {
    if (!a.known_ || !b.known_) return FGAbelianGroup::unknown();
    std::vector<long long> torsion = a.torsion_;
    torsion.insert(torsion.end(), b.torsion_.begin(), b.torsion_.end());
    return FGAbelianGroup::make(a.free_rank_ + b.free_rank_, std::move(torsion));
}

std::string FGAbelianGroup::str() const {
    if (!known_) return "unknown";
    if (is_trivial()) return "0";
    std::string out;
    if (free_rank_ == 1) out = "Z";
    else if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
    for (long long d : torsion_) {
        if (!out.empty()) out += " + ";
        out += "Z/" + std::to_string(d);
    }
    return out;
}

FGAbelianGroup unitary_homotopy(long long n, long long k) {
    if (n < 1) throw DomainError("unitary_homotopy requires n >= 1");
    if (k < 0) throw DomainError("unitary_homotopy requires k >= 0");
    if (k == 0) return FGAbelianGroup::trivial(); // U(n) is connected
    if (n == 1) return k == 1 ? FGAbelianGroup::free(1) : FGAbelianGroup::trivial();
    if (k <= 2 * n - 1) // Bott stable range
        return (k % 2 == 1) ? FGAbelianGroup::free(1) : FGAbelianGroup::trivial();
    if (n == 2 && (k == 4 || k == 5)) return FGAbelianGroup::cyclic(2);
    return FGAbelianGroup::unknown();
}

FGAbelianGroup gauge_group_homotopy(const DimensionVector& dims, long long k) {
    FGAbelianGroup sum = FGAbelianGroup::trivial();
    for (long long d : dims.v) {
        if (d == 0) continue;
        sum = sum + unitary_homotopy(d, k);
        if (!sum.known()) return sum;
    }
    return sum;
}

FGAbelianGroup pg_homotopy(const DimensionVector& dims, long long k) {
    if (dims.total() <= 0) throw DomainError("pg_homotopy requires a positive-rank dimension vector");
    if (k < 0) throw DomainError("pg_homotopy requires k >= 0");
    if (k == 0) return FGAbelianGroup::trivial();
    if (k >= 2) return gauge_group_homotopy(dims, k); // the circle fiber is aspherical above degree 1

    long long m = 0;
    long long g = 0;
    for (long long d : dims.v) {
        if (d == 0) continue;
        ++m;
        g = std::gcd(g, d);
    }
    std::vector<long long> torsion;
    if (g >= 2) torsion.push_back(g);
    return FGAbelianGroup::make(m - 1, std::move(torsion));
}

long long moduli_dimension(const Quiver& quiver, const DimensionVector& dims) {
    if (dims.size() != quiver.vertices.size())
        throw DomainError("dimension vector does not match quiver");
    if (dims.total() <= 0) throw DomainError("moduli_dimension requires positive rank");
    long long rep_dim = 0;
    for (const Edge& e : quiver.edges)
        rep_dim += dims[static_cast<std::size_t>(e.tail)] * dims[static_cast<std::size_t>(e.head)];
    long long group_dim = 0;
    for (long long d : dims.v) group_dim += d * d;
    return rep_dim - group_dim + 1;
}

HomotopyReport homotopy_report(const QuiverSetup& setup, long long max_degree,
                               const DestabilizerOptions& opts) {
    if (max_degree < 0) throw DomainError("homotopy_report requires max_degree >= 0");
    const DminReport dmin = d_min(setup, opts);

    HomotopyReport report;
    report.d_min = dmin.d_min;
    for (long long n = 0; n <= max_degree; ++n) {
        HomotopyEntry entry;
        entry.degree = n;
        entry.conclusive = dmin.is_infinite() || (n + 1 < *dmin.d_min);
        if (entry.conclusive) {
            entry.rep_group = FGAbelianGroup::trivial();
            entry.moduli_group =
                (n == 0) ? FGAbelianGroup::trivial() : pg_homotopy(setup.dims, n - 1);
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

} // namespace qsr
