#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsr/error.hpp"
#include "qsr/rational.hpp"

namespace qsr {

/// Directed edge given by vertex indices. Loops and parallel edges are
/// allowed; edges are identified by their position in Quiver::edges.
struct Edge {
    int tail = -1;
    int head = -1;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// A directed multigraph. Vertices carry string ids; all per-vertex data
/// (dimensions, stability weights) lives in parallel vectors indexed by the
/// vertex's position in `vertices`.
struct Quiver {
    std::vector<std::string> vertices;
    std::vector<Edge> edges;

    [[nodiscard]] int vertex_count() const { return static_cast<int>(vertices.size()); }
    [[nodiscard]] int edge_count() const { return static_cast<int>(edges.size()); }

    [[nodiscard]] std::optional<int> index_of(std::string_view id) const {
        for (std::size_t j = 0; j < vertices.size(); ++j)
            if (vertices[j] == id) return static_cast<int>(j);
        return std::nullopt;
    }

    friend bool operator==(const Quiver&, const Quiver&) = default;
};

/// One nonnegative integer per vertex, indexed like Quiver::vertices.
struct DimensionVector {
    std::vector<long long> v;

    DimensionVector() = default;
    explicit DimensionVector(std::vector<long long> values) : v(std::move(values)) {}

    [[nodiscard]] std::size_t size() const { return v.size(); }
    [[nodiscard]] long long operator[](std::size_t j) const { return v[j]; }
    [[nodiscard]] long long total() const {
        long long s = 0;
        for (long long x : v) s += x;
        return s;
    }
    [[nodiscard]] bool is_zero() const {
        return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
    }
    /// Componentwise v <= other (sizes must match).
    [[nodiscard]] bool fits_within(const DimensionVector& other) const {
        if (v.size() != other.v.size()) return false;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] < 0 || v[j] > other.v[j]) return false;
        return true;
    }

    friend bool operator==(const DimensionVector&, const DimensionVector&) = default;
    friend auto operator<=>(const DimensionVector& a, const DimensionVector& b) {
        return a.v <=> b.v; // lexicographic
    }
};

/// One exact rational weight per vertex.
struct StabilityParameter {
    std::vector<Rational> alpha;

    StabilityParameter() = default;
    explicit StabilityParameter(std::vector<Rational> values) : alpha(std::move(values)) {}

    [[nodiscard]] std::size_t size() const { return alpha.size(); }
    [[nodiscard]] const Rational& operator[](std::size_t j) const { return alpha[j]; }

    friend bool operator==(const StabilityParameter&, const StabilityParameter&) = default;
};

/// The working triple: quiver, dimension vector, stability parameter.
struct QuiverSetup {
    Quiver quiver;
    DimensionVector dims;
    StabilityParameter alpha;

    friend bool operator==(const QuiverSetup&, const QuiverSetup&) = default;
};

/// Outcome of validate_setup. Errors make the setup unusable; warnings
/// (currently only a nonzero weighted alpha sum) are normalizable.
struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    [[nodiscard]] bool ok() const { return errors.empty(); }
};

ValidationReport validate_setup(const QuiverSetup& setup);

/// Framed k-instanton quiver: vertices ("v", dim k) and ("w", dim 1),
/// n edges v->w, n edges w->v, two loops at v. alpha = 0.
QuiverSetup gen_adhm(long long k, long long n);

/// Star quiver for n-gon spaces: central vertex ("c", dim 2) and one
/// dim-1 outer vertex per side, each with an edge into the center.
/// alpha_j = -s_j outside, alpha_0 = (sum s_j)/2 at the center.
QuiverSetup gen_polygon(const std::vector<Rational>& sides);

/// Unitary block sizes and real dimensions of the gauge group and its
/// quotient by the scalar circle.
struct GroupProfile {
    std::vector<long long> blocks;
    long long dim_g = 0;
    long long dim_pg = 0;
};

GroupProfile group_profile(const DimensionVector& dims);

/// Number of proper nonzero sub-dimension vectors: prod(v_j + 1) - 2,
/// clamped at 0. nullopt when the product overflows uint64.
std::optional<unsigned long long> sub_dimension_vector_count(const DimensionVector& dims);

/// Visits every v' with 0 <= v' <= v componentwise, v' != 0, v' != v, in
/// ascending lexicographic order (first component most significant).
/// The argument passed to f is reused storage; copy it to keep it.
template <typename F>
void for_each_sub_dimension_vector(const DimensionVector& dims, F&& f) {
    const std::size_t m = dims.size();
    DimensionVector cur;
    cur.v.assign(m, 0);
    auto advance = [&]() -> bool {
        for (std::size_t i = m; i-- > 0;) {
            if (cur.v[i] < dims.v[i]) {
                ++cur.v[i];
                std::fill(cur.v.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.v.end(), 0);
                return true;
            }
        }
        return false;
    };
    while (advance()) {
        if (cur == dims) break; // ambient vector is lexicographically last
        f(static_cast<const DimensionVector&>(cur));
    }
}

} // namespace qsr
