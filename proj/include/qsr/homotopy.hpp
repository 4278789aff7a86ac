#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsr/euler.hpp"
#include "qsr/quiver.hpp"

namespace qsr {

/// Finitely generated abelian group: free rank plus invariant factors
/// (each dividing the next), with an explicit unknown marker for values
/// outside the implemented tables.
class FGAbelianGroup {
public:
    static FGAbelianGroup trivial() { return FGAbelianGroup(); }
    static FGAbelianGroup free(long long rank);
    static FGAbelianGroup cyclic(long long order); ///< order 1 collapses to trivial
    static FGAbelianGroup make(long long free_rank, std::vector<long long> torsion);
    static FGAbelianGroup unknown() {
        FGAbelianGroup g;
        g.known_ = false;
        return g;
    }

    [[nodiscard]] bool known() const { return known_; }
    [[nodiscard]] bool is_trivial() const { return known_ && free_rank_ == 0 && torsion_.empty(); }
    [[nodiscard]] long long free_rank() const { return free_rank_; }
    [[nodiscard]] const std::vector<long long>& torsion() const { return torsion_; }

    /// "0", "Z", "Z^r", "Z/d", "Z^r + Z/d1 + Z/d2", "unknown" - stable strings.
    [[nodiscard]] std::string str() const;

    /// Direct sum; torsion is renormalized to invariant-factor form.
    /// Unknown absorbs everything.
    friend FGAbelianGroup operator+(const FGAbelianGroup& a, const FGAbelianGroup& b);

    friend bool operator==(const FGAbelianGroup&, const FGAbelianGroup&) = default;

private:
    long long free_rank_ = 0;
    std::vector<long long> torsion_;
    bool known_ = true;
};

/// pi_k(U(n)) where classically determined by the implemented table:
/// the Bott stable range k <= 2n-1, all degrees for U(1), and the
/// low-rank entries pi_4(U(2)) = pi_5(U(2)) = Z/2. Everything else is
/// reported unknown rather than guessed.
FGAbelianGroup unitary_homotopy(long long n, long long k);

/// pi_k of the product of U(v_j) factors (v_j = 0 factors are skipped).
FGAbelianGroup gauge_group_homotopy(const DimensionVector& dims, long long k);

/// pi_k of the gauge group modulo its scalar circle. For k = 1 this is
/// Z^m / <(v_1,...,v_m)> over the vertices with v_j > 0: the circle fibers
/// the gauge group over the quotient, pi_2 of the total space vanishes, so
/// the homotopy sequence is short exact and the scalar loop maps to the
/// determinant-degree vector (v_1,...,v_m). The quotient has free rank
/// m - 1 and one cyclic factor of order gcd(v_j).
FGAbelianGroup pg_homotopy(const DimensionVector& dims, long long k);

/// Expected complex dimension of the smooth moduli locus:
/// sum_a v_{t(a)} v_{h(a)} - sum_j v_j^2 + 1.
long long moduli_dimension(const Quiver& quiver, const DimensionVector& dims);

struct HomotopyEntry {
    long long degree = 0;
    bool conclusive = false;
    FGAbelianGroup rep_group;    ///< pi_n of the stable locus (0 when conclusive)
    FGAbelianGroup moduli_group; ///< pi_n of the stable moduli space
};

/// Per-degree conclusions: degrees n with n + 1 < d_min get
/// pi_n(stable locus) = 0 and pi_n(moduli) = pi_{n-1}(PG) (degree -1 reads
/// as the trivial group); all other degrees report no conclusion. An
/// infinite d_min concludes at every requested degree.
struct HomotopyReport {
    std::optional<long long> d_min; ///< empty = +infinity
    std::vector<HomotopyEntry> entries;
};

HomotopyReport homotopy_report(const QuiverSetup& setup, long long max_degree,
                               const DestabilizerOptions& opts = {});

} // namespace qsr
