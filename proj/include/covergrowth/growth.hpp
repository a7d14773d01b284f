#pragma once

#include "covergrowth/covers.hpp"
#include "covergrowth/fox.hpp"
#include "covergrowth/laurent.hpp"
#include "covergrowth/presentation.hpp"
#include "covergrowth/smith.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace covergrowth {

// First Betti number of the degree-n cyclic cover, computed from the module
// decomposition of the infinite cyclic cover:
//   b1(M_n) = 1 + n * rank + sum_j deg gcd(p_j, t^n - 1).
inline long long betti_of_cyclic_cover(const ModuleDecomposition& dec, long long n) {
    if (n < 1) throw std::invalid_argument("cover order must be >= 1");
    long long b = 1 + n * (long long)dec.rank;
    for (const CanonicalPoly& p : dec.torsion_factors)
        b += gcd(p.poly(), t_power_minus_one((int)n)).degree();
    return b;
}

// A torsion factor divisible by cyclotomic polynomials, with their orders.
struct CyclotomicWitness {
    CanonicalPoly factor;
    std::vector<int> orders;
};

struct GrowthClassification {
    enum class Kind { linear, bounded };

    Kind kind = Kind::bounded;
    long long rate = 0;      // linear: slope of b1(M_n) in n
    long long max_value = 1; // bounded: largest b1(M_n) over all n
    long long period = 1;    // bounded: b1(M_{n+period}) = b1(M_n) for all n
    std::vector<CyclotomicWitness> witnesses;
};

inline GrowthClassification classify_growth(const ModuleDecomposition& dec) {
    GrowthClassification out;
    long long bounded_sum = 1;
    long long period = 1;
    for (const CanonicalPoly& p : dec.torsion_factors) {
        std::set<int> found = cyclotomic_divisors(p);
        if (found.empty()) continue;
        for (int d : found) {
            bounded_sum += euler_phi(d).convert_to<long long>();
            period = std::lcm(period, (long long)d);
        }
        out.witnesses.push_back({p, std::vector<int>(found.begin(), found.end())});
    }
    if (dec.rank > 0) {
        out.kind = GrowthClassification::Kind::linear;
        out.rate = (long long)dec.rank;
    } else {
        out.kind = GrowthClassification::Kind::bounded;
        out.max_value = bounded_sum;
        out.period = period;
    }
    return out;
}

// Criterion for a knot with Alexander polynomial delta: the cyclic covers of
// zero-framed surgery gain homology exactly when delta has a cyclotomic
// factor.  Each witness lists a cover order d and b1(M_d) at that order.
struct KnotGrowth {
    bool grows = false;
    std::vector<std::pair<int, long long>> witnesses;
};

inline KnotGrowth knot_criterion(const CanonicalPoly& delta) {
    if (delta.is_zero())
        throw std::invalid_argument("the polynomial must be nonzero");
    KnotGrowth out;
    std::set<int> orders = cyclotomic_divisors(delta);
    out.grows = !orders.empty();
    for (int d : orders) {
        long long betti = 1;
        for (int dd : orders)
            if (d % dd == 0) betti += euler_phi(dd).convert_to<long long>();
        out.witnesses.emplace_back(d, betti);
    }
    std::sort(out.witnesses.begin(), out.witnesses.end());
    return out;
}

// Largest power of (t-1) dividing a torsion factor, and whether the
// rank/torsion dichotomy promised for closed 3-manifolds with b1 = 2 holds.
struct TorsionDiagnostic {
    int max_valuation = 0;
    bool rank_positive = false;
    bool equivalence_applies = false;
    std::optional<std::string> warning;
};

inline TorsionDiagnostic torsion_diagnostic(const ModuleDecomposition& dec,
                                            const PresentationFile& file) {
    TorsionDiagnostic out;
    out.rank_positive = dec.rank > 0;
    for (const CanonicalPoly& p : dec.torsion_factors)
        out.max_valuation = std::max(out.max_valuation, t_minus_1_valuation(p.poly()));
    out.equivalence_applies =
        file.has_flag("closed3manifold") && file.flag_value("beta1") == 2;
    if (out.equivalence_applies && (out.rank_positive != (out.max_valuation == 0)))
        out.warning = "flagged as a closed 3-manifold with first Betti number two, but the "
                      "computed module breaks the expected equivalence between positive rank "
                      "and absence of (t-1)-torsion";
    return out;
}

// Value of the quadratic form q(p,q) = p^2*xy + q^2*yx - 2pq*mixed attached to
// a rank-two second cohomology under the basis (p, q).
inline Rational beta2_basis_change(long long p, long long q, const Rational& xy,
                                   const Rational& yx, const Rational& mixed) {
    return Rational(p * p) * xy + Rational(q * q) * yx - Rational(2 * p * q) * mixed;
}

struct GrowthRow {
    long long n = 1;
    long long betti = 1;
    std::optional<long long> oracle;
};

// Closed-form Betti numbers for n = 1..max_n; with verify, each row is
// recomputed by rewriting the cover presentation and the two must agree.
inline std::vector<GrowthRow> growth_table(const PresentationFile& file, long long max_n,
                                           bool verify = false) {
    if (!file.psi) throw std::invalid_argument("presentation has no map line");
    if (max_n < 1) throw std::invalid_argument("cover order must be >= 1");

    AlexanderComplex cx = alexander_complex(file);
    ModuleDecomposition dec = homology_decomposition(cx.d2, cx.d1);

    std::vector<GrowthRow> rows;
    rows.reserve((size_t)max_n);
    for (long long n = 1; n <= max_n; ++n) {
        GrowthRow row;
        row.n = n;
        row.betti = betti_of_cyclic_cover(dec, n);
        if (verify) {
            FiniteAbelianQuotient q = cyclic_quotient(*file.psi, n);
            PresentationFile cover = reidemeister_schreier(file, q);
            row.oracle = (long long)presentation_abelianization(cover.group).betti;
            if (*row.oracle != row.betti) {
                std::string details;
                details += "d1 = " + to_string(cx.d1) + "\n";
                details += "d2 = " + to_string(cx.d2) + "\n";
                details += "rank " + std::to_string(dec.rank) + ", torsion factors:";
                for (const CanonicalPoly& p : dec.torsion_factors)
                    details += " " + to_string(p);
                details += "\ncover presentation:\n" + print_presentation(cover);
                throw oracle_mismatch_error(
                    "closed-form first Betti number " + std::to_string(row.betti) +
                        " disagrees with the rewritten cover's " + std::to_string(*row.oracle) +
                        " at n = " + std::to_string(n),
                    details);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace covergrowth
