#pragma once

#include "covergrowth/matrix.hpp"

#include <optional>
#include <vector>

namespace covergrowth {

// Diagonalization U * M * V = D over a Euclidean domain, with U and V
// unimodular and the nonzero diagonal forming a divisibility chain.
template <EuclideanRingSpec Ring>
struct SmithDecomposition {
    std::vector<typename Ring::Elem> invariant_factors; // nonzero, normalized
    RingMatrix<Ring> U; // rows x rows
    RingMatrix<Ring> V; // cols x cols
    RingMatrix<Ring> D; // diagonalized matrix

    size_t rank() const { return invariant_factors.size(); }
};

namespace detail {

// Nonzero entry of minimal Euclidean size in M[k.., k..]; row-major scan
// with strict comparison resolves ties to the lowest row, then column.
template <EuclideanRingSpec Ring>
std::optional<std::pair<size_t, size_t>> select_pivot(const RingMatrix<Ring>& m, size_t k) {
    std::optional<std::pair<size_t, size_t>> best;
    std::optional<typename Ring::Size> best_size;
    for (size_t i = k; i < m.rows(); ++i) {
        for (size_t j = k; j < m.cols(); ++j) {
            if (Ring::is_zero(m.at(i, j))) continue;
            typename Ring::Size s = Ring::size(m.at(i, j));
            if (!best || s < *best_size) {
                best = {{i, j}};
                best_size = s;
            }
        }
    }
    return best;
}

} // namespace detail

template <EuclideanRingSpec Ring>
SmithDecomposition<Ring> smith_normal_form(const RingMatrix<Ring>& input) {
    using Elem = typename Ring::Elem;
    SmithDecomposition<Ring> out;
    out.D = input;
    out.U = RingMatrix<Ring>::identity(input.rows());
    out.V = RingMatrix<Ring>::identity(input.cols());
    RingMatrix<Ring>& m = out.D;

    size_t steps = std::min(m.rows(), m.cols());
    for (size_t k = 0; k < steps; ++k) {
        auto pivot = detail::select_pivot(m, k);
        if (!pivot) break;
        m.swap_rows(k, pivot->first);
        out.U.swap_rows(k, pivot->first);
        m.swap_cols(k, pivot->second);
        out.V.swap_cols(k, pivot->second);

        // Alternate row and column elimination. A nonzero remainder becomes
        // the new, strictly smaller pivot, so the loop terminates.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = k + 1; i < m.rows(); ++i) {
                if (Ring::is_zero(m.at(i, k))) continue;
                auto [q, r] = Ring::divmod(m.at(i, k), m.at(k, k));
                m.add_row_multiple(i, k, Ring::negate(q));
                out.U.add_row_multiple(i, k, Ring::negate(q));
                if (!Ring::is_zero(r)) {
                    m.swap_rows(i, k);
                    out.U.swap_rows(i, k);
                    dirty = true;
                    break;
                }
            }
            if (dirty) continue;
            for (size_t j = k + 1; j < m.cols(); ++j) {
                if (Ring::is_zero(m.at(k, j))) continue;
                auto [q, r] = Ring::divmod(m.at(k, j), m.at(k, k));
                m.add_col_multiple(j, k, Ring::negate(q));
                out.V.add_col_multiple(j, k, Ring::negate(q));
                if (!Ring::is_zero(r)) {
                    m.swap_cols(j, k);
                    out.V.swap_cols(j, k);
                    dirty = true;
                    break;
                }
            }
            if (dirty) continue;
            // Pivot must divide the rest of the submatrix for the chain
            // condition; fold an offending row into row k and keep going.
            for (size_t i = k + 1; i < m.rows() && !dirty; ++i) {
                for (size_t j = k + 1; j < m.cols() && !dirty; ++j) {
                    if (Ring::is_zero(m.at(i, j))) continue;
                    if (!Ring::is_zero(Ring::divmod(m.at(i, j), m.at(k, k)).second)) {
                        m.add_row_multiple(k, i, Ring::one());
                        out.U.add_row_multiple(k, i, Ring::one());
                        dirty = true;
                    }
                }
            }
        }

        auto [canon, unit] = Ring::unit_normalize(m.at(k, k));
        if (!Ring::is_zero(Ring::sub(unit, Ring::one()))) {
            Elem inv = Ring::unit_inverse(unit);
            m.scale_row(k, inv);
            out.U.scale_row(k, inv);
        }
        out.invariant_factors.push_back(m.at(k, k));
    }
    return out;
}

// Basis of { x : M x = 0 } as matrix columns. Over a Euclidean domain the
// kernel is free; the basis columns extend to a basis of the ambient module.
template <EuclideanRingSpec Ring>
RingMatrix<Ring> kernel_basis(const RingMatrix<Ring>& m) {
    SmithDecomposition<Ring> snf = smith_normal_form(m);
    size_t s = snf.rank();
    size_t n = m.cols();
    RingMatrix<Ring> basis(n, n - s);
    for (size_t j = s; j < n; ++j)
        for (size_t i = 0; i < n; ++i) basis.at(i, j - s) = snf.V.at(i, j);
    return basis;
}

// A solution x of B x = v, if one exists.
template <EuclideanRingSpec Ring>
std::optional<std::vector<typename Ring::Elem>>
solve_in_image(const RingMatrix<Ring>& b, const std::vector<typename Ring::Elem>& v) {
    if (v.size() != b.rows()) throw std::invalid_argument("solve_in_image: shape mismatch");
    SmithDecomposition<Ring> snf = smith_normal_form(b);
    std::vector<typename Ring::Elem> u = snf.U * v;
    size_t s = snf.rank();
    std::vector<typename Ring::Elem> w(b.cols(), Ring::zero());
    for (size_t i = 0; i < s; ++i) {
        auto [q, r] = Ring::divmod(u[i], snf.D.at(i, i));
        if (!Ring::is_zero(r)) return std::nullopt;
        w[i] = q;
    }
    for (size_t i = s; i < u.size(); ++i)
        if (!Ring::is_zero(u[i])) return std::nullopt;
    return snf.V * w;
}

// Finitely generated Lambda-module split into free rank and a divisibility
// chain of torsion factors.
struct ModuleDecomposition {
    size_t rank = 0;
    std::vector<CanonicalPoly> torsion_factors; // non-unit, degree >= 1
};

// Homology ker(d1) / im(d2) of a chain  C_2 --d2--> C_1 --d1--> C_0  over
// Lambda. d2 columns are expressed in the kernel basis; the Smith form of
// that coefficient matrix reads off the quotient module.
inline ModuleDecomposition homology_decomposition(const RingMatrix<LaurentRing>& d2,
                                                  const RingMatrix<LaurentRing>& d1) {
    if (d1.cols() != d2.rows())
        throw std::invalid_argument("homology_decomposition: d1, d2 shapes incompatible");
    RingMatrix<LaurentRing> composite = d1 * d2;
    if (!composite.is_zero())
        throw chain_complex_error("d1 * d2 != 0: not a chain complex");

    RingMatrix<LaurentRing> kernel = kernel_basis(d1);
    size_t k = kernel.cols();
    RingMatrix<LaurentRing> coeffs(k, d2.cols());
    for (size_t j = 0; j < d2.cols(); ++j) {
        auto x = solve_in_image(kernel, d2.column(j));
        if (!x)
            throw chain_complex_error("image column falls outside the kernel basis");
        for (size_t i = 0; i < k; ++i) coeffs.at(i, j) = (*x)[i];
    }

    SmithDecomposition<LaurentRing> snf = smith_normal_form(coeffs);
    ModuleDecomposition dec;
    dec.rank = k - snf.rank();
    for (const LaurentPoly& f : snf.invariant_factors) {
        if (!LaurentRing::is_unit(f))
            dec.torsion_factors.push_back(CanonicalPoly(f));
    }
    return dec;
}

struct IntegerAbelianization {
    size_t betti = 0;
    std::vector<BigInt> torsion; // invariant factors > 1, divisibility chain
};

// Cokernel of the relator-exponent matrix (relators x generators).
inline IntegerAbelianization integer_abelianization(const RingMatrix<IntegerRing>& m,
                                                    size_t generators) {
    if (m.cols() != generators)
        throw std::invalid_argument("integer_abelianization: column count != generators");
    SmithDecomposition<IntegerRing> snf = smith_normal_form(m);
    IntegerAbelianization out;
    out.betti = generators - snf.rank();
    for (const BigInt& d : snf.invariant_factors)
        if (d > 1) out.torsion.push_back(d);
    return out;
}

} // namespace covergrowth
