#pragma once

#include "covergrowth/laurent.hpp"
#include "covergrowth/matrix.hpp"
#include "covergrowth/presentation.hpp"
#include "covergrowth/ring.hpp"
#include "covergrowth/smith.hpp"

#include <map>
#include <stdexcept>

namespace covergrowth {

// Formal Q-linear combination of freely reduced words in the free group.
using GroupRingElem = std::map<Word, Rational>;

inline void add_term(GroupRingElem& e, Word w, const Rational& c) {
    if (c == 0) return;
    w = free_reduce(std::move(w));
    auto it = e.find(w);
    if (it == e.end()) {
        e.emplace(std::move(w), c);
    } else {
        it->second += c;
        if (it->second == 0) e.erase(it);
    }
}

inline GroupRingElem ring_add(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem out = a;
    for (const auto& [w, c] : b) add_term(out, w, c);
    return out;
}

inline GroupRingElem left_translate(const Word& u, const GroupRingElem& e) {
    GroupRingElem out;
    for (const auto& [w, c] : e) add_term(out, concat(u, w), c);
    return out;
}

// Free derivative with respect to generator `gen`:
//   d(uv) = du + u dv,  d(x) = 1,  d(x^-1) = -x^-1.
inline GroupRingElem fox_derivative(const Word& w, int gen) {
    GroupRingElem out;
    Word reduced = free_reduce(w);
    Word prefix;
    prefix.reserve(reduced.size());
    for (const Letter& l : reduced) {
        if (l.gen == gen) {
            if (l.sign > 0) {
                add_term(out, prefix, Rational(1));
            } else {
                Word p = prefix;
                p.push_back(l);
                add_term(out, std::move(p), Rational(-1));
            }
        }
        prefix.push_back(l);
    }
    return out;
}

// Push a group-ring element along psi: each word becomes t^psi(word).
inline LaurentPoly specialize(const GroupRingElem& e, const ZMap& psi) {
    LaurentPoly out = LaurentPoly::zero();
    for (const auto& [w, c] : e) out = out + LaurentPoly::monomial(c, (int)psi(w));
    return out;
}

// Chain complex of the presentation 2-complex with coefficients twisted by
// t^psi, after dividing psi by its content.  d1 is 1 x g, d2 is g x r.
struct AlexanderComplex {
    RingMatrix<LaurentRing> d2;
    RingMatrix<LaurentRing> d1;
};

inline AlexanderComplex alexander_complex(const GroupPresentation& group, const ZMap& raw_psi) {
    if (raw_psi.values.size() != group.generators.size())
        throw std::invalid_argument("map size does not match the generator count");
    if (raw_psi.content() == 0)
        throw std::invalid_argument("the map to Z must be nonzero");
    for (size_t r = 0; r < group.relators.size(); ++r)
        if (raw_psi(group.relators[r]) != 0)
            throw std::invalid_argument("relator " + std::to_string(r + 1) +
                                        " has nonzero image under the map");
    ZMap psi = raw_psi.primitivized();

    size_t g = group.generators.size();
    size_t r = group.relators.size();
    AlexanderComplex cx{RingMatrix<LaurentRing>(g, r), RingMatrix<LaurentRing>(1, g)};
    for (size_t i = 0; i < g; ++i) {
        cx.d1.at(0, i) =
            LaurentPoly::monomial(Rational(1), (int)psi.values[i]) - LaurentPoly::one();
        for (size_t j = 0; j < r; ++j)
            cx.d2.at(i, j) = specialize(fox_derivative(group.relators[j], (int)i), psi);
    }

    RingMatrix<LaurentRing> prod = cx.d1 * cx.d2;
    if (!prod.is_zero())
        throw chain_complex_error("boundary composition d1*d2 is nonzero");
    return cx;
}

inline AlexanderComplex alexander_complex(const PresentationFile& file) {
    if (!file.psi)
        throw std::invalid_argument("presentation has no map line");
    return alexander_complex(file.group, *file.psi);
}

// H1 of the infinite cyclic cover as a module over Laurent polynomials.
inline ModuleDecomposition infinite_cyclic_homology(const GroupPresentation& group,
                                                    const ZMap& psi) {
    AlexanderComplex cx = alexander_complex(group, psi);
    return homology_decomposition(cx.d2, cx.d1);
}

inline ModuleDecomposition infinite_cyclic_homology(const PresentationFile& file) {
    if (!file.psi)
        throw std::invalid_argument("presentation has no map line");
    return infinite_cyclic_homology(file.group, *file.psi);
}

} // namespace covergrowth
