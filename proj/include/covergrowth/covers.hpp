#pragma once

#include "covergrowth/matrix.hpp"
#include "covergrowth/presentation.hpp"
#include "covergrowth/ring.hpp"
#include "covergrowth/smith.hpp"
#include "covergrowth/word.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace covergrowth {

// Surjection onto a product of cyclic groups, given by generator images.
struct FiniteAbelianQuotient {
    std::vector<long long> moduli;              // one entry per cyclic factor
    std::vector<std::vector<long long>> images; // [generator][factor]

    long long order() const {
        long long n = 1;
        for (long long m : moduli) n *= m;
        return n;
    }
};

inline FiniteAbelianQuotient cyclic_quotient(const ZMap& psi, long long n) {
    if (n < 1) throw std::invalid_argument("cover order must be >= 1");
    if (psi.content() == 0) throw std::invalid_argument("the map to Z must be nonzero");
    ZMap prim = psi.primitivized();
    FiniteAbelianQuotient q;
    q.moduli = {n};
    for (long long v : prim.values) q.images.push_back({((v % n) + n) % n});
    return q;
}

namespace detail {

inline std::vector<long long> tuple_shift(const std::vector<long long>& a,
                                          const std::vector<long long>& b, int sign,
                                          const std::vector<long long>& moduli) {
    std::vector<long long> out(a.size());
    for (size_t j = 0; j < a.size(); ++j) {
        long long v = (a[j] + sign * b[j]) % moduli[j];
        out[j] = v < 0 ? v + moduli[j] : v;
    }
    return out;
}

} // namespace detail

// Cosets of the kernel, acted on by the generators.  Cosets are indexed in
// breadth-first discovery order over the alphabet x, x^-1, y, y^-1, ..., so
// transversal words are shortlex-minimal and the set is prefix-closed.
struct CosetTable {
    std::vector<std::vector<long long>> tuples;  // [coset] -> quotient element
    std::vector<std::vector<size_t>> step;       // [gen][coset] -> coset * gen
    std::vector<std::vector<size_t>> step_inv;   // [gen][coset] -> coset * gen^-1
    std::vector<Word> transversal;               // [coset] -> representative word

    size_t size() const { return transversal.size(); }
};

inline CosetTable coset_table(const GroupPresentation& group,
                              const FiniteAbelianQuotient& quo) {
    size_t g = group.generators.size();
    size_t k = quo.moduli.size();
    if (k == 0) throw std::invalid_argument("quotient needs at least one cyclic factor");
    for (long long m : quo.moduli)
        if (m < 1) throw std::invalid_argument("quotient moduli must be >= 1");
    if (quo.images.size() != g)
        throw std::invalid_argument("quotient image count != generator count");
    for (const auto& img : quo.images)
        if (img.size() != k)
            throw std::invalid_argument("quotient image has the wrong number of components");

    long long order = 1;
    for (long long m : quo.moduli) {
        if (m > 1000000 || order > 1000000 / m)
            throw std::invalid_argument("quotient order exceeds the supported maximum 1000000");
        order *= m;
    }

    std::vector<std::vector<long long>> images(g);
    for (size_t i = 0; i < g; ++i)
        images[i] = detail::tuple_shift(std::vector<long long>(k, 0), quo.images[i], 1,
                                        quo.moduli);

    for (size_t r = 0; r < group.relators.size(); ++r) {
        std::vector<long long> acc(k, 0);
        for (const Letter& l : group.relators[r])
            acc = detail::tuple_shift(acc, images[(size_t)l.gen], l.sign, quo.moduli);
        if (std::any_of(acc.begin(), acc.end(), [](long long v) { return v != 0; }))
            throw std::invalid_argument("relator " + std::to_string(r + 1) +
                                        " maps to a nonzero element of the quotient");
    }

    CosetTable table;
    std::map<std::vector<long long>, size_t> index;
    std::vector<long long> origin(k, 0);
    index[origin] = 0;
    table.tuples.push_back(origin);
    table.transversal.push_back({});
    for (size_t c = 0; c < table.tuples.size(); ++c) {
        for (size_t gi = 0; gi < g; ++gi) {
            for (int sign : {1, -1}) {
                auto next = detail::tuple_shift(table.tuples[c], images[gi], sign, quo.moduli);
                if (index.count(next)) continue;
                index[next] = table.tuples.size();
                table.tuples.push_back(next);
                Word w = table.transversal[c];
                w.push_back({(int)gi, sign});
                table.transversal.push_back(std::move(w));
            }
        }
    }
    if ((long long)table.tuples.size() != order)
        throw std::invalid_argument("the generator images do not generate the quotient");

    table.step.assign(g, std::vector<size_t>(table.tuples.size()));
    table.step_inv.assign(g, std::vector<size_t>(table.tuples.size()));
    for (size_t gi = 0; gi < g; ++gi)
        for (size_t c = 0; c < table.tuples.size(); ++c) {
            table.step[gi][c] =
                index.at(detail::tuple_shift(table.tuples[c], images[gi], 1, quo.moduli));
            table.step_inv[gi][c] =
                index.at(detail::tuple_shift(table.tuples[c], images[gi], -1, quo.moduli));
        }
    return table;
}

struct CoverOptions {
    // Drop empty relators and eliminate generators that a one-letter relator
    // kills.  Disable to keep the raw rewriting, whose generator and relator
    // counts are |Q|(g-1)+1 and |Q|r.
    bool clean = true;
};

inline PresentationFile reidemeister_schreier(const PresentationFile& base,
                                              const FiniteAbelianQuotient& quo,
                                              CoverOptions options = {}) {
    const GroupPresentation& G = base.group;
    CosetTable table = coset_table(G, quo);
    size_t n = table.size();
    size_t g = G.generators.size();

    std::vector<std::vector<int>> edge_index(g, std::vector<int>(n, -1));
    std::vector<std::string> names;
    std::vector<long long> psi_values;
    for (size_t gi = 0; gi < g; ++gi) {
        for (size_t c = 0; c < n; ++c) {
            Word elt = table.transversal[c];
            elt.push_back({(int)gi, 1});
            elt = free_reduce(concat(elt, invert_word(table.transversal[table.step[gi][c]])));
            if (elt.empty()) continue; // spanning-tree edge
            edge_index[gi][c] = (int)names.size();
            names.push_back(n == 1 ? G.generators[gi]
                                   : G.generators[gi] + "_" + std::to_string(c));
            if (base.psi) psi_values.push_back((*base.psi)(elt));
        }
    }

    std::vector<Word> relators;
    relators.reserve(G.relators.size() * n);
    for (const Word& r : G.relators) {
        for (size_t c = 0; c < n; ++c) {
            Word out;
            size_t cur = c;
            for (const Letter& l : r) {
                if (l.sign > 0) {
                    int e = edge_index[(size_t)l.gen][cur];
                    if (e >= 0) out.push_back({e, 1});
                    cur = table.step[(size_t)l.gen][cur];
                } else {
                    size_t prev = table.step_inv[(size_t)l.gen][cur];
                    int e = edge_index[(size_t)l.gen][prev];
                    if (e >= 0) out.push_back({e, -1});
                    cur = prev;
                }
            }
            relators.push_back(free_reduce(out));
        }
    }

    std::vector<bool> dead(names.size(), false);
    if (options.clean) {
        std::erase_if(relators, [](const Word& w) { return w.empty(); });
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < relators.size(); ++i) {
                if (relators[i].size() != 1) continue;
                int killed = relators[i][0].gen;
                dead[(size_t)killed] = true;
                relators.erase(relators.begin() + (long)i);
                for (Word& w : relators) {
                    std::erase_if(w, [&](const Letter& l) { return l.gen == killed; });
                    w = free_reduce(std::move(w));
                }
                std::erase_if(relators, [](const Word& w) { return w.empty(); });
                changed = true;
                break;
            }
        }
    }

    std::vector<int> remap(names.size(), -1);
    PresentationFile out;
    out.name = base.name.empty() ? "" : base.name + "_cover";
    std::vector<long long> kept_psi;
    for (size_t i = 0; i < names.size(); ++i) {
        if (dead[i]) continue;
        remap[i] = (int)out.group.generators.size();
        out.group.generators.push_back(names[i]);
        if (base.psi) kept_psi.push_back(psi_values[i]);
    }
    for (Word& w : relators)
        for (Letter& l : w) l.gen = remap[(size_t)l.gen];
    out.group.relators = std::move(relators);

    if (base.psi && !kept_psi.empty()) {
        ZMap psi{kept_psi};
        if (psi.content() != 0) out.psi = psi.primitivized();
    }
    for (const Flag& f : base.flags)
        if (f.key == "closed3manifold") out.flags.push_back(f);
    return out;
}

// Exponent-sum matrix, one row per relator and one column per generator.
inline RingMatrix<IntegerRing> exponent_matrix(const GroupPresentation& group) {
    RingMatrix<IntegerRing> m(group.relators.size(), group.generators.size());
    for (size_t j = 0; j < group.relators.size(); ++j)
        for (const Letter& l : group.relators[j])
            m.at(j, (size_t)l.gen) += l.sign;
    return m;
}

inline IntegerAbelianization presentation_abelianization(const GroupPresentation& group) {
    return integer_abelianization(exponent_matrix(group), group.generators.size());
}

// Abelianization of the rewritten cover presentation: the oracle side of the
// formula/oracle cross-checks.
inline IntegerAbelianization cover_betti(const PresentationFile& base,
                                         const FiniteAbelianQuotient& quo) {
    PresentationFile cover = reidemeister_schreier(base, quo);
    return presentation_abelianization(cover.group);
}

// First Betti number along a tower of cyclic covers; entry k is the level and
// the Betti number after k successive covers (level 0 is the input itself).
inline std::vector<std::pair<int, long long>> iterated_cover_betti(
    const PresentationFile& base, const std::vector<long long>& orders) {
    std::vector<std::pair<int, long long>> out;
    PresentationFile cur = base;
    out.emplace_back(0, (long long)presentation_abelianization(cur.group).betti);
    for (size_t k = 0; k < orders.size(); ++k) {
        std::string level = "level " + std::to_string(k + 1);
        if (orders[k] < 1) throw std::invalid_argument(level + ": cover order must be >= 1");
        if (!cur.psi) throw std::invalid_argument(level + ": presentation has no map line");
        try {
            cur = reidemeister_schreier(cur, cyclic_quotient(*cur.psi, orders[k]));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(level + ": " + e.what());
        }
        out.emplace_back((int)k + 1, (long long)presentation_abelianization(cur.group).betti);
    }
    return out;
}

namespace detail {

inline void factor_chains(long long budget, long long prev, std::vector<long long>& cur,
                          std::vector<std::vector<long long>>& out) {
    if (!cur.empty()) out.push_back(cur);
    for (long long m = std::max<long long>(prev, 2); m <= budget; ++m) {
        if (m % prev != 0) continue;
        cur.push_back(m);
        factor_chains(budget / m, m, cur, out);
        cur.pop_back();
    }
}

inline std::vector<std::vector<long long>> quotient_elements(const std::vector<long long>& moduli) {
    std::vector<std::vector<long long>> elems{std::vector<long long>(moduli.size(), 0)};
    for (size_t j = 0; j < moduli.size(); ++j) {
        std::vector<std::vector<long long>> next;
        for (const auto& e : elems)
            for (long long v = 0; v < moduli[j]; ++v) {
                auto e2 = e;
                e2[j] = v;
                next.push_back(std::move(e2));
            }
        elems = std::move(next);
    }
    std::sort(elems.begin(), elems.end());
    return elems;
}

// All automorphisms, each given by the images of the factor generators.
inline std::vector<std::vector<std::vector<long long>>> quotient_automorphisms(
    const std::vector<long long>& moduli) {
    size_t k = moduli.size();
    auto elems = quotient_elements(moduli);

    std::vector<std::vector<std::vector<long long>>> candidates(k);
    for (size_t i = 0; i < k; ++i)
        for (const auto& q : elems) {
            bool ok = true;
            for (size_t j = 0; j < k; ++j)
                if ((moduli[i] * q[j]) % moduli[j] != 0) ok = false;
            if (ok) candidates[i].push_back(q);
        }

    auto apply = [&](const std::vector<std::vector<long long>>& alpha,
                     const std::vector<long long>& e) {
        std::vector<long long> out(k, 0);
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                out[j] = (out[j] + e[i] * alpha[i][j]) % moduli[j];
        return out;
    };

    std::vector<std::vector<std::vector<long long>>> result;
    std::vector<std::vector<long long>> alpha(k);
    std::vector<size_t> pick(k, 0);
    while (true) {
        for (size_t i = 0; i < k; ++i) alpha[i] = candidates[i][pick[i]];
        std::set<std::vector<long long>> image;
        for (const auto& e : elems) image.insert(apply(alpha, e));
        if (image.size() == elems.size()) result.push_back(alpha);

        size_t i = 0;
        while (i < k && ++pick[i] == candidates[i].size()) pick[i++] = 0;
        if (i == k) break;
    }
    return result;
}

inline bool generates_quotient(const std::vector<std::vector<long long>>& images,
                               const std::vector<long long>& moduli, long long order) {
    std::set<std::vector<long long>> seen{std::vector<long long>(moduli.size(), 0)};
    std::queue<std::vector<long long>> todo;
    todo.push(*seen.begin());
    while (!todo.empty()) {
        auto cur = todo.front();
        todo.pop();
        for (const auto& img : images) {
            auto next = tuple_shift(cur, img, 1, moduli);
            if (seen.insert(next).second) todo.push(next);
        }
    }
    return (long long)seen.size() == order;
}

} // namespace detail

// All surjections onto nontrivial finite abelian groups of order <= max_order
// that kill every relator, one representative per kernel.  Quotient groups are
// listed by invariant-factor chains; representatives are lex-minimal under the
// automorphism action, so the output is deterministic.
inline std::vector<FiniteAbelianQuotient> enumerate_abelian_quotients(
    const GroupPresentation& group, long long max_order) {
    std::vector<FiniteAbelianQuotient> result;
    if (max_order < 2) return result;

    size_t g = group.generators.size();
    RingMatrix<IntegerRing> a = exponent_matrix(group);
    SmithDecomposition<IntegerRing> snf = smith_normal_form(a);
    size_t diag = std::min(a.rows(), a.cols());

    std::vector<std::vector<long long>> shapes;
    std::vector<long long> chain;
    detail::factor_chains(max_order, 1, chain, shapes);
    std::sort(shapes.begin(), shapes.end(),
              [](const std::vector<long long>& x, const std::vector<long long>& y) {
                  long long px = 1, py = 1;
                  for (long long v : x) px *= v;
                  for (long long v : y) py *= v;
                  return px != py ? px < py : x < y;
              });

    for (const auto& moduli : shapes) {
        size_t k = moduli.size();
        long long order = 1;
        for (long long m : moduli) order *= m;

        // Generator-image vectors modulo m solving the relator constraints,
        // parametrized through the integer Smith form of the exponent matrix.
        std::vector<std::vector<std::vector<long long>>> component(k);
        for (size_t j = 0; j < k; ++j) {
            long long m = moduli[j];
            std::vector<long long> strides(g), counts(g);
            for (size_t i = 0; i < g; ++i) {
                long long di = 0;
                if (i < diag) {
                    BigInt d = snf.D.at(i, i);
                    if (d < 0) d = -d;
                    di = (d % m).convert_to<long long>();
                }
                counts[i] = std::gcd(di, m);
                strides[i] = m / counts[i];
            }
            std::vector<long long> u(g, 0);
            while (true) {
                std::vector<long long> v(g, 0);
                for (size_t row = 0; row < g; ++row) {
                    BigInt acc = 0;
                    for (size_t i = 0; i < g; ++i)
                        acc += snf.V.at(row, i) * (u[i] * strides[i]);
                    long long red = (acc % m).convert_to<long long>();
                    v[row] = red < 0 ? red + m : red;
                }
                component[j].push_back(std::move(v));

                size_t i = 0;
                while (i < g && ++u[i] == counts[i]) u[i++] = 0;
                if (i == g) break;
            }
        }

        std::set<std::vector<long long>> canonical;
        auto automorphisms = detail::quotient_automorphisms(moduli);
        std::vector<size_t> pick(k, 0);
        while (true) {
            std::vector<std::vector<long long>> images(g, std::vector<long long>(k));
            for (size_t j = 0; j < k; ++j)
                for (size_t i = 0; i < g; ++i) images[i][j] = component[j][pick[j]][i];

            if (detail::generates_quotient(images, moduli, order)) {
                std::vector<long long> best;
                for (const auto& alpha : automorphisms) {
                    std::vector<long long> flat;
                    flat.reserve(g * k);
                    for (size_t i = 0; i < g; ++i) {
                        std::vector<long long> mapped(k, 0);
                        for (size_t s = 0; s < k; ++s)
                            for (size_t j = 0; j < k; ++j)
                                mapped[j] = (mapped[j] + images[i][s] * alpha[s][j]) % moduli[j];
                        flat.insert(flat.end(), mapped.begin(), mapped.end());
                    }
                    if (best.empty() || flat < best) best = std::move(flat);
                }
                canonical.insert(best);
            }

            size_t j = 0;
            while (j < k && ++pick[j] == component[j].size()) pick[j++] = 0;
            if (j == k) break;
        }

        for (const auto& flat : canonical) {
            FiniteAbelianQuotient q;
            q.moduli = moduli;
            q.images.assign(g, std::vector<long long>(k));
            for (size_t i = 0; i < g; ++i)
                for (size_t j = 0; j < k; ++j) q.images[i][j] = flat[i * k + j];
            result.push_back(std::move(q));
        }
    }
    return result;
}

// Spec format: "mod 2,4; x=(1,0) y=(0,1)".  Newlines work like ';', and a
// bare integer is accepted for a single cyclic factor.
inline FiniteAbelianQuotient parse_quotient_spec(const std::string& text,
                                                 const GroupPresentation& group) {
    FiniteAbelianQuotient quo;
    bool saw_mod = false;
    std::vector<bool> assigned(group.generators.size(), false);

    int line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string::npos) nl = text.size();
        ++line_no;

        size_t seg_start = start;
        while (seg_start <= nl) {
            size_t semi = text.find(';', seg_start);
            size_t seg_end = (semi != std::string::npos && semi < nl) ? semi : nl;
            auto tokens = detail::tokenize_segment(text, seg_start, seg_end, start, line_no);
            seg_start = seg_end + 1;

            size_t i = 0;
            while (i < tokens.size()) {
                const detail::Token& head = tokens[i];
                if (head.kind != detail::Tok::Ident)
                    throw parse_error("expected 'mod' or a generator name", line_no, head.col);
                if (head.text == "mod") {
                    if (saw_mod) throw parse_error("duplicate mod clause", line_no, head.col);
                    saw_mod = true;
                    ++i;
                    while (true) {
                        if (i >= tokens.size() || tokens[i].kind != detail::Tok::Int)
                            throw parse_error("expected a modulus", line_no,
                                              i < tokens.size() ? tokens[i].col : 0);
                        if (tokens[i].value < 1)
                            throw parse_error("moduli must be >= 1", line_no, tokens[i].col);
                        quo.moduli.push_back(tokens[i].value);
                        ++i;
                        if (i < tokens.size() && tokens[i].kind == detail::Tok::Comma) {
                            ++i;
                            continue;
                        }
                        break;
                    }
                    continue;
                }

                if (!saw_mod)
                    throw parse_error("the mod clause must come first", line_no, head.col);
                auto idx = group.generator_index(head.text);
                if (!idx)
                    throw parse_error("unknown generator '" + head.text + "'", line_no,
                                      head.col);
                if (assigned[*idx])
                    throw parse_error("generator '" + head.text + "' assigned twice", line_no,
                                      head.col);
                ++i;
                if (i >= tokens.size() || tokens[i].kind != detail::Tok::Equals)
                    throw parse_error("expected '=' after '" + head.text + "'", line_no,
                                      i < tokens.size() ? tokens[i].col : 0);
                ++i;
                std::vector<long long> tuple;
                if (i < tokens.size() && tokens[i].kind == detail::Tok::Int) {
                    tuple.push_back(tokens[i].value);
                    ++i;
                } else if (i < tokens.size() && tokens[i].kind == detail::Tok::LParen) {
                    ++i;
                    while (true) {
                        if (i >= tokens.size() || tokens[i].kind != detail::Tok::Int)
                            throw parse_error("expected an integer component", line_no,
                                              i < tokens.size() ? tokens[i].col : 0);
                        tuple.push_back(tokens[i].value);
                        ++i;
                        if (i < tokens.size() && tokens[i].kind == detail::Tok::Comma) {
                            ++i;
                            continue;
                        }
                        break;
                    }
                    if (i >= tokens.size() || tokens[i].kind != detail::Tok::RParen)
                        throw parse_error("expected ')'", line_no,
                                          i < tokens.size() ? tokens[i].col : 0);
                    ++i;
                } else {
                    throw parse_error("expected an image tuple", line_no,
                                      i < tokens.size() ? tokens[i].col : head.col);
                }
                if (tuple.size() != quo.moduli.size())
                    throw parse_error("image for '" + head.text + "' has " +
                                          std::to_string(tuple.size()) + " components, expected " +
                                          std::to_string(quo.moduli.size()),
                                      line_no, head.col);
                for (size_t j = 0; j < tuple.size(); ++j) {
                    long long m = quo.moduli[j];
                    tuple[j] = ((tuple[j] % m) + m) % m;
                }
                assigned[*idx] = true;
                if (quo.images.empty())
                    quo.images.assign(group.generators.size(),
                                      std::vector<long long>(quo.moduli.size(), 0));
                quo.images[*idx] = tuple;
            }

            if (seg_end >= nl) break;
        }
        if (nl == text.size()) break;
        start = nl + 1;
    }

    if (!saw_mod) throw parse_error("missing mod clause", 1, 0);
    for (size_t i = 0; i < assigned.size(); ++i)
        if (!assigned[i])
            throw parse_error("generator '" + group.generators[i] + "' has no image", line_no,
                              0);
    if (group.generators.empty())
        quo.images.clear();
    return quo;
}

} // namespace covergrowth
