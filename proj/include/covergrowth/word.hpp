#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace covergrowth {

// One generator occurrence; sign -1 marks the inverse.
struct Letter {
    int gen = 0;
    int sign = 1;

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline Letter inverse(const Letter& l) { return {l.gen, -l.sign}; }

inline Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (const Letter& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

inline bool is_reduced(const Word& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) return false;
    return true;
}

inline Word invert_word(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

inline Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// g w g^-1 for a single letter g.
inline Word conjugate_by_letter(const Word& w, const Letter& g) {
    Word out;
    out.reserve(w.size() + 2);
    out.push_back(g);
    out.insert(out.end(), w.begin(), w.end());
    out.push_back(inverse(g));
    return free_reduce(out);
}

} // namespace covergrowth
