#pragma once

#include "covergrowth/errors.hpp"
#include "covergrowth/word.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace covergrowth {

// Homomorphism to Z, one value per generator.
struct ZMap {
    std::vector<long long> values;

    long long operator()(const Word& w) const {
        long long sum = 0;
        for (const Letter& l : w) sum += l.sign * values[(size_t)l.gen];
        return sum;
    }

    // gcd of the images; 0 for the zero map, 1 iff surjective.
    long long content() const {
        long long g = 0;
        for (long long v : values) g = std::gcd(g, v);
        return g;
    }

    bool is_surjective() const { return content() == 1; }

    ZMap primitivized() const {
        long long d = content();
        if (d == 0) throw std::domain_error("the zero map has no primitive form");
        ZMap out = *this;
        for (long long& v : out.values) v /= d;
        return out;
    }
};

struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<Word> relators; // stored freely reduced

    std::optional<size_t> generator_index(const std::string& name) const {
        for (size_t i = 0; i < generators.size(); ++i)
            if (generators[i] == name) return i;
        return std::nullopt;
    }
};

struct Flag {
    std::string key;
    std::optional<long long> value;
};

struct PresentationFile {
    std::string name;
    GroupPresentation group;
    std::optional<ZMap> psi;
    std::vector<Flag> flags;
    std::vector<std::string> warnings;

    bool has_flag(const std::string& key) const {
        return std::any_of(flags.begin(), flags.end(),
                           [&](const Flag& f) { return f.key == key; });
    }

    std::optional<long long> flag_value(const std::string& key) const {
        for (const Flag& f : flags)
            if (f.key == key) return f.value;
        return std::nullopt;
    }
};

// ---- parsing ---------------------------------------------------------------
//
// Line-oriented directives; ';' is equivalent to a newline and '#' starts a
// comment. Words juxtapose space-separated factors, where a factor is a
// generator, a parenthesized word, or a commutator [u,v] = u v u^-1 v^-1,
// optionally raised to an integer power with '^'.

namespace detail {

enum class Tok { Ident, Int, LBracket, RBracket, LParen, RParen, Comma, Caret, Equals };

struct Token {
    Tok kind;
    std::string text;
    long long value = 0;
    int col = 0;
};

inline bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

inline std::vector<Token> tokenize_segment(const std::string& text, size_t begin, size_t end,
                                           size_t line_start, int line_no) {
    std::vector<Token> out;
    size_t i = begin;
    while (i < end) {
        char c = text[i];
        int col = (int)(i - line_start) + 1;
        if (std::isspace((unsigned char)c)) {
            ++i;
            continue;
        }
        if (ident_start(c)) {
            size_t j = i;
            while (j < end && ident_char(text[j])) ++j;
            out.push_back({Tok::Ident, text.substr(i, j - i), 0, col});
            i = j;
            continue;
        }
        if (std::isdigit((unsigned char)c) ||
            (c == '-' && i + 1 < end && std::isdigit((unsigned char)text[i + 1]))) {
            size_t j = i + 1;
            while (j < end && std::isdigit((unsigned char)text[j])) ++j;
            std::string digits = text.substr(i, j - i);
            if (digits.size() > 15)
                throw parse_error("integer literal too large: " + digits, line_no, col);
            out.push_back({Tok::Int, digits, std::stoll(digits), col});
            i = j;
            continue;
        }
        Tok kind;
        switch (c) {
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case '^': kind = Tok::Caret; break;
        case '=': kind = Tok::Equals; break;
        default:
            throw parse_error(std::string("unexpected character '") + c + "'", line_no, col);
        }
        out.push_back({kind, std::string(1, c), 0, col});
        ++i;
    }
    return out;
}

// Hard ceiling on expanded relator length, guarding nested powers.
constexpr size_t kMaxWordLetters = 1u << 20;

class WordParser {
public:
    WordParser(const std::vector<Token>& tokens, size_t& pos, const GroupPresentation& group,
               int line)
        : tokens_(tokens), pos_(pos), group_(group), line_(line) {}

    // Parses until the token stream ends or a closer (], ), ,) is next.
    Word parse() {
        Word result;
        while (pos_ < tokens_.size()) {
            Tok k = tokens_[pos_].kind;
            if (k == Tok::RBracket || k == Tok::RParen || k == Tok::Comma) break;
            append(result, factor());
        }
        return result;
    }

private:
    Word factor() {
        const Token& tok = tokens_[pos_];
        Word base;
        switch (tok.kind) {
        case Tok::Ident: {
            auto idx = group_.generator_index(tok.text);
            if (!idx)
                throw parse_error("unknown generator '" + tok.text + "'", line_, tok.col);
            base.push_back({(int)*idx, 1});
            ++pos_;
            break;
        }
        case Tok::LBracket: {
            ++pos_;
            Word u = parse();
            expect(Tok::Comma, "','");
            Word v = parse();
            expect(Tok::RBracket, "']'");
            base = concat(concat(u, v), concat(invert_word(u), invert_word(v)));
            break;
        }
        case Tok::LParen: {
            ++pos_;
            base = parse();
            expect(Tok::RParen, "')'");
            break;
        }
        case Tok::Caret:
            throw parse_error("'^' without a base", line_, tok.col);
        default:
            throw parse_error("unexpected '" + tok.text + "' in word", line_, tok.col);
        }
        if (pos_ < tokens_.size() && tokens_[pos_].kind == Tok::Caret) {
            int col = tokens_[pos_].col;
            ++pos_;
            if (pos_ >= tokens_.size() || tokens_[pos_].kind != Tok::Int)
                throw parse_error("expected an integer exponent after '^'", line_, col);
            long long k = tokens_[pos_].value;
            ++pos_;
            base = power(base, k, col);
        }
        return base;
    }

    Word power(const Word& base, long long k, int col) const {
        long long reps = k < 0 ? -k : k;
        if (reps * (long long)base.size() > (long long)kMaxWordLetters)
            throw parse_error("word expansion too large", line_, col);
        Word unit = k < 0 ? invert_word(base) : base;
        Word out;
        for (long long i = 0; i < reps; ++i) out.insert(out.end(), unit.begin(), unit.end());
        return out;
    }

    void append(Word& result, const Word& more) const {
        if (result.size() + more.size() > kMaxWordLetters)
            throw parse_error("word expansion too large", line_, 0);
        result.insert(result.end(), more.begin(), more.end());
    }

    void expect(Tok kind, const char* what) {
        if (pos_ >= tokens_.size())
            throw parse_error(std::string("expected ") + what, line_, 0);
        if (tokens_[pos_].kind != kind)
            throw parse_error(std::string("expected ") + what + ", found '" +
                                  tokens_[pos_].text + "'",
                              line_, tokens_[pos_].col);
        ++pos_;
    }

    const std::vector<Token>& tokens_;
    size_t& pos_;
    const GroupPresentation& group_;
    int line_;
};

} // namespace detail

inline PresentationFile parse_presentation(const std::string& text) {
    PresentationFile file;
    bool saw_gens = false;
    bool saw_name = false;
    bool saw_map = false;
    std::vector<int> relator_lines;
    std::vector<long long> map_values;
    int map_line = 0;

    int line_no = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string::npos) nl = text.size();
        ++line_no;
        size_t hash = text.find('#', start);
        size_t line_end = (hash != std::string::npos && hash < nl) ? hash : nl;

        size_t seg_start = start;
        while (seg_start <= line_end) {
            size_t semi = text.find(';', seg_start);
            size_t seg_end = (semi != std::string::npos && semi < line_end) ? semi : line_end;

            auto tokens = detail::tokenize_segment(text, seg_start, seg_end, start, line_no);
            seg_start = seg_end + 1;
            if (tokens.empty()) {
                if (seg_end >= line_end) break;
                continue;
            }

            const detail::Token& head = tokens[0];
            if (head.kind != detail::Tok::Ident)
                throw parse_error("expected a directive", line_no, head.col);

            if (head.text == "name") {
                if (saw_name) throw parse_error("duplicate name line", line_no, head.col);
                if (tokens.size() != 2 || tokens[1].kind != detail::Tok::Ident)
                    throw parse_error("name takes a single identifier", line_no, head.col);
                file.name = tokens[1].text;
                saw_name = true;
            } else if (head.text == "gens") {
                if (saw_gens) throw parse_error("duplicate gens line", line_no, head.col);
                for (size_t i = 1; i < tokens.size(); ++i) {
                    if (tokens[i].kind != detail::Tok::Ident)
                        throw parse_error("expected a generator name", line_no, tokens[i].col);
                    if (file.group.generator_index(tokens[i].text))
                        throw parse_error("duplicate generator '" + tokens[i].text + "'",
                                          line_no, tokens[i].col);
                    file.group.generators.push_back(tokens[i].text);
                }
                saw_gens = true;
            } else if (head.text == "rel") {
                if (!saw_gens)
                    throw parse_error("rel before gens", line_no, head.col);
                size_t pos = 1;
                detail::WordParser parser(tokens, pos, file.group, line_no);
                Word w = parser.parse();
                if (pos != tokens.size())
                    throw parse_error("unexpected '" + tokens[pos].text + "' after word",
                                      line_no, tokens[pos].col);
                file.group.relators.push_back(free_reduce(w));
                relator_lines.push_back(line_no);
            } else if (head.text == "map") {
                if (!saw_gens) throw parse_error("map before gens", line_no, head.col);
                if (saw_map) throw parse_error("duplicate map line", line_no, head.col);
                saw_map = true;
                map_line = line_no;
                map_values.assign(file.group.generators.size(), 0);
                std::vector<bool> assigned(file.group.generators.size(), false);
                size_t i = 1;
                while (i < tokens.size()) {
                    if (tokens[i].kind != detail::Tok::Ident)
                        throw parse_error("expected a generator name", line_no, tokens[i].col);
                    auto idx = file.group.generator_index(tokens[i].text);
                    if (!idx)
                        throw parse_error("unknown generator '" + tokens[i].text + "'",
                                          line_no, tokens[i].col);
                    if (assigned[*idx])
                        throw parse_error("generator '" + tokens[i].text + "' mapped twice",
                                          line_no, tokens[i].col);
                    if (i + 2 >= tokens.size() || tokens[i + 1].kind != detail::Tok::Equals ||
                        tokens[i + 2].kind != detail::Tok::Int)
                        throw parse_error("expected '<generator>=<integer>'", line_no,
                                          tokens[i].col);
                    map_values[*idx] = tokens[i + 2].value;
                    assigned[*idx] = true;
                    i += 3;
                }
                for (size_t g = 0; g < assigned.size(); ++g)
                    if (!assigned[g])
                        throw parse_error("generator '" + file.group.generators[g] +
                                              "' missing from map",
                                          line_no, head.col);
            } else if (head.text == "flags") {
                size_t i = 1;
                while (i < tokens.size()) {
                    if (tokens[i].kind != detail::Tok::Ident)
                        throw parse_error("expected a flag name", line_no, tokens[i].col);
                    Flag f{tokens[i].text, std::nullopt};
                    if (i + 1 < tokens.size() && tokens[i + 1].kind == detail::Tok::Equals) {
                        if (i + 2 >= tokens.size() || tokens[i + 2].kind != detail::Tok::Int)
                            throw parse_error("expected an integer flag value", line_no,
                                              tokens[i + 1].col);
                        f.value = tokens[i + 2].value;
                        i += 3;
                    } else {
                        i += 1;
                    }
                    file.flags.push_back(f);
                }
            } else {
                throw parse_error("unknown directive '" + head.text + "'", line_no, head.col);
            }

            if (seg_end >= line_end) break;
        }
        if (nl == text.size()) break;
        start = nl + 1;
    }

    if (!saw_gens) throw parse_error("missing gens line", line_no ? line_no : 1, 0);

    if (saw_map) {
        ZMap psi{map_values};
        for (size_t r = 0; r < file.group.relators.size(); ++r) {
            if (psi(file.group.relators[r]) != 0)
                throw parse_error("relator " + std::to_string(r + 1) +
                                      " has nonzero image under the map",
                                  relator_lines[r], 0);
        }
        long long d = psi.content();
        if (d == 0 && !psi.values.empty())
            throw parse_error("map is the zero class", map_line, 0);
        if (d > 1)
            file.warnings.push_back("map has content " + std::to_string(d) +
                                    "; analysis uses the primitive class");
        file.psi = psi;
    }

    return file;
}

// ---- printing --------------------------------------------------------------

inline std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "()";
    std::string out;
    size_t i = 0;
    while (i < w.size()) {
        size_t j = i;
        while (j < w.size() && w[j].gen == w[i].gen && w[j].sign == w[i].sign) ++j;
        long long exp = (long long)(j - i) * w[i].sign;
        if (!out.empty()) out += ' ';
        out += names[(size_t)w[i].gen];
        if (exp != 1) out += "^" + std::to_string(exp);
        i = j;
    }
    return out;
}

inline std::string print_presentation(const PresentationFile& file) {
    std::string out;
    if (!file.name.empty()) out += "name " + file.name + "\n";
    out += "gens";
    for (const std::string& g : file.group.generators) out += " " + g;
    out += "\n";
    for (const Word& r : file.group.relators)
        out += "rel " + word_to_string(r, file.group.generators) + "\n";
    if (file.psi) {
        out += "map";
        for (size_t g = 0; g < file.group.generators.size(); ++g)
            out += " " + file.group.generators[g] + "=" + std::to_string(file.psi->values[g]);
        out += "\n";
    }
    if (!file.flags.empty()) {
        out += "flags";
        for (const Flag& f : file.flags) {
            out += " " + f.key;
            if (f.value) out += "=" + std::to_string(*f.value);
        }
        out += "\n";
    }
    return out;
}

} // namespace covergrowth
