#pragma once

#include "covergrowth/errors.hpp"
#include "covergrowth/rational.hpp"

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace covergrowth {

// Upper bound on the exponent span a polynomial may reach. Multiplications
// that would cross it abort with a diagnostic instead of thrashing.
inline std::atomic<int>& degree_cap_ref() {
    static std::atomic<int> cap{512};
    return cap;
}

inline int degree_cap() { return degree_cap_ref().load(); }
inline void set_degree_cap(int cap) {
    if (cap < 1) throw std::invalid_argument("degree cap must be positive");
    degree_cap_ref().store(cap);
}

// Element of Q[t, t^-1], stored sparsely as exponent -> nonzero coefficient.
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly zero() { return LaurentPoly(); }
    static LaurentPoly one() { return monomial(Rational(1), 0); }
    static LaurentPoly t(int exp = 1) { return monomial(Rational(1), exp); }

    static LaurentPoly monomial(const Rational& coeff, int exp) {
        LaurentPoly p;
        if (coeff != 0) p.terms_.emplace(exp, coeff);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    int min_exp() const {
        require_nonzero("min_exp");
        return terms_.begin()->first;
    }

    int max_exp() const {
        require_nonzero("max_exp");
        return terms_.rbegin()->first;
    }

    // Exponent span; the Euclidean size of the element. Zero has none.
    int span_degree() const { return is_zero() ? 0 : max_exp() - min_exp(); }

    Rational coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const std::map<int, Rational>& terms() const { return terms_; }

    size_t term_count() const { return terms_.size(); }

    void add_term(int exp, const Rational& coeff) {
        if (coeff == 0) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_.emplace(exp, coeff);
        } else {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& rhs) {
        for (const auto& [e, c] : rhs.terms_) add_term(e, c);
        return *this;
    }

    LaurentPoly& operator-=(const LaurentPoly& rhs) {
        for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.is_zero() || b.is_zero()) return LaurentPoly();
        long long span = (long long)a.max_exp() + b.max_exp() -
                         ((long long)a.min_exp() + b.min_exp());
        if (span > degree_cap())
            throw degree_cap_error("product exponent span " + std::to_string(span) +
                                   " exceeds degree cap " + std::to_string(degree_cap()));
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }

    LaurentPoly& operator*=(const LaurentPoly& rhs) { return *this = *this * rhs; }

    friend LaurentPoly operator*(const Rational& s, const LaurentPoly& p) {
        LaurentPoly r;
        if (s == 0) return r;
        for (const auto& [e, c] : p.terms_) r.terms_.emplace(e, s * c);
        return r;
    }

    // Multiply by the monomial c * t^k without the full product loop.
    LaurentPoly shifted(int k, const Rational& c = Rational(1)) const {
        LaurentPoly r;
        if (c == 0) return r;
        for (const auto& [e, q] : terms_) r.terms_.emplace(e + k, c * q);
        return r;
    }

    Rational evaluate(const Rational& x) const {
        Rational acc(0);
        for (const auto& [e, c] : terms_) {
            Rational p(1);
            int n = e < 0 ? -e : e;
            for (int i = 0; i < n; ++i) p *= x;
            if (e < 0) p = Rational(1) / p;
            acc += c * p;
        }
        return acc;
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

private:
    void require_nonzero(const char* what) const {
        if (terms_.empty())
            throw std::domain_error(std::string(what) + " of the zero polynomial");
    }

    std::map<int, Rational> terms_;
};

inline LaurentPoly pow_poly(const LaurentPoly& base, int n) {
    if (n < 0) throw std::invalid_argument("pow_poly: negative exponent");
    LaurentPoly acc = LaurentPoly::one();
    for (int i = 0; i < n; ++i) acc *= base;
    return acc;
}

// t^n - 1.
inline LaurentPoly t_power_minus_one(int n) {
    if (n < 1) throw std::invalid_argument("t_power_minus_one: n must be >= 1");
    if (n > degree_cap())
        throw degree_cap_error("t^" + std::to_string(n) + " - 1 exceeds degree cap " +
                               std::to_string(degree_cap()));
    LaurentPoly p = LaurentPoly::t(n);
    p.add_term(0, Rational(-1));
    return p;
}

// Monic representative with minimum exponent 0 and nonzero constant term.
// The zero polynomial is admitted (as its own canonical form) so that gcd
// can return it; every other value satisfies the three constraints.
class CanonicalPoly {
public:
    CanonicalPoly() = default;

    explicit CanonicalPoly(LaurentPoly p) : poly_(std::move(p)) {
        if (poly_.is_zero()) return;
        if (poly_.min_exp() != 0)
            throw std::invalid_argument("canonical polynomial must have min exponent 0");
        if (poly_.coeff(poly_.max_exp()) != 1)
            throw std::invalid_argument("canonical polynomial must be monic");
    }

    const LaurentPoly& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }
    bool is_one() const { return poly_ == LaurentPoly::one(); }

    int degree() const {
        if (poly_.is_zero()) throw std::domain_error("degree of the zero polynomial");
        return poly_.max_exp();
    }

    friend bool operator==(const CanonicalPoly& a, const CanonicalPoly& b) {
        return a.poly_ == b.poly_;
    }
    friend bool operator!=(const CanonicalPoly& a, const CanonicalPoly& b) {
        return !(a == b);
    }
    friend bool operator<(const CanonicalPoly& a, const CanonicalPoly& b) {
        return a.poly_.terms() < b.poly_.terms();
    }

private:
    LaurentPoly poly_;
};

struct Canonicalization {
    CanonicalPoly canonical;
    LaurentPoly unit; // c * t^k with p = unit * canonical
};

inline Canonicalization canonicalize(const LaurentPoly& p) {
    if (p.is_zero()) return {CanonicalPoly(), LaurentPoly::one()};
    int shift = p.min_exp();
    Rational lead = p.coeff(p.max_exp());
    return {CanonicalPoly(p.shifted(-shift, Rational(1) / lead)),
            LaurentPoly::monomial(lead, shift)};
}

// Ordinary polynomial division of canonical representatives: a = q*b + r
// with r = 0 or deg r < deg b.
inline std::pair<LaurentPoly, LaurentPoly> divmod(const CanonicalPoly& a,
                                                  const CanonicalPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    LaurentPoly q;
    LaurentPoly r = a.poly();
    int db = b.degree();
    while (!r.is_zero() && r.max_exp() >= db) {
        int shift = r.max_exp() - db;
        Rational c = r.coeff(r.max_exp()); // b is monic
        q.add_term(shift, c);
        r -= b.poly().shifted(shift, c);
    }
    return {q, r};
}

inline CanonicalPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
    CanonicalPoly x = canonicalize(a).canonical;
    CanonicalPoly y = canonicalize(b).canonical;
    while (!y.is_zero()) {
        LaurentPoly r = divmod(x, y).second;
        x = y;
        y = canonicalize(r).canonical;
    }
    return x;
}

inline bool divides(const CanonicalPoly& d, const CanonicalPoly& p) {
    return divmod(p, d).second.is_zero();
}

// Multiplicity of (t - 1) as a factor.
inline int t_minus_1_valuation(const LaurentPoly& p) {
    if (p.is_zero())
        throw std::domain_error("(t-1)-valuation of the zero polynomial");
    CanonicalPoly tm1(t_power_minus_one(1));
    CanonicalPoly c = canonicalize(p).canonical;
    int v = 0;
    while (true) {
        auto [q, r] = divmod(c, tm1);
        if (!r.is_zero()) return v;
        ++v;
        c = canonicalize(q).canonical;
    }
}

namespace detail {

inline void divisors_of(int n, std::vector<int>& out) {
    out.clear();
    for (int d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        if (d != n / d) out.push_back(n / d);
    }
}

} // namespace detail

// d-th cyclotomic polynomial, computed by exact division of t^d - 1 by the
// cyclotomic polynomials of the proper divisors of d. Memoized.
inline CanonicalPoly cyclotomic(int d) {
    if (d < 1) throw std::invalid_argument("cyclotomic: order must be >= 1");
    static std::map<int, CanonicalPoly> cache;
    static std::mutex mutex;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(d);
        if (it != cache.end()) return it->second;
    }
    CanonicalPoly result;
    if (d == 1) {
        result = CanonicalPoly(t_power_minus_one(1));
    } else {
        std::vector<int> divs;
        detail::divisors_of(d, divs);
        CanonicalPoly acc(t_power_minus_one(d));
        for (int e : divs) {
            if (e == d) continue;
            auto [q, r] = divmod(acc, cyclotomic(e));
            if (!r.is_zero())
                throw std::logic_error("cyclotomic: exact division failed");
            acc = canonicalize(q).canonical;
        }
        result = acc;
    }
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(d, result);
    return result;
}

inline BigInt euler_phi(int n) {
    BigInt result = n;
    int m = n;
    for (int p = 2; (long long)p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

// All orders d whose cyclotomic polynomial divides p. Since phi(d) <= deg p
// is necessary and phi(d) >= sqrt(d/2), candidates are bounded by 2*(deg p)^2.
inline std::set<int> cyclotomic_divisors(const CanonicalPoly& p) {
    if (p.is_zero())
        throw std::domain_error("cyclotomic_divisors of the zero polynomial");
    std::set<int> found;
    int bound_phi = p.degree();
    if (bound_phi == 0) return found;
    long long limit = 2LL * bound_phi * bound_phi;
    std::vector<long long> phi(limit + 1);
    for (long long i = 0; i <= limit; ++i) phi[i] = i;
    for (long long i = 2; i <= limit; ++i) {
        if (phi[i] != i) continue; // i is prime
        for (long long j = i; j <= limit; j += i) phi[j] -= phi[j] / i;
    }
    for (long long d = 1; d <= limit; ++d) {
        if (phi[d] > bound_phi) continue;
        if (divides(cyclotomic((int)d), p)) found.insert((int)d);
    }
    return found;
}

// ---- text form ------------------------------------------------------------
//
// Sum of terms in descending exponent order, e.g. "t^2 - 3*t + 1" or
// "3/2*t^-1". Unit coefficients are suppressed next to a power of t; the
// parser additionally accepts implicit multiplication ("3t") and redundant
// whitespace. Printing then parsing returns the identical polynomial.

inline std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const int exp = it->first;
        Rational c = it->second;
        if (first) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
            first = false;
        } else {
            out += (c < 0) ? " - " : " + ";
            if (c < 0) c = -c;
        }
        const bool unit_coeff = (c == 1);
        if (exp == 0) {
            out += c.str();
        } else {
            if (!unit_coeff) {
                out += c.str();
                out += "*";
            }
            out += (exp == 1) ? "t" : "t^" + std::to_string(exp);
        }
    }
    return out;
}

inline std::string to_string(const CanonicalPoly& p) { return to_string(p.poly()); }

namespace detail {

struct PolyLexer {
    const std::string& text;
    size_t pos = 0;

    explicit PolyLexer(const std::string& t) : text(t) {}

    void skip_space() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    }

    bool eof() {
        skip_space();
        return pos >= text.size();
    }

    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(msg, 1, (int)pos + 1);
    }

    BigInt integer() {
        skip_space();
        size_t start = pos;
        while (pos < text.size() && std::isdigit((unsigned char)text[pos])) ++pos;
        if (pos == start) fail("expected an integer");
        return BigInt(text.substr(start, pos - start));
    }

    int bounded_exponent() {
        skip_space();
        bool neg = accept('-');
        if (!neg) accept('+');
        BigInt raw = integer();
        if (raw > degree_cap())
            throw degree_cap_error("exponent " + (neg ? "-" + raw.str() : raw.str()) +
                                   " exceeds degree cap " + std::to_string(degree_cap()));
        int e = (int)raw.convert_to<long long>();
        return neg ? -e : e;
    }
};

} // namespace detail

inline LaurentPoly parse_poly(const std::string& text) {
    detail::PolyLexer lex(text);
    LaurentPoly result;
    bool any_term = false;
    while (!lex.eof()) {
        int sign = 1;
        if (lex.accept('-')) sign = -1;
        else lex.accept('+');
        if (lex.eof()) lex.fail("dangling sign");

        Rational coeff(1);
        bool saw_coeff = false;
        if (std::isdigit((unsigned char)lex.peek())) {
            BigInt num = lex.integer();
            BigInt den(1);
            if (lex.accept('/')) {
                den = lex.integer();
                if (den == 0) lex.fail("zero denominator");
            }
            coeff = make_rational(num, den);
            saw_coeff = true;
            lex.accept('*');
        }

        int exp = 0;
        if (lex.peek() == 't') {
            ++lex.pos;
            exp = 1;
            if (lex.accept('^')) exp = lex.bounded_exponent();
        } else if (!saw_coeff) {
            lex.fail("expected a coefficient or 't'");
        }

        result.add_term(exp, sign < 0 ? -coeff : coeff);
        any_term = true;

        char next = lex.peek();
        if (next != '\0' && next != '+' && next != '-')
            lex.fail(std::string("unexpected character '") + next + "'");
    }
    if (!any_term) lex.fail("empty polynomial");
    return result;
}

} // namespace covergrowth
