#pragma once

#include "covergrowth/laurent.hpp"
#include "covergrowth/rational.hpp"

#include <concepts>
#include <string>
#include <utility>

namespace covergrowth {

// Stateless policy describing a Euclidean domain. divmod must return a
// remainder that is zero or strictly smaller than the divisor under size();
// unit_normalize factors an element as unit * canonical with a canonical
// representative shared by all associates.
template <typename R>
concept EuclideanRingSpec = requires(const typename R::Elem& a, const typename R::Elem& b) {
    typename R::Elem;
    typename R::Size;
    { R::zero() } -> std::convertible_to<typename R::Elem>;
    { R::one() } -> std::convertible_to<typename R::Elem>;
    { R::add(a, b) } -> std::convertible_to<typename R::Elem>;
    { R::mul(a, b) } -> std::convertible_to<typename R::Elem>;
    { R::negate(a) } -> std::convertible_to<typename R::Elem>;
    { R::is_zero(a) } -> std::convertible_to<bool>;
    { R::is_unit(a) } -> std::convertible_to<bool>;
    { R::divmod(a, b) } ->
        std::convertible_to<std::pair<typename R::Elem, typename R::Elem>>;
    { R::unit_normalize(a) } ->
        std::convertible_to<std::pair<typename R::Elem, typename R::Elem>>;
    { R::unit_inverse(a) } -> std::convertible_to<typename R::Elem>;
    { R::size(a) } -> std::convertible_to<typename R::Size>;
    { R::to_string(a) } -> std::convertible_to<std::string>;
};

struct IntegerRing {
    using Elem = BigInt;
    using Size = BigInt;

    static Elem zero() { return Elem(0); }
    static Elem one() { return Elem(1); }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem negate(const Elem& a) { return -a; }
    static bool is_zero(const Elem& a) { return a == 0; }
    static bool is_unit(const Elem& a) { return a == 1 || a == -1; }

    // Truncated division: |r| < |b|.
    static std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) {
        if (b == 0) throw std::domain_error("integer division by zero");
        Elem q, r;
        boost::multiprecision::divide_qr(a, b, q, r);
        return {q, r};
    }

    static std::pair<Elem, Elem> unit_normalize(const Elem& a) {
        if (a < 0) return {-a, Elem(-1)};
        return {a, Elem(1)};
    }

    static Elem unit_inverse(const Elem& u) {
        if (!is_unit(u)) throw std::domain_error("not a unit: " + u.str());
        return u;
    }

    static Size size(const Elem& a) { return a < 0 ? Elem(-a) : a; }

    static std::string to_string(const Elem& a) { return a.str(); }
};

struct LaurentRing {
    using Elem = LaurentPoly;
    using Size = int;

    static Elem zero() { return LaurentPoly::zero(); }
    static Elem one() { return LaurentPoly::one(); }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static Elem negate(const Elem& a) { return -a; }
    static bool is_zero(const Elem& a) { return a.is_zero(); }

    // Units of Q[t, t^-1] are the nonzero monomials c * t^k.
    static bool is_unit(const Elem& a) { return a.term_count() == 1; }

    // Division lifted from canonical representatives: with a = u_a * A and
    // b = u_b * B, dividing A = qB + r gives a = (u_a q u_b^-1) b + u_a r,
    // and the remainder keeps its exponent span below that of b.
    static std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) {
        auto [ca, ua] = canonicalize(a);
        auto [cb, ub] = canonicalize(b);
        auto [q, r] = covergrowth::divmod(ca, cb);
        return {ua * q * unit_inverse(ub), ua * r};
    }

    static std::pair<Elem, Elem> unit_normalize(const Elem& a) {
        auto [canon, unit] = canonicalize(a);
        return {canon.poly(), unit};
    }

    static Elem unit_inverse(const Elem& u) {
        if (!is_unit(u)) throw std::domain_error("not a unit: " + covergrowth::to_string(u));
        int e = u.min_exp();
        return LaurentPoly::monomial(Rational(1) / u.coeff(e), -e);
    }

    static Size size(const Elem& a) { return a.span_degree(); }

    static std::string to_string(const Elem& a) { return covergrowth::to_string(a); }
};

static_assert(EuclideanRingSpec<IntegerRing>);
static_assert(EuclideanRingSpec<LaurentRing>);

} // namespace covergrowth
