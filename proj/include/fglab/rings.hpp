#pragma once

#include <concepts>
#include <optional>
#include <span>
#include <string>

#include "fglab/error.hpp"
#include "fglab/local/finite_ring.hpp"
#include "fglab/local/integer.hpp"
#include "fglab/local/local_field.hpp"

namespace fglab {

/// A coefficient ring handle: a cheap value that manufactures constants and
/// answers questions about its elements. Element arithmetic is by operators.
template <class R>
concept CoefficientRing = requires(const R& r, const typename R::value_type& a, const Int& n,
                                   std::span<const typename R::value_type> vs) {
    { r.zero() } -> std::convertible_to<typename R::value_type>;
    { r.one() } -> std::convertible_to<typename R::value_type>;
    { r.from_int(n) } -> std::convertible_to<typename R::value_type>;
    { r.is_exact_zero(a) } -> std::same_as<bool>;
    { r.is_zero(a) } -> std::same_as<bool>;
    { r.equal(a, a) } -> std::same_as<bool>;
    { r.is_unit(a) } -> std::same_as<bool>;
    { r.inverse(a) } -> std::convertible_to<typename R::value_type>;
    { r.precision(a) } -> std::same_as<int>;
    { r.solve(vs, vs) } -> std::same_as<std::optional<typename R::value_type>>;
    { r.same(r) } -> std::same_as<bool>;
    { r.name() } -> std::convertible_to<std::string>;
    { r.format(a) } -> std::convertible_to<std::string>;
};

/// Exact integers.
struct IntegerRing {
    using value_type = Int;

    Int zero() const { return 0; }
    Int one() const { return 1; }
    Int from_int(const Int& n) const { return n; }
    bool is_exact_zero(const Int& a) const { return a == 0; }
    bool is_zero(const Int& a) const { return a == 0; }
    bool equal(const Int& a, const Int& b) const { return a == b; }
    bool is_unit(const Int& a) const { return a == 1 || a == -1; }
    Int inverse(const Int& a) const
    {
        if (!is_unit(a)) fail(ErrorCode::DivisionByZeroToPrecision, "integer " + a.get_str() + " is not a unit");
        return a;
    }
    int precision(const Int&) const { return local::kExactPrecision; }
    std::optional<Int> solve(std::span<const Int> b, std::span<const Int> r) const
    {
        std::optional<Int> c;
        for (std::size_t i = 0; i < b.size() && !c; ++i) {
            if (b[i] == 0) continue;
            if (!mpz_divisible_p(r[i].get_mpz_t(), b[i].get_mpz_t())) return std::nullopt;
            Int q;
            mpz_divexact(q.get_mpz_t(), r[i].get_mpz_t(), b[i].get_mpz_t());
            c = q;
        }
        if (!c) c = Int(0);
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (Int(*c * b[i]) != r[i]) return std::nullopt;
        }
        return c;
    }
    bool same(const IntegerRing&) const { return true; }
    std::string name() const { return "Z"; }
    std::string format(const Int& a) const { return a.get_str(); }
};

/// Exact rationals.
struct RationalField {
    using value_type = Rational;

    Rational zero() const { return 0; }
    Rational one() const { return 1; }
    Rational from_int(const Int& n) const { return Rational(n); }
    Rational from_rational(const Rational& q) const { return q; }
    bool is_exact_zero(const Rational& a) const { return a == 0; }
    bool is_zero(const Rational& a) const { return a == 0; }
    bool equal(const Rational& a, const Rational& b) const { return a == b; }
    bool is_unit(const Rational& a) const { return a != 0; }
    Rational inverse(const Rational& a) const
    {
        if (a == 0) fail(ErrorCode::DivisionByZeroToPrecision, "inverse of zero");
        return Rational(1) / a;
    }
    int precision(const Rational&) const { return local::kExactPrecision; }
    std::optional<Rational> solve(std::span<const Rational> b, std::span<const Rational> r) const
    {
        Rational c = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] != 0) {
                c = r[i] / b[i];
                break;
            }
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (Rational(c * b[i]) != r[i]) return std::nullopt;
        }
        return c;
    }
    bool same(const RationalField&) const { return true; }
    std::string name() const { return "Q"; }
    std::string format(const Rational& a) const { return a.get_str(); }
};

/// Elements of a local field L at tracked finite precision.
struct LocalRing {
    using value_type = local::LocalNum;

    local::LocalFieldPtr field;

    value_type zero() const { return field->zero(); }
    value_type one() const { return field->one(); }
    value_type from_int(const Int& n) const { return field->from_int(n); }
    value_type from_rational(const Rational& q) const { return field->from_rational(q); }
    bool is_exact_zero(const value_type& a) const { return a.is_exact_zero(); }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool equal(const value_type& a, const value_type& b) const { return a.equals(b); }
    bool is_unit(const value_type& a) const { return a.is_unit(); }
    value_type inverse(const value_type& a) const { return a.inverse(); }
    int precision(const value_type& a) const { return a.abs_precision(); }
    std::optional<value_type> solve(std::span<const value_type> b, std::span<const value_type> r) const
    {
        std::size_t best = b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i].is_zero()) continue;
            if (best == b.size() || b[i].valuation() < b[best].valuation()) best = i;
        }
        value_type c = best == b.size() ? zero() : r[best] / b[best];
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (!(c * b[i]).equals(r[i])) return std::nullopt;
        }
        return c;
    }
    bool same(const LocalRing& o) const { return field == o.field; }
    std::string name() const { return "L"; }
    std::string format(const value_type& a) const { return a.to_string(); }
};

/// Small finite rings (Z/m, F_q) with table arithmetic.
struct FiniteRingHandle {
    using value_type = local::FiniteElem;

    local::FiniteRingPtr ring;

    value_type zero() const { return ring->zero(); }
    value_type one() const { return ring->one(); }
    value_type from_int(const Int& n) const { return ring->from_int(n); }
    bool is_exact_zero(const value_type& a) const { return a.value == 0; }
    bool is_zero(const value_type& a) const { return a.value == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a.value == b.value; }
    bool is_unit(const value_type& a) const { return ring->is_unit(a.value); }
    value_type inverse(const value_type& a) const { return ring->element(ring->inverse(a.value)); }
    int precision(const value_type&) const { return local::kExactPrecision; }
    /// Smallest encoded c with c*b_i = r_i for all i.
    std::optional<value_type> solve(std::span<const value_type> b, std::span<const value_type> r) const
    {
        for (std::uint32_t c = 0; c < ring->size(); ++c) {
            bool ok = true;
            for (std::size_t i = 0; i < b.size() && ok; ++i) ok = ring->mul(c, b[i].value) == r[i].value;
            if (ok) return ring->element(c);
        }
        return std::nullopt;
    }
    bool same(const FiniteRingHandle& o) const { return ring == o.ring; }
    std::string name() const { return ring->name(); }
    std::string format(const value_type& a) const { return std::to_string(a.value); }
};

/// a^n for n >= 0 (any n for invertible a over fields).
inline Int power_of(const IntegerRing&, const Int& a, const Int& n)
{
    if (!n.fits_ulong_p()) fail(ErrorCode::SizeLimit, "integer exponent too large");
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), n.get_ui());
    return r;
}

inline Rational power_of(const RationalField&, const Rational& a, const Int& n)
{
    if (!n.fits_slong_p() || abs(n) > 100000) fail(ErrorCode::SizeLimit, "rational exponent too large");
    const long k = n.get_si();
    Int num;
    Int den;
    mpz_pow_ui(num.get_mpz_t(), a.get_num_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    mpz_pow_ui(den.get_mpz_t(), a.get_den_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    Rational r = k < 0 ? Rational(den, num) : Rational(num, den);
    r.canonicalize();
    return r;
}

inline local::LocalNum power_of(const LocalRing&, const local::LocalNum& a, const Int& n) { return a.pow(n); }

inline local::FiniteElem power_of(const FiniteRingHandle& R, const local::FiniteElem& a, Int n)
{
    local::FiniteElem r = R.one();
    local::FiniteElem b = a;
    if (n < 0) {
        b = R.inverse(a);
        n = -n;
    }
    for (std::size_t bit = mpz_sizeinbase(n.get_mpz_t(), 2); bit-- > 0;) {
        r = r * r;
        if (mpz_tstbit(n.get_mpz_t(), bit)) r = r * b;
    }
    return r;
}

static_assert(CoefficientRing<IntegerRing>);
static_assert(CoefficientRing<RationalField>);
static_assert(CoefficientRing<LocalRing>);
static_assert(CoefficientRing<FiniteRingHandle>);

}  // namespace fglab
