#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "fglab/series/kernels.hpp"

namespace fglab::series {

namespace detail {

/// acc += c * s, coefficientwise, skipping exact zeros. Same layout assumed.
template <CoefficientRing R>
void axpy(TruncSeries<R>& acc, const typename R::value_type& c, const TruncSeries<R>& s)
{
    const R& ring = acc.ring();
    if (ring.is_exact_zero(c)) return;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (ring.is_exact_zero(s[i])) continue;
        acc[i] += typename R::value_type(c * s[i]);
    }
}

template <CoefficientRing R>
TruncSeries<R> constant(const TruncSeries<R>& like, typename R::value_type c)
{
    TruncSeries<R> out = like.zero_like();
    out[0] = std::move(c);
    return out;
}

}  // namespace detail

/// Sum of a_i s^i for one-variable a. Horner, where the i-th partial sum is
/// kept only to degree cap - i*val(s) since it is later multiplied by s^i.
template <CoefficientRing R>
TruncSeries<R> substitute_univariate(const TruncSeries<R>& a, const TruncSeries<R>& s_in)
{
    if (a.nvars() != 1) fail(ErrorCode::VariableMismatch, "univariate substitution needs a one-variable series");
    if (!a.ring().same(s_in.ring())) fail(ErrorCode::RingMismatch, "series over different rings");
    if (!s_in.has_zero_constant_term()) fail(ErrorCode::NonzeroConstantTerm, "substituted series has a nonzero constant term");
    const int cap = std::min(a.cap(), s_in.cap());
    const TruncSeries<R> s = s_in.truncated(cap);
    const int vs = s.valuation_degree();
    TruncSeries<R> r(a.ring(), s.vars(), cap);
    if (vs > cap) {
        r[0] = a[0];
        return r;
    }
    int top = cap;
    while (top > 0 && a.ring().is_exact_zero(a[static_cast<std::size_t>(top)])) --top;
    if (top == 0) {
        r[0] = a[0];
        return r;
    }
    auto cap_at = [&](int i) { return std::max(0, cap - i * vs); };
    TruncSeries<R> acc = detail::constant(TruncSeries<R>(a.ring(), s.vars(), cap_at(top)), a[static_cast<std::size_t>(top)]);
    for (int i = top - 1; i >= 0; --i) {
        const int ci = cap_at(i);
        acc = acc.padded(ci) * s.truncated(ci);
        if (!a.ring().is_exact_zero(a[static_cast<std::size_t>(i)])) acc[0] += a[static_cast<std::size_t>(i)];
    }
    return acc;
}

/// Formal substitution x_k <- subs[k]. Every substituted series must have
/// zero constant term; the result cap is the minimum of all caps. The
/// substituted series with the fewest nonzero terms drives a Horner scheme,
/// the others are expanded through power tables.
template <CoefficientRing R>
TruncSeries<R> substitute(const TruncSeries<R>& a, const std::vector<TruncSeries<R>>& subs_in)
{
    if (subs_in.size() != static_cast<std::size_t>(a.nvars())) fail(ErrorCode::VariableMismatch, "one substitution per variable required");
    for (const auto& s : subs_in) {
        subs_in.front().check_compatible(s);
        if (!a.ring().same(s.ring())) fail(ErrorCode::RingMismatch, "series over different rings");
        if (!s.has_zero_constant_term()) fail(ErrorCode::NonzeroConstantTerm, "substituted series has a nonzero constant term");
    }
    if (a.nvars() == 1) return substitute_univariate(a, subs_in.front());

    int cap = a.cap();
    for (const auto& s : subs_in) cap = std::min(cap, s.cap());
    std::vector<TruncSeries<R>> subs;
    for (const auto& s : subs_in) subs.push_back(s.truncated(cap));
    const int nv = a.nvars();
    const MonomialLayout& la = a.layout();
    const R& ring = a.ring();

    int outer = 0;
    for (int k = 1; k < nv; ++k) {
        if (subs[static_cast<std::size_t>(k)].nonzero_count() < subs[static_cast<std::size_t>(outer)].nonzero_count()) outer = k;
    }
    std::vector<int> inner;
    for (int k = 0; k < nv; ++k) {
        if (k != outer) inner.push_back(k);
    }

    std::vector<int> max_exp(static_cast<std::size_t>(nv), 0);
    for (std::size_t i = 0; i < a.size() && la.degree(i) <= cap; ++i) {
        if (ring.is_exact_zero(a[i])) continue;
        for (int k = 0; k < nv; ++k) max_exp[static_cast<std::size_t>(k)] = std::max(max_exp[static_cast<std::size_t>(k)], la.exponent(i)[static_cast<std::size_t>(k)]);
    }
    const TruncSeries<R> one = detail::constant(subs.front().zero_like(), ring.one());
    std::vector<std::vector<TruncSeries<R>>> powers(static_cast<std::size_t>(nv));
    for (int k : inner) {
        auto& table = powers[static_cast<std::size_t>(k)];
        table.push_back(one);
        for (int e = 1; e <= max_exp[static_cast<std::size_t>(k)]; ++e) table.push_back(table.back() * subs[static_cast<std::size_t>(k)]);
    }
    // Products of inner powers for three-variable series, by exponent pair.
    std::map<std::pair<int, int>, TruncSeries<R>> mixed;
    auto inner_term = [&](const Exponent& e) -> const TruncSeries<R>& {
        const int k0 = inner[0];
        if (inner.size() == 1) return powers[static_cast<std::size_t>(k0)][static_cast<std::size_t>(e[static_cast<std::size_t>(k0)])];
        const int k1 = inner[1];
        const int e0 = e[static_cast<std::size_t>(k0)];
        const int e1 = e[static_cast<std::size_t>(k1)];
        if (e0 == 0) return powers[static_cast<std::size_t>(k1)][static_cast<std::size_t>(e1)];
        if (e1 == 0) return powers[static_cast<std::size_t>(k0)][static_cast<std::size_t>(e0)];
        auto it = mixed.find({e0, e1});
        if (it == mixed.end()) {
            it = mixed.emplace(std::make_pair(e0, e1), powers[static_cast<std::size_t>(k0)][static_cast<std::size_t>(e0)] * powers[static_cast<std::size_t>(k1)][static_cast<std::size_t>(e1)]).first;
        }
        return it->second;
    };

    const int top = max_exp[static_cast<std::size_t>(outer)];
    std::vector<TruncSeries<R>> coeff_series(static_cast<std::size_t>(top + 1), subs.front().zero_like());
    for (std::size_t i = 0; i < a.size() && la.degree(i) <= cap; ++i) {
        if (ring.is_exact_zero(a[i])) continue;
        const Exponent& e = la.exponent(i);
        detail::axpy(coeff_series[static_cast<std::size_t>(e[static_cast<std::size_t>(outer)])], a[i], inner_term(e));
    }
    const TruncSeries<R>& so = subs[static_cast<std::size_t>(outer)];
    TruncSeries<R> acc = coeff_series[static_cast<std::size_t>(top)];
    for (int i = top - 1; i >= 0; --i) acc = acc * so + coeff_series[static_cast<std::size_t>(i)];
    return acc;
}

/// Partial derivative with respect to variable k; the cap drops by one.
template <CoefficientRing R>
TruncSeries<R> derivative(const TruncSeries<R>& a, int k = 0)
{
    TruncSeries<R> out(a.ring(), a.vars(), std::max(0, a.cap() - 1));
    const MonomialLayout& la = a.layout();
    for (std::size_t i = 0; i < a.size(); ++i) {
        Exponent e = la.exponent(i);
        const int ek = e[static_cast<std::size_t>(k)];
        if (ek == 0 || a.ring().is_exact_zero(a[i]) || la.degree(i) - 1 > out.cap()) continue;
        e[static_cast<std::size_t>(k)] = ek - 1;
        out.set(e, typename R::value_type(a.ring().from_int(Int(ek)) * a[i]));
    }
    return out;
}

/// Multiplicative inverse of a series with unit constant term, by Newton
/// iteration b <- b(2 - hb) with doubling caps.
template <CoefficientRing R>
TruncSeries<R> series_inverse(const TruncSeries<R>& h)
{
    using V = typename R::value_type;
    const R& ring = h.ring();
    if (!ring.is_unit(h[0])) fail(ErrorCode::DivisionByZeroToPrecision, "constant term is not a unit");
    TruncSeries<R> b(ring, h.vars(), 0);
    b[0] = ring.inverse(h[0]);
    int m = 0;
    while (m < h.cap()) {
        const int m2 = std::min(h.cap(), 2 * m + 1);
        const TruncSeries<R> bp = b.padded(m2);
        TruncSeries<R> corr = h.truncated(m2) * bp;
        corr = -corr;
        corr[0] += V(ring.from_int(Int(2)));
        b = bp * corr;
        m = m2;
    }
    return b;
}

/// Compositional inverse of a one-variable series t = t_0 T + ..., t_0 a
/// unit, by Newton iteration g <- g - (t(g) - T) / t'(g).
template <CoefficientRing R>
TruncSeries<R> comp_inverse(const TruncSeries<R>& t)
{
    if (t.nvars() != 1) fail(ErrorCode::VariableMismatch, "compositional inverse needs a one-variable series");
    const R& ring = t.ring();
    if (!t.has_zero_constant_term()) fail(ErrorCode::NonzeroConstantTerm, "series to invert has a nonzero constant term");
    if (t.cap() < 1) return t;
    if (!ring.is_unit(t[1])) fail(ErrorCode::LeadingCoefficientNotUnit, "leading coefficient is not a unit");
    TruncSeries<R> g(ring, t.vars(), 1);
    g[1] = ring.inverse(t[1]);
    const TruncSeries<R> dt = derivative(t);
    int m = 1;
    while (m < t.cap()) {
        const int m2 = std::min(t.cap(), 2 * m);
        const TruncSeries<R> gp = g.padded(m2);
        TruncSeries<R> h = substitute_univariate(t.truncated(m2), gp);
        h[1] -= ring.one();
        // h vanishes below degree m+1, so t'(g) matters only below m2-m.
        const TruncSeries<R> d = substitute_univariate(dt.truncated(m2 - m), gp.truncated(m2 - m));
        g = gp - h * series_inverse(d).padded(m2);
        m = m2;
    }
    return g;
}

/// a(x_0, .., x_k + w, ..) expanded exactly: the new coefficient of x^m is
/// sum_{l>=0} binom(m_k + l, l) a_{m + l e_k} w^l. The series is treated as
/// a polynomial of degree cap.
template <CoefficientRing R>
TruncSeries<R> shift_variable(const TruncSeries<R>& a, int k, const typename R::value_type& w)
{
    using V = typename R::value_type;
    const R& ring = a.ring();
    const MonomialLayout& la = a.layout();
    std::vector<V> wp{ring.one()};
    for (int l = 1; l <= a.cap(); ++l) wp.push_back(V(wp.back() * w));
    TruncSeries<R> out = a.zero_like();
    for (std::size_t i = 0; i < a.size(); ++i) {
        Exponent e = la.exponent(i);
        const int ek = e[static_cast<std::size_t>(k)];
        V acc = ring.zero();
        for (int l = 0; la.degree(i) + l <= a.cap(); ++l) {
            e[static_cast<std::size_t>(k)] = ek + l;
            const V& c = a[static_cast<std::size_t>(la.index_of(e))];
            if (ring.is_exact_zero(c)) continue;
            acc += V(V(ring.from_int(binomial(static_cast<unsigned long>(ek + l), static_cast<unsigned long>(l))) * c) * wp[static_cast<std::size_t>(l)]);
        }
        out[i] = std::move(acc);
    }
    return out;
}

template <CoefficientRing R>
struct Recentered {
    TruncSeries<R> series;
    typename R::value_type dropped_constant;
};

/// a(x~ + w) - a(w) together with the dropped constant a(w); one entry of
/// w per variable, applied one variable at a time.
template <CoefficientRing R>
Recentered<R> recenter(const TruncSeries<R>& a, const std::vector<typename R::value_type>& w)
{
    if (w.size() != static_cast<std::size_t>(a.nvars())) fail(ErrorCode::VariableMismatch, "one recentering value per variable required");
    TruncSeries<R> s = a;
    for (int k = 0; k < a.nvars(); ++k) s = shift_variable(s, k, w[static_cast<std::size_t>(k)]);
    typename R::value_type c = s[0];
    s[0] = a.ring().zero();
    return {std::move(s), std::move(c)};
}

template <CoefficientRing R>
Recentered<R> recenter(const TruncSeries<R>& a, const typename R::value_type& w)
{
    return recenter(a, std::vector<typename R::value_type>{w});
}

/// Minimum ord over coefficients that are nonzero to precision; nullopt when
/// every coefficient is zero. A coefficient known to no digits at all makes
/// the question unanswerable.
inline std::optional<Rational> min_coeff_ord(const TruncSeries<LocalRing>& a)
{
    std::optional<Rational> best;
    for (const auto& c : a.coefficients()) {
        if (c.is_exact_zero()) continue;
        if (c.is_zero()) {
            if (c.abs_precision() <= 0) fail(ErrorCode::PrecisionExhausted, "coefficient known to no digits");
            continue;
        }
        const Rational o = c.ord();
        if (!best || o < *best) best = o;
    }
    return best;
}

}  // namespace fglab::series
