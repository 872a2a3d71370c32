#pragma once

#include <algorithm>
#include <optional>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "fglab/series/ops.hpp"

namespace fglab::fgl {

using series::Exponent;
using series::TruncSeries;

enum class Provenance { FromLog, FromFrobenius, FromAraki, Raw };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

/// log = T + higher terms over a field, with its cached compositional inverse.
template <CoefficientRing R>
struct Logarithm {
    TruncSeries<R> log;
    TruncSeries<R> exp;
};

template <CoefficientRing R>
Logarithm<R> make_logarithm(TruncSeries<R> log)
{
    if (log.nvars() != 1) fail(ErrorCode::VariableMismatch, "a logarithm is a one-variable series");
    if (log.cap() >= 1 && !log.ring().equal(log[1], log.ring().one())) fail(ErrorCode::InvalidArgument, "logarithm must start with T");
    TruncSeries<R> exp = series::comp_inverse(log);
    return {std::move(log), std::move(exp)};
}

/// A two-variable series in X, Y meant to satisfy the group-law axioms to
/// its cap, optionally carrying the logarithm it was built from.
template <CoefficientRing R>
struct FormalGroupLaw {
    TruncSeries<R> F;
    std::optional<Logarithm<R>> log;
    Provenance provenance = Provenance::Raw;

    const R& ring() const { return F.ring(); }
    int cap() const { return F.cap(); }
    const TruncSeries<R>& logarithm() const
    {
        if (!log) fail(ErrorCode::MissingLogarithm, "law carries no logarithm");
        return log->log;
    }
};

inline const std::vector<std::string>& xy_vars()
{
    static const std::vector<std::string> v{"X", "Y"};
    return v;
}

inline const std::vector<std::string>& t_var()
{
    static const std::vector<std::string> v{"T"};
    return v;
}

template <CoefficientRing R>
FormalGroupLaw<R> additive_law(const R& ring, int cap)
{
    TruncSeries<R> F(ring, xy_vars(), cap);
    if (cap >= 1) {
        F.set({1, 0, 0}, ring.one());
        F.set({0, 1, 0}, ring.one());
    }
    TruncSeries<R> t = TruncSeries<R>::variable(ring, t_var(), 0, cap);
    return {std::move(F), Logarithm<R>{t, t}, Provenance::Raw};
}

template <CoefficientRing R>
FormalGroupLaw<R> multiplicative_law(const R& ring, int cap)
{
    FormalGroupLaw<R> law = additive_law(ring, cap);
    law.log.reset();
    if (cap >= 2) law.F.set({1, 1, 0}, ring.one());
    return law;
}

template <CoefficientRing R>
FormalGroupLaw<R> raw_law(TruncSeries<R> F)
{
    if (F.nvars() != 2) fail(ErrorCode::VariableMismatch, "a group law is a two-variable series");
    return {std::move(F), std::nullopt, Provenance::Raw};
}

struct AxiomReport {
    bool unit = true;
    int unit_degree = -1;
    bool commutative = true;
    int commutative_degree = -1;
    bool associative = true;
    int associative_degree = -1;
    int cap = 0;
    int min_precision = 0;

    bool passed() const { return unit && commutative && associative; }
};

template <CoefficientRing R>
AxiomReport verify_axioms(const TruncSeries<R>& F, bool check_associativity = true)
{
    AxiomReport rep;
    rep.cap = F.cap();
    rep.min_precision = F.min_precision();
    const R& ring = F.ring();
    const auto& lay = F.layout();
    for (std::size_t i = 0; i < F.size(); ++i) {
        const Exponent& e = lay.exponent(i);
        const int d = lay.degree(i);
        if (e[0] == 0 || e[1] == 0) {
            const bool want_one = d == 1;
            const bool ok = want_one ? ring.equal(F[i], ring.one()) : ring.is_zero(F[i]);
            if (!ok && rep.unit) {
                rep.unit = false;
                rep.unit_degree = d;
            }
        }
        if (e[0] > e[1]) {
            const auto& mirrored = F[static_cast<std::size_t>(lay.index_of({e[1], e[0], 0}))];
            if (!ring.equal(F[i], mirrored) && rep.commutative) {
                rep.commutative = false;
                rep.commutative_degree = d;
            }
        }
    }
    if (check_associativity) {
        const std::vector<std::string> xyz{"X", "Y", "Z"};
        const auto X = TruncSeries<R>::variable(ring, xyz, 0, F.cap());
        const auto Y = TruncSeries<R>::variable(ring, xyz, 1, F.cap());
        const auto Z = TruncSeries<R>::variable(ring, xyz, 2, F.cap());
        const auto left = series::substitute(F, {series::substitute(F, {X, Y}), Z});
        const auto right = series::substitute(F, {X, series::substitute(F, {Y, Z})});
        const long idx = left.first_difference(right);
        if (idx >= 0) {
            rep.associative = false;
            rep.associative_degree = left.layout().degree(static_cast<std::size_t>(idx));
        }
        rep.min_precision = std::min({rep.min_precision, left.min_precision(), right.min_precision()});
    }
    return rep;
}

template <CoefficientRing R>
AxiomReport verify_axioms(const FormalGroupLaw<R>& law, bool check_associativity = true)
{
    return verify_axioms(law.F, check_associativity);
}

/// F(s, u) for series s, u with zero constant terms.
template <CoefficientRing R>
TruncSeries<R> formal_sum(const FormalGroupLaw<R>& law, const TruncSeries<R>& s, const TruncSeries<R>& u)
{
    return series::substitute(law.F, {s, u});
}

/// t(X) and t(Y) as two-variable series.
template <CoefficientRing R>
std::pair<TruncSeries<R>, TruncSeries<R>> in_x_and_y(const TruncSeries<R>& t, int cap)
{
    const auto X = TruncSeries<R>::variable(t.ring(), xy_vars(), 0, cap);
    const auto Y = TruncSeries<R>::variable(t.ring(), xy_vars(), 1, cap);
    return {series::substitute_univariate(t, X), series::substitute_univariate(t, Y)};
}

/// F^t(X, Y) = t^{-1}(F(t(X), t(Y))).
template <CoefficientRing R>
TruncSeries<R> conjugate(const TruncSeries<R>& F, const TruncSeries<R>& t)
{
    const int cap = std::min(F.cap(), t.cap());
    const TruncSeries<R> tinv = series::comp_inverse(t.truncated(cap));
    const auto [tx, ty] = in_x_and_y(t, cap);
    return series::substitute_univariate(tinv, series::substitute(F.truncated(cap), {tx, ty}));
}

template <CoefficientRing R>
FormalGroupLaw<R> conjugate(const FormalGroupLaw<R>& law, const TruncSeries<R>& t)
{
    FormalGroupLaw<R> out{conjugate(law.F, t), std::nullopt, Provenance::Raw};
    if (law.log) {
        // log_{F^t} = log_F o t.
        auto lt = series::substitute_univariate(law.log->log, t.truncated(out.cap()));
        const auto lead = lt[1];
        if (law.ring().is_unit(lead)) out.log = make_logarithm(lt.scaled(law.ring().inverse(lead)));
    }
    return out;
}

template <CoefficientRing R>
bool is_automorphism(const TruncSeries<R>& F, const TruncSeries<R>& t)
{
    return conjugate(F, t).equals(F.truncated(std::min(F.cap(), t.cap())));
}

/// F(X,Y) = exp(log X + log Y). Laws whose coefficients should be integral
/// are checked: a negative coefficient valuation raises IntegralityViolation.
template <CoefficientRing R>
FormalGroupLaw<R> from_log(const Logarithm<R>& lg, int cap, bool require_integral = false)
{
    const auto log = lg.log.truncated(cap);
    const auto [lx, ly] = in_x_and_y(log, log.cap());
    FormalGroupLaw<R> law{series::substitute_univariate(lg.exp.truncated(cap), lx + ly), Logarithm<R>{log, lg.exp.truncated(cap)},
                          Provenance::FromLog};
    if constexpr (std::is_same_v<R, LocalRing>) {
        if (require_integral) {
            const auto m = series::min_coeff_ord(law.F);
            if (m && *m < 0) fail(ErrorCode::IntegralityViolation, "group law from logarithm has a coefficient of ord " + m->get_str());
        }
    }
    return law;
}

/// sum_{k>=0} p^{-k} T^{p^{nk}}.
template <CoefficientRing R>
Logarithm<R> honda_log(const R& ring, unsigned long p, int n, int cap)
{
    TruncSeries<R> log(ring, t_var(), cap);
    Int pk = 1;
    Int deg = 1;
    const Int step = ipow(p, static_cast<unsigned long>(n));
    for (int k = 0; deg <= cap; ++k) {
        log.set({static_cast<int>(deg.get_si()), 0, 0}, ring.from_rational(Rational(1, pk)));
        pk *= p;
        deg *= step;
    }
    return make_logarithm(std::move(log));
}

/// sum_{k>=0} pi^{-k} T^{q^k}.
Logarithm<LocalRing> lubin_tate_log(const local::LocalFieldPtr& L, int cap);

/// The law F over o_L with f(F(X,Y)) = F(f(X), f(Y)) for f = pi T + T^q,
/// grown one degree at a time from X + Y.
FormalGroupLaw<LocalRing> lubin_tate_from_frobenius(const local::LocalFieldPtr& L, int cap);

/// pi T + T^q.
TruncSeries<LocalRing> frobenius_polynomial(const local::LocalFieldPtr& L, int cap);

/// [a](T) = exp(a log T).
template <CoefficientRing R>
TruncSeries<R> endo(const Logarithm<R>& lg, const typename R::value_type& a)
{
    return series::substitute_univariate(lg.exp, lg.log.scaled(a));
}

template <CoefficientRing R>
TruncSeries<R> endo(const FormalGroupLaw<R>& law, const typename R::value_type& a)
{
    if (!law.log) fail(ErrorCode::MissingLogarithm, "endomorphism [a] needs a logarithm");
    return endo(*law.log, a);
}

/// [n](T) as the n-fold formal sum T +_F ... +_F T, n >= 0.
template <CoefficientRing R>
TruncSeries<R> formal_multiple(const FormalGroupLaw<R>& law, long n)
{
    const auto T = TruncSeries<R>::variable(law.ring(), t_var(), 0, law.cap());
    TruncSeries<R> acc = T.zero_like();
    TruncSeries<R> base = T;
    // Double-and-add with the group law.
    bool have = false;
    while (n > 0) {
        if (n & 1) {
            acc = have ? formal_sum(law, acc, base) : base;
            have = true;
        }
        n >>= 1;
        if (n > 0) base = formal_sum(law, base, base);
    }
    return acc;
}

/// (m+1) times the coefficient of T^{m+1} in the logarithm.
template <CoefficientRing R>
typename R::value_type classifying_value(const Logarithm<R>& lg, int m)
{
    if (m + 1 > lg.log.cap()) fail(ErrorCode::DegreeCapTooSmall, "classifying value beyond the degree cap");
    return typename R::value_type(lg.log.ring().from_int(Int(m + 1)) * lg.log[static_cast<std::size_t>(m + 1)]);
}

template <CoefficientRing R>
struct PTypicalData {
    unsigned long p = 0;
    /// v_1, v_2, ... (v_0 = p implicit).
    std::vector<typename R::value_type> v;
};

/// Logarithm sum_k l_k T^{p^k} from p l_k = sum_{0<=i<=k} l_i v_{k-i}^{p^i},
/// v_0 = p, l_0 = 1.
template <CoefficientRing R>
Logarithm<R> araki_logarithm(const R& ring, unsigned long p, const std::vector<typename R::value_type>& v, int cap)
{
    using V = typename R::value_type;
    auto vk = [&](std::size_t k) -> V { return k == 0 ? ring.from_int(Int(p)) : (k <= v.size() ? v[k - 1] : ring.zero()); };
    std::vector<V> l{ring.one()};
    std::vector<long> degs{1};
    const V pv = ring.from_int(Int(p));
    while (degs.back() <= cap / static_cast<long>(p)) {
        const std::size_t k = l.size();
        V acc = ring.zero();
        long ppow = 1;
        for (std::size_t i = 0; i < k; ++i) {
            const V vi = vk(k - i);
            if (!ring.is_exact_zero(l[i]) && !ring.is_exact_zero(vi)) acc += V(l[i] * power_of(ring, vi, Int(ppow)));
            ppow *= static_cast<long>(p);
        }
        const V denom = V(pv - power_of(ring, pv, Int(degs.back() * static_cast<long>(p))));
        l.push_back(ring.is_exact_zero(acc) ? ring.zero() : V(acc * ring.inverse(denom)));
        degs.push_back(degs.back() * static_cast<long>(p));
    }
    TruncSeries<R> log(ring, t_var(), cap);
    for (std::size_t k = 0; k < l.size(); ++k) log.set({static_cast<int>(degs[k]), 0, 0}, l[k]);
    return make_logarithm(std::move(log));
}

template <CoefficientRing R>
FormalGroupLaw<R> ptypical_from_araki(const R& ring, unsigned long p, const std::vector<typename R::value_type>& v, int cap)
{
    FormalGroupLaw<R> law = from_log(araki_logarithm(ring, p, v, cap), cap);
    law.provenance = Provenance::FromAraki;
    return law;
}

/// Araki generators of a p-typical logarithm, inverting araki_logarithm.
template <CoefficientRing R>
PTypicalData<R> araki_from_log(const Logarithm<R>& lg, unsigned long p)
{
    using V = typename R::value_type;
    const R& ring = lg.log.ring();
    const auto& log = lg.log;
    std::vector<long> degs{1};
    while (degs.back() <= log.cap() / static_cast<long>(p)) degs.push_back(degs.back() * static_cast<long>(p));
    for (int d = 2; d <= log.cap(); ++d) {
        if (std::find(degs.begin(), degs.end(), d) == degs.end() && !ring.is_zero(log[static_cast<std::size_t>(d)])) {
            fail(ErrorCode::NotPTypical, "logarithm has a term in degree " + std::to_string(d));
        }
    }
    std::vector<V> l;
    for (long d : degs) l.push_back(log[static_cast<std::size_t>(d)]);
    const V pv = ring.from_int(Int(p));
    PTypicalData<R> out;
    out.p = p;
    for (std::size_t k = 1; k < l.size(); ++k) {
        // v_k = p l_k - l_k p^{p^k} - sum_{0<i<k} l_i v_{k-i}^{p^i}.
        V acc = V(V(pv * l[k]) - V(l[k] * power_of(ring, pv, ipow(p, static_cast<unsigned long>(k)))));
        long ppow = static_cast<long>(p);
        for (std::size_t i = 1; i < k; ++i) {
            const V& vi = out.v[k - i - 1];
            if (!ring.is_exact_zero(l[i]) && !ring.is_exact_zero(vi)) acc -= V(l[i] * power_of(ring, vi, Int(ppow)));
            ppow *= static_cast<long>(p);
        }
        out.v.push_back(std::move(acc));
    }
    return out;
}

template <CoefficientRing R>
PTypicalData<R> araki_from_ptypical(const FormalGroupLaw<R>& law, unsigned long p)
{
    if (!law.log) fail(ErrorCode::MissingLogarithm, "Araki generators need a logarithm");
    return araki_from_log(*law.log, p);
}

/// Outcome of an isomorphism search F^t = G.
template <CoefficientRing R>
struct IsoResult {
    bool found = false;
    TruncSeries<R> t;
    int obstructed_degree = -1;
    std::optional<TruncSeries<R>> residual;
};

/// Seeks t = T + t_1 T^2 + ... with F(t(X), t(Y)) = t(G(X, Y)), one degree
/// at a time. At degree d the new coefficient c solves
/// c ((X+Y)^d - X^d - Y^d) = R_d; free parameters are set to the smallest
/// solution the ring reports.
template <CoefficientRing R>
IsoResult<R> find_isomorphism(const TruncSeries<R>& F, const TruncSeries<R>& G, int cap)
{
    using V = typename R::value_type;
    F.check_compatible(G);
    cap = std::min({cap, F.cap(), G.cap()});
    const R& ring = F.ring();
    TruncSeries<R> t = TruncSeries<R>::variable(ring, t_var(), 0, cap);
    IsoResult<R> res{false, t, -1, std::nullopt};
    for (int d = 2; d <= cap; ++d) {
        const TruncSeries<R> td = t.truncated(d);
        const auto [tx, ty] = in_x_and_y(td, d);
        const TruncSeries<R> lhs = series::substitute(F.truncated(d), {tx, ty});
        const TruncSeries<R> rhs = series::substitute_univariate(td, G.truncated(d));
        const TruncSeries<R> diff = rhs - lhs;
        std::vector<V> b;
        std::vector<V> r;
        const auto& lay = diff.layout();
        bool pure_ok = true;
        for (std::size_t i = lay.degree_begin(d); i < lay.degree_begin(d + 1); ++i) {
            const Exponent& e = lay.exponent(i);
            if (e[0] == 0 || e[1] == 0) {
                pure_ok = pure_ok && ring.is_zero(diff[i]);
                continue;
            }
            b.push_back(ring.from_int(binomial(static_cast<unsigned long>(d), static_cast<unsigned long>(e[0]))));
            r.push_back(-diff[i]);
        }
        std::optional<V> c = pure_ok ? ring.solve(b, r) : std::nullopt;
        if (!c) {
            res.t = t.truncated(d - 1);
            res.obstructed_degree = d;
            TruncSeries<R> resid = diff.zero_like();
            for (std::size_t i = lay.degree_begin(d); i < lay.degree_begin(d + 1); ++i) resid[i] = diff[i];
            res.residual = std::move(resid);
            return res;
        }
        t.set({d, 0, 0}, *c);
    }
    res.found = true;
    res.t = std::move(t);
    return res;
}

/// The logarithm of a law over a field, recovered as the strict
/// isomorphism to the additive law.
template <CoefficientRing R>
Logarithm<R> extract_log(const TruncSeries<R>& F)
{
    const auto add = additive_law(F.ring(), F.cap());
    auto iso = find_isomorphism(add.F, F, F.cap());
    if (!iso.found) fail(ErrorCode::NonUniqueSolution, "no logarithm found up to degree " + std::to_string(iso.obstructed_degree));
    // add^t = F means t^{-1}(t X + t Y) = F, so t is the logarithm.
    return make_logarithm(std::move(iso.t));
}

}  // namespace fglab::fgl
