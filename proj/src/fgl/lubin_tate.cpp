#include "fglab/fgl/lubin_tate.hpp"

namespace fglab::fgl {

std::string to_string(Provenance p)
{
    switch (p) {
    case Provenance::FromLog: return "from-log";
    case Provenance::FromFrobenius: return "from-frobenius";
    case Provenance::FromAraki: return "from-araki";
    case Provenance::Raw: return "raw";
    }
    return "raw";
}

Provenance provenance_from_string(const std::string& s)
{
    if (s == "from-log") return Provenance::FromLog;
    if (s == "from-frobenius") return Provenance::FromFrobenius;
    if (s == "from-araki") return Provenance::FromAraki;
    if (s == "raw") return Provenance::Raw;
    fail(ErrorCode::ParseError, "unknown law provenance '" + s + "'");
}

Logarithm<LocalRing> lubin_tate_log(const local::LocalFieldPtr& L, int cap)
{
    const LocalRing ring{L};
    TruncSeries<LocalRing> log(ring, t_var(), cap);
    const local::LocalNum pinv = L->uniformizer().inverse();
    local::LocalNum coef = L->one();
    const Int q = L->q();
    for (Int deg = 1; deg <= cap; deg *= q) {
        log.set({static_cast<int>(deg.get_si()), 0, 0}, coef);
        coef = coef * pinv;
    }
    return make_logarithm(std::move(log));
}

TruncSeries<LocalRing> frobenius_polynomial(const local::LocalFieldPtr& L, int cap)
{
    TruncSeries<LocalRing> f(LocalRing{L}, t_var(), cap);
    if (cap >= 1) f.set({1, 0, 0}, L->uniformizer());
    const Int q = L->q();
    if (q <= cap) f.set({static_cast<int>(q.get_si()), 0, 0}, L->one());
    return f;
}

FormalGroupLaw<LocalRing> lubin_tate_from_frobenius(const local::LocalFieldPtr& L, int cap)
{
    const LocalRing ring{L};
    if (L->q() > cap) fail(ErrorCode::DegreeCapTooSmall, "Frobenius construction needs cap >= q");
    const TruncSeries<LocalRing> f = frobenius_polynomial(L, cap);
    const local::LocalNum pi = L->uniformizer();
    TruncSeries<LocalRing> F = additive_law(ring, 1).F;
    for (int d = 2; d <= cap; ++d) {
        F = F.padded(d);
        const TruncSeries<LocalRing> fd = f.truncated(d);
        const auto [fx, fy] = in_x_and_y(fd, d);
        const TruncSeries<LocalRing> err = series::substitute_univariate(fd, F) - series::substitute(F, {fx, fy});
        // f(F + D) - (F + D)(fX, fY) = err + (pi - pi^d) D in degree d.
        const local::LocalNum denom_inv = (pi.pow(static_cast<long>(d)) - pi).inverse();
        const auto& lay = F.layout();
        for (std::size_t i = lay.degree_begin(d); i < lay.degree_begin(d + 1); ++i) {
            if (err[i].is_exact_zero()) continue;
            F[i] = err[i] * denom_inv;
        }
    }
    return {std::move(F), std::nullopt, Provenance::FromFrobenius};
}

FiniteRingHandle residue_ring(const local::LocalFieldPtr& L) { return FiniteRingHandle{local::FiniteRing::residue_field(L->base())}; }

TruncSeries<FiniteRingHandle> reduce_mod_pi(const TruncSeries<LocalRing>& s, const FiniteRingHandle& residue)
{
    TruncSeries<FiniteRingHandle> out(residue, s.vars(), s.layout_ptr());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = residue.ring->from_residue(s[i].residue());
    return out;
}

Height height_from_p_series(const TruncSeries<FiniteRingHandle>& ps, unsigned long p, bool additive)
{
    for (std::size_t i = 1; i < ps.size(); ++i) {
        if (ps[i].value == 0) continue;
        long deg = ps.layout().degree(i);
        int h = 0;
        while (deg % static_cast<long>(p) == 0) {
            deg /= static_cast<long>(p);
            ++h;
        }
        if (deg != 1) fail(ErrorCode::InvalidArgument, "leading term of [p] mod pi is not in a p-power degree");
        return {false, h};
    }
    if (additive) return {true, 0};
    fail(ErrorCode::DegreeCapTooSmall, "[p] vanishes mod pi up to degree " + std::to_string(ps.cap()) + " but the law has nonlinear terms");
}

namespace {

bool is_exactly_additive(const TruncSeries<FiniteRingHandle>& F)
{
    for (std::size_t i = 0; i < F.size(); ++i) {
        const bool linear = F.layout().degree(i) == 1;
        if (F[i].value != (linear ? F.ring().ring->one().value : 0U)) return false;
    }
    return true;
}

// A truncated law only certifies infinite height when its nonlinear part is
// structurally absent; a law that merely vanishes mod pi to the cap might
// still have finite height beyond it.
bool is_structurally_additive(const TruncSeries<LocalRing>& F)
{
    for (std::size_t i = 0; i < F.size(); ++i) {
        if (F.layout().degree(i) != 1 && !F[i].is_exact_zero()) return false;
    }
    return true;
}

}  // namespace

PSeriesPair p_series_both_ways(const FormalGroupLaw<LocalRing>& law)
{
    const auto& L = law.ring().field;
    const auto p = static_cast<long>(L->p());
    return {endo(law, L->from_int(Int(p))), formal_multiple(law, p)};
}

Height height_mod_pi(const FormalGroupLaw<LocalRing>& law)
{
    const auto& L = law.ring().field;
    const FiniteRingHandle k = residue_ring(L);
    const auto p = L->p();
    const TruncSeries<LocalRing> ps = law.log ? endo(law, L->from_int(Int(p))) : formal_multiple(law, static_cast<long>(p));
    return height_from_p_series(reduce_mod_pi(ps, k), p, is_structurally_additive(law.F));
}

Height height_mod_pi(const FormalGroupLaw<FiniteRingHandle>& law)
{
    const auto p = law.ring().ring->characteristic();
    if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "height needs a ring of prime characteristic");
    return height_from_p_series(formal_multiple(law, static_cast<long>(p)), p, is_exactly_additive(law.F));
}

Height height_mod_pi(const Logarithm<LocalRing>& log)
{
    const auto& L = log.log.ring().field;
    const FiniteRingHandle k = residue_ring(L);
    const auto p = L->p();
    const TruncSeries<LocalRing> ps = endo(log, L->from_int(Int(p)));
    bool additive = true;
    for (std::size_t i = 2; i < log.log.size(); ++i) additive = additive && log.log[i].is_exact_zero();
    return height_from_p_series(reduce_mod_pi(ps, k), p, additive);
}

}  // namespace fglab::fgl
