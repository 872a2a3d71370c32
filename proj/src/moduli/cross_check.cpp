#include "fglab/moduli/cross_check.hpp"

#include <algorithm>

namespace fglab::moduli {

SmallPoly to_small(const series::TruncSeries<FiniteRingHandle>& s, int cap)
{
    SmallPoly out(s.ring().ring.get(), s.nvars(), cap);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto& e = s.layout().exponent(i);
        if (e[0] + e[1] + e[2] <= cap) out.set(e[0], e[1], e[2], s[i].value);
    }
    return out;
}

series::TruncSeries<FiniteRingHandle> to_series(const SmallPoly& p, const FiniteRingHandle& ring, const std::vector<std::string>& vars)
{
    series::TruncSeries<FiniteRingHandle> out(ring, vars, p.cap());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& e = out.layout().exponent(i);
        out[i] = ring.ring->element(p.get(e[0], e[1], e[2]));
    }
    return out;
}

std::vector<local::LocalNum> integer_units(const local::LocalFieldPtr& L, int k)
{
    const unsigned long p = L->p();
    unsigned long bound = 1;
    for (int i = 0; i < k; ++i) bound *= p;
    std::vector<local::LocalNum> out;
    for (unsigned long a = 1; a < bound; ++a) {
        if (a % p != 0) out.push_back(L->from_int(Int(a)));
    }
    return out;
}

StabilizerCheck stabilizer_vs_endomorphisms(const fgl::FormalGroupLaw<LocalRing>& law, int d, const std::vector<local::LocalNum>& units)
{
    if (!law.log) fail(ErrorCode::MissingLogarithm, "stabilizer check needs [a] from the logarithm");
    if (law.F.cap() < d) fail(ErrorCode::DegreeCapTooSmall, "law is truncated below the bud degree");
    const FiniteRingHandle k = fgl::residue_ring(law.ring().field);
    StabilizerCheck out;
    out.degree = d;
    out.bud = to_small(fgl::reduce_mod_pi(law.F, k), d);
    const auto group = enumerate_coordchanges(*k.ring, d);
    out.stabilizer = stabilizer(out.bud, group);

    const auto Fk = fgl::reduce_mod_pi(law.F.truncated(d), k);
    out.endos_are_automorphisms = true;
    for (const auto& a : units) {
        const auto ak = fgl::reduce_mod_pi(fgl::endo(law, a).truncated(d), k);
        out.endos_are_automorphisms = out.endos_are_automorphisms && fgl::is_automorphism(Fk, ak);
        out.endo_images.push_back(to_small(ak, d));
    }
    std::sort(out.endo_images.begin(), out.endo_images.end());
    out.endo_images.erase(std::unique(out.endo_images.begin(), out.endo_images.end()), out.endo_images.end());

    out.stabilizer_covered = std::all_of(out.stabilizer.begin(), out.stabilizer.end(), [&](const SmallPoly& t) {
        return std::binary_search(out.endo_images.begin(), out.endo_images.end(), t);
    });
    out.endos_in_stabilizer = std::all_of(out.endo_images.begin(), out.endo_images.end(), [&](const SmallPoly& t) {
        return std::binary_search(out.stabilizer.begin(), out.stabilizer.end(), t);
    });
    return out;
}

}  // namespace fglab::moduli
