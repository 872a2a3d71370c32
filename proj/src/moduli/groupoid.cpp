#include "fglab/moduli/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fglab/error.hpp"

namespace fglab::moduli {

using local::FiniteRing;

void check_bud_setting(const FiniteRing& ring, int d)
{
    if (d < 2 || d > 4) fail(ErrorCode::InvalidArgument, "bud degree must be between 2 and 4");
    const bool ok = ring.kind() == FiniteRing::Kind::IntegersMod ? ring.size() <= 125 : ring.size() <= 25;
    if (!ok) fail(ErrorCode::SearchSpaceTooLarge, "ring " + ring.name() + " is too large for exhaustive enumeration");
}

SmallPoly truncated(const SmallPoly& p, int cap)
{
    SmallPoly out(p.ring(), p.nvars(), cap);
    for (int i = 0; i <= cap; ++i) {
        for (int j = 0; i + j <= cap; ++j) {
            for (int k = 0; i + j + k <= cap; ++k) out.set(i, j, k, p.get(i, j, k));
        }
    }
    return out;
}

namespace {

/// Degree-`deg` part of F(F(X,Y),Z) - F(X,F(Y,Z)) vanishes.
bool associative_through(const SmallPoly& F2, int deg)
{
    const SmallPoly F = truncated(F2, deg);
    const FiniteRing* R = F.ring();
    const SmallPoly X = SmallPoly::variable(R, 3, deg, 0);
    const SmallPoly Y = SmallPoly::variable(R, 3, deg, 1);
    const SmallPoly Z = SmallPoly::variable(R, 3, deg, 2);
    return substitute2(F, substitute2(F, X, Y), Z) == substitute2(F, X, substitute2(F, Y, Z));
}

SmallPoly base_bud(const FiniteRing* R, int d)
{
    SmallPoly F(R, 2, d);
    F.set(1, 0, 0, R->one().value);
    F.set(0, 1, 0, R->one().value);
    return F;
}

}  // namespace

bool bud_axioms(const SmallPoly& F)
{
    const FiniteRing* R = F.ring();
    const int d = F.cap();
    for (int i = 0; i <= d; ++i) {
        const std::uint32_t want = i == 1 ? R->one().value : 0U;
        if (F.get(i, 0) != want || F.get(0, i) != want) return false;
        for (int j = 0; i + j <= d; ++j) {
            if (F.get(i, j) != F.get(j, i)) return false;
        }
    }
    return associative_through(F, d);
}

std::vector<SmallPoly> enumerate_buds(const FiniteRing& ring, int d)
{
    check_bud_setting(ring, d);
    int free = 0;
    for (int k = 2; k <= d; ++k) free += (k - 1 + 1) / 2;
    if (std::pow(static_cast<double>(ring.size()), free) > kMaxSearch) fail(ErrorCode::SearchSpaceTooLarge, "bud search space too large");
    std::vector<SmallPoly> layer{base_bud(&ring, d)};
    for (int k = 2; k <= d; ++k) {
        // Free coefficients of degree k: c_{i,k-i} with i >= k-i >= 1.
        std::vector<int> slots;
        for (int i = k - 1; i >= k - i && k - i >= 1; --i) slots.push_back(i);
        std::vector<std::vector<SmallPoly>> parts(layer.size());
#pragma omp parallel for schedule(dynamic) if (layer.size() > 8)
        for (std::size_t n = 0; n < layer.size(); ++n) {
            const SmallPoly& F = layer[n];
            auto& next = parts[n];
            std::vector<std::uint32_t> vals(slots.size(), 0);
            for (;;) {
                SmallPoly G = F;
                for (std::size_t s = 0; s < slots.size(); ++s) {
                    G.set(slots[s], k - slots[s], 0, vals[s]);
                    G.set(k - slots[s], slots[s], 0, vals[s]);
                }
                if (associative_through(G, k)) next.push_back(G);
                std::size_t s = 0;
                while (s < vals.size() && ++vals[s] == ring.size()) vals[s++] = 0;
                if (s == vals.size()) break;
            }
        }
        layer.clear();
        for (auto& part : parts) layer.insert(layer.end(), part.begin(), part.end());
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

std::vector<SmallPoly> enumerate_coordchanges(const FiniteRing& ring, int d)
{
    check_bud_setting(ring, d);
    const auto units = ring.units();
    if (static_cast<double>(units.size()) * std::pow(static_cast<double>(ring.size()), d - 1) > kMaxSearch) {
        fail(ErrorCode::SearchSpaceTooLarge, "coordinate-change search space too large");
    }
    std::vector<SmallPoly> out;
    for (std::uint32_t u : units) {
        std::vector<std::uint32_t> vals(static_cast<std::size_t>(d - 1), 0);
        for (;;) {
            SmallPoly t(&ring, 1, d);
            t.set(1, 0, 0, u);
            for (std::size_t s = 0; s < vals.size(); ++s) t.set(static_cast<int>(s) + 2, 0, 0, vals[s]);
            out.push_back(t);
            std::size_t s = 0;
            while (s < vals.size() && ++vals[s] == ring.size()) vals[s++] = 0;
            if (s == vals.size()) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SmallPoly act(const SmallPoly& t, const SmallPoly& F)
{
    const FiniteRing* R = F.ring();
    const int d = F.cap();
    const SmallPoly X = SmallPoly::variable(R, 2, d, 0);
    const SmallPoly Y = SmallPoly::variable(R, 2, d, 1);
    return substitute1(comp_inverse1(t), substitute2(F, substitute1(t, X), substitute1(t, Y)));
}

SmallPoly compose(const SmallPoly& t, const SmallPoly& s) { return substitute1(t, s); }

std::vector<SmallPoly> stabilizer(const SmallPoly& F, const std::vector<SmallPoly>& group)
{
    std::vector<SmallPoly> out;
    for (const auto& t : group) {
        if (act(t, F) == F) out.push_back(t);
    }
    return out;
}

OrbitStabilizer orbit_and_stabilizer(const SmallPoly& F)
{
    if (!bud_axioms(F)) fail(ErrorCode::InvalidArgument, "not a bud");
    OrbitStabilizer out;
    for (const auto& t : enumerate_coordchanges(*F.ring(), F.cap())) {
        SmallPoly G = act(t, F);
        if (G == F) out.stabilizer.push_back(t);
        out.orbit.push_back(std::move(G));
    }
    std::sort(out.orbit.begin(), out.orbit.end());
    out.orbit.erase(std::unique(out.orbit.begin(), out.orbit.end()), out.orbit.end());
    return out;
}

GroupoidReport groupoid_report(const FiniteRing& ring, int d)
{
    GroupoidReport rep;
    rep.ring = ring.name();
    rep.degree = d;
    rep.buds = enumerate_buds(ring, d);
    rep.group = enumerate_coordchanges(ring, d);
    const std::size_t nb = rep.buds.size();
    const std::size_t ng = rep.group.size();
    if (static_cast<double>(ng) * static_cast<double>(ng) * static_cast<double>(nb) > 5e7) {
        fail(ErrorCode::SearchSpaceTooLarge, "groupoid check over " + ring.name() + " is too large");
    }
    std::map<SmallPoly, std::size_t> bud_index;
    std::map<SmallPoly, std::size_t> group_index;
    for (std::size_t i = 0; i < nb; ++i) bud_index[rep.buds[i]] = i;
    for (std::size_t i = 0; i < ng; ++i) group_index[rep.group[i]] = i;
    constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
    auto find = [](const auto& m, const SmallPoly& p) {
        const auto it = m.find(p);
        return it == m.end() ? kMissing : it->second;
    };

    const SmallPoly id = SmallPoly::variable(&ring, 1, d, 0);
    const std::size_t id_idx = find(group_index, id);
    rep.checks.identity_in_group = id_idx != kMissing;

    // Composition and inverse tables.
    std::vector<std::size_t> comp(ng * ng);
    for (std::size_t a = 0; a < ng; ++a) {
        for (std::size_t b = 0; b < ng; ++b) comp[a * ng + b] = find(group_index, compose(rep.group[a], rep.group[b]));
    }
    rep.checks.inverses_in_group = true;
    std::vector<std::size_t> inv(ng);
    for (std::size_t a = 0; a < ng; ++a) {
        inv[a] = find(group_index, comp_inverse1(rep.group[a]));
        rep.checks.inverses_in_group = rep.checks.inverses_in_group && inv[a] != kMissing && comp[a * ng + inv[a]] == id_idx &&
                                       comp[inv[a] * ng + a] == id_idx;
    }

    // Action table act[t][F], checked to land among the buds.
    std::vector<std::size_t> table(ng * nb);
    rep.checks.action_closed = true;
    for (std::size_t t = 0; t < ng; ++t) {
        for (std::size_t f = 0; f < nb; ++f) {
            table[t * nb + f] = find(bud_index, act(rep.group[t], rep.buds[f]));
            rep.checks.action_closed = rep.checks.action_closed && table[t * nb + f] != kMissing;
        }
    }
    if (!rep.checks.action_closed || !rep.checks.identity_in_group) return rep;

    rep.checks.action_identity = true;
    for (std::size_t f = 0; f < nb; ++f) rep.checks.action_identity = rep.checks.action_identity && table[id_idx * nb + f] == f;

    rep.checks.right_action_law = true;
    for (std::size_t t = 0; t < ng && rep.checks.right_action_law; ++t) {
        for (std::size_t s = 0; s < ng; ++s) {
            const std::size_t ts = comp[t * ng + s];
            for (std::size_t f = 0; f < nb; ++f) {
                if (ts == kMissing || table[s * nb + table[t * nb + f]] != table[ts * nb + f]) rep.checks.right_action_law = false;
            }
        }
    }

    std::vector<std::size_t> orbit_of(nb, kMissing);
    for (std::size_t f = 0; f < nb; ++f) {
        if (orbit_of[f] != kMissing) continue;
        OrbitInfo o;
        o.representative = f;
        for (std::size_t t = 0; t < ng; ++t) {
            const std::size_t g = table[t * nb + f];
            if (orbit_of[g] == kMissing) {
                orbit_of[g] = rep.orbits.size();
                o.members.push_back(g);
            }
            if (g == f) o.stabilizer.push_back(t);
        }
        std::sort(o.members.begin(), o.members.end());
        rep.orbits.push_back(std::move(o));
    }

    rep.checks.orbit_stabilizer = true;
    rep.checks.stabilizers_are_subgroups = true;
    for (const auto& o : rep.orbits) {
        rep.checks.orbit_stabilizer = rep.checks.orbit_stabilizer && o.members.size() * o.stabilizer.size() == ng;
        std::vector<bool> in(ng, false);
        for (std::size_t s : o.stabilizer) in[s] = true;
        bool sub = in[id_idx];
        for (std::size_t a : o.stabilizer) {
            sub = sub && in[inv[a]];
            for (std::size_t b : o.stabilizer) sub = sub && in[comp[a * ng + b]];
        }
        rep.checks.stabilizers_are_subgroups = rep.checks.stabilizers_are_subgroups && sub;
    }

    // Morphism sets mor(G, G') = {h : G^h = G'}.
    rep.checks.morphism_sets_constant = true;
    rep.checks.cross_orbit_empty = true;
    std::vector<std::size_t> mor_count(nb * nb, 0);
    for (std::size_t g = 0; g < nb; ++g) {
        for (std::size_t h = 0; h < ng; ++h) ++mor_count[g * nb + table[h * nb + g]];
    }
    for (std::size_t g = 0; g < nb; ++g) {
        for (std::size_t g2 = 0; g2 < nb; ++g2) {
            const std::size_t n = mor_count[g * nb + g2];
            if (orbit_of[g] == orbit_of[g2]) {
                rep.checks.morphism_sets_constant = rep.checks.morphism_sets_constant && n == rep.orbits[orbit_of[g]].stabilizer.size();
            } else {
                rep.checks.cross_orbit_empty = rep.checks.cross_orbit_empty && n == 0;
            }
        }
    }
    // h in mor(G,G'), h' in mor(G',G'') gives h o h' in mor(G,G'').
    rep.checks.composition_closed = true;
    for (std::size_t g = 0; g < nb; ++g) {
        for (std::size_t h = 0; h < ng; ++h) {
            const std::size_t g2 = table[h * nb + g];
            for (std::size_t h2 = 0; h2 < ng; ++h2) {
                const std::size_t g3 = table[h2 * nb + g2];
                if (table[comp[h * ng + h2] * nb + g] != g3) rep.checks.composition_closed = false;
            }
        }
    }
    return rep;
}

}  // namespace fglab::moduli
