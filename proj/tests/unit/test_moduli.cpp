#include "doctest.h"

#include <algorithm>
#include <map>

#include "fglab/error.hpp"
#include "fglab/fgl/lubin_tate.hpp"
#include "fglab/moduli/cross_check.hpp"
#include "fglab/moduli/groupoid.hpp"

using namespace fglab;
using namespace fglab::moduli;
using local::FiniteRing;
using series::TruncSeries;

namespace {

using Coeffs = std::map<std::pair<int, int>, std::uint32_t>;

/// sum c_ij u^i w^j as a series in X, Y, Z, with u, w two of the variables.
TruncSeries<FiniteRingHandle> in_xyz(const FiniteRingHandle& R, const Coeffs& c, int u, int w, int cap)
{
    static const std::vector<std::string> vars{"X", "Y", "Z"};
    TruncSeries<FiniteRingHandle> s(R, vars, cap);
    for (const auto& [e, v] : c) {
        series::Exponent x{};
        x[static_cast<std::size_t>(u)] += e.first;
        x[static_cast<std::size_t>(w)] += e.second;
        s.set(x, R.ring->element(v));
    }
    return s;
}

/// Buds by brute force over every unital symmetric candidate, checked with
/// the series module.
std::vector<SmallPoly> brute_force_buds(const local::FiniteRingPtr& ring, int d)
{
    const FiniteRingHandle R{ring};
    std::vector<std::pair<int, int>> slots;
    for (int k = 2; k <= d; ++k) {
        for (int i = k - 1; i >= 1 && i >= k - i; --i) slots.emplace_back(i, k - i);
    }
    std::vector<SmallPoly> out;
    std::vector<std::uint32_t> vals(slots.size(), 0);
    while (true) {
        Coeffs c{{{1, 0}, 1}, {{0, 1}, 1}};
        for (std::size_t s = 0; s < slots.size(); ++s) {
            c[slots[s]] = vals[s];
            c[{slots[s].second, slots[s].first}] = vals[s];
        }
        const auto Fxy = in_xyz(R, c, 0, 1, d);
        const auto Fyz = in_xyz(R, c, 1, 2, d);
        const auto X = TruncSeries<FiniteRingHandle>::variable(R, Fxy.vars(), 0, d);
        const auto Z = TruncSeries<FiniteRingHandle>::variable(R, Fxy.vars(), 2, d);
        // F as a series in X, Y (the third variable unused).
        const auto F3 = in_xyz(R, c, 0, 1, d);
        const auto Y = TruncSeries<FiniteRingHandle>::variable(R, Fxy.vars(), 1, d);
        const auto lhs = series::substitute(F3, {Fxy, Z, X.zero_like()});
        const auto rhs = series::substitute(F3, {X, Fyz, X.zero_like()});
        (void)Y;
        if (lhs.equals(rhs)) {
            SmallPoly p(ring.get(), 2, d);
            for (const auto& [e, v] : c) p.set(e.first, e.second, 0, v);
            out.push_back(p);
        }
        std::size_t s = 0;
        while (s < vals.size() && ++vals[s] == ring->size()) vals[s++] = 0;
        if (s == vals.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("bud counts")
{
    CHECK(enumerate_buds(*FiniteRing::parse("F5"), 2).size() == 5);
    CHECK(enumerate_buds(*FiniteRing::parse("Z/4"), 2).size() == 4);
    for (const auto& [name, d] : std::vector<std::pair<std::string, int>>{{"F2", 3}, {"F3", 3}, {"Z/4", 3}, {"F4", 3}, {"F2", 4}}) {
        const auto ring = FiniteRing::parse(name);
        CAPTURE(name);
        CAPTURE(d);
        const auto fast = enumerate_buds(*ring, d);
        CHECK(fast == brute_force_buds(ring, d));
        for (const auto& F : fast) CHECK(bud_axioms(F));
    }
    CHECK(enumerate_coordchanges(*FiniteRing::parse("F5"), 2).size() == 20);
    CHECK(enumerate_coordchanges(*FiniteRing::parse("Z/4"), 3).size() == 2 * 4 * 4);
    CHECK_THROWS_AS(check_bud_setting(*FiniteRing::parse("F5"), 5), Error);
    CHECK_THROWS_AS(check_bud_setting(*FiniteRing::parse("Z/128"), 2), Error);
    CHECK_NOTHROW(check_bud_setting(*FiniteRing::parse("F25"), 2));
}

TEST_CASE("action on degree-2 buds")
{
    const auto ring = FiniteRing::parse("F5");
    const FiniteRing& k = *ring;
    for (std::uint32_t a = 1; a < 5; ++a) {
        for (std::uint32_t b = 0; b < 5; ++b) {
            for (std::uint32_t c = 0; c < 5; ++c) {
                SmallPoly F(ring.get(), 2, 2);
                F.set(1, 0, 0, 1);
                F.set(0, 1, 0, 1);
                F.set(1, 1, 0, c);
                SmallPoly t(ring.get(), 1, 2);
                t.set(1, 0, 0, a);
                t.set(2, 0, 0, b);
                // c' = a c - 2 b / a.
                const std::uint32_t want = k.add(k.mul(a, c), k.neg(k.mul(k.mul(2, b), k.inverse(a))));
                CHECK(act(t, F).get(1, 1) == want);
            }
        }
    }
}

TEST_CASE("action agrees with series conjugation")
{
    for (const std::string name : {"F5", "Z/9", "F4"}) {
        const auto ring = FiniteRing::parse(name);
        const FiniteRingHandle R{ring};
        const auto buds = enumerate_buds(*ring, 3);
        const auto group = enumerate_coordchanges(*ring, 3);
        for (std::size_t i = 0; i < buds.size(); i += 3) {
            for (std::size_t j = 0; j < group.size(); j += 7) {
                const auto Fs = to_series(buds[i], R, fgl::xy_vars());
                const auto ts = to_series(group[j], R, fgl::t_var());
                CHECK(to_small(fgl::conjugate(Fs, ts), 3) == act(group[j], buds[i]));
            }
        }
    }
    // Additive law over F5 conjugated by T + T^2 picks up -2XY = 3XY.
    const auto F5 = FiniteRing::parse("F5");
    SmallPoly add(F5.get(), 2, 3);
    add.set(1, 0, 0, 1);
    add.set(0, 1, 0, 1);
    SmallPoly t(F5.get(), 1, 3);
    t.set(1, 0, 0, 1);
    t.set(2, 0, 0, 1);
    CHECK(act(t, add).get(1, 1) == 3);
}

TEST_CASE("right action law")
{
    for (const std::string name : {"F2", "F3"}) {
        const auto ring = FiniteRing::parse(name);
        const auto buds = enumerate_buds(*ring, 2);
        const auto group = enumerate_coordchanges(*ring, 2);
        for (const auto& F : buds) {
            for (const auto& t : group) {
                for (const auto& s : group) CHECK(act(s, act(t, F)) == act(compose(t, s), F));
            }
        }
    }
}

TEST_CASE("groupoid reports")
{
    const auto r5 = groupoid_report(*FiniteRing::parse("F5"), 2);
    CHECK(r5.checks.all());
    REQUIRE(r5.orbits.size() == 1);
    CHECK(r5.orbits[0].members.size() == 5);
    CHECK(r5.orbits[0].stabilizer.size() == 4);

    const auto r2 = groupoid_report(*FiniteRing::parse("F2"), 3);
    CHECK(r2.checks.all());
    CHECK(r2.buds.size() == 4);
    CHECK(r2.group.size() == 4);
    std::size_t total = 0;
    for (const auto& o : r2.orbits) {
        CHECK(o.members.size() * o.stabilizer.size() == r2.group.size());
        total += o.members.size();
    }
    CHECK(total == r2.buds.size());

    const auto z4 = groupoid_report(*FiniteRing::parse("Z/4"), 3);
    CHECK(z4.checks.all());

    const auto os = orbit_and_stabilizer(r5.buds[0]);
    CHECK(os.orbit.size() * os.stabilizer.size() == 20);
}

TEST_CASE("stabilizers against endomorphisms")
{
    const auto L = local::make_local_field(local::make_unramified(5, 1, 20), {{-5}}, 18);
    const auto law = fgl::from_log(fgl::lubin_tate_log(L, 6), 6, true);
    for (int d = 2; d <= 4; ++d) {
        const auto c = stabilizer_vs_endomorphisms(law, d, integer_units(L, 2));
        CAPTURE(d);
        CHECK(c.passed());
        CHECK(c.stabilizer.size() == 4);
    }
    CHECK(integer_units(L, 1).size() == 4);
    CHECK(integer_units(L, 2).size() == 20);
    const auto no_log = fgl::lubin_tate_from_frobenius(L, 5);
    CHECK_THROWS_AS(stabilizer_vs_endomorphisms(no_log, 2, integer_units(L, 1)), Error);
}
