#include "doctest.h"

#include <random>

#include "fglab/error.hpp"
#include "fglab/local/local_field.hpp"
#include "fglab/series/ops.hpp"

using namespace fglab;
using series::TruncSeries;
using ZS = TruncSeries<IntegerRing>;

namespace {

const std::vector<std::string> T{"T"};
const std::vector<std::string> XY{"X", "Y"};

ZS poly(std::initializer_list<std::pair<int, long>> terms, int cap)
{
    ZS s(IntegerRing{}, T, cap);
    for (auto [d, c] : terms) s.set({d, 0, 0}, Int(c));
    return s;
}

ZS random_z(std::mt19937_64& g, const std::vector<std::string>& vars, int cap, bool zero_constant)
{
    ZS s(IntegerRing{}, vars, cap);
    for (std::size_t i = zero_constant ? 1 : 0; i < s.size(); ++i) s[i] = Int(static_cast<long>(g() % 11) - 5);
    return s;
}

}  // namespace

TEST_CASE("arithmetic and truncation")
{
    CHECK((poly({{1, 1}}, 4) + poly({{2, 1}}, 4)).equals(poly({{1, 1}, {2, 1}}, 4)));
    const auto X = ZS::variable(IntegerRing{}, XY, 0, 2);
    const auto Y = ZS::variable(IntegerRing{}, XY, 1, 2);
    ZS want(IntegerRing{}, XY, 2);
    want.set({2, 0, 0}, Int(1));
    want.set({0, 2, 0}, Int(-1));
    CHECK(((X + Y) * (X - Y)).equals(want));
    const auto s = poly({{1, 1}, {2, 1}}, 2);
    CHECK((s * s).equals(poly({{2, 1}}, 2)));
    CHECK_THROWS_AS(X + poly({{1, 1}}, 2), Error);
    // Result cap is the smaller one.
    CHECK((poly({{1, 1}}, 3) * poly({{1, 1}}, 5)).cap() == 3);
}

TEST_CASE("serial and parallel kernels agree")
{
    std::mt19937_64 g(5);
    for (int n = 0; n < 20; ++n) {
        const std::vector<std::string> vars = n % 3 == 0 ? T : n % 3 == 1 ? XY : std::vector<std::string>{"x", "y", "z"};
        const int cap = n % 3 == 0 ? 60 : n % 3 == 1 ? 20 : 9;
        const auto a = random_z(g, vars, cap, false);
        const auto b = random_z(g, vars, cap, false);
        CHECK(series::mul_serial(a, b).equals(series::mul_parallel(a, b)));
    }
}

TEST_CASE("substitution")
{
    const auto s = poly({{1, 1}, {3, 1}}, 4);
    CHECK(series::substitute_univariate(poly({{1, 1}}, 4), s).equals(s));
    CHECK(series::substitute_univariate(poly({{2, 1}}, 4), s).equals(poly({{2, 1}, {4, 2}}, 4)));
    CHECK_THROWS_AS(series::substitute_univariate(s, poly({{0, 1}, {1, 1}}, 4)), Error);

    std::mt19937_64 g(9);
    for (int n = 0; n < 5; ++n) {
        const auto a = random_z(g, T, 8, true);
        const auto b = random_z(g, T, 8, true);
        auto cubic = [&] {
            ZS c(IntegerRing{}, T, 8);
            for (int d = 1; d <= 3; ++d) c.set({d, 0, 0}, Int(static_cast<long>(g() % 7) - 3));
            return c;
        };
        const auto u = cubic();
        const auto v = cubic();
        using series::substitute_univariate;
        CHECK(substitute_univariate(a, substitute_univariate(u, v)).equals(substitute_univariate(substitute_univariate(a, u), v)));
        CHECK(substitute_univariate(a * b, u).equals(substitute_univariate(a, u) * substitute_univariate(b, u)));
    }

    // Two variables: F(X,Y) = X + Y + XY at X <- T, Y <- T gives 2T + T^2.
    ZS F(IntegerRing{}, XY, 4);
    F.set({1, 0, 0}, Int(1));
    F.set({0, 1, 0}, Int(1));
    F.set({1, 1, 0}, Int(1));
    const auto t = poly({{1, 1}}, 4);
    CHECK(series::substitute(F, {t, t}).equals(poly({{1, 2}, {2, 1}}, 4)));
}

TEST_CASE("compositional inverse")
{
    const auto inv = series::comp_inverse(poly({{1, 1}, {2, 1}}, 5));
    // Oracle: signed Catalan numbers binom(2n, n) / (n + 1).
    for (int d = 1; d <= 5; ++d) {
        const unsigned long n = static_cast<unsigned long>(d - 1);
        Int catalan = binomial(2 * n, n) / Int(n + 1);
        if (n % 2 == 1) catalan = -catalan;
        CHECK(inv.coeff(d) == catalan);
    }
    CHECK(series::comp_inverse(poly({{1, 1}}, 5)).equals(poly({{1, 1}}, 5)));
    CHECK_THROWS_AS(series::comp_inverse(poly({{1, 2}, {2, 1}}, 5)), Error);

    const auto L = local::make_local_field(local::make_unramified(5, 1, 20), {{-5}, {0}}, 30);
    const LocalRing R{L};
    std::mt19937_64 g(2);
    for (int n = 0; n < 5; ++n) {
        TruncSeries<LocalRing> t(R, T, 10);
        t.set({1, 0, 0}, L->from_int(Int(static_cast<long>(g() % 4) + 1)));
        for (int d = 2; d <= 10; ++d) t.set({d, 0, 0}, L->from_int(Int(static_cast<long>(g() % 1000))));
        const auto ti = series::comp_inverse(t);
        const auto id = TruncSeries<LocalRing>::variable(R, T, 0, 10);
        CHECK(series::substitute_univariate(t, ti).equals(id));
        CHECK(series::substitute_univariate(ti, t).equals(id));
    }
}

TEST_CASE("recentering")
{
    const auto x2 = poly({{2, 1}}, 4);
    const auto r = series::recenter(x2, Int(3));
    CHECK(r.series.equals(poly({{1, 6}, {2, 1}}, 4)));
    CHECK(r.dropped_constant == 9);
    const auto r3 = series::recenter(poly({{3, 1}}, 4), Int(1));
    CHECK(r3.series.equals(poly({{1, 3}, {2, 3}, {3, 1}}, 4)));
    CHECK(r3.dropped_constant == 1);

    std::mt19937_64 g(4);
    for (int n = 0; n < 10; ++n) {
        const auto a = random_z(g, T, 10, true);
        CHECK(series::recenter(a, Int(0)).series.equals(a));
        const Int w = static_cast<long>(g() % 9) - 4;
        auto once = series::recenter(a, w);
        auto full = once.series;
        full[0] = once.dropped_constant;
        auto back = series::recenter(full, Int(-w));
        auto again = back.series;
        again[0] = back.dropped_constant;
        CHECK(again.equals(a));
    }
}

TEST_CASE("min_coeff_ord")
{
    const auto L = local::make_local_field(local::make_unramified(5, 1, 12), {{-5}}, 10);
    const LocalRing R{L};
    TruncSeries<LocalRing> a(R, T, 6);
    a.set({1, 0, 0}, L->one());
    a.set({2, 0, 0}, L->from_int(5));
    CHECK(*series::min_coeff_ord(a) == 0);
    TruncSeries<LocalRing> b(R, T, 6);
    b.set({5, 0, 0}, L->from_rational(Rational(1, 5)));
    CHECK(*series::min_coeff_ord(b) == -1);
    CHECK_FALSE(series::min_coeff_ord(TruncSeries<LocalRing>(R, T, 3)).has_value());
}
