#include "doctest.h"

#include <random>

#include "fglab/error.hpp"
#include "fglab/local/finite_ring.hpp"
#include "fglab/local/local_field.hpp"

using namespace fglab;
using namespace fglab::local;

namespace {

LocalFieldPtr q5(int M) { return make_local_field(make_unramified(5, 1, M + 1), {{-5}}, M); }
LocalFieldPtr ram2(int M) { return make_local_field(make_unramified(5, 1, M), {{-5}, {0}}, M); }

LocalNum random_unit(std::mt19937_64& g, const LocalFieldPtr& L, int prec)
{
    std::vector<Int> c;
    const Int bound = L->p_power((prec + L->e() - 1) / L->e());
    for (int i = 0; i < L->width(); ++i) c.push_back(Int(std::to_string(g() % 1000000007ULL)) % bound);
    if (c[0] % Int(L->p()) == 0) c[0] += 1;
    return L->from_integral_coords(std::move(c), prec);
}

}  // namespace

TEST_CASE("unramified rings")
{
    CHECK_THROWS_AS(make_unramified(4, 1, 3), Error);
    const auto z5 = make_unramified(5, 1, 8);
    CHECK(z5->modulus() == ipow(5, 8));
    CHECK(z5->minpoly().size() == 1);

    // Oracle: first (c1, c0) in lexicographic order with no root mod 5.
    std::vector<long> expect;
    for (long c1 = 0; c1 < 5 && expect.empty(); ++c1) {
        for (long c0 = 0; c0 < 5 && expect.empty(); ++c0) {
            bool root = false;
            for (long x = 0; x < 5; ++x) root = root || (x * x + c1 * x + c0) % 5 == 0;
            if (!root) expect = {c0, c1};
        }
    }
    const auto w = make_unramified(5, 2, 6);
    CHECK(w->minpoly() == expect);
}

TEST_CASE("teichmuller and frobenius")
{
    const auto z = make_unramified(5, 1, 4);
    CHECK(z->teichmuller({1}) == z->one());
    CHECK(z->teichmuller({4}) == -z->one());
    Int x = 2;
    for (int i = 0; i < 10; ++i) mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 5, Int(625).get_mpz_t());
    CHECK(z->teichmuller({2}).coords()[0] == x);
    CHECK(Int(x * x * x * x % 625) == 1);

    const auto w = make_unramified(5, 2, 6);
    std::mt19937_64 g(7);
    for (int i = 0; i < 10; ++i) {
        const ResidueVec r{static_cast<long>(g() % 5), static_cast<long>(g() % 5)};
        const auto t = w->teichmuller(r);
        CHECK(t.frobenius() == w->teichmuller(w->residue_pow(r, 5)));
        CHECK(t.frobenius().frobenius() == t);
        const auto a = w->from_coords({Int(static_cast<long>(g() % 15625)), Int(static_cast<long>(g() % 15625))});
        const auto b = w->from_coords({Int(static_cast<long>(g() % 15625)), Int(static_cast<long>(g() % 15625))});
        CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
        CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
    }
    const auto t2 = w->teichmuller({2, 1});
    const auto t3 = w->teichmuller({3, 4});
    CHECK(t2 * t3 == w->teichmuller(w->residue_mul({2, 1}, {3, 4})));
}

TEST_CASE("local fields")
{
    CHECK_THROWS_AS(make_local_field(make_unramified(5, 1, 10), {{-25}, {0}}, 10), Error);
    CHECK_THROWS_AS(make_local_field(make_unramified(5, 1, 10), {{-5}, {1}}, 10), Error);
    const auto L = ram2(20);
    CHECK(L->e() == 2);
    CHECK(L->degree() == 2);
    const auto pi = L->uniformizer();
    CHECK(pi.ord() == Rational(1, 2));
    CHECK(L->from_int(5).ord() == 1);
    CHECK((pi * pi).equals(L->from_int(5)));

    const auto sc = L->structure_constants();
    CHECK(sc[0][1][1][0] == 1);
    CHECK(sc[1][1][0][0] == 5);
    CHECK(sc[1][1][1][0] == 0);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int l = 0; l < 2; ++l) CHECK(sc[i][j][l] == sc[j][i][l]);
        }
    }

    const auto Q = q5(10);
    CHECK(Q->uniformizer().equals(Q->from_int(5)));
}

TEST_CASE("arithmetic to tracked precision")
{
    std::mt19937_64 g(11);
    for (const auto& L : {q5(30), ram2(30)}) {
        for (int i = 0; i < 30; ++i) {
            const auto x = random_unit(g, L, 30).times_pi_pow(static_cast<int>(g() % 4));
            const auto y = random_unit(g, L, 30).times_pi_pow(static_cast<int>(g() % 4));
            const auto z = random_unit(g, L, 30);
            CHECK(((x + y) + z).equals(x + (y + z)));
            CHECK((x * (y + z)).equals(x * y + x * z));
            CHECK((z * z.inverse()).equals(L->one()));
            CHECK((x * y).ord() == x.ord() + y.ord());
            if (x.valuation() != y.valuation()) CHECK((x + y).ord() == std::min(x.ord(), y.ord()));
            CHECK((x / L->uniformizer()).abs_precision() <= x.abs_precision());
        }
        CHECK_THROWS_AS(L->zero_to(5).inverse(), Error);
    }
}

TEST_CASE("residue map")
{
    const auto L = make_local_field(make_unramified(5, 2, 12), {{-5, 0}}, 10);
    const auto k = FiniteRing::residue_field(L->base());
    std::mt19937_64 g(3);
    for (int i = 0; i < 20; ++i) {
        const auto a = L->from_integral_coords({Int(static_cast<long>(g() % 100000)), Int(static_cast<long>(g() % 100000))}, 10);
        const auto b = L->from_integral_coords({Int(static_cast<long>(g() % 100000)), Int(static_cast<long>(g() % 100000))}, 10);
        const auto ra = k->from_residue(a.residue());
        const auto rb = k->from_residue(b.residue());
        CHECK(k->from_residue((a * b).residue()) == ra * rb);
        CHECK(k->from_residue((a + b).residue()) == ra + rb);
    }
    CHECK(k->from_residue(L->uniformizer().residue()) == k->zero());
    CHECK(k->size() == 25);
}
