#include "doctest.h"

#include <algorithm>
#include <random>

#include "fglab/error.hpp"
#include "fglab/koszul/complex.hpp"

using namespace fglab;
using namespace fglab::koszul;

namespace {

FinAlgebra sqrt5() { return FinAlgebra::univariate("pi", {Int(5), Int(0)}); }

std::vector<Int> flat(const HomologyGroup& h)
{
    std::vector<Int> v{Int(static_cast<long>(h.free_rank))};
    v.insert(v.end(), h.torsion.begin(), h.torsion.end());
    return v;
}

Int det(std::vector<std::vector<Int>> m)
{
    // Bareiss elimination.
    const std::size_t n = m.size();
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/// gcd of all k x k minors.
Int minor_gcd(const IntMatrix& A, std::size_t k)
{
    Int g = 0;
    const std::size_t R = A.rows();
    const std::size_t C = A.cols();
    for (std::uint32_t rm = 0; rm < (1U << R); ++rm) {
        if (static_cast<std::size_t>(__builtin_popcount(rm)) != k) continue;
        for (std::uint32_t cm = 0; cm < (1U << C); ++cm) {
            if (static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
            std::vector<std::vector<Int>> sub;
            for (std::size_t r = 0; r < R; ++r) {
                if (!(rm >> r & 1U)) continue;
                sub.emplace_back();
                for (std::size_t c = 0; c < C; ++c) {
                    if (cm >> c & 1U) sub.back().push_back(A(r, c));
                }
            }
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Int(det(sub)).get_mpz_t());
        }
    }
    return g;
}

Vec random_elem(const FinAlgebra& A, std::mt19937_64& g, int spread)
{
    Vec v(A.rank());
    for (auto& x : v) x = static_cast<long>(g() % static_cast<unsigned>(2 * spread + 1)) - spread;
    return v;
}

}  // namespace

TEST_CASE("Smith normal form against determinantal divisors")
{
    std::mt19937_64 g(7);
    for (int n = 0; n < 40; ++n) {
        const std::size_t R = 1 + g() % 4;
        const std::size_t C = 1 + g() % 4;
        IntMatrix A(R, C);
        for (std::size_t r = 0; r < R; ++r) {
            for (std::size_t c = 0; c < C; ++c) A(r, c) = static_cast<long>(g() % 13) - 6;
        }
        const SmithForm s = smith_normal_form(A);
        Int prev = 1;
        for (std::size_t k = 1; k <= std::min(R, C); ++k) {
            const Int dk = minor_gcd(A, k);
            if (dk == 0) {
                CHECK(s.rank() == k - 1);
                break;
            }
            REQUIRE(s.rank() >= k);
            CHECK(s.diagonal[k - 1] == dk / prev);
            prev = dk;
        }
        IntMatrix D = s.U * A * s.V;
        for (std::size_t r = 0; r < R; ++r) {
            for (std::size_t c = 0; c < C; ++c) CHECK(D(r, c) == (r == c && r < s.rank() ? s.diagonal[r] : Int(0)));
        }
        CHECK((s.V * s.V_inverse) == IntMatrix::identity(C));
        const IntMatrix K = kernel_basis(A);
        CHECK(K.cols() == C - s.rank());
        if (K.cols() > 0) CHECK((A * K).is_zero());
    }
}

TEST_CASE("algebras")
{
    const auto A = FinAlgebra::monomial({"x"}, {2});
    CHECK(A.rank() == 2);
    CHECK(A.is_zero(A.mul(A.basis(1), A.basis(1))));
    const auto P = sqrt5();
    CHECK(P.mul(P.basis(1), P.basis(1)) == Vec{5, 0});
    CHECK(FinAlgebra::monomial({"x", "y"}, {3, 3}).rank() == 9);
    CHECK(FinAlgebra::monomial({"v1", "v2"}, {9, 9}, 2, Int(25)).rank() == 6);

    std::vector<std::vector<Vec>> t{{Vec{0}}};
    CHECK_THROWS_AS(FinAlgebra(0, {"e"}, t, Vec{1}), Error);
    try {
        FinAlgebra(0, {"e"}, t, Vec{1});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnitMissing);
    }
    // e0 e1 = e1 but e1 e0 = 0.
    std::vector<std::vector<Vec>> nc{{Vec{1, 0}, Vec{0, 1}}, {Vec{0, 0}, Vec{0, 0}}};
    try {
        FinAlgebra(0, {"1", "u"}, nc, Vec{1, 0});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotCommutative);
    }
}

TEST_CASE("wedge signs")
{
    CHECK(wedge(0b01, 0b10).sign == 1);
    CHECK(wedge(0b01, 0b10).set == 0b11);
    CHECK(wedge(0b10, 0b01).sign == -1);
    CHECK(wedge(0b01, 0b01).sign == 0);
    CHECK(wedge(0b101, 0b010).sign == -1);
    CHECK(subsets_of_size(3, 2) == std::vector<Subset>{0b011, 0b101, 0b110});
}

TEST_CASE("differentials follow the sign formula")
{
    std::mt19937_64 g(11);
    const auto A = FinAlgebra::monomial({"x", "y"}, {2, 3});
    const std::size_t r = A.rank();
    for (int n = 0; n < 10; ++n) {
        const int m = 1 + static_cast<int>(g() % 4);
        std::vector<Vec> seq;
        for (int i = 0; i < m; ++i) seq.push_back(random_elem(A, g, 3));
        const KoszulComplex K(A, seq);
        for (int k = 1; k <= m; ++k) {
            const auto& src = K.subsets(k);
            const auto& dst = K.subsets(k - 1);
            IntMatrix want(dst.size() * r, src.size() * r);
            for (std::size_t s = 0; s < src.size(); ++s) {
                int pos = 0;
                for (int i = 0; i < m; ++i) {
                    if (!(src[s] >> i & 1U)) continue;
                    ++pos;
                    const Subset rest = src[s] & ~(Subset{1} << i);
                    const std::size_t t = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), rest) - dst.begin());
                    const Int sign = pos % 2 == 1 ? 1 : -1;
                    for (std::size_t b = 0; b < r; ++b) {
                        const Vec prod = A.mul(seq[static_cast<std::size_t>(i)], A.basis(b));
                        for (std::size_t c = 0; c < r; ++c) want(t * r + c, s * r + b) += sign * prod[c];
                    }
                }
            }
            CHECK(K.differential(k) == want);
            if (k >= 2) CHECK((K.differential(k - 1) * K.differential(k)).is_zero());
        }
    }
    // m = 2: d e_12 = a_1 e_2 - a_2 e_1.
    const auto Z = FinAlgebra::monomial({"x"}, {1});
    const KoszulComplex K2(Z, {Vec{3}, Vec{7}});
    CHECK(K2.apply_d(2, {Int(1)}) == std::vector<Int>{-7, 3});
}

TEST_CASE("Leibniz rule")
{
    std::mt19937_64 g(3);
    const auto A = FinAlgebra::monomial({"x"}, {4});
    const std::size_t r = A.rank();
    for (int n = 0; n < 20; ++n) {
        std::vector<Vec> seq;
        for (int i = 0; i < 3; ++i) seq.push_back(random_elem(A, g, 2));
        const KoszulComplex K(A, seq);
        const int kx = static_cast<int>(g() % 3);
        const int ky = static_cast<int>(g() % static_cast<unsigned>(4 - kx));
        std::vector<Int> x(K.dim(kx));
        std::vector<Int> y(K.dim(ky));
        for (auto& v : x) v = static_cast<long>(g() % 7) - 3;
        for (auto& v : y) v = static_cast<long>(g() % 7) - 3;
        const auto xy = K.multiply(kx, x, ky, y);
        const std::vector<Int> lhs = kx + ky == 0 ? std::vector<Int>{} : K.apply_d(kx + ky, xy);
        std::vector<Int> rhs(kx + ky == 0 ? 0 : K.dim(kx + ky - 1));
        if (kx > 0) {
            const auto t = K.multiply(kx - 1, K.apply_d(kx, x), ky, y);
            for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += t[i];
        }
        if (ky > 0) {
            const auto t = K.multiply(kx, x, ky - 1, K.apply_d(ky, y));
            for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += (kx % 2 ? -1 : 1) * t[i];
        }
        CHECK(lhs == rhs);
        (void)r;
    }
}

TEST_CASE("homology examples")
{
    const auto P = sqrt5();
    const auto h = homology(KoszulComplex(P, {P.basis(1)}));
    CHECK(h[0] == HomologyGroup{0, 0, {Int(5)}});
    CHECK(h[1].is_zero());
    CHECK(is_regular(P, {P.basis(1)}).regular);

    const auto X3 = FinAlgebra::monomial({"x"}, {3});
    const auto hx = homology(KoszulComplex(X3, {X3.basis(1)}));
    CHECK(hx[0] == HomologyGroup{0, 1, {}});
    CHECK(hx[1] == HomologyGroup{1, 1, {}});

    const auto XY = FinAlgebra::monomial({"x", "y"}, {3, 3});
    const auto v = is_regular(XY, {XY.basis(1), XY.basis(2)});
    CHECK_FALSE(v.regular);
    CHECK(v.witness_degree == 1);
    CHECK(v.agree());
    CHECK(v.direct_failure_index == 1);

    const auto R1 = FinAlgebra::monomial({"x"}, {1});
    const auto hz = homology(KoszulComplex(R1, {R1.zero(), R1.zero()}));
    CHECK(hz[0].free_rank == 1);
    CHECK(hz[1].free_rank == 2);
    CHECK(hz[2].free_rank == 1);
    CHECK(is_regular(R1, {}).regular);

    // Over Z/25: Z/25[x]/(x^2) with seq (x); H_0 = Z/25, H_1 = ann(x) = (x).
    const auto M = FinAlgebra::monomial({"x"}, {2}, -1, Int(25));
    const auto hm = homology(KoszulComplex(M, {M.basis(1)}));
    CHECK(hm[0] == HomologyGroup{0, 0, {Int(25)}});
    CHECK(hm[1] == HomologyGroup{1, 0, {Int(25)}});
    CHECK_THROWS_AS(is_regular(M, {M.basis(1)}), Error);
    const auto hp = homology(KoszulComplex(M, {M.scalar(5)}));
    CHECK(hp[0] == HomologyGroup{0, 0, {Int(5), Int(5)}});
    CHECK(hp[1] == HomologyGroup{1, 0, {Int(5), Int(5)}});
}

TEST_CASE("homology invariants")
{
    std::mt19937_64 g(5);
    const auto A = FinAlgebra::monomial({"x", "y"}, {3, 2});
    for (int n = 0; n < 8; ++n) {
        std::vector<Vec> seq;
        for (int i = 0; i < 3; ++i) seq.push_back(random_elem(A, g, 2));
        const KoszulComplex K(A, seq);
        const auto h = homology(K);

        // Euler characteristic.
        long chi = 0;
        long chain = 0;
        for (int k = 0; k <= 3; ++k) {
            chi += (k % 2 ? -1 : 1) * static_cast<long>(h[static_cast<std::size_t>(k)].free_rank);
            chain += (k % 2 ? -1 : 1) * static_cast<long>(K.dim(k));
        }
        CHECK(chi == chain);

        // H_0 against the quotient.
        const auto q = quotient_shape(A, seq);
        CHECK(flat(h[0]) == flat(q));

        // Permutation.
        std::vector<Vec> perm{seq[2], seq[0], seq[1]};
        const auto hp = homology(KoszulComplex(A, perm));
        for (std::size_t k = 0; k < h.size(); ++k) CHECK(flat(h[k]) == flat(hp[k]));

        // Scaling by the unit 1 - x.
        std::vector<Vec> scaled = seq;
        Vec u = A.scalar(1);
        u[A.rank() > 1 ? 1 : 0] -= 1;
        scaled[1] = A.mul(u, seq[1]);
        const auto hs = homology(KoszulComplex(A, scaled));
        for (std::size_t k = 0; k < h.size(); ++k) CHECK(flat(h[k]) == flat(hs[k]));

        // Adjoining a unit kills everything.
        std::vector<Vec> with_one = seq;
        with_one.push_back(A.scalar(1));
        for (const auto& hk : homology(KoszulComplex(A, with_one))) CHECK(hk.is_zero());

        const auto v = is_regular(A, seq);
        CHECK(v.agree());
    }
}

TEST_CASE("collapse reports")
{
    const auto P = sqrt5();
    const auto reg = collapse_check(P, {P.basis(1)});
    CHECK(reg.regular_case);
    CHECK(reg.holds());

    const auto zero = collapse_check(P, {P.zero(), P.zero()});
    CHECK(zero.zero_case);
    CHECK(zero.zero_prediction);
    CHECK(zero.homology[1].free_rank == 4);

    // Mixed (0, pi): Ksz(pi) has H = Z/5 in degree 0; tensoring with the
    // exterior algebra on one zero generator doubles it.
    const auto mixed = collapse_check(P, {P.zero(), P.basis(1)});
    CHECK(mixed.mixed_case);
    CHECK(mixed.kunneth_prediction);
    CHECK(mixed.homology[0] == HomologyGroup{0, 0, {Int(5)}});
    CHECK(mixed.homology[1] == HomologyGroup{1, 0, {Int(5)}});
    CHECK(mixed.homology[2].is_zero());

    const auto s = kl_surrogate(FinAlgebra::monomial({"x"}, {1}), Vec{5}, 2);
    CHECK(s.zero_variant_exterior);
    CHECK(s.pi_variant[0] == HomologyGroup{0, 0, {Int(5)}});
    CHECK(s.pi_variant[1] == HomologyGroup{1, 0, {Int(5)}});
    CHECK(s.pi_variant[2].is_zero());
}
