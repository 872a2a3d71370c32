#include "fglab/koszul/complex.hpp"

#include <algorithm>
#include <bit>

#include "fglab/error.hpp"

namespace fglab::koszul {

namespace {

constexpr std::size_t kMaxChainRank = 4096;

void reduce_mod(Int& x, const Int& m)
{
    if (m != 0) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
}

std::size_t choose(int n, int k)
{
    return static_cast<std::size_t>(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)).get_ui());
}

}  // namespace

std::vector<Subset> subsets_of_size(int m, int k)
{
    std::vector<Subset> out;
    for (Subset s = 0; s < (Subset{1} << m); ++s) {
        if (std::popcount(s) == k) out.push_back(s);
    }
    return out;
}

SignedSubset wedge(Subset I, Subset K)
{
    if ((I & K) != 0) return {0, 0};
    // Inversions: pairs i in I, k in K with i > k.
    int inversions = 0;
    for (Subset rest = K; rest != 0; rest &= rest - 1) {
        const Subset low = rest & (~rest + 1);
        inversions += std::popcount(I & ~((low << 1) - 1));
    }
    return {inversions % 2 == 0 ? 1 : -1, I | K};
}

KoszulComplex::KoszulComplex(FinAlgebra A, std::vector<Vec> seq) : A_(std::move(A)), seq_(std::move(seq))
{
    const int m = length();
    if (m > 12) fail(ErrorCode::SizeLimit, "sequences longer than 12 are not supported");
    for (auto& a : seq_) {
        if (a.size() != A_.rank()) fail(ErrorCode::InvalidArgument, "sequence element has the wrong length");
        a = A_.reduce(std::move(a));
    }
    for (int k = 0; k <= m; ++k) {
        subsets_.push_back(subsets_of_size(m, k));
        if (dim(k) > kMaxChainRank) fail(ErrorCode::SizeLimit, "chain module of rank " + std::to_string(dim(k)) + " is too large");
    }
    const std::size_t r = A_.rank();
    std::vector<std::vector<Vec>> mult;
    for (const auto& a : seq_) mult.push_back(A_.mult_columns(a));
    d_.emplace_back();
    for (int k = 1; k <= m; ++k) {
        IntMatrix d(dim(k - 1), dim(k));
        const auto& subs = subsets(k);
        for (std::size_t s = 0; s < subs.size(); ++s) {
            int pos = 0;
            for (int i = 0; i < m; ++i) {
                if ((subs[s] & (Subset{1} << i)) == 0) continue;
                ++pos;
                const int sign = pos % 2 == 1 ? 1 : -1;
                const std::size_t target = position(k - 1, subs[s] & ~(Subset{1} << i));
                for (std::size_t b = 0; b < r; ++b) {
                    const Vec& col = mult[static_cast<std::size_t>(i)][b];
                    for (std::size_t l = 0; l < r; ++l) {
                        if (col[l] == 0) continue;
                        Int& entry = d(target * r + l, s * r + b);
                        entry += sign * col[l];
                        reduce_mod(entry, A_.modulus());
                    }
                }
            }
        }
        d_.push_back(std::move(d));
    }
    for (int k = 2; k <= m; ++k) {
        IntMatrix dd = d_[static_cast<std::size_t>(k - 1)] * d_[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < dd.rows(); ++i) {
            for (std::size_t j = 0; j < dd.cols(); ++j) reduce_mod(dd(i, j), A_.modulus());
        }
        if (!dd.is_zero()) fail(ErrorCode::DSquaredNonzero, "d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " is not zero");
    }
}

std::size_t KoszulComplex::dim(int k) const
{
    if (k < 0 || k > length()) return 0;
    return A_.rank() * choose(length(), k);
}

std::size_t KoszulComplex::position(int k, Subset I) const
{
    const auto& subs = subsets(k);
    return static_cast<std::size_t>(std::lower_bound(subs.begin(), subs.end(), I) - subs.begin());
}

std::vector<Int> KoszulComplex::apply_d(int k, const std::vector<Int>& x) const
{
    if (k == 0) return {};
    const IntMatrix& d = differential(k);
    std::vector<Int> out(d.rows());
    for (std::size_t i = 0; i < d.rows(); ++i) {
        for (std::size_t j = 0; j < d.cols(); ++j) {
            if (x[j] != 0 && d(i, j) != 0) out[i] += d(i, j) * x[j];
        }
        reduce_mod(out[i], A_.modulus());
    }
    return out;
}

std::vector<Int> KoszulComplex::multiply(int kx, const std::vector<Int>& x, int ky, const std::vector<Int>& y) const
{
    const std::size_t r = A_.rank();
    std::vector<Int> out(dim(kx + ky));
    if (kx + ky > length()) return out;
    const auto& sx = subsets(kx);
    const auto& sy = subsets(ky);
    for (std::size_t i = 0; i < sx.size(); ++i) {
        for (std::size_t j = 0; j < sy.size(); ++j) {
            const SignedSubset w = wedge(sx[i], sy[j]);
            if (w.sign == 0) continue;
            const std::size_t target = position(kx + ky, w.set);
            for (std::size_t b = 0; b < r; ++b) {
                const Int& xb = x[i * r + b];
                if (xb == 0) continue;
                for (std::size_t c = 0; c < r; ++c) {
                    const Int& yc = y[j * r + c];
                    if (yc == 0) continue;
                    const Vec& t = A_.table()[b][c];
                    for (std::size_t l = 0; l < r; ++l) {
                        if (t[l] != 0) out[target * r + l] += w.sign * xb * yc * t[l];
                    }
                }
            }
        }
    }
    for (auto& v : out) reduce_mod(v, A_.modulus());
    return out;
}

namespace {

HomologyGroup homology_over_z(const KoszulComplex& K, int k)
{
    HomologyGroup h;
    h.degree = k;
    const std::size_t n = K.dim(k);
    const std::size_t rank_out = k >= 1 ? smith_normal_form(K.differential(k), false).rank() : 0;
    std::size_t rank_in = 0;
    if (k + 1 <= K.length()) {
        const SmithForm s = smith_normal_form(K.differential(k + 1), false);
        rank_in = s.rank();
        for (const Int& d : s.diagonal) {
            if (d > 1) h.torsion.push_back(d);
        }
    }
    h.free_rank = n - rank_out - rank_in;
    return h;
}

HomologyGroup homology_mod(const KoszulComplex& K, int k)
{
    const Int& m = K.algebra().modulus();
    HomologyGroup h;
    h.degree = k;
    const std::size_t n = K.dim(k);
    if (n == 0) return h;
    // Kernel of d_k mod m as a lattice K = V diag(g) in Z^n.
    IntMatrix V = IntMatrix::identity(n);
    IntMatrix Vi = IntMatrix::identity(n);
    std::vector<Int> g(n, Int(1));
    if (k >= 1) {
        SmithForm s = smith_normal_form(K.differential(k));
        V = std::move(s.V);
        Vi = std::move(s.V_inverse);
        for (std::size_t i = 0; i < s.rank(); ++i) {
            Int gc;
            mpz_gcd(gc.get_mpz_t(), s.diagonal[i].get_mpz_t(), m.get_mpz_t());
            g[i] = m / gc;
        }
    }
    // Image generators: columns of d_{k+1} and m e_j, in K-coordinates.
    const std::size_t cols_in = k + 1 <= K.length() ? K.dim(k + 1) : 0;
    IntMatrix R(n, cols_in + n);
    auto place = [&](std::size_t col, const std::vector<Int>& x) {
        for (std::size_t i = 0; i < n; ++i) {
            Int c = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (x[j] != 0 && Vi(i, j) != 0) c += Vi(i, j) * x[j];
            }
            if (!mpz_divisible_p(c.get_mpz_t(), g[i].get_mpz_t())) fail(ErrorCode::DSquaredNonzero, "image not contained in kernel");
            mpz_divexact(R(i, col).get_mpz_t(), c.get_mpz_t(), g[i].get_mpz_t());
        }
    };
    for (std::size_t c = 0; c < cols_in; ++c) place(c, K.differential(k + 1).column(c));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> e(n);
        e[j] = m;
        place(cols_in + j, e);
    }
    for (const Int& d : smith_normal_form(R, false).diagonal) {
        if (d > 1) h.torsion.push_back(d);
    }
    return h;
}

bool same_group(HomologyGroup a, HomologyGroup b)
{
    std::sort(a.torsion.begin(), a.torsion.end());
    std::sort(b.torsion.begin(), b.torsion.end());
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
}

}  // namespace

HomologyGroup homology(const KoszulComplex& K, int k)
{
    if (k < 0 || k > K.length()) return {k, 0, {}};
    return K.algebra().over_integers() ? homology_over_z(K, k) : homology_mod(K, k);
}

std::vector<HomologyGroup> homology(const KoszulComplex& K)
{
    std::vector<HomologyGroup> out(static_cast<std::size_t>(K.length() + 1));
    // Degrees are independent; each slot is written by one iteration.
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k <= K.length(); ++k) out[static_cast<std::size_t>(k)] = homology(K, k);
    return out;
}

namespace {

/// Columns a_j e_b spanning the ideal (seq) in Z^r.
IntMatrix ideal_generators(const FinAlgebra& A, const std::vector<Vec>& gens)
{
    const std::size_t r = A.rank();
    IntMatrix G(r, r * gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        const auto cols = A.mult_columns(A.reduce(gens[j]));
        for (std::size_t b = 0; b < r; ++b) {
            for (std::size_t l = 0; l < r; ++l) G(l, j * r + b) = cols[b][l];
        }
    }
    return G;
}

}  // namespace

HomologyGroup quotient_shape(const FinAlgebra& A, const std::vector<Vec>& seq)
{
    IntMatrix G = ideal_generators(A, seq);
    if (!A.over_integers()) {
        IntMatrix M(A.rank(), A.rank());
        for (std::size_t i = 0; i < A.rank(); ++i) M(i, i) = A.modulus();
        G = G.hconcat(M);
    }
    const CokernelShape c = cokernel(G);
    return {0, c.free_rank, c.torsion};
}

bool is_nonzerodivisor(const FinAlgebra& A, const std::vector<Vec>& gens, const Vec& a)
{
    const std::size_t r = A.rank();
    const IntMatrix G = ideal_generators(A, gens);
    IntMatrix Ma(r, r);
    const auto cols = A.mult_columns(a);
    for (std::size_t b = 0; b < r; ++b) {
        for (std::size_t l = 0; l < r; ++l) Ma(l, b) = cols[b][l];
    }
    if (gens.empty()) return smith_normal_form(Ma, false).rank() == r;
    // P = {x : a x in L}; a is a non-zero-divisor on Z^r / L iff P = L.
    IntMatrix negG(r, G.cols());
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < G.cols(); ++j) negG(i, j) = -G(i, j);
    }
    const IntMatrix ker = kernel_basis(Ma.hconcat(negG));
    const SmithForm gs = smith_normal_form(G);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        std::vector<Int> x(r);
        for (std::size_t i = 0; i < r; ++i) x[i] = ker(i, c);
        if (!in_column_lattice(gs, x)) return false;
    }
    return true;
}

RegularityVerdict is_regular(const FinAlgebra& A, const std::vector<Vec>& seq)
{
    if (!A.over_integers()) fail(ErrorCode::UnsupportedBase, "regularity verdicts need the integers as base; report homology instead");
    RegularityVerdict v;
    const KoszulComplex K(A, seq);
    const auto hs = homology(K);
    v.regular = true;
    for (std::size_t k = 1; k < hs.size(); ++k) {
        if (!hs[k].is_zero()) {
            v.regular = false;
            v.witness_degree = static_cast<int>(k);
            break;
        }
    }
    // A/(seq) = 0 is excluded from both readings, as usual.
    v.proper = !hs[0].is_zero();
    if (v.regular && !v.proper) {
        v.regular = false;
        v.witness_degree = 0;
    }
    v.direct_regular = v.proper;
    if (!v.proper) v.direct_failure_index = 0;
    for (std::size_t i = 0; v.direct_regular && i < seq.size(); ++i) {
        const std::vector<Vec> earlier(seq.begin(), seq.begin() + static_cast<long>(i));
        if (!is_nonzerodivisor(A, earlier, seq[i])) {
            v.direct_regular = false;
            v.direct_failure_index = static_cast<int>(i) + 1;
            break;
        }
    }
    return v;
}

CollapseReport collapse_check(const FinAlgebra& A, const std::vector<Vec>& seq)
{
    CollapseReport rep;
    const KoszulComplex K(A, seq);
    rep.homology = homology(K);
    const int m = K.length();
    const std::size_t r = A.rank();
    auto free_summand = [&](std::size_t copies) {
        HomologyGroup h;
        if (A.over_integers()) {
            h.free_rank = copies;
        } else {
            h.torsion.assign(copies, A.modulus());
        }
        return h;
    };

    std::vector<Vec> nonzero;
    int zeros = 0;
    for (const auto& a : seq) {
        if (A.is_zero(A.reduce(a))) {
            ++zeros;
        } else {
            nonzero.push_back(a);
        }
    }
    if (A.over_integers()) {
        const RegularityVerdict v = is_regular(A, seq);
        rep.regular_case = v.regular && v.direct_regular;
    }
    if (rep.regular_case) {
        rep.regular_prediction = same_group(rep.homology[0], quotient_shape(A, seq));
        for (std::size_t k = 1; k < rep.homology.size(); ++k) rep.regular_prediction = rep.regular_prediction && rep.homology[k].is_zero();
    }
    rep.zero_case = zeros == m;
    if (rep.zero_case) {
        rep.zero_prediction = true;
        for (int k = 0; k <= m; ++k) {
            rep.zero_prediction = rep.zero_prediction && same_group(rep.homology[static_cast<std::size_t>(k)], free_summand(r * choose(m, k)));
        }
    }
    rep.mixed_case = zeros > 0 && zeros < m;
    if (rep.mixed_case) {
        // Ksz(seq) is Ksz(nonzero) tensored over A with the zero-differential
        // exterior algebra on the zero entries.
        const auto part = homology(KoszulComplex(A, nonzero));
        rep.kunneth_prediction = true;
        for (int k = 0; k <= m; ++k) {
            HomologyGroup pred;
            for (int j = 0; j <= k && j < static_cast<int>(part.size()); ++j) {
                if (k - j > zeros) continue;
                const std::size_t copies = choose(zeros, k - j);
                const auto& hj = part[static_cast<std::size_t>(j)];
                pred.free_rank += copies * hj.free_rank;
                for (std::size_t c = 0; c < copies; ++c) pred.torsion.insert(pred.torsion.end(), hj.torsion.begin(), hj.torsion.end());
            }
            rep.kunneth_prediction = rep.kunneth_prediction && same_group(rep.homology[static_cast<std::size_t>(k)], pred);
        }
    }
    return rep;
}

SurrogateReport kl_surrogate(const FinAlgebra& A, const Vec& pi, int generators)
{
    SurrogateReport rep;
    rep.zero_variant = homology(KoszulComplex(A, std::vector<Vec>(static_cast<std::size_t>(generators), A.zero())));
    rep.pi_variant = homology(KoszulComplex(A, std::vector<Vec>(static_cast<std::size_t>(generators), pi)));
    rep.zero_variant_exterior = true;
    for (int k = 0; k <= generators; ++k) {
        const auto& h = rep.zero_variant[static_cast<std::size_t>(k)];
        const std::size_t want = A.rank() * choose(generators, k);
        const bool ok = A.over_integers() ? (h.free_rank == want && h.torsion.empty())
                                          : (h.free_rank == 0 && h.torsion.size() == want &&
                                             std::all_of(h.torsion.begin(), h.torsion.end(), [&](const Int& t) { return t == A.modulus(); }));
        rep.zero_variant_exterior = rep.zero_variant_exterior && ok;
    }
    return rep;
}

}  // namespace fglab::koszul
