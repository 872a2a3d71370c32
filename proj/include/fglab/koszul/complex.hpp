#pragma once

#include <cstdint>
#include <vector>

#include "fglab/koszul/algebra.hpp"
#include "fglab/koszul/smith.hpp"

namespace fglab::koszul {

/// Subsets of {1..m} as bitmasks (bit i-1 for element i). Numeric order of
/// the masks within one size is colexicographic order of the subsets.
using Subset = std::uint32_t;

std::vector<Subset> subsets_of_size(int m, int k);

struct SignedSubset {
    int sign = 0;  // 0 when the product vanishes
    Subset set = 0;
};

/// e_I ^ e_K: zero on overlap, else the sign of the permutation sorting
/// the concatenation (I, K).
SignedSubset wedge(Subset I, Subset K);

/// Ksz_A(a_1, .., a_m): chains C_k = A (x) Lambda^k with basis e_b (x) e_I,
/// coordinate index position(I) * rank(A) + b; d e_I = sum_i (-1)^{i+1}
/// a_{I(i)} e_{I - I(i)}.
class KoszulComplex {
public:
    /// Throws SizeLimit, DSquaredNonzero.
    KoszulComplex(FinAlgebra A, std::vector<Vec> seq);

    const FinAlgebra& algebra() const noexcept { return A_; }
    const std::vector<Vec>& sequence() const noexcept { return seq_; }
    int length() const noexcept { return static_cast<int>(seq_.size()); }
    std::size_t dim(int k) const;
    const std::vector<Subset>& subsets(int k) const { return subsets_[static_cast<std::size_t>(k)]; }
    std::size_t position(int k, Subset I) const;

    /// d_k : C_k -> C_{k-1}, a dim(k-1) x dim(k) matrix, 1 <= k <= m.
    const IntMatrix& differential(int k) const { return d_[static_cast<std::size_t>(k)]; }

    std::vector<Int> apply_d(int k, const std::vector<Int>& x) const;
    /// Product of homogeneous chains x in C_kx and y in C_ky.
    std::vector<Int> multiply(int kx, const std::vector<Int>& x, int ky, const std::vector<Int>& y) const;

private:
    FinAlgebra A_;
    std::vector<Vec> seq_;
    std::vector<std::vector<Subset>> subsets_;
    std::vector<IntMatrix> d_;
};

/// H_k as an abelian group: Z^free_rank plus cyclic factors Z/t. Over
/// Z/p^N, free_rank stays 0 and every summand is listed as a factor
/// (p^N for summands free over Z/p^N).
struct HomologyGroup {
    int degree = 0;
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
    bool is_zero() const { return free_rank == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup&) const = default;
};

HomologyGroup homology(const KoszulComplex& K, int k);
std::vector<HomologyGroup> homology(const KoszulComplex& K);

/// A/(seq) as a group, computed from the quotient directly.
HomologyGroup quotient_shape(const FinAlgebra& A, const std::vector<Vec>& seq);

struct RegularityVerdict {
    bool proper = false;            // A/(seq) != 0
    bool regular = false;           // proper and H_k = 0 for all k >= 1
    int witness_degree = -1;        // first k >= 1 with H_k != 0; 0 when not proper
    bool direct_regular = false;    // proper, each a_i a non-zero-divisor mod the earlier ones
    int direct_failure_index = -1;  // 1-based index of the first failing a_i; 0 when not proper
    bool agree() const { return regular == direct_regular; }
};

/// Over Z only; Z/p^N bases raise UnsupportedBase.
RegularityVerdict is_regular(const FinAlgebra& A, const std::vector<Vec>& seq);

/// Non-zero-divisor test for a on A/(gens).
bool is_nonzerodivisor(const FinAlgebra& A, const std::vector<Vec>& gens, const Vec& a);

struct CollapseReport {
    std::vector<HomologyGroup> homology;
    bool regular_case = false;
    bool regular_prediction = false;  // H_0 = A/(seq), H_{>0} = 0
    bool zero_case = false;
    bool zero_prediction = false;  // H_k = A^{C(m,k)}
    bool mixed_case = false;
    bool kunneth_prediction = false;  // H = H(Ksz(nonzero part)) (x) Lambda(zeros)
    bool holds() const
    {
        return (!regular_case || regular_prediction) && (!zero_case || zero_prediction) && (!mixed_case || kunneth_prediction);
    }
};

CollapseReport collapse_check(const FinAlgebra& A, const std::vector<Vec>& seq);

/// Two readings of the K(L) co-operation surrogate with g generators: the
/// sequence of zeros, and the sequence with every entry equal to pi.
struct SurrogateReport {
    std::vector<HomologyGroup> zero_variant;
    std::vector<HomologyGroup> pi_variant;
    bool zero_variant_exterior = false;  // ranks C(g,k) * rank(A)
};

SurrogateReport kl_surrogate(const FinAlgebra& A, const Vec& pi, int generators);

}  // namespace fglab::koszul
