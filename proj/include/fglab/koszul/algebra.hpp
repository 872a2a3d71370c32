#pragma once

#include <string>
#include <vector>

#include "fglab/local/integer.hpp"

namespace fglab::koszul {

using Vec = std::vector<Int>;

/// A commutative algebra free of finite rank over Z or Z/p^N, given by
/// structure constants: e_i e_j = sum_l table[i][j][l] e_l.
class FinAlgebra {
public:
    /// modulus 0 means the base is Z; otherwise entries live in Z/modulus.
    /// Throws NotCommutative, NotAssociative, UnitMissing.
    FinAlgebra(Int modulus, std::vector<std::string> labels, std::vector<std::vector<Vec>> table, Vec unit);

    /// Z[x_1..x_k] modulo the monomials x_i^{bound_i} and, when
    /// max_degree >= 0, all monomials of total degree > max_degree.
    static FinAlgebra monomial(const std::vector<std::string>& vars, const std::vector<int>& bounds, int max_degree = -1, Int modulus = 0);
    /// Z[x]/(x^r - sum_i c_i x^i) with c = (c_0, .., c_{r-1}).
    static FinAlgebra univariate(const std::string& var, const std::vector<Int>& relation, Int modulus = 0);

    const Int& modulus() const noexcept { return modulus_; }
    bool over_integers() const noexcept { return modulus_ == 0; }
    std::size_t rank() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const Vec& unit() const noexcept { return unit_; }
    const std::vector<std::vector<Vec>>& table() const noexcept { return table_; }

    Vec zero() const { return Vec(rank()); }
    Vec basis(std::size_t i) const;
    Vec scalar(const Int& c) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec add(const Vec& a, const Vec& b) const;
    Vec scale(const Int& c, const Vec& a) const;
    Vec reduce(Vec a) const;
    bool is_zero(const Vec& a) const;
    /// Matrix of multiplication by a (column j = a * e_j).
    std::vector<Vec> mult_columns(const Vec& a) const;
    std::string format(const Vec& a) const;

private:
    Int modulus_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Vec>> table_;
    Vec unit_;
};

}  // namespace fglab::koszul
