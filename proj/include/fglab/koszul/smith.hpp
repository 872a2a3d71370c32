#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fglab/local/integer.hpp"

namespace fglab::koszul {

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Int& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Int& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;
    bool is_zero() const;
    IntMatrix transposed() const;
    /// Columns [c0, c1).
    IntMatrix column_block(std::size_t c0, std::size_t c1) const;
    /// [this | o].
    IntMatrix hconcat(const IntMatrix& o) const;
    std::vector<Int> column(std::size_t c) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    /// row_i += k * row_j
    void add_row(std::size_t i, std::size_t j, const Int& k);
    /// col_i += k * col_j
    void add_col(std::size_t i, std::size_t j, const Int& k);
    void negate_row(std::size_t i);

    /// Row-major dump, entries as decimal strings.
    std::vector<std::vector<std::string>> dump() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

/// U * A * V = D with D diagonal, d_1 | d_2 | ..., all d_i > 0 for i < rank.
struct SmithForm {
    std::vector<Int> diagonal;  // the rank nonzero invariant factors
    IntMatrix U, V, V_inverse;
    std::size_t rank() const noexcept { return diagonal.size(); }
};

SmithForm smith_normal_form(const IntMatrix& A, bool transforms = true);

/// Columns spanning {x : A x = 0} (a saturated lattice).
IntMatrix kernel_basis(const IntMatrix& A);

/// Whether x lies in the column lattice of G, given G's Smith form.
bool in_column_lattice(const SmithForm& g, const std::vector<Int>& x);

/// Invariant factors > 1 and free rank of Z^rows / (columns of A).
struct CokernelShape {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
    bool operator==(const CokernelShape&) const = default;
};
CokernelShape cokernel(const IntMatrix& A);

}  // namespace fglab::koszul
