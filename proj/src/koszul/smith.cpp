#include "fglab/koszul/smith.hpp"

#include <algorithm>

#include "fglab/error.hpp"

namespace fglab::koszul {

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const
{
    if (cols_ != o.rows_) fail(ErrorCode::InvalidArgument, "matrix shapes do not match");
    IntMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                if (o(k, j) != 0) out(i, j) += x * o(k, j);
            }
        }
    }
    return out;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix IntMatrix::transposed() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

IntMatrix IntMatrix::column_block(std::size_t c0, std::size_t c1) const
{
    IntMatrix out(rows_, c1 - c0);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = c0; j < c1; ++j) out(i, j - c0) = (*this)(i, j);
    }
    return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& o) const
{
    if (rows_ != o.rows_) fail(ErrorCode::InvalidArgument, "row counts differ");
    IntMatrix out(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, cols_ + j) = o(i, j);
    }
    return out;
}

std::vector<Int> IntMatrix::column(std::size_t c) const
{
    std::vector<Int> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j)
{
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const Int& k)
{
    if (k == 0) return;
    for (std::size_t c = 0; c < cols_; ++c) {
        if ((*this)(j, c) != 0) (*this)(i, c) += k * (*this)(j, c);
    }
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const Int& k)
{
    if (k == 0) return;
    for (std::size_t r = 0; r < rows_; ++r) {
        if ((*this)(r, j) != 0) (*this)(r, i) += k * (*this)(r, j);
    }
}

void IntMatrix::negate_row(std::size_t i)
{
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

std::vector<std::vector<std::string>> IntMatrix::dump() const
{
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).get_str());
    }
    return out;
}

namespace {

struct Reducer {
    IntMatrix A, U, V, Vi;
    bool track;

    void swap_rows(std::size_t i, std::size_t j)
    {
        A.swap_rows(i, j);
        if (track) U.swap_rows(i, j);
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        A.swap_cols(i, j);
        if (track) {
            V.swap_cols(i, j);
            Vi.swap_rows(i, j);
        }
    }
    void add_row(std::size_t i, std::size_t j, const Int& k)
    {
        A.add_row(i, j, k);
        if (track) U.add_row(i, j, k);
    }
    void add_col(std::size_t i, std::size_t j, const Int& k)
    {
        A.add_col(i, j, k);
        if (track) {
            V.add_col(i, j, k);
            Vi.add_row(j, i, Int(-k));
        }
    }
    void negate_row(std::size_t i)
    {
        A.negate_row(i);
        if (track) U.negate_row(i);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input, bool transforms)
{
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    Reducer r{input, transforms ? IntMatrix::identity(m) : IntMatrix(), transforms ? IntMatrix::identity(n) : IntMatrix(),
              transforms ? IntMatrix::identity(n) : IntMatrix(), transforms};
    IntMatrix& A = r.A;
    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        std::size_t pi = m;
        std::size_t pj = n;
        for (std::size_t i = t; i < m; ++i) {
            for (std::size_t j = t; j < n; ++j) {
                if (A(i, j) != 0 && (pi == m || abs(A(i, j)) < abs(A(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
            }
        }
        if (pi == m) break;
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (A(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
                r.add_row(i, t, Int(-q));
                if (A(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (A(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
                r.add_col(j, t, Int(-q));
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) {
                std::size_t bi = t;
                std::size_t bj = t;
                for (std::size_t i = t + 1; i < m; ++i) {
                    if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi, bj))) {
                        bi = i;
                        bj = t;
                    }
                }
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi, bj))) {
                        bi = t;
                        bj = j;
                    }
                }
                r.swap_rows(t, bi);
                r.swap_cols(t, bj);
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (A(i, j) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
                        r.add_row(t, i, Int(1));
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) break;
        }
        if (A(t, t) < 0) r.negate_row(t);
    }
    SmithForm out;
    for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(A(i, i));
    if (transforms) {
        out.U = std::move(r.U);
        out.V = std::move(r.V);
        out.V_inverse = std::move(r.Vi);
    }
    return out;
}

IntMatrix kernel_basis(const IntMatrix& A)
{
    const SmithForm s = smith_normal_form(A);
    return s.V.column_block(s.rank(), A.cols());
}

bool in_column_lattice(const SmithForm& g, const std::vector<Int>& x)
{
    // x = G y  iff  U x = D z for some z.
    for (std::size_t i = 0; i < g.U.rows(); ++i) {
        Int ux = 0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            if (x[k] != 0) ux += g.U(i, k) * x[k];
        }
        if (i < g.rank()) {
            if (!mpz_divisible_p(ux.get_mpz_t(), g.diagonal[i].get_mpz_t())) return false;
        } else if (ux != 0) {
            return false;
        }
    }
    return true;
}

CokernelShape cokernel(const IntMatrix& A)
{
    const SmithForm s = smith_normal_form(A, false);
    CokernelShape c;
    c.free_rank = A.rows() - s.rank();
    for (const Int& d : s.diagonal) {
        if (d > 1) c.torsion.push_back(d);
    }
    return c;
}

}  // namespace fglab::koszul
