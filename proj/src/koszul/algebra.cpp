#include "fglab/koszul/algebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "fglab/error.hpp"

namespace fglab::koszul {

FinAlgebra::FinAlgebra(Int modulus, std::vector<std::string> labels, std::vector<std::vector<Vec>> table, Vec unit)
    : modulus_(std::move(modulus)), labels_(std::move(labels)), table_(std::move(table)), unit_(std::move(unit))
{
    const std::size_t r = labels_.size();
    if (r == 0 || r > 64) fail(ErrorCode::SizeLimit, "algebra rank must be between 1 and 64");
    if (table_.size() != r || unit_.size() != r) fail(ErrorCode::InvalidArgument, "table shape does not match the rank");
    for (auto& row : table_) {
        if (row.size() != r) fail(ErrorCode::InvalidArgument, "table shape does not match the rank");
        for (auto& v : row) {
            if (v.size() != r) fail(ErrorCode::InvalidArgument, "table shape does not match the rank");
            v = reduce(std::move(v));
        }
    }
    unit_ = reduce(std::move(unit_));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            if (table_[i][j] != table_[j][i]) fail(ErrorCode::NotCommutative, "e_" + labels_[i] + " e_" + labels_[j] + " differs from its mirror");
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        if (mul(unit_, basis(i)) != basis(i)) fail(ErrorCode::UnitMissing, "declared unit does not fix basis element " + labels_[i]);
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                if (mul(table_[i][j], basis(k)) != mul(basis(i), table_[j][k])) {
                    fail(ErrorCode::NotAssociative, "(" + labels_[i] + " " + labels_[j] + ") " + labels_[k] + " differs from the other bracketing");
                }
            }
        }
    }
}

FinAlgebra FinAlgebra::monomial(const std::vector<std::string>& vars, const std::vector<int>& bounds, int max_degree, Int modulus)
{
    if (vars.size() != bounds.size() || vars.empty()) fail(ErrorCode::InvalidArgument, "one exponent bound per variable required");
    std::vector<std::vector<int>> monos;
    std::vector<int> e(vars.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int deg) {
        if (k == vars.size()) {
            monos.push_back(e);
            return;
        }
        for (int x = 0; x < bounds[k]; ++x) {
            if (max_degree >= 0 && deg + x > max_degree) break;
            e[k] = x;
            rec(k + 1, deg + x);
        }
        e[k] = 0;
    };
    rec(0, 0);
    // Order by total degree, then lexicographically descending in the first variable.
    std::stable_sort(monos.begin(), monos.end(), [](const auto& a, const auto& b) {
        int da = 0;
        int db = 0;
        for (int x : a) da += x;
        for (int x : b) db += x;
        if (da != db) return da < db;
        return a > b;
    });
    if (monos.size() > 64) fail(ErrorCode::SizeLimit, "monomial algebra rank exceeds 64");
    const std::size_t r = monos.size();
    std::vector<std::string> labels;
    for (const auto& m : monos) {
        std::string s;
        for (std::size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0) continue;
            if (!s.empty()) s += "*";
            s += vars[k] + (m[k] > 1 ? "^" + std::to_string(m[k]) : "");
        }
        labels.push_back(s.empty() ? "1" : s);
    }
    std::vector<std::vector<Vec>> table(r, std::vector<Vec>(r, Vec(r)));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            std::vector<int> s(vars.size());
            for (std::size_t k = 0; k < s.size(); ++k) s[k] = monos[i][k] + monos[j][k];
            const auto it = std::find(monos.begin(), monos.end(), s);
            if (it != monos.end()) table[i][j][static_cast<std::size_t>(it - monos.begin())] = 1;
        }
    }
    Vec unit(r);
    unit[0] = 1;
    return FinAlgebra(std::move(modulus), std::move(labels), std::move(table), std::move(unit));
}

FinAlgebra FinAlgebra::univariate(const std::string& var, const std::vector<Int>& relation, Int modulus)
{
    const std::size_t r = relation.size();
    if (r == 0) fail(ErrorCode::InvalidArgument, "relation must have positive degree");
    // Powers x^0 .. x^{2r-2} reduced to the basis 1, x, .., x^{r-1}.
    std::vector<Vec> pw;
    for (std::size_t k = 0; k < r; ++k) {
        Vec v(r);
        v[k] = 1;
        pw.push_back(v);
    }
    for (std::size_t k = r; k + 1 < 2 * r; ++k) {
        // x^k = x * x^{k-1}; shift and substitute x^r.
        const Vec& prev = pw.back();
        Vec v(r);
        for (std::size_t i = 0; i + 1 < r; ++i) v[i + 1] = prev[i];
        for (std::size_t i = 0; i < r; ++i) v[i] += prev[r - 1] * relation[i];
        pw.push_back(v);
    }
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < r; ++k) labels.push_back(k == 0 ? "1" : (k == 1 ? var : var + "^" + std::to_string(k)));
    std::vector<std::vector<Vec>> table(r, std::vector<Vec>(r));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) table[i][j] = pw[i + j];
    }
    Vec unit(r);
    unit[0] = 1;
    return FinAlgebra(std::move(modulus), std::move(labels), std::move(table), std::move(unit));
}

Vec FinAlgebra::basis(std::size_t i) const
{
    Vec v(rank());
    v[i] = 1;
    return v;
}

Vec FinAlgebra::scalar(const Int& c) const { return scale(c, unit_); }

Vec FinAlgebra::reduce(Vec a) const
{
    if (modulus_ != 0) {
        for (auto& x : a) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
    }
    return a;
}

Vec FinAlgebra::mul(const Vec& a, const Vec& b) const
{
    const std::size_t r = rank();
    std::vector<std::size_t> na;
    std::vector<std::size_t> nb;
    for (std::size_t i = 0; i < r; ++i) {
        if (a[i] != 0) na.push_back(i);
        if (b[i] != 0) nb.push_back(i);
    }
    Vec out(r);
    for (std::size_t i : na) {
        for (std::size_t j : nb) {
            const Int ab = a[i] * b[j];
            const Vec& t = table_[i][j];
            for (std::size_t l = 0; l < r; ++l) {
                if (t[l] != 0) out[l] += ab * t[l];
            }
        }
    }
    return reduce(std::move(out));
}

Vec FinAlgebra::add(const Vec& a, const Vec& b) const
{
    Vec out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = a[i] + b[i];
    return reduce(std::move(out));
}

Vec FinAlgebra::scale(const Int& c, const Vec& a) const
{
    Vec out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = c * a[i];
    return reduce(std::move(out));
}

bool FinAlgebra::is_zero(const Vec& a) const
{
    return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

std::vector<Vec> FinAlgebra::mult_columns(const Vec& a) const
{
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < rank(); ++j) cols.push_back(mul(a, basis(j)));
    return cols;
}

std::string FinAlgebra::format(const Vec& a) const
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (a[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << a[i];
        if (labels_[i] != "1") os << "*" << labels_[i];
    }
    return first ? "0" : os.str();
}

}  // namespace fglab::koszul
