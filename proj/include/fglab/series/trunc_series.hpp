#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fglab/error.hpp"
#include "fglab/rings.hpp"
#include "fglab/series/layout.hpp"

namespace fglab::series {

/// A power series in up to three variables, known modulo all monomials of
/// total degree > cap. Coefficients are stored densely in layout order;
/// exact zeros are structural and skipped by the kernels.
template <CoefficientRing R>
class TruncSeries {
public:
    using ring_type = R;
    using value_type = typename R::value_type;

    TruncSeries(R ring, std::vector<std::string> vars, int cap)
        : ring_(std::move(ring)), vars_(std::move(vars)), layout_(make_layout(static_cast<int>(vars_.size()), cap))
    {
        c_.assign(layout_->size(), ring_.zero());
    }

    TruncSeries(R ring, std::vector<std::string> vars, LayoutPtr layout)
        : ring_(std::move(ring)), vars_(std::move(vars)), layout_(std::move(layout))
    {
        if (static_cast<int>(vars_.size()) != layout_->nvars()) fail(ErrorCode::VariableMismatch, "layout/variable count mismatch");
        c_.assign(layout_->size(), ring_.zero());
    }

    /// The series consisting of variable number k.
    static TruncSeries variable(R ring, std::vector<std::string> vars, std::size_t k, int cap)
    {
        TruncSeries s(std::move(ring), std::move(vars), cap);
        Exponent e{0, 0, 0};
        e[k] = 1;
        if (cap >= 1) s.set(e, s.ring_.one());
        return s;
    }

    TruncSeries zero_like() const { return TruncSeries(ring_, vars_, layout_); }

    const R& ring() const noexcept { return ring_; }
    const std::vector<std::string>& vars() const noexcept { return vars_; }
    int nvars() const noexcept { return layout_->nvars(); }
    int cap() const noexcept { return layout_->cap(); }
    const MonomialLayout& layout() const noexcept { return *layout_; }
    const LayoutPtr& layout_ptr() const noexcept { return layout_; }
    std::size_t size() const noexcept { return c_.size(); }

    const value_type& operator[](std::size_t i) const noexcept { return c_[i]; }
    value_type& operator[](std::size_t i) noexcept { return c_[i]; }
    const std::vector<value_type>& coefficients() const noexcept { return c_; }

    /// Coefficient of a monomial; zero beyond the cap.
    value_type coeff(const Exponent& e) const
    {
        const long i = layout_->index_of(e);
        return i < 0 ? ring_.zero() : c_[static_cast<std::size_t>(i)];
    }
    value_type coeff(int i) const { return coeff(Exponent{i, 0, 0}); }
    value_type coeff(int i, int j) const { return coeff(Exponent{i, j, 0}); }

    void set(const Exponent& e, value_type v)
    {
        const long i = layout_->index_of(e);
        if (i < 0) fail(ErrorCode::InvalidArgument, "monomial beyond the degree cap");
        c_[static_cast<std::size_t>(i)] = std::move(v);
    }

    bool has_zero_constant_term() const { return ring_.is_zero(c_[0]); }

    std::size_t nonzero_count() const
    {
        std::size_t n = 0;
        for (const auto& x : c_) n += ring_.is_exact_zero(x) ? 0 : 1;
        return n;
    }

    /// Lowest total degree carrying a coefficient that is not zero to
    /// precision; cap+1 when none.
    int valuation_degree() const
    {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!ring_.is_zero(c_[i])) return layout_->degree(i);
        }
        return cap() + 1;
    }

    TruncSeries truncated(int new_cap) const
    {
        if (new_cap >= cap()) return *this;
        TruncSeries out(ring_, vars_, new_cap);
        for (std::size_t i = 0; i < out.size(); ++i) out.c_[i] = c_[static_cast<std::size_t>(layout_->index_of(out.layout().exponent(i)))];
        return out;
    }

    /// Raises the cap, filling the new degrees with exact zeros. Only sound
    /// when the caller knows those degrees cannot influence what it reads.
    TruncSeries padded(int new_cap) const
    {
        if (new_cap <= cap()) return truncated(new_cap);
        TruncSeries out(ring_, vars_, new_cap);
        for (std::size_t i = 0; i < c_.size(); ++i) out.c_[static_cast<std::size_t>(out.layout_->index_of(layout_->exponent(i)))] = c_[i];
        return out;
    }

    /// Same coefficients viewed in a superset variable list (names must match
    /// the leading entries of `vars`); caps are preserved.
    TruncSeries embedded(std::vector<std::string> vars) const
    {
        for (std::size_t k = 0; k < vars_.size(); ++k) {
            if (k >= vars.size() || vars[k] != vars_[k]) fail(ErrorCode::VariableMismatch, "cannot embed series into a different variable list");
        }
        TruncSeries out(ring_, std::move(vars), cap());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!ring_.is_exact_zero(c_[i])) out.set(layout_->exponent(i), c_[i]);
        }
        return out;
    }

    void check_compatible(const TruncSeries& o) const
    {
        if (!ring_.same(o.ring_)) fail(ErrorCode::RingMismatch, "series over different rings");
        if (vars_ != o.vars_) fail(ErrorCode::VariableMismatch, "series in different variables");
    }

    TruncSeries operator+(const TruncSeries& o) const { return combine(o, false); }
    TruncSeries operator-(const TruncSeries& o) const { return combine(o, true); }

    TruncSeries operator-() const
    {
        TruncSeries out = *this;
        for (auto& x : out.c_) {
            if (!ring_.is_exact_zero(x)) x = value_type(-x);
        }
        return out;
    }

    TruncSeries scaled(const value_type& s) const
    {
        TruncSeries out = zero_like();
        if (ring_.is_exact_zero(s)) return out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (!ring_.is_exact_zero(c_[i])) out.c_[i] = value_type(s * c_[i]);
        }
        return out;
    }

    /// Coefficientwise equality to tracked precision.
    bool equals(const TruncSeries& o) const { return first_difference(o) < 0; }

    /// Index of the first coefficient (layout order) that differs, or -1.
    long first_difference(const TruncSeries& o) const
    {
        check_compatible(o);
        const int common = std::min(cap(), o.cap());
        for (std::size_t i = 0; i < c_.size() && layout_->degree(i) <= common; ++i) {
            const value_type& other = o.c_[static_cast<std::size_t>(o.layout_->index_of(layout_->exponent(i)))];
            if (!ring_.equal(c_[i], other)) return static_cast<long>(i);
        }
        return -1;
    }

    /// Smallest tracked absolute precision over stored coefficients.
    int min_precision() const
    {
        int best = local::kExactPrecision;
        for (const auto& x : c_) best = std::min(best, ring_.precision(x));
        return best;
    }

private:
    TruncSeries combine(const TruncSeries& o, bool subtract) const
    {
        check_compatible(o);
        if (o.cap() < cap()) return truncated(o.cap()).combine(o, subtract);
        TruncSeries out = *this;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const value_type& y = o.c_[static_cast<std::size_t>(o.layout_->index_of(layout_->exponent(i)))];
            if (ring_.is_exact_zero(y)) continue;
            out.c_[i] = subtract ? value_type(c_[i] - y) : value_type(c_[i] + y);
        }
        return out;
    }

    R ring_;
    std::vector<std::string> vars_;
    LayoutPtr layout_;
    std::vector<value_type> c_;
};

}  // namespace fglab::series
