#pragma once

#include <array>
#include <memory>
#include <vector>

namespace fglab::series {

inline constexpr int kMaxVars = 3;
using Exponent = std::array<int, kMaxVars>;

/// Dense enumeration of the monomials of total degree <= cap in nvars
/// variables, grouped by total degree; within a degree the first variable's
/// exponent decreases. Each monomial also gets an additive code
/// sum_k e_k (cap+1)^k, so code(m1*m2) = code(m1) + code(m2).
class MonomialLayout {
public:
    MonomialLayout(int nvars, int cap);

    int nvars() const noexcept { return nvars_; }
    int cap() const noexcept { return cap_; }
    std::size_t size() const noexcept { return exps_.size(); }
    const Exponent& exponent(std::size_t i) const noexcept { return exps_[i]; }
    int degree(std::size_t i) const noexcept { return degs_[i]; }
    int code(std::size_t i) const noexcept { return codes_[i]; }
    /// First index of degree d; degree_begin(cap+1) == size().
    std::size_t degree_begin(int d) const noexcept { return starts_[static_cast<std::size_t>(d)]; }
    /// Index of a monomial by code; -1 when absent.
    long index_of_code(int code) const noexcept { return by_code_[static_cast<std::size_t>(code)]; }
    long index_of(const Exponent& e) const noexcept;
    int encode(const Exponent& e) const noexcept;

    bool same_shape(const MonomialLayout& o) const noexcept { return nvars_ == o.nvars_ && cap_ == o.cap_; }

private:
    int nvars_;
    int cap_;
    std::vector<Exponent> exps_;
    std::vector<int> degs_;
    std::vector<int> codes_;
    std::vector<std::size_t> starts_;
    std::vector<long> by_code_;
};

using LayoutPtr = std::shared_ptr<const MonomialLayout>;

LayoutPtr make_layout(int nvars, int cap);

}  // namespace fglab::series
