#pragma once

#include <cstdint>
#include <vector>

#include "fglab/local/finite_ring.hpp"

namespace fglab::moduli {

/// A polynomial in up to three variables over a small finite ring, kept
/// modulo total degree > cap. Written independently of the series module
/// so the two can check each other.
class SmallPoly {
public:
    SmallPoly() = default;
    SmallPoly(const local::FiniteRing* ring, int nvars, int cap);

    static SmallPoly variable(const local::FiniteRing* ring, int nvars, int cap, int k);

    const local::FiniteRing* ring() const noexcept { return ring_; }
    int nvars() const noexcept { return nvars_; }
    int cap() const noexcept { return cap_; }

    std::uint32_t get(int i, int j = 0, int k = 0) const;
    void set(int i, int j, int k, std::uint32_t v);

    SmallPoly operator+(const SmallPoly& o) const;
    SmallPoly operator*(const SmallPoly& o) const;
    SmallPoly scaled(std::uint32_t c) const;
    bool operator==(const SmallPoly& o) const { return c_ == o.c_; }
    bool operator<(const SmallPoly& o) const { return c_ < o.c_; }

    /// Coefficients of total degree exactly deg, in a fixed order.
    std::vector<std::uint32_t> degree_part(int deg) const;
    const std::vector<std::uint32_t>& raw() const noexcept { return c_; }

private:
    std::size_t index(int i, int j, int k) const
    {
        const auto s = static_cast<std::size_t>(cap_ + 1);
        return (static_cast<std::size_t>(i) * s + static_cast<std::size_t>(j)) * s + static_cast<std::size_t>(k);
    }

    const local::FiniteRing* ring_ = nullptr;
    int nvars_ = 0;
    int cap_ = 0;
    std::vector<std::uint32_t> c_;
};

/// sum_{i,j} F_ij u^i v^j for two-variable F.
SmallPoly substitute2(const SmallPoly& F, const SmallPoly& u, const SmallPoly& v);
/// sum_i t_i s^i for one-variable t.
SmallPoly substitute1(const SmallPoly& t, const SmallPoly& s);
/// Compositional inverse of t_0 T + ..., t_0 a unit.
SmallPoly comp_inverse1(const SmallPoly& t);

}  // namespace fglab::moduli
