#pragma once

#include <memory>
#include <span>
#include <vector>

#include "fglab/local/integer.hpp"

namespace fglab::local {

/// Polynomials over F_p in the residue-field basis 1, w, ..., w^{f-1}.
using ResidueVec = std::vector<long>;

class UnramifiedElement;

/// W(F_q) truncated at p^N, presented as Z[x]/(p^N, minpoly(x)) with the
/// deterministic minimal polynomial chosen by make_unramified.
class UnramifiedRing : public std::enable_shared_from_this<UnramifiedRing> {
public:
    unsigned long p() const noexcept { return p_; }
    int f() const noexcept { return f_; }
    int precision() const noexcept { return n_; }
    Int q() const { return ipow(p_, static_cast<unsigned long>(f_)); }
    const Int& modulus() const noexcept { return modulus_; }

    /// Monic minimal polynomial coefficients c_0..c_{f-1} (leading 1 implicit).
    const std::vector<long>& minpoly() const noexcept { return minpoly_; }

    UnramifiedElement zero() const;
    UnramifiedElement one() const;
    UnramifiedElement from_int(const Int& n) const;
    UnramifiedElement from_coords(std::vector<Int> coords) const;
    /// The class of x in Z[x]/(minpoly), i.e. the root w of the lifted minpoly.
    UnramifiedElement generator() const;

    UnramifiedElement teichmuller(const ResidueVec& r) const;

    // Exact product in Z[x]/(minpoly) without reduction mod p^N.
    std::vector<Int> mul_exact(std::span<const Int> a, std::span<const Int> b) const;

    // Residue field F_q = F_p[w]/(minpoly mod p).
    ResidueVec residue_mul(const ResidueVec& a, const ResidueVec& b) const;
    ResidueVec residue_inverse(const ResidueVec& a) const;
    ResidueVec residue_pow(ResidueVec a, Int e) const;
    bool residue_is_zero(const ResidueVec& a) const noexcept;

    std::shared_ptr<const UnramifiedRing> handle() const { return shared_from_this(); }

    /// Images sigma(w)^j, j < f, of the basis under the Frobenius lift.
    const std::vector<std::vector<Int>>& frobenius_basis() const noexcept { return frob_basis_; }

private:
    friend std::shared_ptr<const UnramifiedRing> make_unramified(long p, int f, int n);
    UnramifiedRing(unsigned long p, int f, int n, std::vector<long> minpoly);
    void build_frobenius();

    unsigned long p_;
    int f_;
    int n_;
    Int modulus_;
    std::vector<long> minpoly_;
    std::vector<std::vector<Int>> frob_basis_;
};

using UnramifiedRingPtr = std::shared_ptr<const UnramifiedRing>;

/// Throws NonPrime, or InvalidArgument when f is outside [1, 8] or n < 1.
UnramifiedRingPtr make_unramified(long p, int f, int n);

/// Whether the monic polynomial x^deg + sum c_i x^i is irreducible over F_p,
/// decided by searching for monic factors of degree <= deg/2.
bool is_irreducible_mod_p(const std::vector<long>& low_coeffs, unsigned long p);

class UnramifiedElement {
public:
    UnramifiedElement() = default;
    UnramifiedElement(UnramifiedRingPtr ring, std::vector<Int> coords);

    const UnramifiedRing& ring() const { return *ring_; }
    const UnramifiedRingPtr& ring_ptr() const noexcept { return ring_; }
    const std::vector<Int>& coords() const noexcept { return c_; }

    UnramifiedElement operator+(const UnramifiedElement& o) const;
    UnramifiedElement operator-(const UnramifiedElement& o) const;
    UnramifiedElement operator-() const;
    UnramifiedElement operator*(const UnramifiedElement& o) const;
    bool operator==(const UnramifiedElement& o) const;

    UnramifiedElement pow(Int e) const;
    bool is_unit() const;
    /// Throws DivisionByZeroToPrecision for non-units.
    UnramifiedElement inverse() const;
    UnramifiedElement frobenius() const;
    ResidueVec residue() const;
    /// p-adic valuation, or the ring precision for zero.
    int valuation() const;

private:
    UnramifiedRingPtr ring_;
    std::vector<Int> c_;
};

}  // namespace fglab::local
