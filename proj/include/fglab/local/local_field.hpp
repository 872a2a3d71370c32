#pragma once

#include <climits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fglab/local/integer.hpp"
#include "fglab/local/unramified.hpp"

namespace fglab::local {

class LocalNum;

/// Precision stamp of an exact zero.
inline constexpr int kExactPrecision = INT_MAX / 4;

/// A finite extension L/Q_p given by an unramified base W(F_q) and an
/// Eisenstein polynomial pi^e + sum_{i<e} e_i pi^i over it.
///
/// Integral elements are coordinate vectors of length e*f, index i*f + j
/// holding the coefficient of pi^i w^j. An element known mod pi^r is stored
/// canonically: coordinate (i, j) reduced into [0, p^ceil((r-i)/e)), which is
/// exactly the ideal (pi^r) written in this basis.
class LocalField : public std::enable_shared_from_this<LocalField> {
public:
    const UnramifiedRing& base() const noexcept { return *base_; }
    const UnramifiedRingPtr& base_ptr() const noexcept { return base_; }
    unsigned long p() const noexcept { return base_->p(); }
    int f() const noexcept { return base_->f(); }
    int e() const noexcept { return e_; }
    int degree() const noexcept { return e_ * base_->f(); }
    int width() const noexcept { return e_ * base_->f(); }
    Int q() const { return base_->q(); }
    /// Default pi-adic precision given to constants.
    int precision() const noexcept { return m_; }
    const std::vector<std::vector<Int>>& eisenstein() const noexcept { return eis_; }
    /// True when the Eisenstein relation reads pi^e = p.
    bool is_pure() const noexcept { return pure_; }

    LocalNum zero() const;
    LocalNum zero_to(int abs_precision) const;
    LocalNum one() const;
    LocalNum from_int(const Int& n) const;
    LocalNum from_int(const Int& n, int abs_precision) const;
    LocalNum from_rational(const Rational& r) const;
    LocalNum from_unramified(const UnramifiedElement& x) const;
    /// Normalizes an integral coordinate vector known mod pi^abs_precision.
    LocalNum from_integral_coords(std::vector<Int> coords, int abs_precision) const;
    LocalNum uniformizer() const;

    /// m[i][j][l]: pi^i * pi^j = sum_l m[i][j][l] pi^l with exact W(k)
    /// coordinates (length f each).
    std::vector<std::vector<std::vector<std::vector<Int>>>> structure_constants() const;

    std::shared_ptr<const LocalField> handle() const { return shared_from_this(); }

    // Integral-coordinate kernels used by LocalNum.
    void canonicalize(std::vector<Int>& c, int r) const;
    std::vector<Int> mul_integral(std::span<const Int> a, std::span<const Int> b) const;
    /// c <- c * pi^k reduced mod pi^r.
    void mul_pi_pow(std::vector<Int>& c, int k, int r) const;
    /// pi-adic valuation of an integral vector canonical mod pi^r, capped at r.
    int integral_ord(std::span<const Int> c, int r) const;
    /// Exact c / pi^t for c canonical mod pi^r with ord >= t; result mod pi^(r-t).
    void div_pi_pow(std::vector<Int>& c, int t, int r) const;
    std::vector<Int> unit_inverse(std::span<const Int> u, int r) const;
    const Int& p_power(int k) const;

private:
    friend std::shared_ptr<const LocalField> make_local_field(UnramifiedRingPtr base, std::vector<std::vector<Int>> eis, int precision);
    LocalField(UnramifiedRingPtr base, std::vector<std::vector<Int>> eis, int precision);
    void div_pi_once(std::vector<Int>& c, int r) const;
    std::vector<Int> w_mul(std::span<const Int> a, std::span<const Int> b) const;

    UnramifiedRingPtr base_;
    int e_;
    int m_;
    std::vector<std::vector<Int>> eis_;
    bool pure_ = false;
    std::vector<Int> pow_table_;
    // 1/pi = -q_poly(pi) / e_0 with e_0 = p * u0; unused when pure.
    std::vector<Int> q_poly_;
    std::vector<Int> neg_u0_inverse_;
    bool u0_is_minus_one_ = false;
};

using LocalFieldPtr = std::shared_ptr<const LocalField>;

/// Validates the Eisenstein data (NotEisenstein names the failing index).
LocalFieldPtr make_local_field(UnramifiedRingPtr base, std::vector<std::vector<Int>> eis, int precision);

/// An element of L at finite precision: pi^v * u with u a unit known mod
/// pi^rel, or zero known mod pi^prec, or an exact zero.
class LocalNum {
public:
    enum class Kind : unsigned char { ExactZero, Zero, Nonzero };

    LocalNum() = default;

    const LocalFieldPtr& field_ptr() const noexcept { return field_; }
    Kind kind() const noexcept { return kind_; }
    bool is_exact_zero() const noexcept { return kind_ == Kind::ExactZero; }
    bool is_zero() const noexcept { return kind_ != Kind::Nonzero; }
    /// pi-adic valuation; for zero-to-precision the lower bound prec.
    int valuation() const noexcept;
    int abs_precision() const noexcept;
    int rel_precision() const noexcept { return kind_ == Kind::Nonzero ? rel_ : 0; }
    /// Unit part coordinates (length e*f); empty for zeros.
    const std::vector<Int>& unit_coords() const noexcept { return u_; }

    /// ord normalized so that ord(p) = 1. Throws PrecisionExhausted on zeros.
    Rational ord() const;
    bool is_integral() const noexcept { return kind_ != Kind::Nonzero || v_ >= 0; }
    bool is_unit() const noexcept { return kind_ == Kind::Nonzero && v_ == 0; }

    LocalNum operator+(const LocalNum& o) const;
    LocalNum operator-(const LocalNum& o) const;
    LocalNum operator-() const;
    LocalNum operator*(const LocalNum& o) const;
    LocalNum operator/(const LocalNum& o) const { return *this * o.inverse(); }
    LocalNum& operator+=(const LocalNum& o) { return *this = *this + o; }
    LocalNum& operator-=(const LocalNum& o) { return *this = *this - o; }
    LocalNum& operator*=(const LocalNum& o) { return *this = *this * o; }

    /// Throws DivisionByZeroToPrecision.
    LocalNum inverse() const;
    LocalNum pow(long n) const;
    /// Large exponents of non-units give zero to a huge precision.
    LocalNum pow(const Int& n) const;
    LocalNum times_pi_pow(int k) const;
    /// The same element with absolute precision lowered to at most abs_prec.
    LocalNum truncated(int abs_prec) const;

    /// Difference is zero to its tracked precision.
    bool equals(const LocalNum& o) const;

    /// Image in k_L = F_q. Throws NotIntegral or PrecisionExhausted.
    ResidueVec residue() const;

    std::string to_string() const;

    static LocalNum make_nonzero(LocalFieldPtr field, int v, int rel, std::vector<Int> unit);
    static LocalNum make_zero(LocalFieldPtr field, int abs_prec);

private:
    LocalFieldPtr field_;
    Kind kind_ = Kind::ExactZero;
    int v_ = 0;
    int rel_ = 0;
    std::vector<Int> u_;
};

}  // namespace fglab::local
