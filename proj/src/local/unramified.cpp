#include "fglab/local/unramified.hpp"

#include <string>

#include "fglab/error.hpp"

namespace fglab::local {

namespace {

// Remainder of the monic polynomial a (coefficients low to high) mod p.
ResidueVec poly_rem_mod_p(ResidueVec a, const ResidueVec& monic, unsigned long p)
{
    const long lp = static_cast<long>(p);
    const std::size_t d = monic.size() - 1;
    while (a.size() > d) {
        const long lead = a.back();
        if (lead != 0) {
            const std::size_t shift = a.size() - 1 - d;
            for (std::size_t i = 0; i < d; ++i) a[shift + i] = mod_floor(a[shift + i] - lead * monic[i], lp);
        }
        a.pop_back();
    }
    return a;
}

bool divides_mod_p(const ResidueVec& factor_monic, const ResidueVec& poly_monic, unsigned long p)
{
    ResidueVec r = poly_rem_mod_p(poly_monic, factor_monic, p);
    for (long c : r) {
        if (c != 0) return false;
    }
    return true;
}

}  // namespace

bool is_irreducible_mod_p(const std::vector<long>& low_coeffs, unsigned long p)
{
    const int deg = static_cast<int>(low_coeffs.size());
    if (deg <= 1) return deg == 1;
    ResidueVec poly(low_coeffs.begin(), low_coeffs.end());
    for (auto& c : poly) c = mod_floor(c, static_cast<long>(p));
    poly.push_back(1);
    for (int d = 1; d <= deg / 2; ++d) {
        // Every monic degree-d candidate, indexed by its low coefficients in base p.
        ResidueVec cand(static_cast<std::size_t>(d) + 1, 0);
        cand[static_cast<std::size_t>(d)] = 1;
        while (true) {
            if (divides_mod_p(cand, poly, p)) return false;
            int i = 0;
            while (i < d) {
                if (++cand[static_cast<std::size_t>(i)] < static_cast<long>(p)) break;
                cand[static_cast<std::size_t>(i)] = 0;
                ++i;
            }
            if (i == d) break;
        }
    }
    return true;
}

UnramifiedRingPtr make_unramified(long p, int f, int n)
{
    if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    if (f < 1 || f > 8) fail(ErrorCode::InvalidArgument, "residue degree must lie in [1, 8]");
    if (n < 1) fail(ErrorCode::InvalidArgument, "precision must be at least 1");
    // Lexicographic order on (c_{f-1}, ..., c_0): c_{f-1} is the most
    // significant digit of the search index.
    std::vector<long> coeffs(static_cast<std::size_t>(f), 0);
    const auto up = static_cast<unsigned long>(p);
    while (true) {
        bool admissible = f == 1 || coeffs[0] != 0;
        if (admissible && is_irreducible_mod_p(coeffs, up)) {
            return UnramifiedRingPtr(new UnramifiedRing(up, f, n, coeffs));
        }
        int i = 0;
        while (i < f) {
            if (++coeffs[static_cast<std::size_t>(i)] < p) break;
            coeffs[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
        if (i == f) break;
    }
    fail(ErrorCode::IrreduciblePolyNotFound, "no irreducible polynomial of degree " + std::to_string(f));
}

UnramifiedRing::UnramifiedRing(unsigned long p, int f, int n, std::vector<long> minpoly)
    : p_(p), f_(f), n_(n), modulus_(ipow(p, static_cast<unsigned long>(n))), minpoly_(std::move(minpoly))
{
    build_frobenius();
}

std::vector<Int> UnramifiedRing::mul_exact(std::span<const Int> a, std::span<const Int> b) const
{
    const auto f = static_cast<std::size_t>(f_);
    if (f == 1) return {a[0] * b[0]};
    std::vector<Int> prod(2 * f - 1);
    for (std::size_t i = 0; i < f; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < f; ++j) prod[i + j] += a[i] * b[j];
    }
    for (std::size_t d = 2 * f - 2; d >= f; --d) {
        if (prod[d] == 0) continue;
        const Int lead = prod[d];
        for (std::size_t i = 0; i < f; ++i) {
            if (minpoly_[i] != 0) prod[d - f + i] -= lead * minpoly_[i];
        }
    }
    prod.resize(f);
    return prod;
}

ResidueVec UnramifiedRing::residue_mul(const ResidueVec& a, const ResidueVec& b) const
{
    const auto f = static_cast<std::size_t>(f_);
    const auto lp = static_cast<long>(p_);
    ResidueVec prod(2 * f - 1, 0);
    for (std::size_t i = 0; i < f; ++i) {
        for (std::size_t j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % lp;
    }
    ResidueVec monic(minpoly_.begin(), minpoly_.end());
    monic.push_back(1);
    prod = poly_rem_mod_p(std::move(prod), monic, p_);
    prod.resize(f, 0);
    return prod;
}

ResidueVec UnramifiedRing::residue_pow(ResidueVec a, Int e) const
{
    ResidueVec r(static_cast<std::size_t>(f_), 0);
    r[0] = 1 % static_cast<long>(p_);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = residue_mul(r, a);
        a = residue_mul(a, a);
        e >>= 1;
    }
    return r;
}

bool UnramifiedRing::residue_is_zero(const ResidueVec& a) const noexcept
{
    for (long c : a) {
        if (c % static_cast<long>(p_) != 0) return false;
    }
    return true;
}

ResidueVec UnramifiedRing::residue_inverse(const ResidueVec& a) const
{
    if (residue_is_zero(a)) fail(ErrorCode::DivisionByZeroToPrecision, "inverse of zero in the residue field");
    return residue_pow(a, q() - 2);
}

UnramifiedElement UnramifiedRing::zero() const
{
    return {handle(), std::vector<Int>(static_cast<std::size_t>(f_))};
}

UnramifiedElement UnramifiedRing::one() const { return from_int(1); }

UnramifiedElement UnramifiedRing::from_int(const Int& n) const
{
    std::vector<Int> c(static_cast<std::size_t>(f_));
    c[0] = n;
    return from_coords(std::move(c));
}

UnramifiedElement UnramifiedRing::from_coords(std::vector<Int> coords) const
{
    if (coords.size() != static_cast<std::size_t>(f_)) fail(ErrorCode::InvalidArgument, "coordinate vector has wrong length");
    return {handle(), std::move(coords)};
}

UnramifiedElement UnramifiedRing::generator() const
{
    std::vector<Int> c(static_cast<std::size_t>(f_));
    if (f_ == 1) {
        c[0] = -minpoly_[0];
    } else {
        c[1] = 1;
    }
    return {handle(), std::move(c)};
}

UnramifiedElement UnramifiedRing::teichmuller(const ResidueVec& r) const
{
    if (r.size() != static_cast<std::size_t>(f_)) fail(ErrorCode::InvalidArgument, "residue vector has wrong length");
    std::vector<Int> c(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) c[i] = mod_floor(r[i], static_cast<long>(p_));
    UnramifiedElement x(handle(), std::move(c));
    const Int qq = q();
    // x -> x^q contracts by one p-adic digit per step.
    for (int step = 0; step <= n_; ++step) {
        UnramifiedElement next = x.pow(qq);
        if (next == x) break;
        x = std::move(next);
    }
    return x;
}

void UnramifiedRing::build_frobenius()
{
    const auto f = static_cast<std::size_t>(f_);
    frob_basis_.assign(f, std::vector<Int>(f));
    frob_basis_[0][0] = 1;
    if (f == 1) return;
    // sigma(w) is the root of the lifted minpoly congruent to w^p; Newton
    // iteration converges because minpoly is separable mod p.
    auto self = UnramifiedRingPtr(this, [](const UnramifiedRing*) {});
    std::vector<Int> wc(f);
    wc[1] = 1;
    UnramifiedElement w(self, wc);
    UnramifiedElement x = w.pow(Int(p_));
    auto eval = [&](const UnramifiedElement& t, bool derivative) {
        UnramifiedElement acc = UnramifiedElement(self, std::vector<Int>(f));
        // Horner on x^f + sum c_i x^i, or its derivative.
        std::vector<Int> coeffs(f + 1);
        for (std::size_t i = 0; i < f; ++i) coeffs[i] = minpoly_[i];
        coeffs[f] = 1;
        if (derivative) {
            for (std::size_t i = 0; i < f; ++i) coeffs[i] = coeffs[i + 1] * static_cast<long>(i + 1);
            coeffs[f] = 0;
        }
        for (std::size_t k = f + 1; k-- > 0;) {
            std::vector<Int> cst(f);
            cst[0] = coeffs[k];
            acc = acc * t + UnramifiedElement(self, cst);
        }
        return acc;
    };
    for (int step = 0; step < 2 * n_ + 4; ++step) {
        UnramifiedElement next = x - eval(x, false) * eval(x, true).inverse();
        if (next == x) break;
        x = std::move(next);
    }
    UnramifiedElement pw(self, frob_basis_[0]);
    for (std::size_t j = 1; j < f; ++j) {
        pw = pw * x;
        frob_basis_[j] = pw.coords();
    }
}

UnramifiedElement::UnramifiedElement(UnramifiedRingPtr ring, std::vector<Int> coords)
    : ring_(std::move(ring)), c_(std::move(coords))
{
    for (auto& c : c_) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), ring_->modulus().get_mpz_t());
}

UnramifiedElement UnramifiedElement::operator+(const UnramifiedElement& o) const
{
    std::vector<Int> c(c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] + o.c_[i];
    return {ring_, std::move(c)};
}

UnramifiedElement UnramifiedElement::operator-(const UnramifiedElement& o) const
{
    std::vector<Int> c(c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] - o.c_[i];
    return {ring_, std::move(c)};
}

UnramifiedElement UnramifiedElement::operator-() const
{
    std::vector<Int> c(c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
    return {ring_, std::move(c)};
}

UnramifiedElement UnramifiedElement::operator*(const UnramifiedElement& o) const
{
    return {ring_, ring_->mul_exact(c_, o.c_)};
}

bool UnramifiedElement::operator==(const UnramifiedElement& o) const { return c_ == o.c_; }

UnramifiedElement UnramifiedElement::pow(Int e) const
{
    if (e < 0) return inverse().pow(-e);
    std::vector<Int> one(c_.size());
    one[0] = 1;
    UnramifiedElement r(ring_, std::move(one));
    UnramifiedElement b = *this;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

ResidueVec UnramifiedElement::residue() const
{
    ResidueVec r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = static_cast<long>(mpz_fdiv_ui(c_[i].get_mpz_t(), ring_->p()));
    return r;
}

bool UnramifiedElement::is_unit() const { return !ring_->residue_is_zero(residue()); }

UnramifiedElement UnramifiedElement::inverse() const
{
    ResidueVec r0 = ring_->residue_inverse(residue());
    std::vector<Int> c(r0.begin(), r0.end());
    UnramifiedElement x(ring_, std::move(c));
    std::vector<Int> two(c_.size());
    two[0] = 2;
    const UnramifiedElement two_el(ring_, std::move(two));
    // Newton doubles the number of correct digits.
    for (int digits = 1; digits < ring_->precision(); digits *= 2) x = x * (two_el - *this * x);
    return x;
}

UnramifiedElement UnramifiedElement::frobenius() const
{
    const auto& basis = ring_->frobenius_basis();
    std::vector<Int> out(c_.size());
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[j] * basis[j][i];
    }
    return {ring_, std::move(out)};
}

int UnramifiedElement::valuation() const
{
    int best = ring_->precision();
    for (const auto& c : c_) {
        if (c != 0) best = std::min(best, ord_p(c, ring_->p()));
    }
    return best;
}

}  // namespace fglab::local
