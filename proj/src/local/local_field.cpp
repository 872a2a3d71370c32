#include "fglab/local/local_field.hpp"

#include <algorithm>
#include <sstream>

#include "fglab/error.hpp"

namespace fglab::local {

namespace {

// ceil(a / b) for b > 0 and any sign of a.
int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

void divexact_by(Int& x, const Int& d) { mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t()); }

// Inverse of a W-unit modulo p^k by Newton iteration from the residue inverse.
std::vector<Int> w_unit_inverse(const UnramifiedRing& w, std::span<const Int> u, int k)
{
    ResidueVec r(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) r[j] = static_cast<long>(mpz_fdiv_ui(u[j].get_mpz_t(), w.p()));
    ResidueVec inv0 = w.residue_inverse(r);
    std::vector<Int> x(inv0.begin(), inv0.end());
    const Int mod = ipow(w.p(), static_cast<unsigned long>(k));
    for (int digits = 1; digits < k; digits *= 2) {
        std::vector<Int> t = w.mul_exact(u, x);
        for (auto& c : t) c = -c;
        t[0] += 2;
        x = w.mul_exact(x, t);
        for (auto& c : x) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    }
    for (auto& c : x) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod.get_mpz_t());
    return x;
}

}  // namespace

LocalFieldPtr make_local_field(UnramifiedRingPtr base, std::vector<std::vector<Int>> eis, int precision)
{
    if (!base) fail(ErrorCode::InvalidArgument, "missing unramified base");
    if (eis.empty()) fail(ErrorCode::InvalidArgument, "Eisenstein polynomial needs degree >= 1");
    if (precision < 1) fail(ErrorCode::InvalidArgument, "precision must be at least 1");
    const auto f = static_cast<std::size_t>(base->f());
    for (std::size_t i = 0; i < eis.size(); ++i) {
        if (eis[i].size() > f) fail(ErrorCode::InvalidArgument, "Eisenstein coefficient " + std::to_string(i) + " has too many coordinates");
        eis[i].resize(f);
        int ord = INT_MAX;
        for (const auto& c : eis[i]) {
            if (c != 0) ord = std::min(ord, ord_p(c, base->p()));
        }
        if (ord == 0) fail(ErrorCode::NotEisenstein, "coefficient e_" + std::to_string(i) + " is a unit");
        if (i == 0 && ord != 1) fail(ErrorCode::NotEisenstein, "coefficient e_0 must have valuation exactly 1");
    }
    auto field = LocalFieldPtr(new LocalField(std::move(base), std::move(eis), precision));
    // The rewrite rule pi^e = -sum e_i pi^i must produce an element of valuation e.
    std::vector<Int> rhs(static_cast<std::size_t>(field->width()));
    for (int i = 0; i < field->e(); ++i) {
        for (std::size_t j = 0; j < f; ++j) rhs[static_cast<std::size_t>(i) * f + j] = -field->eisenstein()[static_cast<std::size_t>(i)][j];
    }
    if (field->integral_ord(rhs, INT_MAX / 2) != field->e()) fail(ErrorCode::NotEisenstein, "relation does not have valuation e");
    return field;
}

LocalField::LocalField(UnramifiedRingPtr base, std::vector<std::vector<Int>> eis, int precision)
    : base_(std::move(base)), e_(static_cast<int>(eis.size())), m_(precision), eis_(std::move(eis))
{
    const auto f = static_cast<std::size_t>(base_->f());
    const Int p(base_->p());
    pure_ = eis_[0][0] == -p;
    for (std::size_t j = 1; j < f; ++j) pure_ = pure_ && eis_[0][j] == 0;
    for (std::size_t i = 1; i < eis_.size(); ++i) {
        for (const auto& c : eis_[i]) pure_ = pure_ && c == 0;
    }
    const int table = 4 * m_ + 64;
    pow_table_.resize(static_cast<std::size_t>(table));
    pow_table_[0] = 1;
    for (std::size_t k = 1; k < pow_table_.size(); ++k) pow_table_[k] = pow_table_[k - 1] * p;

    if (!pure_) {
        q_poly_.assign(static_cast<std::size_t>(width()), Int(0));
        q_poly_[static_cast<std::size_t>(e_ - 1) * f] += 1;
        for (int s = 1; s < e_; ++s) {
            for (std::size_t j = 0; j < f; ++j) q_poly_[static_cast<std::size_t>(s - 1) * f + j] += eis_[static_cast<std::size_t>(s)][j];
        }
        std::vector<Int> u0(f);
        for (std::size_t j = 0; j < f; ++j) {
            u0[j] = eis_[0][j];
            divexact_by(u0[j], p);
        }
        u0_is_minus_one_ = u0[0] == -1;
        for (std::size_t j = 1; j < f; ++j) u0_is_minus_one_ = u0_is_minus_one_ && u0[j] == 0;
        neg_u0_inverse_ = w_unit_inverse(*base_, u0, ceil_div(m_, e_) + 8);
        for (auto& c : neg_u0_inverse_) c = -c;
    }
}

const Int& LocalField::p_power(int k) const
{
    if (k >= 0 && static_cast<std::size_t>(k) < pow_table_.size()) return pow_table_[static_cast<std::size_t>(k)];
    thread_local Int scratch;
    scratch = ipow(p(), static_cast<unsigned long>(k));
    return scratch;
}

void LocalField::canonicalize(std::vector<Int>& c, int r) const
{
    const auto f = static_cast<std::size_t>(base_->f());
    for (int i = 0; i < e_; ++i) {
        const int k = ceil_div(r - i, e_);
        for (std::size_t j = 0; j < f; ++j) {
            Int& x = c[static_cast<std::size_t>(i) * f + j];
            if (k <= 0) {
                x = 0;
            } else {
                const Int& mod = p_power(k);
                if (x < 0 || x >= mod) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
            }
        }
    }
}

std::vector<Int> LocalField::w_mul(std::span<const Int> a, std::span<const Int> b) const { return base_->mul_exact(a, b); }

std::vector<Int> LocalField::mul_integral(std::span<const Int> a, std::span<const Int> b) const
{
    const auto f = static_cast<std::size_t>(base_->f());
    const auto e = static_cast<std::size_t>(e_);
    if (f == 1 && e == 1) return {a[0] * b[0]};
    std::vector<Int> prod((2 * e - 1) * f);
    for (std::size_t i1 = 0; i1 < e; ++i1) {
        const auto ai = a.subspan(i1 * f, f);
        if (std::all_of(ai.begin(), ai.end(), [](const Int& x) { return x == 0; })) continue;
        for (std::size_t i2 = 0; i2 < e; ++i2) {
            const auto bi = b.subspan(i2 * f, f);
            if (f == 1) {
                if (bi[0] != 0) prod[i1 + i2] += ai[0] * bi[0];
                continue;
            }
            std::vector<Int> t = w_mul(ai, bi);
            for (std::size_t j = 0; j < f; ++j) prod[(i1 + i2) * f + j] += t[j];
        }
    }
    for (std::size_t d = 2 * e - 2; d >= e; --d) {
        std::span<Int> top(prod.data() + d * f, f);
        if (std::all_of(top.begin(), top.end(), [](const Int& x) { return x == 0; })) continue;
        if (pure_) {
            const Int& p = p_power(1);
            for (std::size_t j = 0; j < f; ++j) prod[(d - e) * f + j] += top[j] * p;
        } else {
            for (std::size_t s = 0; s < e; ++s) {
                std::vector<Int> t = w_mul(top, eis_[s]);
                for (std::size_t j = 0; j < f; ++j) prod[(d - e + s) * f + j] -= t[j];
            }
        }
        for (auto& x : top) x = 0;
    }
    prod.resize(e * f);
    return prod;
}

void LocalField::mul_pi_pow(std::vector<Int>& c, int k, int r) const
{
    if (k <= 0) {
        canonicalize(c, r);
        return;
    }
    if (k >= r) {
        for (auto& x : c) x = 0;
        return;
    }
    const auto f = static_cast<std::size_t>(base_->f());
    if (pure_) {
        std::vector<Int> out(c.size());
        for (int i = 0; i < e_; ++i) {
            const int t = i + k;
            const auto target = static_cast<std::size_t>(t % e_);
            const Int& scale = p_power(t / e_);
            for (std::size_t j = 0; j < f; ++j) out[target * f + j] = c[static_cast<std::size_t>(i) * f + j] * scale;
        }
        c = std::move(out);
        canonicalize(c, r);
        return;
    }
    const auto e = static_cast<std::size_t>(e_);
    for (int step = 0; step < k; ++step) {
        std::vector<Int> top(c.end() - static_cast<long>(f), c.end());
        for (std::size_t d = e - 1; d >= 1; --d) {
            for (std::size_t j = 0; j < f; ++j) c[d * f + j] = c[(d - 1) * f + j];
        }
        for (std::size_t j = 0; j < f; ++j) c[j] = 0;
        for (std::size_t s = 0; s < e; ++s) {
            std::vector<Int> t = w_mul(top, eis_[s]);
            for (std::size_t j = 0; j < f; ++j) c[s * f + j] -= t[j];
        }
        canonicalize(c, r);
    }
}

int LocalField::integral_ord(std::span<const Int> c, int r) const
{
    const auto f = static_cast<std::size_t>(base_->f());
    int best = r;
    for (int i = 0; i < e_ && i < best; ++i) {
        for (std::size_t j = 0; j < f; ++j) {
            const Int& x = c[static_cast<std::size_t>(i) * f + j];
            if (x == 0) continue;
            const int val = e_ * ord_p(x, p()) + i;
            best = std::min(best, val);
        }
    }
    return best;
}

void LocalField::div_pi_once(std::vector<Int>& c, int r) const
{
    const auto f = static_cast<std::size_t>(base_->f());
    const Int& p = p_power(1);
    if (pure_) {
        std::vector<Int> out(c.size());
        for (std::size_t i = 1; i < static_cast<std::size_t>(e_); ++i) {
            for (std::size_t j = 0; j < f; ++j) out[(i - 1) * f + j] = c[i * f + j];
        }
        const std::size_t last = static_cast<std::size_t>(e_ - 1) * f;
        for (std::size_t j = 0; j < f; ++j) {
            Int x = c[j];
            divexact_by(x, p);
            out[last + j] += x;
        }
        c = std::move(out);
    } else {
        std::vector<Int> z = mul_integral(c, q_poly_);
        for (auto& x : z) divexact_by(x, p);
        if (!u0_is_minus_one_) {
            for (std::size_t i = 0; i < static_cast<std::size_t>(e_); ++i) {
                std::span<const Int> zi(z.data() + i * f, f);
                std::vector<Int> t = w_mul(zi, neg_u0_inverse_);
                std::copy(t.begin(), t.end(), z.begin() + static_cast<long>(i * f));
            }
        }
        c = std::move(z);
    }
    canonicalize(c, r);
}

void LocalField::div_pi_pow(std::vector<Int>& c, int t, int r) const
{
    if (t <= 0) return;
    if (pure_ && t >= e_) {
        const Int& scale = p_power(t / e_);
        for (auto& x : c) divexact_by(x, scale);
        r -= (t / e_) * e_;
        t %= e_;
        canonicalize(c, r);
    }
    for (int s = 0; s < t; ++s) div_pi_once(c, r - s - 1);
}

std::vector<Int> LocalField::unit_inverse(std::span<const Int> u, int r) const
{
    const auto f = static_cast<std::size_t>(base_->f());
    if (width() == 1) {
        Int x;
        if (mpz_invert(x.get_mpz_t(), u[0].get_mpz_t(), p_power(ceil_div(r, e_)).get_mpz_t()) == 0) {
            fail(ErrorCode::DivisionByZeroToPrecision, "unit inverse of a non-unit");
        }
        std::vector<Int> out{x};
        canonicalize(out, r);
        return out;
    }
    ResidueVec r0(f);
    for (std::size_t j = 0; j < f; ++j) r0[j] = static_cast<long>(mpz_fdiv_ui(u[j].get_mpz_t(), p()));
    ResidueVec inv0 = base_->residue_inverse(r0);
    std::vector<Int> x(static_cast<std::size_t>(width()));
    for (std::size_t j = 0; j < f; ++j) x[j] = inv0[j];
    for (int prec = 1; prec < r;) {
        prec = std::min(2 * prec, r);
        std::vector<Int> t = mul_integral(u, x);
        for (auto& c : t) c = -c;
        t[0] += 2;
        canonicalize(t, prec);
        x = mul_integral(x, t);
        canonicalize(x, prec);
    }
    canonicalize(x, r);
    return x;
}

LocalNum LocalField::zero() const
{
    LocalNum z = LocalNum::make_zero(handle(), kExactPrecision);
    return z;
}

LocalNum LocalField::zero_to(int abs_precision) const { return LocalNum::make_zero(handle(), abs_precision); }

LocalNum LocalField::one() const { return from_int(1); }

LocalNum LocalField::from_int(const Int& n) const
{
    // Constants carry the default precision relative to their own valuation.
    if (n == 0) return zero();
    return from_int(n, m_ + e_ * ord_p(n, p()));
}

LocalNum LocalField::from_int(const Int& n, int abs_precision) const
{
    if (n == 0) return zero();
    std::vector<Int> c(static_cast<std::size_t>(width()));
    c[0] = n;
    return from_integral_coords(std::move(c), abs_precision);
}

LocalNum LocalField::from_rational(const Rational& r) const
{
    LocalNum num = from_int(r.get_num());
    if (r.get_den() == 1) return num;
    return num * from_int(r.get_den()).inverse();
}

LocalNum LocalField::from_unramified(const UnramifiedElement& x) const
{
    std::vector<Int> c(static_cast<std::size_t>(width()));
    std::copy(x.coords().begin(), x.coords().end(), c.begin());
    return from_integral_coords(std::move(c), std::min(m_, e_ * x.ring().precision()));
}

LocalNum LocalField::from_integral_coords(std::vector<Int> coords, int abs_precision) const
{
    if (coords.size() != static_cast<std::size_t>(width())) fail(ErrorCode::InvalidArgument, "coordinate vector has wrong length");
    if (abs_precision <= 0) return zero_to(abs_precision);
    canonicalize(coords, abs_precision);
    const int t = integral_ord(coords, abs_precision);
    if (t >= abs_precision) return zero_to(abs_precision);
    div_pi_pow(coords, t, abs_precision);
    return LocalNum::make_nonzero(handle(), t, abs_precision - t, std::move(coords));
}

LocalNum LocalField::uniformizer() const
{
    if (e_ == 1) {
        std::vector<Int> c(static_cast<std::size_t>(width()));
        for (std::size_t j = 0; j < c.size(); ++j) c[j] = -eis_[0][j];
        return from_integral_coords(std::move(c), m_ + 1);
    }
    std::vector<Int> one(static_cast<std::size_t>(width()));
    one[0] = 1;
    return LocalNum::make_nonzero(handle(), 1, m_, std::move(one));
}

std::vector<std::vector<std::vector<std::vector<Int>>>> LocalField::structure_constants() const
{
    const auto e = static_cast<std::size_t>(e_);
    const auto f = static_cast<std::size_t>(base_->f());
    std::vector<std::vector<std::vector<std::vector<Int>>>> table(e, std::vector<std::vector<std::vector<Int>>>(e));
    for (std::size_t i = 0; i < e; ++i) {
        for (std::size_t j = 0; j < e; ++j) {
            std::vector<Int> pi_i(e * f);
            pi_i[i * f] = 1;
            std::vector<Int> pi_j(e * f);
            pi_j[j * f] = 1;
            std::vector<Int> prod = e == 1 ? pi_i : mul_integral(pi_i, pi_j);
            auto& entry = table[i][j];
            entry.assign(e, std::vector<Int>(f));
            for (std::size_t l = 0; l < e; ++l) {
                for (std::size_t k = 0; k < f; ++k) entry[l][k] = prod[l * f + k];
            }
        }
    }
    return table;
}

// ---------------------------------------------------------------------------

LocalNum LocalNum::make_nonzero(LocalFieldPtr field, int v, int rel, std::vector<Int> unit)
{
    LocalNum x;
    x.field_ = std::move(field);
    x.kind_ = Kind::Nonzero;
    x.v_ = v;
    x.rel_ = rel;
    x.u_ = std::move(unit);
    return x;
}

LocalNum LocalNum::make_zero(LocalFieldPtr field, int abs_prec)
{
    LocalNum x;
    x.field_ = std::move(field);
    x.kind_ = abs_prec >= kExactPrecision ? Kind::ExactZero : Kind::Zero;
    x.v_ = abs_prec;
    return x;
}

int LocalNum::valuation() const noexcept
{
    switch (kind_) {
    case Kind::ExactZero: return kExactPrecision;
    case Kind::Zero: return v_;
    case Kind::Nonzero: return v_;
    }
    return 0;
}

int LocalNum::abs_precision() const noexcept
{
    switch (kind_) {
    case Kind::ExactZero: return kExactPrecision;
    case Kind::Zero: return v_;
    case Kind::Nonzero: return v_ + rel_;
    }
    return 0;
}

Rational LocalNum::ord() const
{
    if (kind_ != Kind::Nonzero) fail(ErrorCode::PrecisionExhausted, "valuation of a zero-to-precision element");
    Rational r(v_, field_->e());
    r.canonicalize();
    return r;
}

LocalNum LocalNum::truncated(int abs_prec) const
{
    if (kind_ == Kind::ExactZero) return *this;
    if (kind_ == Kind::Zero) return make_zero(field_, std::min(v_, abs_prec));
    if (v_ >= abs_prec) return make_zero(field_, abs_prec);
    if (abs_prec - v_ >= rel_) return *this;
    LocalNum x = *this;
    x.rel_ = abs_prec - v_;
    field_->canonicalize(x.u_, x.rel_);
    return x;
}

LocalNum LocalNum::operator+(const LocalNum& o) const
{
    if (kind_ == Kind::ExactZero) return o;
    if (o.kind_ == Kind::ExactZero) return *this;
    const int prec = std::min(abs_precision(), o.abs_precision());
    if (kind_ == Kind::Zero) return o.truncated(prec);
    if (o.kind_ == Kind::Zero) return truncated(prec);
    const int vmin = std::min(v_, o.v_);
    if (vmin >= prec) return make_zero(field_, prec);
    const int r = prec - vmin;
    const LocalField& fld = *field_;
    std::vector<Int> s = u_;
    if (v_ > vmin) {
        fld.mul_pi_pow(s, v_ - vmin, r);
    }
    if (o.v_ > vmin) {
        std::vector<Int> t = o.u_;
        fld.mul_pi_pow(t, o.v_ - vmin, r);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i];
    } else {
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += o.u_[i];
    }
    fld.canonicalize(s, r);
    if (v_ != o.v_) return make_nonzero(field_, vmin, r, std::move(s));
    const int t = fld.integral_ord(s, r);
    if (t >= r) return make_zero(field_, prec);
    if (t > 0) fld.div_pi_pow(s, t, r);
    return make_nonzero(field_, vmin + t, r - t, std::move(s));
}

LocalNum LocalNum::operator-() const
{
    if (kind_ != Kind::Nonzero) return *this;
    LocalNum x = *this;
    for (auto& c : x.u_) c = -c;
    field_->canonicalize(x.u_, x.rel_);
    return x;
}

LocalNum LocalNum::operator-(const LocalNum& o) const { return *this + (-o); }

LocalNum LocalNum::operator*(const LocalNum& o) const
{
    if (kind_ == Kind::ExactZero) return *this;
    if (o.kind_ == Kind::ExactZero) return o;
    if (kind_ == Kind::Zero || o.kind_ == Kind::Zero) return make_zero(field_, std::min(valuation() + o.valuation(), kExactPrecision - 1));
    const int rel = std::min(rel_, o.rel_);
    std::vector<Int> u = field_->mul_integral(u_, o.u_);
    field_->canonicalize(u, rel);
    return make_nonzero(field_, v_ + o.v_, rel, std::move(u));
}

LocalNum LocalNum::inverse() const
{
    if (kind_ != Kind::Nonzero) fail(ErrorCode::DivisionByZeroToPrecision, "inverse of an element that is zero to precision");
    return make_nonzero(field_, -v_, rel_, field_->unit_inverse(u_, rel_));
}

LocalNum LocalNum::pow(long n) const
{
    if (n < 0) return inverse().pow(-n);
    if (n == 0) return field_->one();
    LocalNum r;
    bool have = false;
    LocalNum b = *this;
    while (n > 0) {
        if (n & 1) {
            r = have ? r * b : b;
            have = true;
        }
        n >>= 1;
        if (n > 0) b = b * b;
    }
    return r;
}

LocalNum LocalNum::pow(const Int& n) const
{
    if (n < 0) return inverse().pow(Int(-n));
    if (n.fits_slong_p() && n.get_si() < 64) return pow(n.get_si());
    if (kind_ == Kind::ExactZero) return *this;
    // Valuation n*v is beyond any precision we could carry.
    if (kind_ == Kind::Zero || v_ > 0) return make_zero(field_, kExactPrecision - 1);
    if (v_ < 0) fail(ErrorCode::PrecisionExhausted, "power of a non-integral element overflows the valuation range");
    LocalNum r = field_->one();
    LocalNum b = *this;
    for (std::size_t bit = mpz_sizeinbase(n.get_mpz_t(), 2); bit-- > 0;) {
        r = r * r;
        if (mpz_tstbit(n.get_mpz_t(), bit)) r = r * b;
    }
    return r;
}

LocalNum LocalNum::times_pi_pow(int k) const
{
    if (kind_ == Kind::ExactZero) return *this;
    LocalNum x = *this;
    x.v_ += k;
    return x;
}

bool LocalNum::equals(const LocalNum& o) const { return (*this - o).is_zero(); }

ResidueVec LocalNum::residue() const
{
    if (!field_) return {0};
    const auto f = static_cast<std::size_t>(field_->f());
    if (kind_ == Kind::ExactZero) return ResidueVec(f, 0);
    if (kind_ == Kind::Zero) {
        if (v_ < 1) fail(ErrorCode::PrecisionExhausted, "residue of an element known to no digits");
        return ResidueVec(f, 0);
    }
    if (v_ < 0) fail(ErrorCode::NotIntegral, "residue of a non-integral element");
    if (v_ > 0) return ResidueVec(f, 0);
    ResidueVec r(f);
    for (std::size_t j = 0; j < f; ++j) r[j] = static_cast<long>(mpz_fdiv_ui(u_[j].get_mpz_t(), field_->p()));
    return r;
}

std::string LocalNum::to_string() const
{
    std::ostringstream os;
    if (kind_ == Kind::ExactZero) return "0";
    const LocalField& fld = *field_;
    const bool scalar = fld.width() == 1 && fld.is_pure();
    if (kind_ == Kind::Zero) {
        os << "O(" << (scalar ? std::to_string(fld.p()) : std::string("pi")) << "^" << v_ << ")";
        return os.str();
    }
    if (scalar) {
        // Signed representative closest to zero reads better for small values.
        Int u = u_[0];
        const Int& mod = fld.p_power(rel_);
        if (u > mod / 2) u -= mod;
        if (v_ >= 0) {
            os << Int(u * fld.p_power(v_)).get_str();
        } else {
            os << u.get_str() << "/" << fld.p() << "^" << -v_;
        }
        os << " + O(" << fld.p() << "^" << v_ + rel_ << ")";
        return os.str();
    }
    os << "pi^" << v_ << "*(";
    for (std::size_t i = 0; i < u_.size(); ++i) os << (i ? "," : "") << u_[i].get_str();
    os << ") + O(pi^" << v_ + rel_ << ")";
    return os.str();
}

}  // namespace fglab::local
