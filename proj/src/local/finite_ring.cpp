#include "fglab/local/finite_ring.hpp"

#include <map>
#include <mutex>

#include "fglab/error.hpp"

namespace fglab::local {

namespace {

constexpr std::uint32_t kMaxTableSize = 1024;

}  // namespace

FiniteElem FiniteElem::operator+(const FiniteElem& o) const
{
    if (ring == nullptr) return o;
    if (o.ring == nullptr) return *this;
    return {ring, ring->add(value, o.value)};
}

FiniteElem FiniteElem::operator-() const
{
    if (ring == nullptr) return *this;
    return {ring, ring->neg(value)};
}

FiniteElem FiniteElem::operator-(const FiniteElem& o) const { return *this + (-o); }

FiniteElem FiniteElem::operator*(const FiniteElem& o) const
{
    if (ring == nullptr) return *this;
    if (o.ring == nullptr) return o;
    return {ring, ring->mul(value, o.value)};
}

std::shared_ptr<const FiniteRing> FiniteRing::integers_mod(std::uint32_t m)
{
    if (m < 2 || m > kMaxTableSize) fail(ErrorCode::InvalidArgument, "Z/m needs 2 <= m <= 1024");
    auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
    ring->kind_ = Kind::IntegersMod;
    ring->size_ = m;
    ring->characteristic_ = m;
    ring->name_ = "Z/" + std::to_string(m);
    ring->add_.resize(static_cast<std::size_t>(m) * m);
    ring->mul_.resize(static_cast<std::size_t>(m) * m);
    for (std::uint32_t a = 0; a < m; ++a) {
        for (std::uint32_t b = 0; b < m; ++b) {
            ring->add_[a * m + b] = (a + b) % m;
            ring->mul_[a * m + b] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % m);
        }
    }
    ring->finish_tables();
    return ring;
}

std::shared_ptr<const FiniteRing> FiniteRing::galois_field(std::uint32_t p, int f)
{
    auto w = make_unramified(static_cast<long>(p), f, 1);
    return residue_field(*w);
}

std::shared_ptr<const FiniteRing> FiniteRing::residue_field(const UnramifiedRing& w)
{
    const Int q = w.q();
    if (q > kMaxTableSize) fail(ErrorCode::SizeLimit, "residue field larger than 1024 elements");
    const auto size = static_cast<std::uint32_t>(q.get_ui());
    auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
    ring->kind_ = w.f() == 1 ? Kind::IntegersMod : Kind::GaloisField;
    ring->size_ = size;
    ring->characteristic_ = static_cast<std::uint32_t>(w.p());
    ring->f_ = w.f();
    ring->minpoly_ = w.minpoly();
    ring->name_ = "F" + std::to_string(size);
    ring->add_.resize(static_cast<std::size_t>(size) * size);
    ring->mul_.resize(static_cast<std::size_t>(size) * size);
    std::vector<ResidueVec> decoded(size);
    for (std::uint32_t a = 0; a < size; ++a) decoded[a] = ring->to_residue({ring.get(), a});
    for (std::uint32_t a = 0; a < size; ++a) {
        for (std::uint32_t b = 0; b < size; ++b) {
            ResidueVec s(decoded[a].size());
            for (std::size_t j = 0; j < s.size(); ++j) s[j] = (decoded[a][j] + decoded[b][j]) % static_cast<long>(w.p());
            ring->add_[a * size + b] = ring->from_residue(s).value;
            ring->mul_[a * size + b] = ring->from_residue(w.residue_mul(decoded[a], decoded[b])).value;
        }
    }
    ring->finish_tables();
    return ring;
}

std::shared_ptr<const FiniteRing> FiniteRing::parse(const std::string& name)
{
    // Parsed rings live for the whole run: small polynomials hold raw ring
    // pointers, and equal names should give the same ring.
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const FiniteRing>> cache;
    const std::lock_guard<std::mutex> lock(mu);
    if (const auto it = cache.find(name); it != cache.end()) return it->second;
    auto ring = parse_uncached(name);
    cache.emplace(name, ring);
    return ring;
}

std::shared_ptr<const FiniteRing> FiniteRing::parse_uncached(const std::string& name)
{
    try {
        if (name.rfind("Z/", 0) == 0) return integers_mod(static_cast<std::uint32_t>(std::stoul(name.substr(2))));
        if (!name.empty() && name[0] == 'F') {
            const unsigned long q = std::stoul(name.substr(1));
            for (unsigned long p = 2; p <= q; ++p) {
                if (q % p != 0) continue;
                if (!is_prime(p)) break;
                unsigned long r = q;
                int f = 0;
                while (r % p == 0) {
                    r /= p;
                    ++f;
                }
                if (r != 1) break;
                return galois_field(static_cast<std::uint32_t>(p), f);
            }
        }
    } catch (const std::logic_error&) {
    }
    fail(ErrorCode::ParseError, "unknown finite ring '" + name + "' (expected F<q> or Z/<m>)");
}

void FiniteRing::finish_tables()
{
    neg_.assign(size_, 0);
    inv_.assign(size_, kNoInverse);
    for (std::uint32_t a = 0; a < size_; ++a) {
        if (mul_[a * size_ + a] == a && a != 0) {
            bool unit_law = true;
            for (std::uint32_t b = 0; b < size_ && unit_law; ++b) unit_law = mul_[a * size_ + b] == b;
            if (unit_law) one_ = a;
        }
    }
    for (std::uint32_t a = 0; a < size_; ++a) {
        for (std::uint32_t b = 0; b < size_; ++b) {
            if (add_[a * size_ + b] == 0) neg_[a] = b;
            if (mul_[a * size_ + b] == one_) inv_[a] = b;
        }
    }
}

std::uint32_t FiniteRing::inverse(std::uint32_t a) const
{
    if (inv_[a] == kNoInverse) fail(ErrorCode::DivisionByZeroToPrecision, "inverse of a non-unit in " + name_);
    return inv_[a];
}

std::vector<std::uint32_t> FiniteRing::units() const
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t a = 0; a < size_; ++a) {
        if (is_unit(a)) out.push_back(a);
    }
    return out;
}

FiniteElem FiniteRing::from_int(const Int& n) const
{
    const auto r = static_cast<std::uint32_t>(mpz_fdiv_ui(n.get_mpz_t(), characteristic_));
    if (kind_ == Kind::IntegersMod) return {this, r};
    ResidueVec v(static_cast<std::size_t>(f_), 0);
    v[0] = r;
    return from_residue(v);
}

FiniteElem FiniteRing::from_residue(const ResidueVec& r) const
{
    std::uint32_t v = 0;
    for (std::size_t j = r.size(); j-- > 0;) v = v * characteristic_ + static_cast<std::uint32_t>(mod_floor(r[j], characteristic_));
    return {this, v};
}

ResidueVec FiniteRing::to_residue(const FiniteElem& a) const
{
    ResidueVec r(static_cast<std::size_t>(f_), 0);
    std::uint32_t v = a.value;
    for (std::size_t j = 0; j < r.size(); ++j) {
        r[j] = v % characteristic_;
        v /= characteristic_;
    }
    return r;
}

}  // namespace fglab::local
