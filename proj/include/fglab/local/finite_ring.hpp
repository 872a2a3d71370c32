#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fglab/local/integer.hpp"
#include "fglab/local/unramified.hpp"

namespace fglab::local {

class FiniteRing;

/// Element of a small finite ring; the value indexes the ring's tables.
/// A default-constructed element has no ring and behaves as zero.
struct FiniteElem {
    const FiniteRing* ring = nullptr;
    std::uint32_t value = 0;

    FiniteElem operator+(const FiniteElem& o) const;
    FiniteElem operator-(const FiniteElem& o) const;
    FiniteElem operator-() const;
    FiniteElem operator*(const FiniteElem& o) const;
    FiniteElem& operator+=(const FiniteElem& o) { return *this = *this + o; }
    FiniteElem& operator*=(const FiniteElem& o) { return *this = *this * o; }
    FiniteElem& operator-=(const FiniteElem& o) { return *this = *this - o; }
    bool operator==(const FiniteElem& o) const { return value == o.value; }
};

/// Z/m or F_q, with full addition and multiplication tables (size <= 1024).
/// F_q elements are encoded as sum c_j p^j over the basis 1, w, ..., w^{f-1}
/// of F_p[w]/(minpoly), minpoly being the one make_unramified picks.
class FiniteRing : public std::enable_shared_from_this<FiniteRing> {
public:
    enum class Kind { IntegersMod, GaloisField };

    static std::shared_ptr<const FiniteRing> integers_mod(std::uint32_t m);
    static std::shared_ptr<const FiniteRing> galois_field(std::uint32_t p, int f);
    /// Residue field of an unramified ring, sharing its minimal polynomial.
    static std::shared_ptr<const FiniteRing> residue_field(const UnramifiedRing& w);
    /// "F5", "F25", "Z/4" and friends; cached, so one name gives one ring.
    static std::shared_ptr<const FiniteRing> parse(const std::string& name);

    Kind kind() const noexcept { return kind_; }
    std::uint32_t size() const noexcept { return size_; }
    std::uint32_t characteristic() const noexcept { return characteristic_; }
    int degree() const noexcept { return f_; }
    const std::string& name() const noexcept { return name_; }

    FiniteElem element(std::uint32_t v) const { return {this, v}; }
    FiniteElem zero() const { return {this, 0}; }
    FiniteElem one() const { return {this, one_}; }
    FiniteElem from_int(const Int& n) const;
    FiniteElem from_residue(const ResidueVec& r) const;
    ResidueVec to_residue(const FiniteElem& a) const;

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return add_[a * size_ + b]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return mul_[a * size_ + b]; }
    std::uint32_t neg(std::uint32_t a) const noexcept { return neg_[a]; }
    bool is_unit(std::uint32_t a) const noexcept { return inv_[a] != kNoInverse; }
    /// Throws DivisionByZeroToPrecision for non-units.
    std::uint32_t inverse(std::uint32_t a) const;
    std::vector<std::uint32_t> units() const;

private:
    static constexpr std::uint32_t kNoInverse = 0xFFFFFFFFU;
    FiniteRing() = default;
    static std::shared_ptr<const FiniteRing> parse_uncached(const std::string& name);
    void finish_tables();

    Kind kind_ = Kind::IntegersMod;
    std::uint32_t size_ = 0;
    std::uint32_t characteristic_ = 0;
    int f_ = 1;
    std::uint32_t one_ = 1;
    std::string name_;
    std::vector<long> minpoly_;
    std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

}  // namespace fglab::local
