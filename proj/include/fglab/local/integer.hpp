#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace fglab {

using Int = mpz_class;
using Rational = mpq_class;

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Largest k with p^k | n; n must be nonzero.
int ord_p(const Int& n, unsigned long p);

Int ipow(unsigned long base, unsigned long exponent);

Int binomial(unsigned long n, unsigned long k);

/// Residue in [0, m).
long mod_floor(long a, long m) noexcept;

/// Parses a decimal integer, optionally signed; throws ParseError otherwise.
Int parse_int(const std::string& text);

}  // namespace fglab
