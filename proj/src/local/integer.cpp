#include "fglab/local/integer.hpp"

#include "fglab/error.hpp"

namespace fglab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m)
{
    u64 r = 1 % m;
    a %= m;
    while (e != 0) {
        if (e & 1U) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1U;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

int ord_p(const Int& n, unsigned long p)
{
    if (n == 0) fail(ErrorCode::InvalidArgument, "ord_p of zero");
    if (mpz_fdiv_ui(n.get_mpz_t(), p) != 0) return 0;
    Int prime(p);
    Int rest;
    return static_cast<int>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

Int ipow(unsigned long base, unsigned long exponent)
{
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
    return r;
}

Int binomial(unsigned long n, unsigned long k)
{
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

long mod_floor(long a, long m) noexcept
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

Int parse_int(const std::string& text)
{
    Int r;
    if (text.empty() || r.set_str(text, 10) != 0) fail(ErrorCode::ParseError, "not an integer: '" + text + "'");
    return r;
}

}  // namespace fglab
