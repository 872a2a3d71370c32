#pragma once

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fglab/series/trunc_series.hpp"

namespace fglab::series {

namespace detail {

template <CoefficientRing R>
std::vector<std::size_t> nonzero_terms(const TruncSeries<R>& a)
{
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a.ring().is_exact_zero(a[i])) nz.push_back(i);
    }
    return nz;
}

}  // namespace detail

/// Reference product: scatter every pair of stored terms. Serial, kept as
/// the oracle the parallel kernel is tested against.
template <CoefficientRing R>
TruncSeries<R> mul_serial(const TruncSeries<R>& a, const TruncSeries<R>& b)
{
    a.check_compatible(b);
    const int cap = std::min(a.cap(), b.cap());
    TruncSeries<R> out(a.ring(), a.vars(), cap);
    const MonomialLayout& la = a.layout();
    const MonomialLayout& lb = b.layout();
    const MonomialLayout& lo = out.layout();
    for (std::size_t i = 0; i < a.size() && la.degree(i) <= cap; ++i) {
        if (a.ring().is_exact_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size() && la.degree(i) + lb.degree(j) <= cap; ++j) {
            if (b.ring().is_exact_zero(b[j])) continue;
            Exponent e{};
            for (int k = 0; k < kMaxVars; ++k) e[k] = la.exponent(i)[k] + lb.exponent(j)[k];
            auto& slot = out[static_cast<std::size_t>(lo.index_of(e))];
            slot += typename R::value_type(a[i] * b[j]);
        }
    }
    return out;
}

/// Gather product: each output coefficient is accumulated by exactly one
/// thread in a fixed term order, so the result is independent of the
/// thread count. The sparser operand is the one scanned per output.
template <CoefficientRing R>
TruncSeries<R> mul_parallel(const TruncSeries<R>& a_in, const TruncSeries<R>& b_in)
{
    using V = typename R::value_type;
    a_in.check_compatible(b_in);
    const int cap = std::min(a_in.cap(), b_in.cap());
    const TruncSeries<R> a = a_in.truncated(cap);
    const TruncSeries<R> b = b_in.truncated(cap);
    const std::vector<std::size_t> nza = detail::nonzero_terms(a);
    const std::vector<std::size_t> nzb = detail::nonzero_terms(b);
    TruncSeries<R> out(a.ring(), a.vars(), a.layout_ptr());
    if (nza.empty() || nzb.empty()) return out;
    const bool scan_a = nza.size() <= nzb.size();
    const TruncSeries<R>& scanned = scan_a ? a : b;
    const TruncSeries<R>& other = scan_a ? b : a;
    const std::vector<std::size_t>& nz = scan_a ? nza : nzb;
    const MonomialLayout& lay = out.layout();
    const int nv = lay.nvars();
    const R& ring = a.ring();
    const int min_deg_other = lay.degree(scan_a ? nzb.front() : nza.front());
    const int min_deg_scan = lay.degree(nz.front());
    const long n_out = static_cast<long>(out.size());

#pragma omp parallel for schedule(dynamic, 16) if (n_out > 256)
    for (long k = 0; k < n_out; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        const int dk = lay.degree(ku);
        if (dk < min_deg_other + min_deg_scan) continue;
        const Exponent& ek = lay.exponent(ku);
        const int code_k = lay.code(ku);
        V acc = ring.zero();
        for (std::size_t t = 0; t < nz.size(); ++t) {
            const std::size_t i = nz[t];
            if (lay.degree(i) > dk - min_deg_other) break;
            const Exponent& ei = lay.exponent(i);
            bool divides = true;
            for (int v = 0; v < nv; ++v) divides = divides && ei[static_cast<std::size_t>(v)] <= ek[static_cast<std::size_t>(v)];
            if (!divides) continue;
            const long j = lay.index_of_code(code_k - lay.code(i));
            const V& y = other[static_cast<std::size_t>(j)];
            if (ring.is_exact_zero(y)) continue;
            acc += V(scanned[i] * y);
        }
        out[ku] = std::move(acc);
    }
    return out;
}

template <CoefficientRing R>
TruncSeries<R> operator*(const TruncSeries<R>& a, const TruncSeries<R>& b)
{
    return mul_parallel(a, b);
}

/// s^n by repeated squaring (n >= 0).
template <CoefficientRing R>
TruncSeries<R> power(const TruncSeries<R>& s, long n)
{
    TruncSeries<R> result = s.zero_like();
    result[0] = s.ring().one();
    TruncSeries<R> base = s;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

/// Number of worker threads the kernels may use.
inline int kernel_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_kernel_threads(int n)
{
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace fglab::series
