#include "fglab/moduli/small_poly.hpp"

#include "fglab/error.hpp"

namespace fglab::moduli {

SmallPoly::SmallPoly(const local::FiniteRing* ring, int nvars, int cap) : ring_(ring), nvars_(nvars), cap_(cap)
{
    const auto s = static_cast<std::size_t>(cap + 1);
    c_.assign(s * s * s, 0);
}

SmallPoly SmallPoly::variable(const local::FiniteRing* ring, int nvars, int cap, int k)
{
    SmallPoly p(ring, nvars, cap);
    if (cap >= 1) p.set(k == 0 ? 1 : 0, k == 1 ? 1 : 0, k == 2 ? 1 : 0, ring->one().value);
    return p;
}

std::uint32_t SmallPoly::get(int i, int j, int k) const
{
    if (i + j + k > cap_) return 0;
    return c_[index(i, j, k)];
}

void SmallPoly::set(int i, int j, int k, std::uint32_t v)
{
    if (i + j + k > cap_) fail(ErrorCode::InvalidArgument, "monomial beyond the cap");
    c_[index(i, j, k)] = v;
}

SmallPoly SmallPoly::operator+(const SmallPoly& o) const
{
    SmallPoly out = *this;
    for (std::size_t n = 0; n < c_.size(); ++n) out.c_[n] = ring_->add(c_[n], o.c_[n]);
    return out;
}

SmallPoly SmallPoly::scaled(std::uint32_t c) const
{
    SmallPoly out = *this;
    for (auto& x : out.c_) x = ring_->mul(c, x);
    return out;
}

SmallPoly SmallPoly::operator*(const SmallPoly& o) const
{
    SmallPoly out(ring_, nvars_, cap_);
    for (int i = 0; i <= cap_; ++i) {
        for (int j = 0; i + j <= cap_; ++j) {
            for (int k = 0; i + j + k <= cap_; ++k) {
                const std::uint32_t a = c_[index(i, j, k)];
                if (a == 0) continue;
                for (int i2 = 0; i + j + k + i2 <= cap_; ++i2) {
                    for (int j2 = 0; i + j + k + i2 + j2 <= cap_; ++j2) {
                        for (int k2 = 0; i + j + k + i2 + j2 + k2 <= cap_; ++k2) {
                            const std::uint32_t b = o.c_[index(i2, j2, k2)];
                            if (b == 0) continue;
                            auto& slot = out.c_[index(i + i2, j + j2, k + k2)];
                            slot = ring_->add(slot, ring_->mul(a, b));
                        }
                    }
                }
            }
        }
    }
    return out;
}

std::vector<std::uint32_t> SmallPoly::degree_part(int deg) const
{
    std::vector<std::uint32_t> out;
    for (int i = deg; i >= 0; --i) {
        for (int j = deg - i; j >= 0; --j) out.push_back(get(i, j, deg - i - j));
    }
    return out;
}

SmallPoly substitute2(const SmallPoly& F, const SmallPoly& u, const SmallPoly& v)
{
    const int cap = u.cap();
    std::vector<SmallPoly> up{SmallPoly(u.ring(), u.nvars(), cap)};
    up[0].set(0, 0, 0, u.ring()->one().value);
    std::vector<SmallPoly> vp = up;
    for (int e = 1; e <= cap; ++e) {
        up.push_back(up.back() * u);
        vp.push_back(vp.back() * v);
    }
    SmallPoly out(u.ring(), u.nvars(), cap);
    for (int i = 0; i <= F.cap(); ++i) {
        for (int j = 0; i + j <= F.cap(); ++j) {
            const std::uint32_t c = F.get(i, j);
            if (c == 0 || i > cap || j > cap) continue;
            out = out + (up[static_cast<std::size_t>(i)] * vp[static_cast<std::size_t>(j)]).scaled(c);
        }
    }
    return out;
}

SmallPoly substitute1(const SmallPoly& t, const SmallPoly& s)
{
    SmallPoly out(s.ring(), s.nvars(), s.cap());
    SmallPoly pw(s.ring(), s.nvars(), s.cap());
    pw.set(0, 0, 0, s.ring()->one().value);
    for (int i = 0; i <= t.cap(); ++i) {
        if (t.get(i) != 0) out = out + pw.scaled(t.get(i));
        pw = pw * s;
    }
    return out;
}

SmallPoly comp_inverse1(const SmallPoly& t)
{
    const local::FiniteRing* R = t.ring();
    const std::uint32_t inv0 = R->inverse(t.get(1));
    SmallPoly g(R, 1, t.cap());
    g.set(1, 0, 0, inv0);
    for (int n = 2; n <= t.cap(); ++n) {
        // t(g) = T + r T^n + ...; adding x T^n to g adds t_0 x T^n.
        const std::uint32_t r = substitute1(t, g).get(n);
        g.set(n, 0, 0, R->mul(R->neg(r), inv0));
    }
    return g;
}

}  // namespace fglab::moduli
