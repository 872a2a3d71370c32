#include "fglab/series/layout.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "fglab/error.hpp"

namespace fglab::series {

MonomialLayout::MonomialLayout(int nvars, int cap) : nvars_(nvars), cap_(cap)
{
    if (nvars < 1 || nvars > kMaxVars) fail(ErrorCode::InvalidArgument, "series support 1 to 3 variables");
    if (cap < 0) fail(ErrorCode::InvalidArgument, "degree cap must be nonnegative");
    long space = 1;
    for (int k = 0; k < nvars; ++k) space *= cap + 1;
    if (space > 50'000'000) fail(ErrorCode::SizeLimit, "degree cap too large for a dense layout");
    by_code_.assign(static_cast<std::size_t>(space), -1);
    for (int d = 0; d <= cap; ++d) {
        starts_.push_back(exps_.size());
        if (nvars == 1) {
            exps_.push_back({d, 0, 0});
        } else if (nvars == 2) {
            for (int i = d; i >= 0; --i) exps_.push_back({i, d - i, 0});
        } else {
            for (int i = d; i >= 0; --i) {
                for (int j = d - i; j >= 0; --j) exps_.push_back({i, j, d - i - j});
            }
        }
    }
    starts_.push_back(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        const auto& e = exps_[i];
        degs_.push_back(e[0] + e[1] + e[2]);
        codes_.push_back(encode(e));
        by_code_[static_cast<std::size_t>(codes_.back())] = static_cast<long>(i);
    }
}

int MonomialLayout::encode(const Exponent& e) const noexcept
{
    int code = 0;
    for (int k = nvars_; k-- > 0;) code = code * (cap_ + 1) + e[static_cast<std::size_t>(k)];
    return code;
}

long MonomialLayout::index_of(const Exponent& e) const noexcept
{
    int total = 0;
    for (int k = 0; k < kMaxVars; ++k) {
        const int x = e[static_cast<std::size_t>(k)];
        if (x < 0 || (k >= nvars_ && x != 0)) return -1;
        total += x;
    }
    if (total > cap_) return -1;
    return by_code_[static_cast<std::size_t>(encode(e))];
}

LayoutPtr make_layout(int nvars, int cap)
{
    // Layouts are immutable, so one instance per shape is shared.
    static std::mutex mu;
    static std::map<std::pair<int, int>, LayoutPtr> cache;
    const std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{nvars, cap}];
    if (!slot) slot = std::make_shared<const MonomialLayout>(nvars, cap);
    return slot;
}

}  // namespace fglab::series
