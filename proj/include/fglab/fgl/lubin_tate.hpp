#pragma once

#include "fglab/fgl/formal_group.hpp"

namespace fglab::fgl {

/// Height of a law mod pi: h with [p](T) = c T^{p^h} + ... mod pi, c != 0.
struct Height {
    bool infinite = false;
    int h = 0;

    std::string to_string() const { return infinite ? "inf" : std::to_string(h); }
    bool operator==(const Height&) const = default;
};

/// Coefficientwise reduction o_L -> k_L. Throws NotIntegral.
TruncSeries<FiniteRingHandle> reduce_mod_pi(const TruncSeries<LocalRing>& s, const FiniteRingHandle& residue);
FiniteRingHandle residue_ring(const local::LocalFieldPtr& L);

/// Reads the height off a reduced [p]-series. A vanishing [p] means infinite
/// height only when `additive` certifies the law is X + Y with no nonlinear
/// terms at all; otherwise the cap was too small to see the leading term.
Height height_from_p_series(const TruncSeries<FiniteRingHandle>& p_series, unsigned long p, bool additive);

/// [p] from the logarithm when present, else as the p-fold formal sum.
Height height_mod_pi(const FormalGroupLaw<LocalRing>& law);
Height height_mod_pi(const FormalGroupLaw<FiniteRingHandle>& law);
/// One-variable route for large caps: [p] = exp(p log T) only.
Height height_mod_pi(const Logarithm<LocalRing>& log);

/// [p] by both routes (log and formal sum) when a log is present.
struct PSeriesPair {
    TruncSeries<LocalRing> from_log;
    TruncSeries<LocalRing> from_sum;
};
PSeriesPair p_series_both_ways(const FormalGroupLaw<LocalRing>& law);

}  // namespace fglab::fgl
