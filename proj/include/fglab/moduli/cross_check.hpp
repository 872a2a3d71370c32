#pragma once

#include <vector>

#include "fglab/fgl/lubin_tate.hpp"
#include "fglab/moduli/groupoid.hpp"

namespace fglab::moduli {

/// Series over a finite ring, degree <= cap, as a SmallPoly (and back).
SmallPoly to_small(const series::TruncSeries<FiniteRingHandle>& s, int cap);
series::TruncSeries<FiniteRingHandle> to_series(const SmallPoly& p, const FiniteRingHandle& ring, const std::vector<std::string>& vars);

struct StabilizerCheck {
    int degree = 0;
    SmallPoly bud;
    std::vector<SmallPoly> stabilizer;      // brute force in Gamma_d(k_L)
    std::vector<SmallPoly> endo_images;     // distinct [a] mod pi, truncated
    bool stabilizer_covered = false;        // every stabilizer element is some [a] mod pi
    bool endos_in_stabilizer = false;       // every [a] mod pi fixes the bud
    bool endos_are_automorphisms = false;   // series-side is_automorphism agrees
    bool passed() const { return stabilizer_covered && endos_in_stabilizer && endos_are_automorphisms; }
};

/// Compares the brute-force stabilizer of law mod pi (truncated to d) with
/// {[a] mod pi : a in units}. Needs a law carrying its logarithm.
StabilizerCheck stabilizer_vs_endomorphisms(const fgl::FormalGroupLaw<LocalRing>& law, int d, const std::vector<local::LocalNum>& units);

/// The integers 1 .. p^k - 1 prime to p, as elements of L.
std::vector<local::LocalNum> integer_units(const local::LocalFieldPtr& L, int k);

}  // namespace fglab::moduli
