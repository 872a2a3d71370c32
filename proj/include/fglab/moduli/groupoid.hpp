#pragma once

#include <string>
#include <vector>

#include "fglab/moduli/small_poly.hpp"

namespace fglab::moduli {

/// Coefficient guard for exhaustive searches.
inline constexpr double kMaxSearch = 1e7;

/// Validates the ring (Z/m with m <= 125 or F_q with q <= 25) and 2 <= d <= 4.
void check_bud_setting(const local::FiniteRing& ring, int d);

/// F(X,Y) exact to degree d: unit, commutativity, associativity.
bool bud_axioms(const SmallPoly& F);
SmallPoly truncated(const SmallPoly& p, int cap);

/// All buds of degree d, sorted; associativity prunes each degree before
/// the next is enumerated. Throws SearchSpaceTooLarge.
std::vector<SmallPoly> enumerate_buds(const local::FiniteRing& ring, int d);
/// All t_0 T + .. + t_{d-1} T^d with t_0 a unit, sorted.
std::vector<SmallPoly> enumerate_coordchanges(const local::FiniteRing& ring, int d);

/// F^t = t^{-1}(F(t X, t Y)).
SmallPoly act(const SmallPoly& t, const SmallPoly& F);
/// (t o s)(T) = t(s(T)).
SmallPoly compose(const SmallPoly& t, const SmallPoly& s);

struct OrbitInfo {
    std::size_t representative = 0;  // index into the bud list
    std::vector<std::size_t> members;
    std::vector<std::size_t> stabilizer;  // indices into the group list
};

struct GroupoidChecks {
    bool identity_in_group = false;
    bool inverses_in_group = false;
    bool action_identity = false;
    bool action_closed = false;
    bool right_action_law = false;
    bool orbit_stabilizer = false;
    bool stabilizers_are_subgroups = false;
    bool morphism_sets_constant = false;
    bool cross_orbit_empty = false;
    bool composition_closed = false;
    bool all() const
    {
        return identity_in_group && inverses_in_group && action_identity && action_closed && right_action_law && orbit_stabilizer &&
               stabilizers_are_subgroups && morphism_sets_constant && cross_orbit_empty && composition_closed;
    }
};

struct GroupoidReport {
    std::string ring;
    int degree = 0;
    std::vector<SmallPoly> buds;
    std::vector<SmallPoly> group;
    std::vector<OrbitInfo> orbits;
    GroupoidChecks checks;
};

/// Exhaustive orbit/stabilizer and groupoid-axiom check.
GroupoidReport groupoid_report(const local::FiniteRing& ring, int d);

/// Stabilizer of one bud inside the enumerated group.
std::vector<SmallPoly> stabilizer(const SmallPoly& F, const std::vector<SmallPoly>& group);

}  // namespace fglab::moduli

namespace fglab::moduli {

struct OrbitStabilizer {
    std::vector<SmallPoly> orbit;       // sorted, duplicate-free
    std::vector<SmallPoly> stabilizer;  // sorted
};
OrbitStabilizer orbit_and_stabilizer(const SmallPoly& F);

}  // namespace fglab::moduli
