#pragma once

#include "toricdef/lattice.hpp"
#include "toricdef/polytope.hpp"

#include <optional>
#include <vector>

namespace toricdef {

struct SingularityFlags {
    bool is_smooth = false;
    bool is_simplicial = false;
    bool is_gorenstein = false;
    bool is_canonical = false;
    bool is_terminal = false;
    Int index{1};
    std::optional<Vec> gorenstein_functional;
};

// Diagonal abelian action on C^d: one weight vector per cyclic factor, the
// weight of factor j on coordinate i reduced into [0, cyclic_factors[j]).
struct QuotientActionDesc {
    Int order{1};
    std::vector<Int> cyclic_factors;
    std::vector<std::vector<Int>> generators;
};

// Single cyclic factor of the given order acting with the given weights.
QuotientActionDesc cyclic_action(const Int& order, const std::vector<Int>& weights);

// Integral functional taking value 1 on every ray, when one exists.  Unique
// for full-dimensional cones; deterministic otherwise.
std::optional<Vec> gorenstein_functional(const Cone& c);

// Classification of a simplicial cone in the lattice of its saturated span:
// index from the ray matrix, canonical/terminal from box point heights.
SingularityFlags classify_simplicial_cone(const Cone& c);

// Reid-Tai over every nontrivial element of the diagonal abelian group.
SingularityFlags cyclic_quotient_classify(const QuotientActionDesc& q);

// Simplicial cones take the box route; non-simplicial cones are classified
// only when Gorenstein (canonical always; terminal when the height-one
// cross-section has no non-vertex lattice points).
SingularityFlags classify_cone(const Cone& c);

// Presentation of Z^d / (ray lattice) with weights per cyclic factor; the
// overload taking a ray list keeps the caller's coordinate order.
QuotientActionDesc quotient_action_of_rays(const std::vector<Vec>& rays);
QuotientActionDesc quotient_action_of_chart(const Cone& c);

struct StarQuotientWeights {
    std::vector<Int> weights; // sorted ascending, gcd 1
    bool images_primitive = true;
    bool images_span = true;
};

// Weights of the positive circuit among the opposite rays' images in the
// quotient lattice N / span(shared).
StarQuotientWeights star_quotient_weights(const Cone& shared,
                                          const std::vector<Vec>& opposite_rays);

} // namespace toricdef
