#pragma once

#include "toricdef/lattice.hpp"
#include "toricdef/polytope.hpp"
#include "toricdef/singularity.hpp"

#include <optional>
#include <vector>

namespace toricdef {

// A one-parameter-per-summand deformation encoded by a cone in R^{n+m} whose
// rays sit at marker heights: marker i is the coordinate projection onto
// slot n-1+i (0-based), and every ray evaluates to 1 under exactly one
// marker.
struct Deformation {
    Cone cone;
    std::size_t n = 0; // fibre dimension
    std::size_t m = 0; // base dimension
    std::vector<Vec> markers;                  // r_0..r_m
    std::optional<std::vector<Polytope>> summands;
    std::vector<Vec> l_basis;                  // r_i - r_0 for i = 1..m
};

// Cayley construction over the summands, with all structural invariants
// verified ("not Gorenstein homogeneous" on failure).
Deformation build_deformation(const std::vector<Polytope>& summands, std::size_t n);

// The slice cone sigma cap L-perp, expressed in the coordinates of the
// saturated sublattice L-perp; `basis` rows embed those coordinates back
// into Z^{n+m}.
struct CentralFibre {
    Cone cone;
    Mat basis;
};

// Slice an arbitrary subcone by the same sublattice; charts of a
// triangulation are sliced with the deformation's l_basis so their fibres
// live in one common coordinate system.
CentralFibre slice_cone(const Cone& c, const std::vector<Vec>& l_basis);

CentralFibre central_fibre(const Deformation& d);

// Block data of a full-dimensional simplicial chart: rays reordered by
// marker, the partition positions, one indicator exponent vector per block,
// and the chart's quotient group presentation in the reordered coordinates.
struct FibrePresentation {
    Cone chart;
    std::vector<std::size_t> reorder;   // reordered_rays[j] = chart.rays()[reorder[j]]
    std::vector<std::size_t> partition; // p_0 = 0 < p_1 < ... < p_{m+1} = n+m
    std::vector<Vec> monomials;         // F_i = indicator of block i
    QuotientActionDesc action;
};

FibrePresentation fibre_presentation(const Deformation& d, const Cone& chart);

// The split-weight inequality: sum of all weights <= l + max(front sum, back
// sum) where the split is after position p (1-based).
bool hypersurface_canonicity_check(const Int& l, const std::vector<Int>& weights,
                                   std::size_t p);

} // namespace toricdef
