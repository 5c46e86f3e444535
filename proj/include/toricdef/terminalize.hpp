#pragma once

#include "toricdef/deformation.hpp"
#include "toricdef/lattice.hpp"
#include "toricdef/polytope.hpp"
#include "toricdef/singularity.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toricdef {

// A subdivision of `parent` into maximal simplicial subcones. Cells are
// stored in a canonical order (each cone canonical, the list sorted by ray
// lists) and used_points collects every ray appearing in some cell.
struct Triangulation {
    Cone parent;
    std::vector<Cone> cells;
    std::vector<Vec> used_points;
};

Triangulation make_triangulation(const Cone& parent, std::vector<Cone> cells);

// Normalized volume of the cone with respect to the saturated lattice of its
// span, computed by a ray-pulling subdivision into simplicial pieces.
Int normalized_volume(const Cone& c);

// The two independent emptiness routes for a simplicial cell: via box-point
// heights, and by brute-force enumeration of conv(0, rays). They must agree.
bool cell_is_empty_box(const Cone& cell);
bool cell_is_empty_bruteforce(const Cone& cell);

// Verification outcome; failures are flags, never exceptions. The covering
// test is the volume identity, which characterizes coverings when all cell
// rays lie on the parent's Gorenstein hyperplane.
struct TriangulationReport {
    bool covers = false;
    bool proper = false;
    bool crepant = false;
    bool all_cells_empty = false;
    std::vector<SingularityFlags> cell_flags;
};

TriangulationReport verify_triangulation(const Triangulation& t);

// Crepant refinement search on a Gorenstein cone: start from the ray-pulling
// triangulation, then stellarly subdivide at the lexicographically smallest
// height-one non-vertex point of the first non-empty cell until every cell
// is empty. Deterministic; throws "search exhausted" if the refinement loop
// fails to finish.
Triangulation search_crepant_triangulation(const Cone& parent);
Triangulation search_crepant_triangulation(const Deformation& d);

// The two triangulations attached to a circuit: cells spanned by all rays
// minus one positive-part element on the left, minus one negative-part
// element on the right.
std::pair<Triangulation, Triangulation> reid_circuit_flip(const std::vector<Vec>& rays,
                                                          const Vec& relation);

// Per-chart record of a terminalization: classification of the chart, its
// block presentation when fibre-compatible, the chart's slice by L-perp in
// the deformation's fibre coordinates, and both emptiness certificates.
struct ChartReport {
    Cone chart;
    SingularityFlags chart_flags;
    bool fibre_compatible = false;
    std::string incompatibility;            // error text when not compatible
    std::optional<FibrePresentation> presentation;
    Cone fibre;                             // chart cap L-perp, fibre coordinates
    std::optional<SingularityFlags> fibre_flags;
    std::string fibre_note;                 // why fibre_flags is absent
    bool empty_box = false;
    bool empty_bruteforce = false;
};

struct TerminalizationReport {
    Triangulation triangulation;
    TriangulationReport verification;
    std::vector<ChartReport> charts;
    bool flatness_proxy = false;            // every chart fibre-compatible
    bool simultaneous_resolution = false;   // n == 2 and all charts unimodular
    bool terminal_fibres_asserted = false;  // n >= 3 and all charts unimodular
};

TerminalizationReport terminalization_report(const Deformation& d, const Triangulation& t);

// The two-summand family over parameters a, b >= 1 together with its circuit
// flip and the exceptional weight multisets of both sides.
struct FlopPair {
    Deformation base;
    Triangulation left;
    Triangulation right;
    Vec circuit_relation;
    std::vector<Int> exceptional_weights_left;
    std::vector<Int> exceptional_weights_right;
};

FlopPair build_flop_example(const Int& a, const Int& b);

} // namespace toricdef
