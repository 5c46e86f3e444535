#include "toricdef/terminalize.hpp"

#include "toricdef/error.hpp"

#include <algorithm>
#include <utility>

namespace toricdef {

namespace {

constexpr int kSearchRounds = 10000;

bool cone_rays_less(const Cone& a, const Cone& b) {
    return std::lexicographical_compare(a.rays().begin(), a.rays().end(),
                                        b.rays().begin(), b.rays().end(), VecLess{});
}

void sort_cells(std::vector<Cone>& cells) {
    std::sort(cells.begin(), cells.end(), cone_rays_less);
}

bool is_ray_of(const Cone& c, const Vec& r) {
    return std::binary_search(c.rays().begin(), c.rays().end(), r, VecLess{});
}

Int simplex_normalized_volume(const std::vector<Vec>& rays, std::size_t ambient) {
    Mat basis = saturated_span_basis(rays, ambient);
    std::vector<Vec> cols;
    cols.reserve(rays.size());
    for (const Vec& r : rays) cols.push_back(coords_in_basis(basis, r));
    Int det = Mat::from_cols(cols, basis.rows()).determinant();
    return det < 0 ? Int(-det) : det;
}

// Subdivide into simplicial pieces by pulling each face towards its
// lexicographically smallest ray.
std::vector<std::vector<Vec>> ray_pulling_cells(const Cone& c) {
    if (c.rays().empty()) throw Error("empty cone");
    if (c.is_simplicial()) return {c.rays()};
    const Vec& w = c.rays().front();
    std::vector<std::vector<Vec>> out;
    for (const Vec& f : c.facets()) {
        if (dot(f, w) == 0) continue;
        std::vector<Vec> on_facet;
        for (const Vec& r : c.rays())
            if (dot(f, r) == 0) on_facet.push_back(r);
        Cone face = Cone::from_rays(c.ambient_dim(), on_facet);
        for (std::vector<Vec>& sub : ray_pulling_cells(face)) {
            sub.push_back(w);
            out.push_back(std::move(sub));
        }
    }
    return out;
}

// Cells produced by stellar subdivision of `c` at `w`; `c` itself when the
// point is one of its rays (the subdivision is trivial there).
std::vector<Cone> stellar_pieces(const Cone& c, const Vec& w) {
    std::vector<Cone> out;
    for (const Vec& f : c.facets()) {
        if (dot(f, w) == 0) continue;
        std::vector<Vec> rays;
        for (const Vec& r : c.rays())
            if (dot(f, r) == 0) rays.push_back(r);
        rays.push_back(w);
        out.push_back(Cone::from_rays(c.ambient_dim(), rays));
    }
    return out;
}

} // namespace

Triangulation make_triangulation(const Cone& parent, std::vector<Cone> cells) {
    for (const Cone& cell : cells)
        if (cell.ambient_dim() != parent.ambient_dim())
            throw Error("cell dimension mismatch");
    sort_cells(cells);
    std::vector<Vec> used;
    for (const Cone& cell : cells)
        used.insert(used.end(), cell.rays().begin(), cell.rays().end());
    std::sort(used.begin(), used.end(), VecLess{});
    used.erase(std::unique(used.begin(), used.end()), used.end());
    return Triangulation{parent, std::move(cells), std::move(used)};
}

Int normalized_volume(const Cone& c) {
    if (c.rays().empty()) throw Error("empty cone");
    if (!c.is_pointed()) throw Error("not pointed");
    if (c.is_simplicial()) return simplex_normalized_volume(c.rays(), c.ambient_dim());
    Int total = 0;
    for (const std::vector<Vec>& cell : ray_pulling_cells(c))
        total += simplex_normalized_volume(cell, c.ambient_dim());
    return total;
}

bool cell_is_empty_box(const Cone& cell) {
    return classify_simplicial_cone(cell).is_terminal;
}

bool cell_is_empty_bruteforce(const Cone& cell) {
    if (!cell.is_simplicial()) throw Error("not simplicial");
    std::vector<Vec> corners = cell.rays();
    corners.push_back(Vec::zero(cell.ambient_dim()));
    Polytope simplex = Polytope::from_vertices(cell.ambient_dim(), corners);
    std::sort(corners.begin(), corners.end(), VecLess{});
    return lattice_points(simplex) == corners;
}

TriangulationReport verify_triangulation(const Triangulation& t) {
    if (t.cells.empty()) throw Error("triangulation has no cells");
    const std::size_t ambient = t.parent.ambient_dim();
    for (const Cone& cell : t.cells) {
        if (cell.ambient_dim() != ambient) throw Error("cell dimension mismatch");
        if (cell.rays().empty() || !cell.is_simplicial()) throw Error("not simplicial");
        if (cell.dim() != t.parent.dim()) throw Error("cell not full-dimensional in the parent");
    }

    TriangulationReport rep;

    std::optional<Vec> h = gorenstein_functional(t.parent);
    rep.crepant = h.has_value();
    bool contained = true;
    for (const Cone& cell : t.cells) {
        for (const Vec& r : cell.rays()) {
            if (!t.parent.contains(r)) contained = false;
            if (rep.crepant && dot(*h, r) != 1) rep.crepant = false;
        }
    }

    Int cell_total = 0;
    for (const Cone& cell : t.cells)
        cell_total += simplex_normalized_volume(cell.rays(), ambient);
    rep.covers = contained && cell_total == normalized_volume(t.parent);

    rep.proper = true;
    for (std::size_t i = 0; i < t.cells.size() && rep.proper; ++i) {
        for (std::size_t j = i + 1; j < t.cells.size() && rep.proper; ++j) {
            if (t.cells[i] == t.cells[j]) {
                rep.proper = false;
                break;
            }
            std::vector<Vec> constraints = t.cells[i].facets();
            for (const Vec& w : t.cells[i].span_equations()) {
                constraints.push_back(w);
                constraints.push_back(-w);
            }
            for (const Vec& f : t.cells[j].facets()) constraints.push_back(f);
            for (const Vec& w : t.cells[j].span_equations()) {
                constraints.push_back(w);
                constraints.push_back(-w);
            }
            for (const Vec& r : dual_extreme_rays(constraints, ambient))
                if (!is_ray_of(t.cells[i], r) || !is_ray_of(t.cells[j], r))
                    rep.proper = false;
        }
    }

    rep.all_cells_empty = true;
    rep.cell_flags.reserve(t.cells.size());
    for (const Cone& cell : t.cells) {
        rep.cell_flags.push_back(classify_simplicial_cone(cell));
        if (!rep.cell_flags.back().is_terminal) rep.all_cells_empty = false;
    }
    return rep;
}

Triangulation search_crepant_triangulation(const Cone& parent) {
    if (parent.rays().empty()) throw Error("empty cone");
    if (!parent.is_pointed()) throw Error("not pointed");
    if (!gorenstein_functional(parent)) throw Error("not Gorenstein");

    std::vector<Cone> cells;
    for (const std::vector<Vec>& rays : ray_pulling_cells(parent))
        cells.push_back(Cone::from_rays(parent.ambient_dim(), rays));
    sort_cells(cells);

    for (int round = 0; round < kSearchRounds; ++round) {
        std::size_t pick = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (!cell_is_empty_box(cells[i])) {
                pick = i;
                break;
            }
        }
        if (pick == cells.size()) return make_triangulation(parent, std::move(cells));

        // smallest height-one point of the offending cell besides its rays
        std::vector<Vec> pts = lattice_points(cross_section(cells[pick]));
        const Vec* w = nullptr;
        for (const Vec& p : pts) {
            if (!is_ray_of(cells[pick], p)) {
                w = &p;
                break;
            }
        }
        if (w == nullptr) throw Error("search exhausted");

        std::vector<Cone> next;
        for (const Cone& cell : cells) {
            if (!cell.contains(*w)) {
                next.push_back(cell);
                continue;
            }
            std::vector<Cone> pieces = stellar_pieces(cell, *w);
            next.insert(next.end(), pieces.begin(), pieces.end());
        }
        cells = std::move(next);
        sort_cells(cells);
    }
    throw Error("search exhausted");
}

Triangulation search_crepant_triangulation(const Deformation& d) {
    return search_crepant_triangulation(d.cone);
}

std::pair<Triangulation, Triangulation> reid_circuit_flip(const std::vector<Vec>& rays,
                                                          const Vec& relation) {
    if (rays.empty()) throw Error("empty cone");
    const std::size_t ambient = rays[0].dim();
    for (const Vec& r : rays)
        if (r.dim() != ambient) throw Error("ray dimension mismatch");
    if (relation.dim() != rays.size()) throw Error("relation length mismatch");

    {
        std::vector<Vec> probe;
        probe.reserve(rays.size());
        for (const Vec& r : rays) probe.push_back(primitivize(r));
        std::sort(probe.begin(), probe.end(), VecLess{});
        if (std::adjacent_find(probe.begin(), probe.end()) != probe.end())
            throw Error("duplicate rays");
    }

    Vec acc = Vec::zero(ambient);
    for (std::size_t i = 0; i < rays.size(); ++i) acc = acc + relation[i] * rays[i];
    if (!acc.is_zero()) throw Error("not a circuit");

    std::vector<std::size_t> positive, negative, support;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (relation[i] > 0) positive.push_back(i);
        if (relation[i] < 0) negative.push_back(i);
        if (relation[i] != 0) support.push_back(i);
    }
    if (positive.empty() || negative.empty()) throw Error("not a circuit");

    std::vector<Vec> support_rays;
    support_rays.reserve(support.size());
    for (std::size_t i : support) support_rays.push_back(rays[i]);
    if (Mat::from_rows(support_rays, ambient).rank() + 1 != support.size())
        throw Error("not a circuit");

    Cone parent = Cone::from_rays(ambient, rays);
    if (!parent.is_pointed()) throw Error("not pointed");

    auto side = [&](const std::vector<std::size_t>& removable) {
        std::vector<Cone> cells;
        for (std::size_t skip : removable) {
            std::vector<Vec> cell_rays;
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (i != skip) cell_rays.push_back(rays[i]);
            cells.push_back(Cone::from_rays(ambient, cell_rays));
        }
        return make_triangulation(parent, std::move(cells));
    };
    return {side(positive), side(negative)};
}

TerminalizationReport terminalization_report(const Deformation& d, const Triangulation& t) {
    if (!(t.parent == d.cone))
        throw Error("triangulation parent differs from the deformation cone");

    TerminalizationReport rep;
    rep.triangulation = t;
    rep.verification = verify_triangulation(t);

    bool all_compatible = true;
    bool all_unimodular = true;
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        ChartReport chart;
        chart.chart = t.cells[i];
        chart.chart_flags = rep.verification.cell_flags[i];
        if (chart.chart_flags.index != 1) all_unimodular = false;

        try {
            chart.presentation = fibre_presentation(d, chart.chart);
            chart.fibre_compatible = true;
        } catch (const GuardError&) {
            throw;
        } catch (const Error& e) {
            chart.incompatibility = e.what();
            all_compatible = false;
        }

        chart.fibre = slice_cone(chart.chart, d.l_basis).cone;
        try {
            chart.fibre_flags = classify_cone(chart.fibre);
        } catch (const GuardError&) {
            throw;
        } catch (const Error& e) {
            chart.fibre_note = e.what();
        }

        chart.empty_box = cell_is_empty_box(chart.chart);
        chart.empty_bruteforce = cell_is_empty_bruteforce(chart.chart);
        rep.charts.push_back(std::move(chart));
    }

    rep.flatness_proxy = all_compatible;
    const bool verified = rep.verification.covers && rep.verification.proper &&
                          rep.verification.crepant;
    rep.simultaneous_resolution = verified && all_unimodular && d.n == 2;
    rep.terminal_fibres_asserted = verified && all_unimodular && d.n >= 3;
    return rep;
}

FlopPair build_flop_example(const Int& a, const Int& b) {
    if (a < 1 || b < 1) throw Error("parameters must be positive");

    std::vector<Polytope> summands = {
        Polytope::from_vertices(2, {Vec{0, 0}, Vec{1, 0}}),
        Polytope::from_vertices(2, {Vec{0, 0}, Vec{0, 1}}),
        Polytope::from_vertices(2, {Vec{0, 0}, Vec{-a, -b}}),
    };

    FlopPair out;
    out.base = build_deformation(summands, 3);

    const std::vector<Vec> e = {
        Vec{1, 0, 1, 0, 0}, Vec{0, 0, 1, 0, 0},
        Vec{0, 1, 0, 1, 0}, Vec{0, 0, 0, 1, 0},
        Vec{-a, -b, 0, 0, 1}, Vec{0, 0, 0, 0, 1},
    };
    out.circuit_relation = Vec{a, -a, b, -b, 1, -1};

    auto sides = reid_circuit_flip(e, out.circuit_relation);
    out.left = std::move(sides.first);
    out.right = std::move(sides.second);

    // exceptional weights of either side come from the star of its shared
    // face, with the removable rays opposite
    Cone shared_left = Cone::from_rays(5, {e[1], e[3], e[5]});
    out.exceptional_weights_left = star_quotient_weights(shared_left, {e[0], e[2], e[4]}).weights;
    Cone shared_right = Cone::from_rays(5, {e[0], e[2], e[4]});
    out.exceptional_weights_right = star_quotient_weights(shared_right, {e[1], e[3], e[5]}).weights;

    std::vector<Int> expected = {1, a, b};
    std::sort(expected.begin(), expected.end());
    if (out.exceptional_weights_left != expected || out.exceptional_weights_right != expected)
        throw Error("unexpected exceptional weights");
    return out;
}

} // namespace toricdef
