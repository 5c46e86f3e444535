#include "toricdef/deformation.hpp"

#include "toricdef/error.hpp"

#include <algorithm>

namespace toricdef {

Deformation build_deformation(const std::vector<Polytope>& summands, std::size_t n) {
    Deformation d;
    d.cone = cayley_cone(summands, n);
    d.n = n;
    d.m = summands.size() - 1;
    d.summands = summands;
    const std::size_t dim = n + d.m;
    for (std::size_t i = 0; i <= d.m; ++i) d.markers.push_back(Vec::unit(dim, n - 1 + i));
    for (std::size_t i = 1; i <= d.m; ++i) d.l_basis.push_back(d.markers[i] - d.markers[0]);

    for (const Vec& r : d.cone.rays()) {
        Int total = 0;
        for (const Vec& marker : d.markers) {
            Int v = dot(marker, r);
            if (v < 0) throw Error("not Gorenstein homogeneous");
            total += v;
        }
        if (total != 1) throw Error("not Gorenstein homogeneous");
    }
    if (Mat::from_rows(d.l_basis, dim).rank() != d.m)
        throw Error("not Gorenstein homogeneous");
    return d;
}

CentralFibre slice_cone(const Cone& c, const std::vector<Vec>& l_basis) {
    const std::size_t dim = c.ambient_dim();
    Mat basis = Mat::from_rows(kernel_basis(Mat::from_rows(l_basis, dim)), dim);

    // the slice by its constraint description: facet and span inequalities
    // of the cone plus both signs of every sublattice functional
    std::vector<Vec> constraints = c.facets();
    for (const Vec& w : c.span_equations()) {
        constraints.push_back(w);
        constraints.push_back(-w);
    }
    for (const Vec& l : l_basis) {
        constraints.push_back(l);
        constraints.push_back(-l);
    }
    std::vector<Vec> ambient_rays = dual_extreme_rays(constraints, dim);

    std::vector<Vec> sliced;
    sliced.reserve(ambient_rays.size());
    for (const Vec& r : ambient_rays) sliced.push_back(coords_in_basis(basis, r));
    return CentralFibre{Cone::from_rays(basis.rows(), sliced), basis};
}

CentralFibre central_fibre(const Deformation& d) {
    return slice_cone(d.cone, d.l_basis);
}

FibrePresentation fibre_presentation(const Deformation& d, const Cone& chart) {
    const std::size_t dim = d.n + d.m;
    if (chart.ambient_dim() != dim) throw Error("chart dimension mismatch");
    if (chart.rays().size() != dim || chart.dim() != dim) throw Error("not simplicial");
    for (const Vec& r : chart.rays())
        if (!d.cone.contains(r)) throw Error("chart not contained in the deformation cone");

    // block of a ray = the unique marker evaluating to 1 on it
    std::vector<std::size_t> block(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        const Vec& k = chart.rays()[j];
        std::size_t ones = 0, where = 0;
        for (std::size_t i = 0; i <= d.m; ++i) {
            Int v = dot(d.markers[i], k);
            if (v == 0) continue;
            if (v != 1) throw Error("not fibre-compatible");
            ++ones;
            where = i;
        }
        if (ones != 1) throw Error("not fibre-compatible");
        block[j] = where;
    }

    FibrePresentation out;
    out.chart = chart;
    for (std::size_t i = 0; i <= d.m; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (block[j] == i) out.reorder.push_back(j);

    out.partition.push_back(0);
    std::size_t at = 0;
    for (std::size_t i = 0; i <= d.m; ++i) {
        std::size_t size = 0;
        for (std::size_t j = 0; j < dim; ++j)
            if (block[j] == i) ++size;
        if (size == 0) throw Error("not fibre-compatible");
        at += size;
        out.partition.push_back(at);
    }

    for (std::size_t i = 0; i <= d.m; ++i) {
        Vec f = Vec::zero(dim);
        for (std::size_t j = out.partition[i]; j < out.partition[i + 1]; ++j) f[j] = 1;
        out.monomials.push_back(std::move(f));
    }

    std::vector<Vec> reordered;
    reordered.reserve(dim);
    for (std::size_t j : out.reorder) reordered.push_back(chart.rays()[j]);
    out.action = quotient_action_of_rays(reordered);

    // the F_i descend to the quotient: each block's weight sum vanishes
    for (std::size_t g = 0; g < out.action.generators.size(); ++g) {
        for (const Vec& f : out.monomials) {
            Int sum = 0;
            for (std::size_t j = 0; j < dim; ++j) sum += f[j] * out.action.generators[g][j];
            if (sum % out.action.cyclic_factors[g] != 0)
                throw Error("not fibre-compatible");
        }
    }
    return out;
}

bool hypersurface_canonicity_check(const Int& l, const std::vector<Int>& weights,
                                   std::size_t p) {
    if (l <= 0) throw Error("zero order");
    if (p < 1 || p > weights.size()) throw Error("split position out of range");
    for (const Int& a : weights)
        if (a < 0 || a >= l) throw Error("weights must lie in [0, order)");
    Int front = 0, back = 0;
    for (std::size_t i = 0; i < weights.size(); ++i)
        (i < p ? front : back) += weights[i];
    return front + back <= l + std::max(front, back);
}

} // namespace toricdef
