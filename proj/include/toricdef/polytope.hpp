#pragma once

#include "toricdef/lattice.hpp"

#include <cstddef>
#include <vector>

namespace toricdef {

// Extreme rays of {x : <g_i, x> >= 0 for all i} intersected with span(g_i),
// computed by the double description method in exact arithmetic.  The result
// is primitive, deduplicated and lexicographically sorted.  Self-inverse on
// the facet/ray descriptions of pointed cones.
std::vector<Vec> dual_extreme_rays(const std::vector<Vec>& gs, std::size_t dim);

// Rational polyhedral cone, stored canonically: primitive rays (orientation
// preserved), deduplicated, lexicographically sorted, and reduced to extreme
// rays whenever the cone is pointed.  Facets are computed at construction and
// cached for the lifetime of the object.
class Cone {
public:
    Cone() = default;
    static Cone from_rays(std::size_t ambient_dim, const std::vector<Vec>& rays);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<Vec>& rays() const { return rays_; }

    // Inner facet normals within span(rays): the cone equals
    // {x in span(rays) : <f, x> >= 0 for every facet normal f}.
    const std::vector<Vec>& facets() const { return facets_; }

    std::size_t dim() const { return dim_; } // rank of the ray set
    bool is_pointed() const { return pointed_; }
    bool is_simplicial() const { return rays_.size() == dim_; }
    bool contains(const Vec& v) const;

    // Equations cutting out span(rays): the cone is the facet inequalities
    // plus <w, x> = 0 for every w here.
    const std::vector<Vec>& span_equations() const { return span_perp_; }

    friend bool operator==(const Cone& a, const Cone& b) {
        return a.ambient_dim_ == b.ambient_dim_ && a.rays_ == b.rays_;
    }

private:
    std::size_t ambient_dim_ = 0;
    std::vector<Vec> rays_;
    std::vector<Vec> facets_;
    std::vector<Vec> span_perp_; // basis of span(rays)^perp, for membership
    std::size_t dim_ = 0;
    bool pointed_ = true;
};

// Facet enumeration as a free operation.  Empty ray list is an error;
// non-pointed cones are fine (the facet description is still valid).
std::vector<Vec> facets_of_cone(const Cone& c);

// Lattice polytope, stored canonically: the exact vertex set of the convex
// hull (redundant input points dropped), lexicographically sorted.
class Polytope {
public:
    Polytope() = default;
    static Polytope from_vertices(std::size_t ambient_dim, const std::vector<Vec>& points);

    std::size_t ambient_dim() const { return ambient_dim_; }
    const std::vector<Vec>& vertices() const { return vertices_; }
    std::size_t affine_dim() const;
    bool contains(const Vec& p) const;

    // Cone over the polytope embedded at height 1 in one more coordinate.
    const Cone& lifted_cone() const { return lifted_; }

    friend bool operator==(const Polytope& a, const Polytope& b) {
        return a.ambient_dim_ == b.ambient_dim_ && a.vertices_ == b.vertices_;
    }

private:
    std::size_t ambient_dim_ = 0;
    std::vector<Vec> vertices_;
    Cone lifted_;
};

// All lattice points of p (bounding-box scan with exact membership tests),
// lexicographically sorted.
std::vector<Vec> lattice_points(const Polytope& p);

Polytope minkowski_sum(const Polytope& a, const Polytope& b);

// All unordered decompositions of a lattice polygon (ambient dim <= 2) into
// `parts` Minkowski summands, points allowed.  Each summand is translated so
// its lexicographically smallest vertex is the origin; each returned list is
// sorted and the results are deduplicated.
std::vector<std::vector<Polytope>> minkowski_decompose(const Polytope& q, std::size_t parts);

// Cayley cone of m+1 summands living in ambient dim n-1: the cone over the
// convex hull of the summands placed at unit marker heights.  Rays are the
// lifted summand vertices; every ray has marker-coordinate sum 1.
Cone cayley_cone(const std::vector<Polytope>& summands, std::size_t n);

// Lattice points of the height-1 cross-section polytope of a cone whose rays
// all lie at height 1 under the functional h.
Polytope cross_section(const Cone& c);

} // namespace toricdef
