#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toricdef/error.hpp"
#include "toricdef/lattice.hpp"
#include "toricdef/polytope.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace toricdef;

namespace {

Vec vec(std::initializer_list<long long> xs) {
    std::vector<Int> c;
    for (long long x : xs) c.emplace_back(x);
    return Vec(std::move(c));
}

std::vector<Vec> sorted(std::vector<Vec> vs) {
    std::sort(vs.begin(), vs.end(), VecLess{});
    return vs;
}

// ---- independent oracles ----------------------------------------------

// Membership in conv(V) for ambient dim 2 by supporting-line checks plus a
// bounding box (the box completes the collinear and single-point cases).
bool hull_contains_2d(const std::vector<Vec>& v, const Vec& p) {
    for (std::size_t j = 0; j < 2; ++j) {
        Int lo = v[0][j], hi = v[0][j];
        for (const Vec& w : v) {
            lo = std::min(lo, w[j]);
            hi = std::max(hi, w[j]);
        }
        if (p[j] < lo || p[j] > hi) return false;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (i == j) continue;
            Vec d = v[j] - v[i];
            if (d.is_zero()) continue;
            bool supporting = true;
            for (const Vec& w : v) {
                Int c = d[0] * (w[1] - v[i][1]) - d[1] * (w[0] - v[i][0]);
                if (c < 0) {
                    supporting = false;
                    break;
                }
            }
            if (!supporting) continue;
            Int cp = d[0] * (p[1] - v[i][1]) - d[1] * (p[0] - v[i][0]);
            if (cp < 0) return false;
        }
    }
    return true;
}

// Membership in a full-dimensional simplex via barycentric signs.
bool simplex_contains(const std::vector<Vec>& verts, const Vec& p) {
    const std::size_t d = p.dim();
    REQUIRE(verts.size() == d + 1);
    auto lifted = [&](const Vec& v) {
        std::vector<Int> c(v.coords());
        c.push_back(1);
        return Vec(std::move(c));
    };
    std::vector<Vec> rows;
    for (const Vec& v : verts) rows.push_back(lifted(v));
    Int det = Mat::from_rows(rows, d + 1).determinant();
    REQUIRE(det != 0);
    for (std::size_t i = 0; i <= d; ++i) {
        std::vector<Vec> repl = rows;
        repl[i] = lifted(p);
        Int num = Mat::from_rows(repl, d + 1).determinant();
        if (det > 0 ? num < 0 : num > 0) return false;
    }
    return true;
}

// Facets of a pointed full-dimensional cone by brute force: a facet normal is
// a kernel vector of some (d-1)-subset of rays, oriented nonnegatively on all
// rays, whose tight rays span a hyperplane.
std::vector<Vec> facet_oracle(const std::vector<Vec>& rays, std::size_t d) {
    std::set<Vec, VecLess> out;
    std::vector<std::size_t> idx(rays.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<char> pick(rays.size(), 0);
    std::fill(pick.begin(), pick.begin() + (d - 1), 1);
    std::sort(pick.begin(), pick.end());
    do {
        std::vector<Vec> sub;
        for (std::size_t i = 0; i < rays.size(); ++i)
            if (pick[i]) sub.push_back(rays[i]);
        std::vector<Vec> ker = kernel_basis(Mat::from_rows(sub, d));
        if (ker.size() != 1) continue;
        Vec n = ker[0];
        bool nonneg = true, nonpos = true;
        for (const Vec& r : rays) {
            Int s = dot(n, r);
            if (s > 0) nonpos = false;
            if (s < 0) nonneg = false;
        }
        if (!nonneg && !nonpos) continue;
        if (nonpos) n = -n;
        std::vector<Vec> tight;
        for (const Vec& r : rays)
            if (dot(n, r) == 0) tight.push_back(r);
        if (Mat::from_rows(tight, d).rank() != d - 1) continue;
        out.insert(primitivize(n));
    } while (std::next_permutation(pick.begin(), pick.end()));
    return {out.begin(), out.end()};
}

std::vector<Vec> hexagon_rays(long long a, long long b) {
    return {vec({1, 0, 1}),          vec({0, 1, 1}),
            vec({-a, -b, 1}),        vec({1, 1, 1}),
            vec({-a, 1 - b, 1}),     vec({1 - a, -b, 1})};
}

std::mt19937 rng(20260819);

Vec random_vec(std::size_t d, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    std::vector<Int> c(d);
    for (auto& x : c) x = dist(rng);
    return Vec(std::move(c));
}

} // namespace

TEST_CASE("facets of the plane cone spanned by (1,0) and (1,2)") {
    Cone c = Cone::from_rays(2, {vec({1, 0}), vec({1, 2})});
    CHECK(c.dim() == 2);
    CHECK(c.is_pointed());
    CHECK(c.is_simplicial());
    CHECK(facets_of_cone(c) == std::vector<Vec>{vec({0, 1}), vec({2, -1})});
}

TEST_CASE("facets of the positive orthant") {
    Cone c = Cone::from_rays(3, {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
    CHECK(facets_of_cone(c) ==
          std::vector<Vec>{vec({0, 0, 1}), vec({0, 1, 0}), vec({1, 0, 0})});
    CHECK(c.contains(vec({1, 2, 3})));
    CHECK(c.contains(vec({0, 0, 0})));
    CHECK_FALSE(c.contains(vec({-1, 0, 0})));
}

TEST_CASE("hexagon cone: six extreme rays and six facets") {
    for (auto [a, b] : {std::pair<long long, long long>{1, 1}, {1, 2}, {2, 3}}) {
        CAPTURE(a);
        CAPTURE(b);
        Cone c = Cone::from_rays(3, hexagon_rays(a, b));
        CHECK(c.dim() == 3);
        CHECK(c.is_pointed());
        CHECK_FALSE(c.is_simplicial());
        CHECK(c.rays().size() == 6);
        CHECK(c.rays() == sorted(hexagon_rays(a, b)));
        CHECK(facets_of_cone(c).size() == 6);
        CHECK(facets_of_cone(c) == facet_oracle(c.rays(), 3));
        // points at height 1 interior to the hexagon are not extreme
        std::vector<Vec> padded = hexagon_rays(a, b);
        padded.push_back(vec({0, 0, 1}));
        padded.push_back(vec({1 - a, 1 - b, 1}));
        CHECK(Cone::from_rays(3, padded).rays() == c.rays());
    }
}

TEST_CASE("hexagon cone facets, frozen for a=b=1") {
    Cone c = Cone::from_rays(3, hexagon_rays(1, 1));
    CHECK(facets_of_cone(c) ==
          std::vector<Vec>{vec({-1, 0, 1}), vec({-1, 1, 1}), vec({0, -1, 1}),
                           vec({0, 1, 1}), vec({1, -1, 1}), vec({1, 0, 1})});
}

TEST_CASE("redundant generators are dropped") {
    Cone c = Cone::from_rays(
        2, {vec({1, 0}), vec({0, 1}), vec({1, 1}), vec({1, 2}), vec({2, 1}), vec({3, 0})});
    CHECK(c.rays() == std::vector<Vec>{vec({0, 1}), vec({1, 0})});
}

TEST_CASE("non-pointed cones keep their generators") {
    Cone c = Cone::from_rays(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1})});
    CHECK_FALSE(c.is_pointed());
    CHECK(c.dim() == 2);
    CHECK(c.rays() == std::vector<Vec>{vec({-1, 0}), vec({0, 1}), vec({1, 0})});
    CHECK(c.facets() == std::vector<Vec>{vec({0, 1})});
    CHECK(c.contains(vec({-7, 3})));
    CHECK_FALSE(c.contains(vec({0, -1})));

    Cone plane = Cone::from_rays(2, {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})});
    CHECK_FALSE(plane.is_pointed());
    CHECK(plane.facets().empty());
    CHECK(plane.contains(vec({5, -9})));
}

TEST_CASE("low-dimensional cones carry span constraints") {
    Cone c = Cone::from_rays(3, {vec({1, 1, 0}), vec({-1, 1, 0})});
    CHECK(c.dim() == 2);
    CHECK(c.is_pointed());
    CHECK(c.contains(vec({0, 2, 0})));
    CHECK_FALSE(c.contains(vec({0, 2, 1})));
    CHECK_FALSE(c.contains(vec({2, 1, 0})));

    Cone ray = Cone::from_rays(2, {vec({2, 4})});
    CHECK(ray.dim() == 1);
    CHECK(ray.rays() == std::vector<Vec>{vec({1, 2})});
    CHECK(ray.contains(vec({3, 6})));
    CHECK_FALSE(ray.contains(vec({-1, -2})));
    CHECK_FALSE(ray.contains(vec({1, 1})));
}

TEST_CASE("facet enumeration rejects a cone with no rays") {
    Cone c = Cone::from_rays(2, {});
    CHECK(c.dim() == 0);
    CHECK_THROWS_AS(facets_of_cone(c), Error);
    CHECK(c.contains(vec({0, 0})));
    CHECK_FALSE(c.contains(vec({1, 0})));
}

TEST_CASE("zero vectors are rejected as rays") {
    CHECK_THROWS_AS(Cone::from_rays(2, {vec({0, 0})}), Error);
}

TEST_CASE("dual_extreme_rays restricted to the span of the input") {
    std::vector<Vec> out = dual_extreme_rays({vec({1, 1, 0}), vec({-1, 1, 0})}, 3);
    CHECK(out == std::vector<Vec>{vec({-1, 1, 0}), vec({1, 1, 0})});
    CHECK(dual_extreme_rays({vec({2, 2, 0})}, 3) == std::vector<Vec>{vec({1, 1, 0})});
}

TEST_CASE("rays -> facets -> rays round-trips on random pointed cones") {
    int tested = 0;
    for (int it = 0; it < 400 && tested < 120; ++it) {
        std::size_t d = 3 + static_cast<std::size_t>(it % 2);
        std::uniform_int_distribution<int> count(static_cast<int>(d), static_cast<int>(d) + 3);
        std::vector<Vec> gens;
        for (int i = count(rng); i > 0; --i) {
            Vec v = random_vec(d, -4, 4);
            if (!v.is_zero()) gens.push_back(v);
        }
        if (gens.empty()) continue;
        Cone c = Cone::from_rays(d, gens);
        if (!c.is_pointed() || c.dim() != d) continue;
        ++tested;
        CAPTURE(it);
        CHECK(dual_extreme_rays(c.facets(), d) == c.rays());
        CHECK(facets_of_cone(c) == facet_oracle(c.rays(), d));
        for (const Vec& r : c.rays())
            for (const Vec& f : c.facets()) CHECK(dot(f, r) >= 0);
    }
    CHECK(tested >= 120);
}

TEST_CASE("polytope vertex filtering") {
    Polytope sq = Polytope::from_vertices(
        2, {vec({0, 0}), vec({2, 0}), vec({0, 2}), vec({2, 2}), vec({1, 1}), vec({1, 0})});
    CHECK(sq.vertices() ==
          std::vector<Vec>{vec({0, 0}), vec({0, 2}), vec({2, 0}), vec({2, 2})});
    CHECK(sq.affine_dim() == 2);
    CHECK(sq.contains(vec({1, 1})));
    CHECK_FALSE(sq.contains(vec({3, 1})));

    Polytope seg = Polytope::from_vertices(2, {vec({0, 0}), vec({1, 1}), vec({3, 3})});
    CHECK(seg.vertices() == std::vector<Vec>{vec({0, 0}), vec({3, 3})});
    CHECK(seg.affine_dim() == 1);

    Polytope pt = Polytope::from_vertices(2, {vec({4, -1})});
    CHECK(pt.vertices() == std::vector<Vec>{vec({4, -1})});
    CHECK(pt.affine_dim() == 0);
    CHECK(pt.contains(vec({4, -1})));
    CHECK_FALSE(pt.contains(vec({4, 0})));

    CHECK_THROWS_AS(Polytope::from_vertices(2, {}), Error);
}

TEST_CASE("lattice points of the elementary triangle") {
    Polytope t = Polytope::from_vertices(2, {vec({1, 0}), vec({0, 1}), vec({-1, -1})});
    CHECK(lattice_points(t) ==
          std::vector<Vec>{vec({-1, -1}), vec({0, 0}), vec({0, 1}), vec({1, 0})});
}

TEST_CASE("lattice points of segments and points") {
    Polytope seg = Polytope::from_vertices(2, {vec({0, 0}), vec({3, 3})});
    CHECK(lattice_points(seg) ==
          std::vector<Vec>{vec({0, 0}), vec({1, 1}), vec({2, 2}), vec({3, 3})});
    Polytope pt = Polytope::from_vertices(2, {vec({-2, 5})});
    CHECK(lattice_points(pt) == std::vector<Vec>{vec({-2, 5})});
}

TEST_CASE("lattice points agree with the supporting-line oracle") {
    for (int it = 0; it < 60; ++it) {
        CAPTURE(it);
        std::uniform_int_distribution<int> count(1, 6);
        std::vector<Vec> pts;
        for (int i = count(rng); i > 0; --i) pts.push_back(random_vec(2, -5, 5));
        Polytope p = Polytope::from_vertices(2, pts);
        std::vector<Vec> expect;
        Int lo0 = -5, hi0 = 5;
        for (Int x = lo0; x <= hi0; ++x)
            for (Int y = lo0; y <= hi0; ++y) {
                Vec cand({x, y});
                if (hull_contains_2d(pts, cand)) expect.push_back(cand);
                CHECK(p.contains(cand) == hull_contains_2d(pts, cand));
            }
        CHECK(lattice_points(p) == expect);
    }
}

TEST_CASE("simplex membership agrees with barycentric signs in dim 3") {
    int tested = 0;
    for (int it = 0; it < 200 && tested < 40; ++it) {
        std::vector<Vec> verts;
        for (int i = 0; i < 4; ++i) verts.push_back(random_vec(3, -3, 3));
        auto lifted = [&](const Vec& v) {
            std::vector<Int> c(v.coords());
            c.push_back(1);
            return Vec(std::move(c));
        };
        std::vector<Vec> rows;
        for (const Vec& v : verts) rows.push_back(lifted(v));
        if (Mat::from_rows(rows, 4).determinant() == 0) continue;
        ++tested;
        CAPTURE(it);
        Polytope p = Polytope::from_vertices(3, verts);
        for (int s = 0; s < 50; ++s) {
            Vec cand = random_vec(3, -3, 3);
            CHECK(p.contains(cand) == simplex_contains(verts, cand));
        }
    }
    CHECK(tested >= 40);
}

TEST_CASE("lattice point scan guard") {
    Polytope big = Polytope::from_vertices(1, {vec({0}), vec({100000000})});
    CHECK_THROWS_AS(lattice_points(big), GuardError);
}

TEST_CASE("minkowski sum of two segments is the unit square") {
    Polytope a = Polytope::from_vertices(2, {vec({0, 0}), vec({1, 0})});
    Polytope b = Polytope::from_vertices(2, {vec({0, 0}), vec({0, 1})});
    Polytope s = minkowski_sum(a, b);
    CHECK(s.vertices() ==
          std::vector<Vec>{vec({0, 0}), vec({0, 1}), vec({1, 0}), vec({1, 1})});
}

TEST_CASE("minkowski sum of the three hexagon summands") {
    Polytope r0 = Polytope::from_vertices(2, {vec({0, 0}), vec({1, 0})});
    Polytope r1 = Polytope::from_vertices(2, {vec({0, 0}), vec({0, 1})});
    Polytope r2 = Polytope::from_vertices(2, {vec({0, 0}), vec({-1, -1})});
    Polytope hex = minkowski_sum(minkowski_sum(r0, r1), r2);
    CHECK(hex.vertices() ==
          std::vector<Vec>{vec({-1, -1}), vec({-1, 0}), vec({0, -1}), vec({0, 1}),
                           vec({1, 0}), vec({1, 1})});
}

TEST_CASE("minkowski sum properties") {
    for (int it = 0; it < 40; ++it) {
        CAPTURE(it);
        std::uniform_int_distribution<int> count(1, 4);
        auto rand_poly = [&] {
            std::vector<Vec> pts;
            for (int i = count(rng); i > 0; --i) pts.push_back(random_vec(2, -4, 4));
            return Polytope::from_vertices(2, pts);
        };
        Polytope a = rand_poly(), b = rand_poly(), c = rand_poly();
        Polytope ab = minkowski_sum(a, b);
        CHECK(ab.vertices() == minkowski_sum(b, a).vertices());
        CHECK(minkowski_sum(ab, c).vertices() ==
              minkowski_sum(a, minkowski_sum(b, c)).vertices());
        // every vertex of the sum splits as a vertex of a plus a vertex of b
        for (const Vec& v : ab.vertices()) {
            bool found = false;
            for (const Vec& u : a.vertices())
                for (const Vec& w : b.vertices())
                    if (u + w == v) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("minkowski decomposition of a segment") {
    Polytope seg = Polytope::from_vertices(1, {vec({0}), vec({2})});
    auto decs = minkowski_decompose(seg, 2);
    CHECK(decs.size() == 2);
    auto verts = [](const std::vector<Polytope>& ps) {
        std::vector<std::vector<Vec>> vs;
        for (const Polytope& p : ps) vs.push_back(p.vertices());
        return vs;
    };
    std::set<std::vector<std::vector<Vec>>> seen;
    for (const auto& d : decs) seen.insert(verts(d));
    CHECK(seen.count({{vec({0})}, {vec({0}), vec({2})}}) == 1);
    CHECK(seen.count({{vec({0}), vec({1})}, {vec({0}), vec({1})}}) == 1);
}

TEST_CASE("minkowski decomposition of the hexagon into three segments") {
    Polytope hex = Polytope::from_vertices(
        2, {vec({1, 0}), vec({1, 1}), vec({0, 1}), vec({-1, 0}), vec({-1, -1}), vec({0, -1})});
    auto decs = minkowski_decompose(hex, 3);
    bool found = false;
    for (const auto& d : decs) {
        std::vector<std::vector<Vec>> vs;
        for (const Polytope& p : d) vs.push_back(p.vertices());
        if (vs == std::vector<std::vector<Vec>>{{vec({0, 0}), vec({0, 1})},
                                                {vec({0, 0}), vec({1, 0})},
                                                {vec({0, 0}), vec({1, 1})}})
            found = true;
    }
    CHECK(found);
    // every decomposition sums back to the hexagon (up to translation)
    for (const auto& d : decs) {
        Polytope s = d[0];
        for (std::size_t i = 1; i < d.size(); ++i) s = minkowski_sum(s, d[i]);
        Vec lo = s.vertices().front();
        std::vector<Vec> moved;
        for (const Vec& v : s.vertices()) moved.push_back(v - lo);
        Vec hlo = hex.vertices().front();
        std::vector<Vec> hmoved;
        for (const Vec& v : hex.vertices()) hmoved.push_back(v - hlo);
        CHECK(moved == hmoved);
    }
}

TEST_CASE("the unit triangle is indecomposable") {
    Polytope tri = Polytope::from_vertices(2, {vec({0, 0}), vec({1, 0}), vec({0, 1})});
    auto decs = minkowski_decompose(tri, 2);
    CHECK(decs.size() == 1);
    bool has_point = false;
    for (const Polytope& p : decs[0])
        if (p.vertices().size() == 1) has_point = true;
    CHECK(has_point);
}

TEST_CASE("minkowski decomposition rejects higher dimensions and trivial part counts") {
    Polytope cube = Polytope::from_vertices(
        3, {vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})});
    CHECK_THROWS_AS(minkowski_decompose(cube, 2), Error);
    Polytope seg = Polytope::from_vertices(1, {vec({0}), vec({2})});
    CHECK_THROWS_AS(minkowski_decompose(seg, 1), Error);
}

TEST_CASE("minkowski decomposition guard on long segments") {
    Polytope seg = Polytope::from_vertices(1, {vec({0}), vec({10000000})});
    CHECK_THROWS_AS(minkowski_decompose(seg, 2), GuardError);
}

TEST_CASE("decompositions of random polygons sum back to the input") {
    for (int it = 0; it < 25; ++it) {
        CAPTURE(it);
        std::uniform_int_distribution<int> count(2, 4);
        std::vector<Vec> pts;
        for (int i = count(rng); i > 0; --i) pts.push_back(random_vec(2, -2, 2));
        Polytope q = Polytope::from_vertices(2, pts);
        Vec qlo = q.vertices().front();
        std::vector<Vec> qmoved;
        for (const Vec& v : q.vertices()) qmoved.push_back(v - qlo);
        auto decs = minkowski_decompose(q, 2);
        CHECK(!decs.empty());
        for (const auto& d : decs) {
            REQUIRE(d.size() == 2);
            Polytope s = minkowski_sum(d[0], d[1]);
            Vec slo = s.vertices().front();
            std::vector<Vec> smoved;
            for (const Vec& v : s.vertices()) smoved.push_back(v - slo);
            CHECK(smoved == qmoved);
        }
    }
}

TEST_CASE("cayley cone of two unit segments") {
    Polytope seg = Polytope::from_vertices(1, {vec({0}), vec({1})});
    Cone c = cayley_cone({seg, seg}, 2);
    CHECK(c.ambient_dim() == 3);
    CHECK(c.dim() == 3);
    CHECK(c.is_pointed());
    CHECK(c.rays() ==
          std::vector<Vec>{vec({0, 0, 1}), vec({0, 1, 0}), vec({1, 0, 1}), vec({1, 1, 0})});
}

TEST_CASE("cayley cone of the flop summands") {
    for (auto [a, b] : {std::pair<long long, long long>{1, 1}, {1, 2}, {2, 3}}) {
        CAPTURE(a);
        CAPTURE(b);
        Polytope r0 = Polytope::from_vertices(2, {vec({0, 0}), vec({1, 0})});
        Polytope r1 = Polytope::from_vertices(2, {vec({0, 0}), vec({0, 1})});
        Polytope r2 = Polytope::from_vertices(2, {vec({0, 0}), vec({-a, -b})});
        Cone c = cayley_cone({r0, r1, r2}, 3);
        CHECK(c.ambient_dim() == 5);
        CHECK(c.dim() == 5);
        CHECK(c.is_pointed());
        CHECK(c.rays() == sorted({vec({1, 0, 1, 0, 0}), vec({0, 0, 1, 0, 0}),
                                  vec({0, 1, 0, 1, 0}), vec({0, 0, 0, 1, 0}),
                                  vec({-a, -b, 0, 0, 1}), vec({0, 0, 0, 0, 1})}));
        // marker blocks: each ray sits over exactly one summand
        for (const Vec& r : c.rays()) CHECK(r[2] + r[3] + r[4] == 1);
    }
}

TEST_CASE("cayley cone validates summand dimensions") {
    Polytope seg1 = Polytope::from_vertices(1, {vec({0}), vec({1})});
    Polytope seg2 = Polytope::from_vertices(2, {vec({0, 0}), vec({1, 0})});
    CHECK_THROWS_AS(cayley_cone({seg1, seg2}, 2), Error);
    CHECK_THROWS_AS(cayley_cone({}, 2), Error);
}

TEST_CASE("cross-section recovers height-one rays as vertices") {
    Cone hex = Cone::from_rays(3, hexagon_rays(2, 3));
    Polytope sec = cross_section(hex);
    CHECK(sec.vertices() == hex.rays());
    CHECK(sec.affine_dim() == 2);
    CHECK_THROWS_AS(cross_section(Cone::from_rays(3, {})), Error);
}
