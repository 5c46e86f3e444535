#include "toricdef/polytope.hpp"

#include "toricdef/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toricdef {

namespace {

constexpr unsigned long long kLatticeScanGuard = 10'000'000ULL;
constexpr unsigned long long kDecomposeGuard = 1'000'000ULL;

// Double description: extreme rays of {y in R^s : <h_i, y> >= 0}, where the
// h_i span R^s (so the result cone is pointed).  Constraints are inserted one
// at a time; adjacency of rays is decided by the combinatorial test on tight
// constraint sets.
struct DDRay {
    Vec v;
    std::vector<char> tight; // parallel to the processed constraint list
};

std::vector<Vec> dd_extreme_rays(const std::vector<Vec>& hs, std::size_t s) {
    if (s == 0) return {};

    // Greedy independent subset for the initial simplicial cone.
    std::vector<std::size_t> init;
    std::vector<Vec> chosen;
    for (std::size_t i = 0; i < hs.size() && chosen.size() < s; ++i) {
        chosen.push_back(hs[i]);
        if (Mat::from_rows(chosen, s).rank() == chosen.size()) {
            init.push_back(i);
        } else {
            chosen.pop_back();
        }
    }
    if (chosen.size() != s) throw Error("constraints do not span");

    Mat h0 = Mat::from_rows(chosen, s);
    Mat adj = adjugate(h0);
    Int det = h0.determinant();
    std::vector<DDRay> rays;
    for (std::size_t j = 0; j < s; ++j) {
        Vec x = adj.col(j);
        if (det < 0) x = -x;
        DDRay r{primitivize(x), std::vector<char>(s, 1)};
        r.tight[j] = 0; // <h_init[j], x_j> = |det| > 0, tight on the others
        rays.push_back(std::move(r));
    }
    std::vector<std::size_t> processed = init;

    std::vector<char> in_init(hs.size(), 0);
    for (std::size_t i : init) in_init[i] = 1;

    for (std::size_t ci = 0; ci < hs.size(); ++ci) {
        if (in_init[ci]) continue;
        const Vec& h = hs[ci];
        std::vector<Int> val(rays.size());
        std::vector<std::size_t> pos, zer, neg;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = dot(h, rays[r].v);
            if (val[r] > 0) pos.push_back(r);
            else if (val[r] == 0) zer.push_back(r);
            else neg.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r = 0; r < rays.size(); ++r)
                rays[r].tight.push_back(val[r] == 0 ? 1 : 0);
            processed.push_back(ci);
            continue;
        }

        auto adjacent = [&](std::size_t p, std::size_t n) {
            const std::size_t nb = processed.size();
            std::vector<char> both(nb);
            for (std::size_t k = 0; k < nb; ++k)
                both[k] = rays[p].tight[k] & rays[n].tight[k];
            for (std::size_t w = 0; w < rays.size(); ++w) {
                if (w == p || w == n) continue;
                bool superset = true;
                for (std::size_t k = 0; k < nb && superset; ++k)
                    if (both[k] && !rays[w].tight[k]) superset = false;
                if (superset) return false;
            }
            return true;
        };

        std::vector<DDRay> next;
        std::set<Vec, VecLess> seen;
        for (std::size_t r : pos) {
            DDRay keep = rays[r];
            keep.tight.push_back(0);
            seen.insert(keep.v);
            next.push_back(std::move(keep));
        }
        for (std::size_t r : zer) {
            DDRay keep = rays[r];
            keep.tight.push_back(1);
            seen.insert(keep.v);
            next.push_back(std::move(keep));
        }
        for (std::size_t p : pos) {
            for (std::size_t n : neg) {
                if (!adjacent(p, n)) continue;
                Vec comb = val[p] * rays[n].v - val[n] * rays[p].v;
                comb = primitivize(comb);
                if (!seen.insert(comb).second) continue;
                DDRay nr;
                nr.tight.resize(processed.size() + 1);
                for (std::size_t k = 0; k < processed.size(); ++k)
                    nr.tight[k] = dot(hs[processed[k]], comb) == 0 ? 1 : 0;
                nr.tight[processed.size()] = 1;
                nr.v = std::move(comb);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
        processed.push_back(ci);
    }

    std::vector<Vec> out;
    out.reserve(rays.size());
    for (DDRay& r : rays) out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end(), VecLess{});
    return out;
}

} // namespace

std::vector<Vec> dual_extreme_rays(const std::vector<Vec>& gs_in, std::size_t dim) {
    std::vector<Vec> gs;
    for (const Vec& g : gs_in) {
        if (g.dim() != dim) throw Error("constraint dimension mismatch");
        if (!g.is_zero()) gs.push_back(primitivize(g));
    }
    if (gs.empty()) return {};

    Mat b = saturated_span_basis(gs, dim);
    const std::size_t s = b.rows();
    std::vector<Vec> hs;
    hs.reserve(gs.size());
    for (const Vec& g : gs) hs.push_back(b * g);

    std::vector<Vec> ys = dd_extreme_rays(hs, s);
    Mat bt = b.transposed();
    std::vector<Vec> xs;
    xs.reserve(ys.size());
    for (const Vec& y : ys) xs.push_back(primitivize(bt * y));
    std::sort(xs.begin(), xs.end(), VecLess{});
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

Cone Cone::from_rays(std::size_t ambient_dim, const std::vector<Vec>& rays_in) {
    Cone c;
    c.ambient_dim_ = ambient_dim;
    std::vector<Vec> rays;
    for (const Vec& r : rays_in) {
        if (r.dim() != ambient_dim) throw Error("ray dimension mismatch");
        if (r.is_zero()) throw Error("zero vector is not a ray");
        rays.push_back(primitivize(r));
    }
    std::sort(rays.begin(), rays.end(), VecLess{});
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());

    c.span_perp_ = kernel_basis(Mat::from_rows(rays, ambient_dim));
    c.dim_ = ambient_dim - c.span_perp_.size();
    if (rays.empty()) {
        c.rays_ = {};
        c.pointed_ = true;
        return c;
    }
    c.facets_ = dual_extreme_rays(rays, ambient_dim);
    c.pointed_ = Mat::from_rows(c.facets_, ambient_dim).rank() == c.dim_;

    if (c.pointed_) {
        // Keep only extreme rays: r is extreme iff its tight facet set has
        // rank dim-1.
        std::vector<Vec> extreme;
        for (const Vec& r : rays) {
            std::vector<Vec> tight;
            for (const Vec& f : c.facets_)
                if (dot(f, r) == 0) tight.push_back(f);
            if (Mat::from_rows(tight, ambient_dim).rank() == c.dim_ - 1)
                extreme.push_back(r);
        }
        c.rays_ = std::move(extreme);
    } else {
        c.rays_ = std::move(rays);
    }
    return c;
}

bool Cone::contains(const Vec& v) const {
    if (v.dim() != ambient_dim_) throw Error("point dimension mismatch");
    for (const Vec& w : span_perp_)
        if (dot(w, v) != 0) return false;
    for (const Vec& f : facets_)
        if (dot(f, v) < 0) return false;
    return true;
}

std::vector<Vec> facets_of_cone(const Cone& c) {
    if (c.rays().empty()) throw Error("facets of a cone with no rays");
    return c.facets();
}

Polytope Polytope::from_vertices(std::size_t ambient_dim, const std::vector<Vec>& points) {
    if (points.empty()) throw Error("polytope needs at least one point");
    Polytope p;
    p.ambient_dim_ = ambient_dim;
    std::vector<Vec> lifted;
    lifted.reserve(points.size());
    for (const Vec& v : points) {
        if (v.dim() != ambient_dim) throw Error("vertex dimension mismatch");
        std::vector<Int> c(v.coords());
        c.push_back(1);
        lifted.emplace_back(std::move(c));
    }
    // Lifting to height 1 makes hull vertices exactly the extreme rays.
    p.lifted_ = Cone::from_rays(ambient_dim + 1, lifted);
    for (const Vec& r : p.lifted_.rays()) {
        std::vector<Int> c(r.coords().begin(), r.coords().end() - 1);
        p.vertices_.emplace_back(std::move(c));
    }
    std::sort(p.vertices_.begin(), p.vertices_.end(), VecLess{});
    return p;
}

std::size_t Polytope::affine_dim() const {
    return lifted_.dim() == 0 ? 0 : lifted_.dim() - 1;
}

bool Polytope::contains(const Vec& pt) const {
    if (pt.dim() != ambient_dim_) throw Error("point dimension mismatch");
    std::vector<Int> c(pt.coords());
    c.push_back(1);
    return lifted_.contains(Vec(std::move(c)));
}

std::vector<Vec> lattice_points(const Polytope& p) {
    const std::size_t d = p.ambient_dim();
    if (d == 0) return {Vec(std::vector<Int>{})};
    std::vector<Int> lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
        lo[j] = p.vertices()[0][j];
        hi[j] = p.vertices()[0][j];
        for (const Vec& v : p.vertices()) {
            lo[j] = std::min(lo[j], v[j]);
            hi[j] = std::max(hi[j], v[j]);
        }
    }
    Int cells = 1;
    for (std::size_t j = 0; j < d; ++j) cells *= hi[j] - lo[j] + 1;
    if (cells > kLatticeScanGuard)
        throw GuardError("lattice point scan larger than the desk-scale guard");

    std::vector<Vec> out;
    std::vector<Int> cur(lo);
    bool done = false;
    while (!done) {
        Vec cand{std::vector<Int>(cur)};
        if (p.contains(cand)) out.push_back(std::move(cand));
        std::size_t j = d;
        while (true) {
            if (j == 0) {
                done = true;
                break;
            }
            --j;
            if (cur[j] < hi[j]) {
                ++cur[j];
                for (std::size_t k = j + 1; k < d; ++k) cur[k] = lo[k];
                break;
            }
        }
    }
    std::sort(out.begin(), out.end(), VecLess{});
    return out;
}

Polytope minkowski_sum(const Polytope& a, const Polytope& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw Error("summand dimension mismatch");
    std::vector<Vec> sums;
    sums.reserve(a.vertices().size() * b.vertices().size());
    for (const Vec& u : a.vertices())
        for (const Vec& v : b.vertices()) sums.push_back(u + v);
    return Polytope::from_vertices(a.ambient_dim(), sums);
}

namespace {

// Strict angular order on nonzero 2-vectors, counterclockwise from the
// positive x-axis.
bool angle_less(const Vec& a, const Vec& b) {
    auto half = [](const Vec& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Int cross = a[0] * b[1] - a[1] * b[0];
    return cross > 0;
}

// Boundary edge multiset of a polytope of ambient dim <= 2, as pairs
// (primitive direction, lattice length), in counterclockwise order.
std::vector<std::pair<Vec, Int>> edge_multiset(const Polytope& q) {
    const auto& vs = q.vertices();
    if (vs.size() == 1) return {};
    if (q.affine_dim() == 1) {
        Vec e = vs.back() - vs.front();
        Int c = e.content();
        Vec p = primitivize(e);
        return {{p, c}, {-p, c}};
    }
    // convex position: order counterclockwise around the vertex centroid
    std::vector<Vec> order = vs;
    Vec centroid = Vec::zero(2);
    for (const Vec& v : order) centroid = centroid + v;
    Int n = static_cast<long long>(order.size());
    std::sort(order.begin(), order.end(), [&](const Vec& a, const Vec& b) {
        return angle_less(n * a - centroid, n * b - centroid);
    });
    std::vector<std::pair<Vec, Int>> edges;
    for (std::size_t i = 0; i < order.size(); ++i) {
        Vec e = order[(i + 1) % order.size()] - order[i];
        edges.emplace_back(primitivize(e), e.content());
    }
    return edges;
}

// Rebuild the convex polygon with the given closed edge multiset, translated
// so its lexicographically smallest vertex is the origin.
Polytope polygon_from_edges(std::vector<std::pair<Vec, Int>> edges, std::size_t dim) {
    if (edges.empty()) return Polytope::from_vertices(dim, {Vec::zero(dim)});
    if (dim == 1) {
        // a closed 1-d multiset is {(+1,c),(-1,c)}: the segment [0,c]
        Int c = edges.front().second;
        return Polytope::from_vertices(dim, {Vec::zero(1), Vec{{c}}});
    }
    std::sort(edges.begin(), edges.end(),
              [](const auto& a, const auto& b) { return angle_less(a.first, b.first); });
    std::vector<Vec> verts;
    Vec cur = Vec::zero(dim);
    for (const auto& [p, c] : edges) {
        verts.push_back(cur);
        cur = cur + c * p;
    }
    Vec lo = *std::min_element(verts.begin(), verts.end(), VecLess{});
    for (Vec& v : verts) v = v - lo;
    return Polytope::from_vertices(dim, verts);
}

} // namespace

std::vector<std::vector<Polytope>> minkowski_decompose(const Polytope& q, std::size_t parts) {
    if (parts < 2) throw Error("decomposition needs at least 2 parts");
    if (q.ambient_dim() > 2) throw Error("not a polygon");

    std::vector<std::pair<Vec, Int>> edges = edge_multiset(q);
    std::map<Vec, Int, VecLess> by_dir;
    for (const auto& [p, c] : edges) by_dir[p] += c;
    std::vector<std::pair<Vec, Int>> dirs(by_dir.begin(), by_dir.end());

    // guard the composition enumeration
    Int total = 1;
    for (const auto& [p, c] : dirs) {
        Int ways = 1;
        for (Int i = 1; i <= c; ++i) ways = ways * (i + Int(parts) - 1) / i;
        total *= ways;
        if (total > kDecomposeGuard)
            throw GuardError("decomposition enumeration larger than the desk-scale guard");
    }

    // odometer over per-direction compositions of c into `parts` parts
    std::vector<std::vector<Int>> assign(dirs.size(), std::vector<Int>(parts, Int(0)));
    for (std::size_t i = 0; i < dirs.size(); ++i) assign[i][0] = dirs[i].second;

    auto advance_one = [&](std::vector<Int>& comp) {
        // next composition of the same total; false after (0,...,0,total)
        std::size_t idx = parts;
        for (std::size_t j = 0; j + 1 < parts; ++j)
            if (comp[j] > 0) idx = j;
        if (idx == parts) return false;
        comp[idx] -= 1;
        Int rest = 0;
        for (std::size_t j = idx + 1; j < parts; ++j) {
            rest += comp[j];
            comp[j] = 0;
        }
        comp[idx + 1] = rest + 1;
        return true;
    };

    std::set<std::vector<std::vector<Vec>>> seen; // canonical vertex lists
    std::vector<std::vector<Polytope>> out;
    while (true) {
        // check the current assignment: each part's edge multiset must close
        bool ok = true;
        std::vector<std::vector<std::pair<Vec, Int>>> part_edges(parts);
        for (std::size_t pi = 0; pi < parts && ok; ++pi) {
            Vec sum = Vec::zero(q.ambient_dim());
            for (std::size_t di = 0; di < dirs.size(); ++di) {
                if (assign[di][pi] == 0) continue;
                part_edges[pi].emplace_back(dirs[di].first, assign[di][pi]);
                sum = sum + assign[di][pi] * dirs[di].first;
            }
            if (!sum.is_zero()) ok = false;
        }
        if (ok) {
            std::vector<Polytope> decomp;
            for (std::size_t pi = 0; pi < parts; ++pi)
                decomp.push_back(polygon_from_edges(part_edges[pi], q.ambient_dim()));
            std::sort(decomp.begin(), decomp.end(), [](const Polytope& a, const Polytope& b) {
                return std::lexicographical_compare(a.vertices().begin(), a.vertices().end(),
                                                    b.vertices().begin(), b.vertices().end(),
                                                    VecLess{});
            });
            std::vector<std::vector<Vec>> key;
            for (const Polytope& p : decomp) key.push_back(p.vertices());
            if (seen.insert(key).second) out.push_back(std::move(decomp));
        }
        // advance the odometer
        std::size_t di = 0;
        while (di < dirs.size() && !advance_one(assign[di])) {
            assign[di].assign(parts, Int(0));
            assign[di][0] = dirs[di].second;
            ++di;
        }
        if (di == dirs.size()) break;
    }
    return out;
}

Cone cayley_cone(const std::vector<Polytope>& summands, std::size_t n) {
    if (summands.empty()) throw Error("cayley cone needs at least one summand");
    if (n < 1) throw Error("fibre dimension must be positive");
    const std::size_t m = summands.size() - 1;
    for (const Polytope& s : summands)
        if (s.ambient_dim() != n - 1) throw Error("summands must live in ambient dim n-1");

    std::vector<Vec> rays;
    for (std::size_t i = 0; i <= m; ++i) {
        for (const Vec& v : summands[i].vertices()) {
            std::vector<Int> c(v.coords());
            for (std::size_t j = 0; j <= m; ++j) c.push_back(j == i ? 1 : 0);
            rays.emplace_back(std::move(c));
        }
    }
    return Cone::from_rays(n + m, rays);
}

Polytope cross_section(const Cone& c) {
    if (c.rays().empty()) throw Error("cross-section of a cone with no rays");
    return Polytope::from_vertices(c.ambient_dim(), c.rays());
}

} // namespace toricdef
