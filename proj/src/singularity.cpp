#include "toricdef/singularity.hpp"

#include "toricdef/error.hpp"

#include <algorithm>

namespace toricdef {

namespace {

constexpr long long kOrderGuard = 1'000'000;

Int mod_reduce(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

} // namespace

QuotientActionDesc cyclic_action(const Int& order, const std::vector<Int>& weights) {
    if (order <= 0) throw Error("zero order");
    QuotientActionDesc q;
    q.order = order;
    q.cyclic_factors = {order};
    std::vector<Int> w;
    w.reserve(weights.size());
    for (const Int& a : weights) w.push_back(mod_reduce(a, order));
    q.generators = {std::move(w)};
    return q;
}

std::optional<Vec> gorenstein_functional(const Cone& c) {
    const auto& rays = c.rays();
    if (rays.empty()) return Vec::zero(c.ambient_dim());
    std::vector<Int> ones(rays.size(), Int(1));
    return solve_integral(Mat::from_rows(rays, c.ambient_dim()), Vec(std::move(ones)));
}

SingularityFlags classify_simplicial_cone(const Cone& c) {
    const auto& rays = c.rays();
    if (rays.size() != c.dim()) throw Error("not simplicial");

    SingularityFlags f;
    f.is_simplicial = true;
    f.gorenstein_functional = gorenstein_functional(c);
    f.is_gorenstein = f.gorenstein_functional.has_value();
    if (rays.empty()) {
        f.is_smooth = f.is_canonical = f.is_terminal = true;
        return f;
    }

    // ray coordinates in the lattice of the saturated span
    Mat basis = saturated_span_basis(rays, c.ambient_dim());
    const std::size_t s = rays.size();
    std::vector<Vec> cols;
    cols.reserve(s);
    for (const Vec& r : rays) cols.push_back(coords_in_basis(basis, r));
    Mat k = Mat::from_cols(cols, s);
    Int det = k.determinant();
    f.index = det < 0 ? -det : det;
    f.is_smooth = f.index == 1;
    if (f.index > kOrderGuard)
        throw GuardError("box point enumeration larger than the desk-scale guard");

    // box points: one per coset of the ray lattice, x = U^{-1} t with
    // t ranging over the SNF diagonal boxes; heights are the fractional
    // coordinate sums
    SmithDecomposition snf = smith_normal_form(k);
    Mat uinv = inverse_unimodular(snf.u);
    Mat adj = adjugate(k);
    std::vector<Int> diag = snf.diagonal();
    std::vector<Int> t(s, Int(0));
    bool canonical = true, terminal = true;
    bool done = false;
    while (!done) {
        Vec x = uinv * Vec(std::vector<Int>(t));
        Vec num = adj * x;
        Rat height(0);
        bool at_origin = true;
        for (std::size_t i = 0; i < s; ++i) {
            Rat fr = rat_frac(ratio(num[i], det));
            if (fr != 0) at_origin = false;
            height += fr;
        }
        if (!at_origin) {
            if (height < 1) canonical = false;
            if (height <= 1) terminal = false;
        }
        std::size_t j = s;
        while (true) {
            if (j == 0) {
                done = true;
                break;
            }
            --j;
            if (t[j] + 1 < diag[j]) {
                ++t[j];
                for (std::size_t l = j + 1; l < s; ++l) t[l] = 0;
                break;
            }
        }
    }
    f.is_canonical = canonical;
    f.is_terminal = terminal;
    return f;
}

SingularityFlags cyclic_quotient_classify(const QuotientActionDesc& q) {
    if (q.order <= 0) throw Error("zero order");
    if (q.cyclic_factors.size() != q.generators.size())
        throw Error("one weight vector per cyclic factor required");
    Int prod = 1;
    for (const Int& l : q.cyclic_factors) {
        if (l <= 0) throw Error("zero order");
        prod *= l;
    }
    if (prod != q.order) throw Error("order must equal the product of the cyclic factors");
    const std::size_t g = q.generators.size();
    const std::size_t d = g == 0 ? 0 : q.generators[0].size();
    for (const auto& w : q.generators)
        if (w.size() != d) throw Error("weight vectors must share one length");
    if (q.order > kOrderGuard)
        throw GuardError("group enumeration larger than the desk-scale guard");

    std::vector<std::vector<Int>> weights = q.generators;
    for (std::size_t j = 0; j < g; ++j)
        for (Int& a : weights[j]) a = mod_reduce(a, q.cyclic_factors[j]);

    SingularityFlags f;
    f.is_simplicial = true;
    f.index = q.order;
    f.is_smooth = q.order == 1;

    f.is_gorenstein = true;
    for (std::size_t j = 0; j < g; ++j) {
        Int sum = 0;
        for (const Int& a : weights[j]) sum += a;
        if (sum % q.cyclic_factors[j] != 0) f.is_gorenstein = false;
    }

    // Reid-Tai: age of the element (k_1,..,k_g) acting on coordinate i with
    // exponent sum_j k_j a_ji / l_j; compare against 1 over a common
    // denominator q.order (each l_j divides it).
    bool canonical = true, terminal = true;
    std::vector<Int> scale(g);
    for (std::size_t j = 0; j < g; ++j) scale[j] = q.order / q.cyclic_factors[j];
    std::vector<Int> k(g, Int(0));
    while (true) {
        bool trivial = true;
        for (const Int& kj : k)
            if (kj != 0) trivial = false;
        if (!trivial) {
            Int age_num = 0;
            for (std::size_t i = 0; i < d; ++i) {
                Int e = 0;
                for (std::size_t j = 0; j < g; ++j) e += k[j] * weights[j][i] * scale[j];
                age_num += mod_reduce(e, q.order);
            }
            if (age_num < q.order) canonical = false;
            if (age_num <= q.order) terminal = false;
        }
        std::size_t j = g;
        bool done = g == 0;
        while (j > 0) {
            --j;
            if (k[j] + 1 < q.cyclic_factors[j]) {
                ++k[j];
                for (std::size_t l = j + 1; l < g; ++l) k[l] = 0;
                break;
            }
            if (j == 0) done = true;
        }
        if (done) break;
    }
    f.is_canonical = canonical;
    f.is_terminal = terminal;
    return f;
}

SingularityFlags classify_cone(const Cone& c) {
    if (c.is_simplicial()) return classify_simplicial_cone(c);
    SingularityFlags f;
    f.is_simplicial = false;
    f.is_smooth = false;
    f.gorenstein_functional = gorenstein_functional(c);
    f.is_gorenstein = f.gorenstein_functional.has_value();
    if (!f.is_gorenstein) throw Error("not simplicial and not Gorenstein");
    if (!c.is_pointed()) throw Error("not pointed");
    f.index = 1;
    f.is_canonical = true;
    Polytope section = cross_section(c);
    f.is_terminal = lattice_points(section) == section.vertices();
    return f;
}

QuotientActionDesc quotient_action_of_rays(const std::vector<Vec>& rays) {
    if (rays.empty()) throw Error("not simplicial");
    const std::size_t d = rays[0].dim();
    for (const Vec& r : rays)
        if (r.dim() != d) throw Error("ray dimension mismatch");
    if (rays.size() != d) throw Error("not simplicial");
    Mat k = Mat::from_cols(rays, d);
    Int det = k.determinant();
    if (det == 0) throw Error("not simplicial");

    SmithDecomposition snf = smith_normal_form(k);
    QuotientActionDesc q;
    q.cyclic_factors = snf.diagonal();
    q.order = det < 0 ? -det : det;
    for (std::size_t j = 0; j < d; ++j) {
        // the j-th factor generator is the class of U^{-1} e_j; its weight on
        // coordinate i is the i-th entry of V e_j / d_j mod 1
        std::vector<Int> w(d);
        for (std::size_t i = 0; i < d; ++i) w[i] = mod_reduce(snf.v.at(i, j), q.cyclic_factors[j]);
        q.generators.push_back(std::move(w));
    }
    return q;
}

QuotientActionDesc quotient_action_of_chart(const Cone& c) {
    if (c.dim() != c.ambient_dim()) throw Error("not simplicial");
    return quotient_action_of_rays(c.rays());
}

StarQuotientWeights star_quotient_weights(const Cone& shared,
                                          const std::vector<Vec>& opposite_rays) {
    const std::size_t d = shared.ambient_dim();
    if (opposite_rays.empty()) throw Error("no positive relation");
    for (const Vec& r : opposite_rays)
        if (r.dim() != d) throw Error("ray dimension mismatch");

    Mat span = saturated_span_basis(shared.rays(), d);
    const std::size_t s = span.rows();

    // project to N / span: the last d-s coordinates of U x, where
    // U (S^T) V = D puts the saturated span lattice in the first s slots
    std::vector<Vec> images;
    if (s == 0) {
        images = opposite_rays;
    } else {
        SmithDecomposition snf = smith_normal_form(span.transposed());
        for (const Vec& r : opposite_rays) {
            Vec ux = snf.u * r;
            std::vector<Int> tail(ux.coords().begin() + static_cast<long>(s),
                                  ux.coords().end());
            images.emplace_back(std::move(tail));
        }
    }

    std::vector<Vec> ker = kernel_basis(Mat::from_cols(images, d - s));
    if (ker.size() != 1) throw Error("no positive relation");
    Vec w = ker[0];
    bool all_neg = true;
    for (std::size_t i = 0; i < w.dim(); ++i)
        if (w[i] >= 0) all_neg = false;
    if (all_neg) w = -w;
    for (std::size_t i = 0; i < w.dim(); ++i)
        if (w[i] <= 0) throw Error("no positive relation");
    w = primitivize(w);

    StarQuotientWeights out;
    out.weights = w.coords();
    std::sort(out.weights.begin(), out.weights.end());
    for (const Vec& v : images)
        if (!v.is_primitive()) out.images_primitive = false;
    out.images_span = Mat::from_rows(images, d - s).rank() == d - s;
    return out;
}

} // namespace toricdef
