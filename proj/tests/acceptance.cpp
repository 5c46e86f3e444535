// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure.  Oracles here are written independently of the library paths they
// check: the box-point oracle scans an integer bounding box with plain
// int64 Cramer arithmetic, and the Smith suite verifies the defining matrix
// identities directly.

#include "toricdef/deformation.hpp"
#include "toricdef/error.hpp"
#include "toricdef/lattice.hpp"
#include "toricdef/polytope.hpp"
#include "toricdef/singularity.hpp"
#include "toricdef/terminalize.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace toricdef;

namespace {

int g_failures = 0;
std::vector<Triangulation> g_produced; // swept by the volume criterion

void run(int number, const std::string& label, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (") + e.what() + ")";
    }
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << label
              << note << "\n";
    if (!ok) ++g_failures;
}

bool expect(bool cond, const std::string& what) {
    if (!cond) std::cerr << "  mismatch: " << what << "\n";
    return cond;
}

Vec vec(std::initializer_list<long long> xs) {
    std::vector<Int> c;
    for (long long x : xs) c.emplace_back(x);
    return Vec(std::move(c));
}

std::vector<Vec> flop_generators(const Int& a, const Int& b) {
    return {Vec{1, 0, 1, 0, 0},  Vec{0, 0, 1, 0, 0}, Vec{0, 1, 0, 1, 0},
            Vec{0, 0, 0, 1, 0},  Vec{-a, -b, 0, 0, 1}, Vec{0, 0, 0, 0, 1}};
}

const std::vector<std::pair<Int, Int>>& flop_parameters() {
    static const std::vector<std::pair<Int, Int>> ps = {
        {Int(1), Int(1)}, {Int(1), Int(2)}, {Int(2), Int(3)}};
    return ps;
}

Deformation an_family(int k) {
    Polytope seg = Polytope::from_vertices(1, {vec({0}), vec({1})});
    return build_deformation(std::vector<Polytope>(k + 1, seg), 2);
}

// ---- criterion 1: flop corpus ----------------------------------------------

bool flop_corpus() {
    bool ok = true;
    for (const auto& [a, b] : flop_parameters()) {
        FlopPair fp = build_flop_example(a, b);

        std::vector<Vec> expected = flop_generators(a, b);
        std::vector<Vec> sorted_expected = expected;
        std::sort(sorted_expected.begin(), sorted_expected.end(), VecLess{});
        ok &= expect(fp.base.cone.rays() == sorted_expected, "flop ray generators");

        Vec coeffs({a, -a, b, -b, Int(1), Int(-1)});
        Vec acc = Vec::zero(5);
        for (std::size_t i = 0; i < expected.size(); ++i)
            acc = acc + coeffs[i] * expected[i];
        ok &= expect(acc.is_zero(), "circuit relation evaluates to zero");
        ok &= expect(fp.circuit_relation == coeffs, "stored relation coefficients");

        for (const Triangulation* t : {&fp.left, &fp.right}) {
            TriangulationReport rep = verify_triangulation(*t);
            ok &= expect(rep.covers && rep.proper && rep.crepant,
                         "triangulation verification");
            g_produced.push_back(*t);
        }

        std::vector<Int> want = {Int(1), a, b};
        std::sort(want.begin(), want.end());
        ok &= expect(fp.exceptional_weights_left == want, "left exceptional weights");
        ok &= expect(fp.exceptional_weights_right == want, "right exceptional weights");
    }
    return ok;
}

// ---- criterion 2: chart indices two ways ------------------------------------

bool chart_indices_two_ways() {
    bool ok = true;
    for (const auto& [a, b] : flop_parameters()) {
        FlopPair fp = build_flop_example(a, b);
        std::vector<Int> want = {Int(1), a, b};
        std::sort(want.begin(), want.end());
        for (const Triangulation* t : {&fp.left, &fp.right}) {
            std::vector<Int> by_det, by_snf;
            for (const Cone& cell : t->cells) {
                Int det = Mat::from_cols(cell.rays(), 5).determinant();
                by_det.push_back(det < 0 ? Int(-det) : det);
                by_snf.push_back(quotient_action_of_chart(cell).order);
            }
            ok &= expect(by_det == by_snf, "determinant and Smith indices agree");
            std::sort(by_det.begin(), by_det.end());
            ok &= expect(by_det == want, "index multiset is {1,a,b}");
        }
    }
    return ok;
}

// ---- criterion 3: hexagon central fibre -------------------------------------

bool hexagon_central_fibre() {
    bool ok = true;
    for (const auto& [a, b] : flop_parameters()) {
        Deformation d = build_flop_example(a, b).base;
        Cone hexagon = Cone::from_rays(
            3, {Vec{1, 0, 1}, Vec{0, 1, 1}, Vec{-a, -b, 1}, Vec{1, 1, 1},
                Vec{-a, Int(1) - b, 1}, Vec{Int(1) - a, -b, 1}});
        ok &= expect(central_fibre(d).cone == hexagon, "central fibre ray set");
    }
    return ok;
}

// ---- criterion 4: A_k staircase terminalization -----------------------------

bool an_staircase() {
    bool ok = true;
    for (int k : {1, 2, 3}) {
        Deformation d = an_family(k);
        Triangulation t = search_crepant_triangulation(d);
        g_produced.push_back(t);
        TerminalizationReport rep = terminalization_report(d, t);

        ok &= expect(rep.verification.covers && rep.verification.proper &&
                         rep.verification.crepant,
                     "staircase triangulation verifies");
        ok &= expect(t.cells.size() == static_cast<std::size_t>(k) + 1,
                     "staircase cell count");

        bool unimodular = true, blocks = true;
        for (const ChartReport& chart : rep.charts) {
            if (chart.chart_flags.index != 1 || !chart.chart_flags.is_smooth)
                unimodular = false;
            if (!chart.presentation) {
                blocks = false;
                continue;
            }
            const auto& part = chart.presentation->partition;
            int doubles = 0;
            for (std::size_t i = 0; i + 1 < part.size(); ++i) {
                std::size_t size = part[i + 1] - part[i];
                if (size == 2) ++doubles;
                else if (size != 1) blocks = false;
            }
            if (doubles != 1) blocks = false;
        }
        ok &= expect(unimodular, "all charts unimodular");
        ok &= expect(blocks, "one block of size 2 per chart");
        ok &= expect(rep.simultaneous_resolution, "simultaneous resolution flag");
        ok &= expect(central_fibre(d).cone ==
                         Cone::from_rays(2, {vec({0, 1}), vec({k + 1, 1})}),
                     "A_k central fibre");
    }
    return ok;
}

// ---- criterion 5: quotient and hypersurface hypothesis checks ---------------

bool hypothesis_checks() {
    bool ok = true;
    SingularityFlags four = cyclic_quotient_classify(
        cyclic_action(Int(2), {Int(1), Int(1), Int(1), Int(1)}));
    ok &= expect(four.is_gorenstein && four.is_terminal, "(2;1,1,1,1) Gorenstein terminal");
    SingularityFlags two =
        cyclic_quotient_classify(cyclic_action(Int(2), {Int(1), Int(1)}));
    ok &= expect(two.is_gorenstein && two.is_canonical && !two.is_terminal,
                 "(2;1,1) Gorenstein canonical not terminal");
    ok &= expect(hypersurface_canonicity_check(
                     Int(2), {Int(1), Int(1), Int(1), Int(1)}, 2),
                 "split inequality holds for (2;1,1,1,1;p=2)");
    ok &= expect(!hypersurface_canonicity_check(
                     Int(2), {Int(1), Int(1), Int(1), Int(1), Int(1), Int(1)}, 3),
                 "split inequality fails for (2;1^6;p=3)");
    return ok;
}

// ---- criterion 6: box classification vs bounding-box oracle -----------------

// Everything in this oracle is deliberately plain int64: column matrices,
// Laplace determinants, adjugates and a bounding-box scan of the half-open
// parallelepiped.  t = adj(A)p / det with 0 <= t_i < 1 picks out box points.
using I64 = std::int64_t;
using M64 = std::vector<std::vector<I64>>;

I64 det64(const M64& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    I64 sum = 0, sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
        M64 minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<I64> row;
            for (std::size_t jj = 0; jj < n; ++jj)
                if (jj != j) row.push_back(m[i][jj]);
            minor.push_back(std::move(row));
        }
        sum += sign * m[0][j] * det64(minor);
        sign = -sign;
    }
    return sum;
}

M64 adjugate64(const M64& m) {
    std::size_t n = m.size();
    M64 adj(n, std::vector<I64>(n));
    if (n == 1) {
        adj[0][0] = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            M64 minor;
            for (std::size_t ii = 0; ii < n; ++ii) {
                if (ii == i) continue;
                std::vector<I64> row;
                for (std::size_t jj = 0; jj < n; ++jj)
                    if (jj != j) row.push_back(m[ii][jj]);
                minor.push_back(std::move(row));
            }
            I64 c = det64(minor);
            adj[j][i] = ((i + j) % 2 == 0) ? c : -c; // transposed cofactor
        }
    return adj;
}

struct OracleFlags {
    bool smooth, gorenstein, canonical, terminal;
    I64 index;
};

OracleFlags brute_force_classify(const std::vector<Vec>& rays) {
    std::size_t n = rays.size();
    M64 a(n, std::vector<I64>(n)); // columns are rays
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            a[i][j] = rays[j][i].convert_to<I64>();
    I64 det = det64(a);
    M64 adj = adjugate64(a);
    if (det < 0) {
        det = -det;
        for (auto& row : adj)
            for (I64& x : row) x = -x;
    }

    // bounding box of the half-open parallelepiped, per coordinate
    std::vector<I64> lo(n, 0), hi(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            (a[i][j] < 0 ? lo : hi)[i] += a[i][j];

    I64 count = 0;
    bool canonical = true, terminal = true;
    std::vector<I64> p(n, 0);
    std::function<void(std::size_t)> scan = [&](std::size_t coord) {
        if (coord == n) {
            I64 height = 0; // sum of scaled barycentric coordinates adj*p
            bool zero = true;
            for (std::size_t i = 0; i < n; ++i) {
                I64 q = 0;
                for (std::size_t j = 0; j < n; ++j) q += adj[i][j] * p[j];
                if (q < 0 || q >= det) return;
                height += q;
                if (p[i] != 0) zero = false;
            }
            ++count;
            if (zero) return;
            if (height < det) canonical = false;
            if (height <= det) terminal = false;
            return;
        }
        for (I64 x = lo[coord]; x <= hi[coord]; ++x) {
            p[coord] = x;
            scan(coord + 1);
        }
    };
    scan(0);

    // Gorenstein functional by Cramer: solve transposed(A) m = (1,..,1),
    // i.e. m = adj(A)^T (1,..,1) / det, so each m_j is a column sum of adj.
    bool gorenstein = true;
    for (std::size_t j = 0; j < n && gorenstein; ++j) {
        I64 numer = 0;
        for (std::size_t i = 0; i < n; ++i) numer += adj[i][j];
        if (numer % det != 0) gorenstein = false;
    }

    return {count == 1, gorenstein, canonical, terminal, count};
}

bool box_oracle_equivalence() {
    std::mt19937 rng(271828182);
    auto draw = [&](int lo_v, int hi_v) {
        return std::uniform_int_distribution<int>(lo_v, hi_v)(rng);
    };

    int accepted = 0, compared_functionals = 0;
    bool ok = true;
    for (int attempt = 0; attempt < 100000 && accepted < 120; ++attempt) {
        std::size_t n = static_cast<std::size_t>(draw(1, 4));
        std::vector<Vec> raw;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Int> c;
            for (std::size_t j = 0; j < n; ++j) c.emplace_back(draw(-4, 4));
            raw.emplace_back(std::move(c));
        }
        if (Mat::from_cols(raw, n).determinant() == 0) continue;
        Cone c = Cone::from_rays(n, raw);
        if (c.rays().size() != n) continue; // a generator degenerated
        Int index = Mat::from_cols(c.rays(), n).determinant();
        if (index < 0) index = -index;
        if (index > 12) continue;
        ++accepted;

        SingularityFlags got = classify_simplicial_cone(c);
        OracleFlags want = brute_force_classify(c.rays());
        ok &= expect(got.is_simplicial, "simplicial flag");
        ok &= expect(got.is_smooth == want.smooth, "smooth flag");
        ok &= expect(got.is_gorenstein == want.gorenstein, "gorenstein flag");
        ok &= expect(got.is_canonical == want.canonical, "canonical flag");
        ok &= expect(got.is_terminal == want.terminal, "terminal flag");
        ok &= expect(got.index == Int(want.index), "index value");
        if (got.gorenstein_functional) {
            ++compared_functionals;
            bool unit = true;
            for (const Vec& r : c.rays())
                if (dot(*got.gorenstein_functional, r) != 1) unit = false;
            ok &= expect(unit, "functional evaluates to one on every ray");
        }
        if (!ok) {
            std::cerr << "  failing cone:";
            for (const Vec& r : c.rays()) std::cerr << " " << r.str();
            std::cerr << "\n";
            return false;
        }
    }
    ok &= expect(accepted >= 100, "enough random cones accepted");
    ok &= expect(compared_functionals > 0, "some Gorenstein cones drawn");
    return ok;
}

// ---- criterion 7: Smith normal form property suite --------------------------

bool smith_properties() {
    std::mt19937 rng(314159265);
    auto draw = [&](int lo_v, int hi_v) {
        return std::uniform_int_distribution<int>(lo_v, hi_v)(rng);
    };

    bool ok = true;
    for (int trial = 0; trial < 220 && ok; ++trial) {
        std::size_t r = static_cast<std::size_t>(draw(1, 5));
        std::size_t c = static_cast<std::size_t>(draw(1, 5));
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<Int> row;
            for (std::size_t j = 0; j < c; ++j) row.emplace_back(draw(-9, 9));
            rows.emplace_back(std::move(row));
        }
        Mat a = Mat::from_rows(rows, c);
        SmithDecomposition s = smith_normal_form(a);

        ok &= expect(s.u * a * s.v == s.d, "U*A*V equals the diagonal form");
        Int du = s.u.determinant(), dv = s.v.determinant();
        ok &= expect(du == 1 || du == -1, "U unimodular");
        ok &= expect(dv == 1 || dv == -1, "V unimodular");

        std::vector<Int> diag = s.diagonal();
        Int product(1);
        for (std::size_t i = 0; i < diag.size(); ++i) {
            ok &= expect(diag[i] >= 0, "diagonal entries nonnegative");
            if (i + 1 < diag.size()) {
                if (diag[i] == 0)
                    ok &= expect(diag[i + 1] == 0, "zeros trail the diagonal");
                else
                    ok &= expect(diag[i + 1] % diag[i] == 0, "divisibility chain");
            }
            product *= diag[i];
        }
        if (r == c) {
            Int da = a.determinant();
            if (da < 0) da = -da;
            ok &= expect(da == product, "absolute determinant equals diagonal product");
        }
        if (!ok) std::cerr << "  failing matrix:\n" << a.str() << "\n";
    }
    return ok;
}

// ---- criterion 8: volume conservation ---------------------------------------

bool volume_conservation() {
    bool ok = expect(!g_produced.empty(), "triangulations were produced");
    for (const Triangulation& t : g_produced) {
        Int parent = normalized_volume(t.parent);
        Int total(0);
        for (const Cone& cell : t.cells) total += normalized_volume(cell);
        ok &= expect(total == parent, "cell volumes sum to the parent volume");
    }
    return ok;
}

} // namespace

int main() {
    run(1, "flop corpus: generators, relation, verification, weights", flop_corpus);
    run(2, "chart indices agree by determinant and by Smith form",
        chart_indices_two_ways);
    run(3, "central fibre is the hexagon cone", hexagon_central_fibre);
    run(4, "A_k staircase terminalization and simultaneous resolution", an_staircase);
    run(5, "quotient and hypersurface hypothesis checks", hypothesis_checks);
    run(6, "box classification matches the bounding-box oracle",
        box_oracle_equivalence);
    run(7, "Smith normal form satisfies its defining properties", smith_properties);
    run(8, "cell volumes sum to parent volumes in every triangulation",
        volume_conservation);

    if (g_failures == 0) {
        std::cout << "all criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " criteria failed\n";
    return 1;
}
