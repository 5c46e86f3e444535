#include "toricdef/json_io.hpp"

#include "toricdef/error.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>

namespace toricdef {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw Error("malformed document");
    auto it = j.find(key);
    if (it == j.end()) throw Error(std::string("missing field: ") + key);
    return *it;
}

bool bool_from_json(const Json& j) {
    if (!j.is_boolean()) throw Error("malformed boolean");
    return j.get<bool>();
}

std::string string_from_json(const Json& j) {
    if (!j.is_string()) throw Error("malformed string");
    return j.get<std::string>();
}

std::size_t size_from_json(const Json& j) {
    Int x = int_from_json(j);
    if (x < 0) throw Error("negative size");
    return x.convert_to<std::size_t>();
}

std::vector<Vec> vecs_from_json(const Json& j) {
    if (!j.is_array()) throw Error("malformed vector list");
    std::vector<Vec> out;
    out.reserve(j.size());
    for (const Json& item : j) out.push_back(vec_from_json(item));
    return out;
}

Json vecs_to_json(const std::vector<Vec>& vs) {
    Json out = Json::array();
    for (const Vec& v : vs) out.push_back(vec_to_json(v));
    return out;
}

Json ints_to_json(const std::vector<Int>& xs) {
    Json out = Json::array();
    for (const Int& x : xs) out.push_back(int_to_json(x));
    return out;
}

std::vector<Int> ints_from_json(const Json& j) {
    if (!j.is_array()) throw Error("malformed integer list");
    std::vector<Int> out;
    out.reserve(j.size());
    for (const Json& item : j) out.push_back(int_from_json(item));
    return out;
}

Json chart_report_to_json(const ChartReport& c) {
    Json out;
    out["chart"] = cone_to_json(c.chart);
    out["chart_flags"] = flags_to_json(c.chart_flags);
    out["fibre_compatible"] = c.fibre_compatible;
    out["incompatibility"] = c.incompatibility;
    out["presentation"] =
        c.presentation ? presentation_to_json(*c.presentation) : Json(nullptr);
    out["fibre"] = cone_to_json(c.fibre);
    out["fibre_flags"] = c.fibre_flags ? flags_to_json(*c.fibre_flags) : Json(nullptr);
    out["fibre_note"] = c.fibre_note;
    out["empty_box"] = c.empty_box;
    out["empty_bruteforce"] = c.empty_bruteforce;
    return out;
}

ChartReport chart_report_from_json(const Json& j) {
    ChartReport c;
    c.chart = cone_from_json(field(j, "chart"));
    c.chart_flags = flags_from_json(field(j, "chart_flags"));
    c.fibre_compatible = bool_from_json(field(j, "fibre_compatible"));
    c.incompatibility = string_from_json(field(j, "incompatibility"));
    if (!field(j, "presentation").is_null())
        c.presentation = presentation_from_json(field(j, "presentation"));
    c.fibre = cone_from_json(field(j, "fibre"));
    if (!field(j, "fibre_flags").is_null())
        c.fibre_flags = flags_from_json(field(j, "fibre_flags"));
    c.fibre_note = string_from_json(field(j, "fibre_note"));
    c.empty_box = bool_from_json(field(j, "empty_box"));
    c.empty_bruteforce = bool_from_json(field(j, "empty_bruteforce"));
    return c;
}

} // namespace

Json int_to_json(const Int& x) {
    static const Int kJsonMax = (Int(1) << 53) - 1;
    if (x >= -kJsonMax && x <= kJsonMax)
        return Json(static_cast<std::int64_t>(x.convert_to<long long>()));
    return Json(x.str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        std::size_t at = s.size() > 0 && s[0] == '-' ? 1 : 0;
        if (at == s.size()) throw Error("malformed integer");
        for (std::size_t i = at; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') throw Error("malformed integer");
        return Int(s);
    }
    throw Error("malformed integer");
}

Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) out.push_back(int_to_json(v[i]));
    return out;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw Error("malformed vector");
    std::vector<Int> c;
    c.reserve(j.size());
    for (const Json& item : j) c.push_back(int_from_json(item));
    return Vec(std::move(c));
}

Json mat_to_json(const Mat& m) {
    Json out = Json::array();
    for (const Vec& row : m.row_vectors()) out.push_back(vec_to_json(row));
    return out;
}

Mat mat_from_json(const Json& j) {
    std::vector<Vec> rows = vecs_from_json(j);
    if (rows.empty()) throw Error("empty matrix");
    return Mat::from_rows(rows, rows[0].dim());
}

Json cone_to_json(const Cone& c) {
    Json out;
    out["dim"] = int_to_json(Int(c.ambient_dim()));
    out["rays"] = vecs_to_json(c.rays());
    return out;
}

Cone cone_from_json(const Json& j) {
    std::size_t dim = size_from_json(field(j, "dim"));
    return Cone::from_rays(dim, vecs_from_json(field(j, "rays")));
}

Json polytope_to_json(const Polytope& p) {
    Json out;
    out["dim"] = int_to_json(Int(p.ambient_dim()));
    out["vertices"] = vecs_to_json(p.vertices());
    return out;
}

Polytope polytope_from_json(const Json& j) {
    std::vector<Vec> vertices = vecs_from_json(field(j, "vertices"));
    std::size_t dim;
    if (j.contains("dim")) {
        dim = size_from_json(j["dim"]);
    } else {
        if (vertices.empty()) throw Error("missing field: dim");
        dim = vertices[0].dim();
    }
    return Polytope::from_vertices(dim, vertices);
}

Json flags_to_json(const SingularityFlags& f) {
    Json out;
    out["smooth"] = f.is_smooth;
    out["simplicial"] = f.is_simplicial;
    out["gorenstein"] = f.is_gorenstein;
    out["canonical"] = f.is_canonical;
    out["terminal"] = f.is_terminal;
    out["index"] = int_to_json(f.index);
    out["gorenstein_functional"] =
        f.gorenstein_functional ? vec_to_json(*f.gorenstein_functional) : Json(nullptr);
    return out;
}

SingularityFlags flags_from_json(const Json& j) {
    SingularityFlags f;
    f.is_smooth = bool_from_json(field(j, "smooth"));
    f.is_simplicial = bool_from_json(field(j, "simplicial"));
    f.is_gorenstein = bool_from_json(field(j, "gorenstein"));
    f.is_canonical = bool_from_json(field(j, "canonical"));
    f.is_terminal = bool_from_json(field(j, "terminal"));
    f.index = int_from_json(field(j, "index"));
    if (!field(j, "gorenstein_functional").is_null())
        f.gorenstein_functional = vec_from_json(j["gorenstein_functional"]);
    return f;
}

Json action_to_json(const QuotientActionDesc& q) {
    Json out;
    out["order"] = int_to_json(q.order);
    out["cyclic_factors"] = ints_to_json(q.cyclic_factors);
    Json gens = Json::array();
    for (const std::vector<Int>& g : q.generators) gens.push_back(ints_to_json(g));
    out["generators"] = gens;
    return out;
}

QuotientActionDesc action_from_json(const Json& j) {
    QuotientActionDesc q;
    q.order = int_from_json(field(j, "order"));
    q.cyclic_factors = ints_from_json(field(j, "cyclic_factors"));
    const Json& gens = field(j, "generators");
    if (!gens.is_array()) throw Error("malformed generator list");
    for (const Json& g : gens) q.generators.push_back(ints_from_json(g));
    return q;
}

Json deformation_to_json(const Deformation& d) {
    Json out;
    out["n"] = int_to_json(Int(d.n));
    out["m"] = int_to_json(Int(d.m));
    Json summands = Json::array();
    if (d.summands)
        for (const Polytope& s : *d.summands) summands.push_back(polytope_to_json(s));
    out["summands"] = summands;
    out["cone"] = cone_to_json(d.cone);
    return out;
}

Deformation deformation_from_json(const Json& j) {
    std::size_t n = size_from_json(field(j, "n"));
    const Json& list = field(j, "summands");
    if (!list.is_array() || list.empty()) throw Error("missing field: summands");
    std::vector<Polytope> summands;
    summands.reserve(list.size());
    for (const Json& s : list) summands.push_back(polytope_from_json(s));
    Deformation d = build_deformation(summands, n);
    if (j.contains("m") && size_from_json(j["m"]) != d.m)
        throw Error("malformed deformation");
    if (j.contains("cone") && !(cone_from_json(j["cone"]) == d.cone))
        throw Error("cone does not match summands");
    return d;
}

Json central_fibre_to_json(const CentralFibre& f) {
    Json out;
    out["cone"] = cone_to_json(f.cone);
    out["basis"] = mat_to_json(f.basis);
    return out;
}

CentralFibre central_fibre_from_json(const Json& j) {
    return CentralFibre{cone_from_json(field(j, "cone")), mat_from_json(field(j, "basis"))};
}

Json presentation_to_json(const FibrePresentation& p) {
    Json out;
    out["chart"] = cone_to_json(p.chart);
    Json partition = Json::array();
    for (std::size_t x : p.partition) partition.push_back(int_to_json(Int(x)));
    out["partition"] = partition;
    Json blocks = Json::array();
    for (std::size_t b = 0; b + 1 < p.partition.size(); ++b) {
        Json block = Json::array();
        for (std::size_t i = p.partition[b]; i < p.partition[b + 1]; ++i)
            block.push_back(int_to_json(Int(p.reorder[i])));
        blocks.push_back(block);
    }
    out["blocks"] = blocks;
    out["action"] = action_to_json(p.action);
    return out;
}

FibrePresentation presentation_from_json(const Json& j) {
    FibrePresentation p;
    p.chart = cone_from_json(field(j, "chart"));

    const Json& partition = field(j, "partition");
    if (!partition.is_array() || partition.size() < 2) throw Error("malformed partition");
    for (const Json& x : partition) p.partition.push_back(size_from_json(x));
    if (p.partition.front() != 0) throw Error("malformed partition");
    for (std::size_t i = 0; i + 1 < p.partition.size(); ++i)
        if (p.partition[i] >= p.partition[i + 1]) throw Error("malformed partition");
    const std::size_t total = p.partition.back();
    if (total != p.chart.rays().size()) throw Error("malformed partition");

    const Json& blocks = field(j, "blocks");
    if (!blocks.is_array() || blocks.size() + 1 != p.partition.size())
        throw Error("malformed blocks");
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (!blocks[b].is_array() ||
            blocks[b].size() != p.partition[b + 1] - p.partition[b])
            throw Error("malformed blocks");
        for (const Json& x : blocks[b]) p.reorder.push_back(size_from_json(x));
    }
    std::vector<bool> seen(total, false);
    for (std::size_t i : p.reorder) {
        if (i >= total || seen[i]) throw Error("malformed blocks");
        seen[i] = true;
    }

    for (std::size_t b = 0; b + 1 < p.partition.size(); ++b) {
        Vec f = Vec::zero(total);
        for (std::size_t i = p.partition[b]; i < p.partition[b + 1]; ++i) f[i] = 1;
        p.monomials.push_back(std::move(f));
    }
    p.action = action_from_json(field(j, "action"));
    return p;
}

Json triangulation_to_json(const Triangulation& t) {
    Json out;
    out["parent"] = cone_to_json(t.parent);
    std::map<Vec, std::size_t, VecLess> index;
    for (std::size_t i = 0; i < t.used_points.size(); ++i) index[t.used_points[i]] = i;
    Json cells = Json::array();
    for (const Cone& cell : t.cells) {
        Json one = Json::array();
        for (const Vec& r : cell.rays()) {
            auto it = index.find(r);
            if (it == index.end()) throw Error("cell ray missing from used_points");
            one.push_back(int_to_json(Int(it->second)));
        }
        cells.push_back(one);
    }
    out["cells"] = cells;
    out["used_points"] = vecs_to_json(t.used_points);
    return out;
}

Triangulation triangulation_from_json(const Json& j) {
    Cone parent = cone_from_json(field(j, "parent"));
    std::vector<Vec> points = vecs_from_json(field(j, "used_points"));
    const Json& cells = field(j, "cells");
    if (!cells.is_array()) throw Error("malformed cell list");
    std::vector<Cone> rebuilt;
    rebuilt.reserve(cells.size());
    for (const Json& cell : cells) {
        if (!cell.is_array()) throw Error("malformed cell list");
        std::vector<Vec> rays;
        rays.reserve(cell.size());
        for (const Json& x : cell) {
            std::size_t i = size_from_json(x);
            if (i >= points.size()) throw Error("cell index out of range");
            rays.push_back(points[i]);
        }
        rebuilt.push_back(Cone::from_rays(parent.ambient_dim(), rays));
    }
    return make_triangulation(parent, std::move(rebuilt));
}

Json verification_to_json(const TriangulationReport& r) {
    Json out;
    out["covers"] = r.covers;
    out["proper"] = r.proper;
    out["crepant"] = r.crepant;
    out["all_cells_empty"] = r.all_cells_empty;
    Json flags = Json::array();
    for (const SingularityFlags& f : r.cell_flags) flags.push_back(flags_to_json(f));
    out["cell_flags"] = flags;
    return out;
}

TriangulationReport verification_from_json(const Json& j) {
    TriangulationReport r;
    r.covers = bool_from_json(field(j, "covers"));
    r.proper = bool_from_json(field(j, "proper"));
    r.crepant = bool_from_json(field(j, "crepant"));
    r.all_cells_empty = bool_from_json(field(j, "all_cells_empty"));
    const Json& flags = field(j, "cell_flags");
    if (!flags.is_array()) throw Error("malformed flag list");
    for (const Json& f : flags) r.cell_flags.push_back(flags_from_json(f));
    return r;
}

Json terminalization_to_json(const TerminalizationReport& r) {
    Json out;
    out["triangulation"] = triangulation_to_json(r.triangulation);
    out["covers"] = r.verification.covers;
    out["proper"] = r.verification.proper;
    out["crepant"] = r.verification.crepant;
    out["all_cells_empty"] = r.verification.all_cells_empty;
    out["flatness_proxy"] = r.flatness_proxy;
    out["simultaneous_resolution"] = r.simultaneous_resolution;
    out["terminal_fibres_asserted"] = r.terminal_fibres_asserted;
    Json cells = Json::array();
    for (const ChartReport& c : r.charts) cells.push_back(chart_report_to_json(c));
    out["cells"] = cells;
    return out;
}

TerminalizationReport terminalization_from_json(const Json& j) {
    TerminalizationReport r;
    r.triangulation = triangulation_from_json(field(j, "triangulation"));
    r.verification.covers = bool_from_json(field(j, "covers"));
    r.verification.proper = bool_from_json(field(j, "proper"));
    r.verification.crepant = bool_from_json(field(j, "crepant"));
    r.verification.all_cells_empty = bool_from_json(field(j, "all_cells_empty"));
    r.flatness_proxy = bool_from_json(field(j, "flatness_proxy"));
    r.simultaneous_resolution = bool_from_json(field(j, "simultaneous_resolution"));
    r.terminal_fibres_asserted = bool_from_json(field(j, "terminal_fibres_asserted"));
    const Json& cells = field(j, "cells");
    if (!cells.is_array()) throw Error("malformed cell list");
    for (const Json& c : cells) {
        r.charts.push_back(chart_report_from_json(c));
        r.verification.cell_flags.push_back(r.charts.back().chart_flags);
    }
    return r;
}

Json flop_to_json(const FlopPair& f) {
    Json out;
    out["base"] = deformation_to_json(f.base);
    out["left"] = triangulation_to_json(f.left);
    out["right"] = triangulation_to_json(f.right);
    out["circuit_relation"] = vec_to_json(f.circuit_relation);
    out["exceptional_weights"] = ints_to_json(f.exceptional_weights_left);
    out["exceptional_weights_left"] = ints_to_json(f.exceptional_weights_left);
    out["exceptional_weights_right"] = ints_to_json(f.exceptional_weights_right);
    return out;
}

FlopPair flop_from_json(const Json& j) {
    FlopPair f;
    f.base = deformation_from_json(field(j, "base"));
    f.left = triangulation_from_json(field(j, "left"));
    f.right = triangulation_from_json(field(j, "right"));
    f.circuit_relation = vec_from_json(field(j, "circuit_relation"));
    f.exceptional_weights_left = ints_from_json(field(j, "exceptional_weights_left"));
    f.exceptional_weights_right = ints_from_json(field(j, "exceptional_weights_right"));
    return f;
}

} // namespace toricdef
