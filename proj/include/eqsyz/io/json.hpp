#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../cartan/gstar.hpp"
#include "../equivtop/descent.hpp"
#include "../equivtop/filtration.hpp"
#include "../equivtop/gkm.hpp"
#include "../polyring/parse.hpp"
#include "../weyl/group.hpp"

namespace eqsyz::io {

using Json = nlohmann::json;

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw InvalidInput(where + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, "missing field '" + key + "'");
    return *it;
}

inline const Json* optional_field(const Json& j, const std::string& key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return nullptr;
    return &*it;
}

inline const Json& array(const Json& j, const std::string& where) {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
}

inline long integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long>();
}

inline std::string string(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

inline std::vector<int> int_list(const Json& j, const std::string& where) {
    std::vector<int> out;
    for (std::size_t k = 0; k < array(j, where).size(); ++k) {
        out.push_back(static_cast<int>(integer(j[k], where + "[" + std::to_string(k) + "]")));
    }
    return out;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& where) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < array(j, where).size(); ++k) {
        out.push_back(string(j[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const RingMismatch&) {
        throw;
    } catch (const InvalidInput& e) {
        if (std::string(e.what()).rfind(where, 0) == 0) throw;
        fail(where, e.what());
    } catch (const NotHomogeneous& e) {
        fail(where, e.what());
    }
}

} // namespace detail

inline Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return detail::located(where, [&] { return parse_rational(j.get<std::string>()); });
    detail::fail(where, "expected an integer or a rational string");
}

/// Ring descriptor {vars, degrees}; degrees default to 2.
inline RingPtr ring_from_json(const Json& j, const std::string& where = "ring") {
    auto vars = detail::string_list(detail::field(j, "vars", where), where + ".vars");
    std::vector<int> degrees(vars.size(), 2);
    if (const Json* d = detail::optional_field(j, "degrees")) degrees = detail::int_list(*d, where + ".degrees");
    return detail::located(where, [&] { return make_ring(vars, degrees); });
}

/// Text such as "3/2*x^2*y - y^3", or a list of {coeff, exps}.
inline Polynomial polynomial_from_json(const Json& j, const RingPtr& R, const std::string& where) {
    if (j.is_string()) return detail::located(where, [&] { return parse_polynomial(R, j.get<std::string>()); });
    if (j.is_number_integer()) return Polynomial::constant(R, Rational(j.get<long>()));
    if (!j.is_array()) detail::fail(where, "expected a polynomial string or a list of terms");
    std::vector<PolyTerm> terms;
    for (std::size_t k = 0; k < j.size(); ++k) {
        std::string w = where + "[" + std::to_string(k) + "]";
        Rational c = rational_from_json(detail::field(j[k], "coeff", w), w + ".coeff");
        auto exps = detail::int_list(detail::field(j[k], "exps", w), w + ".exps");
        terms.push_back({detail::located(w, [&] { return R->monomial(exps); }), c});
    }
    return Polynomial::from_terms(R, std::move(terms));
}

inline std::vector<std::vector<Polynomial>> matrix_from_json(const Json& j, const RingPtr& R, std::size_t rows,
                                                             std::size_t cols, const std::string& where) {
    detail::array(j, where);
    if (j.size() != rows) {
        detail::fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    }
    std::vector<std::vector<Polynomial>> out;
    for (std::size_t i = 0; i < rows; ++i) {
        std::string wr = where + "[" + std::to_string(i) + "]";
        detail::array(j[i], wr);
        if (j[i].size() != cols) {
            detail::fail(wr, "expected " + std::to_string(cols) + " entries, got " + std::to_string(j[i].size()));
        }
        std::vector<Polynomial> row;
        for (std::size_t c = 0; c < cols; ++c) row.push_back(polynomial_from_json(j[i][c], R, wr + "[" + std::to_string(c) + "]"));
        out.push_back(std::move(row));
    }
    return out;
}

inline ModuleMap map_from_json(const Json& j, const GradedFreeModule& source, const GradedFreeModule& target,
                               const std::string& where) {
    auto rows = matrix_from_json(j, source.ring, target.rank(), source.rank(), where);
    return detail::located(where, [&] { return ModuleMap::from_matrix(source, target, rows); });
}

/// Presentation {ring, row_degrees, col_degrees, matrix}: the cokernel of the matrix.
/// `ring` may be omitted when the caller supplies one.
inline FPModule module_from_json(const Json& j, RingPtr R = nullptr, const std::string& where = "module") {
    if (const Json* r = detail::optional_field(j, "ring")) {
        RingPtr own = ring_from_json(*r, where + ".ring");
        if (R && !same_ring(R, own)) detail::fail(where, "module ring differs from the surrounding ring");
        if (!R) R = own;
    }
    if (!R) detail::fail(where, "no ring given");
    GradedFreeModule F0{R, detail::int_list(detail::field(j, "row_degrees", where), where + ".row_degrees")};
    std::vector<int> cols;
    if (const Json* c = detail::optional_field(j, "col_degrees")) cols = detail::int_list(*c, where + ".col_degrees");
    GradedFreeModule F1{R, cols};
    if (const Json* m = detail::optional_field(j, "matrix")) return FPModule(map_from_json(*m, F1, F0, where + ".matrix"));
    if (!cols.empty()) detail::fail(where, "relations declared without a matrix");
    return FPModule::free(F0);
}

/// Built-in {builtin, vars} or explicit {rank, vars, generators, invariants}.
/// Generators are given row by row.
inline ReflectionGroupDatum group_from_json(const Json& j, std::vector<std::string> vars = {},
                                            const std::string& where = "group") {
    if (const Json* v = detail::optional_field(j, "vars")) vars = detail::string_list(*v, where + ".vars");
    if (const Json* b = detail::optional_field(j, "builtin")) {
        std::string name = detail::string(*b, where + ".builtin");
        return detail::located(where, [&] { return builtin::by_name(name, vars); });
    }
    std::size_t r = static_cast<std::size_t>(detail::integer(detail::field(j, "rank", where), where + ".rank"));
    RingPtr R = detail::located(where, [&] { return builtin::ring_for(r, vars); });
    std::vector<QMatrix> gens;
    const Json& gj = detail::array(detail::field(j, "generators", where), where + ".generators");
    for (std::size_t k = 0; k < gj.size(); ++k) {
        std::string w = where + ".generators[" + std::to_string(k) + "]";
        std::vector<std::vector<Rational>> rows;
        for (std::size_t i = 0; i < detail::array(gj[k], w).size(); ++i) {
            std::vector<Rational> row;
            std::string wi = w + "[" + std::to_string(i) + "]";
            for (std::size_t c = 0; c < detail::array(gj[k][i], wi).size(); ++c) {
                row.push_back(rational_from_json(gj[k][i][c], wi + "[" + std::to_string(c) + "]"));
            }
            rows.push_back(std::move(row));
        }
        QMatrix m = detail::located(w, [&] { return QMatrix::from_rows(rows); });
        if (m.rows() != r || m.cols() != r) detail::fail(w, "generator must be " + std::to_string(r) + "x" + std::to_string(r));
        gens.push_back(m);
    }
    std::vector<Polynomial> inv;
    const Json& ij = detail::array(detail::field(j, "invariants", where), where + ".invariants");
    for (std::size_t k = 0; k < ij.size(); ++k) inv.push_back(polynomial_from_json(ij[k], R, where + ".invariants[" + std::to_string(k) + "]"));
    return detail::located(where, [&] { return ReflectionGroupDatum(R, gens, inv); });
}

/// Square matrix stored column by column: m[j][i] is entry (i, j).
inline QMatrix column_major_from_json(const Json& j, std::size_t n, const std::string& where) {
    QMatrix m(n, n);
    detail::array(j, where);
    if (j.size() != n) detail::fail(where, "expected " + std::to_string(n) + " columns");
    for (std::size_t c = 0; c < n; ++c) {
        std::string wc = where + "[" + std::to_string(c) + "]";
        if (detail::array(j[c], wc).size() != n) detail::fail(wc, "expected " + std::to_string(n) + " entries");
        for (std::size_t i = 0; i < n; ++i) m(i, c) = rational_from_json(j[c][i], wc + "[" + std::to_string(i) + "]");
    }
    return m;
}

/// {degrees, d, iota} with column-major matrices, or {model: point | free_circle | formal_pair}.
inline GStarModule gstar_from_json(const Json& j, const std::string& where = "gstar") {
    if (const Json* m = detail::optional_field(j, "model")) {
        std::string name = detail::string(*m, where + ".model");
        if (name == "point") {
            std::size_t r = 1;
            if (const Json* rk = detail::optional_field(j, "rank")) r = static_cast<std::size_t>(detail::integer(*rk, where + ".rank"));
            return models::point(r);
        }
        if (name == "free_circle") return models::free_circle();
        if (name == "formal_pair") return models::formal_pair();
        detail::fail(where + ".model", "unknown model '" + name + "'");
    }
    auto degrees = detail::int_list(detail::field(j, "degrees", where), where + ".degrees");
    std::size_t n = degrees.size();
    QMatrix d = column_major_from_json(detail::field(j, "d", where), n, where + ".d");
    std::vector<QMatrix> iota;
    const Json& ij = detail::array(detail::field(j, "iota", where), where + ".iota");
    for (std::size_t k = 0; k < ij.size(); ++k) iota.push_back(column_major_from_json(ij[k], n, where + ".iota[" + std::to_string(k) + "]"));
    return detail::located(where, [&] { return GStarModule(degrees, d, iota); });
}

/// Polynomial ring R_T for a G-star module: {ring} if given, else t or t1..tr.
inline RingPtr gstar_ring_from_json(const Json& j, std::size_t r) {
    if (const Json* rj = detail::optional_field(j, "ring")) {
        RingPtr R = ring_from_json(*rj, "ring");
        if (R->num_vars() != r) detail::fail("ring", "needs one variable per contraction");
        return R;
    }
    std::vector<std::string> names;
    if (r == 1) names = {"t"};
    for (std::size_t i = 0; r > 1 && i < r; ++i) names.push_back("t" + std::to_string(i + 1));
    return make_ring(names);
}

struct GKMInput {
    GKMGraph graph;
    std::shared_ptr<ReflectionGroupDatum> group;
    std::optional<GKMSymmetry> symmetry;
};

inline std::vector<std::string> gkm_variable_names(const Json& j, std::size_t r) {
    if (const Json* v = detail::optional_field(j, "vars")) return detail::string_list(*v, "gkm.vars");
    if (r == 1) return {"t"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < r; ++i) names.push_back("t" + std::to_string(i + 1));
    return names;
}

/// {rank, vars, vertices, edges [{v, w, weight}], euler, symmetry {group, vertex_perms}}.
/// An Euler class is a polynomial or a list of weight vectors to be multiplied.
inline GKMInput gkm_from_json(const Json& j, const std::string& where = "gkm") {
    std::size_t r = static_cast<std::size_t>(detail::integer(detail::field(j, "rank", where), where + ".rank"));
    auto names = gkm_variable_names(j, r);
    if (names.size() != r) detail::fail(where + ".vars", "expected " + std::to_string(r) + " names");
    std::shared_ptr<ReflectionGroupDatum> group;
    const Json* sym = detail::optional_field(j, "symmetry");
    RingPtr R;
    if (sym) {
        group = std::make_shared<ReflectionGroupDatum>(
            group_from_json(detail::field(*sym, "group", where + ".symmetry"), names, where + ".symmetry.group"));
        R = group->ring_T();
        if (R->names() != names) detail::fail(where + ".symmetry.group", "group ring differs from the graph ring");
    } else {
        R = detail::located(where, [&] { return make_ring(names); });
    }
    auto vertices = detail::string_list(detail::field(j, "vertices", where), where + ".vertices");
    auto index = [&](const Json& v, const std::string& w) {
        std::string name = detail::string(v, w);
        for (std::size_t k = 0; k < vertices.size(); ++k) {
            if (vertices[k] == name) return k;
        }
        detail::fail(w, "unknown vertex '" + name + "'");
    };
    std::vector<GKMEdge> edges;
    const Json& ej = detail::array(detail::field(j, "edges", where), where + ".edges");
    for (std::size_t k = 0; k < ej.size(); ++k) {
        std::string w = where + ".edges[" + std::to_string(k) + "]";
        GKMEdge e;
        e.v = index(detail::field(ej[k], "v", w), w + ".v");
        e.w = index(detail::field(ej[k], "w", w), w + ".w");
        for (int a : detail::int_list(detail::field(ej[k], "weight", w), w + ".weight")) e.weight.push_back(a);
        edges.push_back(std::move(e));
    }
    std::map<std::string, Polynomial> euler;
    if (const Json* eu = detail::optional_field(j, "euler")) {
        if (!eu->is_object()) detail::fail(where + ".euler", "expected an object keyed by vertex");
        for (const auto& [name, val] : eu->items()) {
            std::string w = where + ".euler." + name;
            if (val.is_array() && !val.empty() && val[0].is_array()) {
                Polynomial p = Polynomial::constant(R, Rational(1));
                for (std::size_t k = 0; k < val.size(); ++k) {
                    auto wt = detail::int_list(val[k], w + "[" + std::to_string(k) + "]");
                    if (wt.size() != r) detail::fail(w, "weight vector has the wrong length");
                    Polynomial lin(R);
                    for (std::size_t i = 0; i < r; ++i) lin += Polynomial::variable(R, i) * Rational(wt[i]);
                    p = p * lin;
                }
                euler[name] = p;
            } else {
                euler[name] = polynomial_from_json(val, R, w);
            }
        }
    }
    GKMInput out{detail::located(where, [&] { return GKMGraph(R, vertices, edges, euler); }), group, std::nullopt};
    if (sym) {
        GKMSymmetry S;
        const Json& pj = detail::array(detail::field(*sym, "vertex_perms", where + ".symmetry"), where + ".symmetry.vertex_perms");
        for (std::size_t g = 0; g < pj.size(); ++g) {
            std::string w = where + ".symmetry.vertex_perms[" + std::to_string(g) + "]";
            std::vector<std::size_t> perm;
            for (std::size_t k = 0; k < detail::array(pj[g], w).size(); ++k) perm.push_back(index(pj[g][k], w + "[" + std::to_string(k) + "]"));
            S.vertex_perms.push_back(std::move(perm));
        }
        out.symmetry = S;
    }
    return out;
}

/// Filtration datum: {name, ring, modules, maps, augmentation {module, map}, homology_module,
/// truncations [{index, sub, quotient}], poincare_duality, assumptions}. With a `gkm` field the
/// positions 0 and 1 and the augmentation come from the graph, and `modules`/`maps` continue from AB^2.
inline FiltrationDatum filtration_from_json(const Json& j, const std::string& where = "filtration") {
    FiltrationDatum D;
    if (const Json* g = detail::optional_field(j, "gkm")) {
        D = filtration_from_gkm(gkm_from_json(*g, where + ".gkm").graph);
    } else {
        D.ring = ring_from_json(detail::field(j, "ring", where), where + ".ring");
    }
    if (const Json* n = detail::optional_field(j, "name")) D.name = detail::string(*n, where + ".name");
    if (const Json* mj = detail::optional_field(j, "modules")) {
        for (std::size_t k = 0; k < detail::array(*mj, where + ".modules").size(); ++k) {
            D.ab.push_back(module_from_json((*mj)[k], D.ring, where + ".modules[" + std::to_string(k) + "]"));
        }
    }
    std::size_t first = D.delta.size();
    if (const Json* mp = detail::optional_field(j, "maps")) {
        for (std::size_t k = 0; k < detail::array(*mp, where + ".maps").size(); ++k) {
            std::size_t i = first + k;
            std::string w = where + ".maps[" + std::to_string(k) + "]";
            if (i + 1 >= D.ab.size()) detail::fail(w, "map has no target module");
            D.delta.push_back(map_from_json((*mp)[k], D.ab[i].generators(), D.ab[i + 1].generators(), w));
        }
    }
    if (const Json* aug = detail::optional_field(j, "augmentation")) {
        std::string w = where + ".augmentation";
        D.H = module_from_json(detail::field(*aug, "module", w), D.ring, w + ".module");
        FPModule ab0 = D.piece(0);
        D.iota = map_from_json(detail::field(*aug, "map", w), D.H->generators(), ab0.generators(), w + ".map");
    }
    if (const Json* n = detail::optional_field(j, "homology_module")) D.N = module_from_json(*n, D.ring, where + ".homology_module");
    if (const Json* t = detail::optional_field(j, "truncations")) {
        for (std::size_t k = 0; k < detail::array(*t, where + ".truncations").size(); ++k) {
            std::string w = where + ".truncations[" + std::to_string(k) + "]";
            const Json& tk = (*t)[k];
            D.truncations.push_back({static_cast<int>(detail::integer(detail::field(tk, "index", w), w + ".index")),
                                     module_from_json(detail::field(tk, "sub", w), D.ring, w + ".sub"),
                                     module_from_json(detail::field(tk, "quotient", w), D.ring, w + ".quotient")});
        }
    }
    if (const Json* p = detail::optional_field(j, "poincare_duality")) {
        if (!p->is_boolean()) detail::fail(where + ".poincare_duality", "expected a boolean");
        D.poincare_duality = p->get<bool>();
    }
    if (const Json* a = detail::optional_field(j, "assumptions")) D.assumptions = detail::string_list(*a, where + ".assumptions");
    return D;
}

/// Reads a JSON document; syntax errors carry the byte offset.
inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput(path + ": cannot open file");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InvalidInput(path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

// ---- writers ----

inline Json to_json(const RingPtr& R) { return Json{{"vars", R->names()}, {"degrees", R->degrees()}}; }

inline Json to_json(const Polynomial& p) { return p.to_string(); }

inline Json matrix_to_json(const ModuleMap& A) {
    Json rows = Json::array();
    for (const auto& row : A.matrix()) {
        Json r = Json::array();
        for (const auto& e : row) r.push_back(e.to_string());
        rows.push_back(r);
    }
    return rows;
}

inline Json to_json(const FPModule& M) {
    return Json{{"ring", to_json(M.ring())},
                {"row_degrees", M.generators().degrees},
                {"col_degrees", M.relations().degrees},
                {"matrix", matrix_to_json(M.presentation())}};
}

inline Json to_json(const BettiTable& t) {
    Json out = Json::array();
    for (const auto& [key, n] : t) out.push_back(Json{{"i", key.first}, {"degree", key.second}, {"rank", n}});
    return out;
}

inline Json to_json(const ModuleElement& v, const RingPtr& R, std::size_t rank) {
    Json out = Json::array();
    for (const auto& p : v.to_column(R, rank)) out.push_back(p.to_string());
    return out;
}

inline Json optional_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

} // namespace eqsyz::io
