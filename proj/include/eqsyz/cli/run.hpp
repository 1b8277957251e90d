#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../gradmod/random.hpp"
#include "../io/json.hpp"

namespace eqsyz::cli {

using io::Json;

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"module-analyze", "gkm", "weyl-verify", "cartan", "filtration-verify", "integrate"};
    return c;
}

struct Request {
    std::string command;
    std::string input;
    std::string format = "json";
    std::vector<std::string> checks;  ///< empty: the command's default set
    int max_degree = 20;
    std::uint64_t seed = 0;
};

struct Outcome {
    int exit_code = 0;
    std::string output;
};

namespace exit_code {
inline constexpr int pass = 0;
inline constexpr int check_failed = 1;
inline constexpr int input_error = 2;
} // namespace exit_code

/// Accumulates checks, each with a verdict and the statement it tests.
class Report {
public:
    Report(std::string command, Json echo, Json options)
        : doc_{{"command", std::move(command)}, {"inputs_echo", std::move(echo)}, {"options", std::move(options)},
               {"checks", Json::object()}, {"results", Json::object()}} {}

    Json& results() { return doc_["results"]; }

    void check(const std::string& name, const std::string& theorem, bool pass, Json detail = Json::object()) {
        detail["theorem"] = theorem;
        detail["verdict"] = pass ? "pass" : "fail";
        doc_["checks"][name] = std::move(detail);
        all_pass_ = all_pass_ && pass;
    }

    bool pass() const { return all_pass_; }

    Json finish() {
        doc_["verdict"] = all_pass_ ? "pass" : "fail";
        return doc_;
    }

private:
    Json doc_;
    bool all_pass_ = true;
};

namespace detail {

inline void render(std::ostringstream& os, const Json& j, const std::string& indent) {
    for (const auto& [key, val] : j.items()) {
        if (val.is_object()) {
            os << indent << key << ":\n";
            render(os, val, indent + "  ");
        } else if (val.is_string()) {
            std::string s = val.get<std::string>();
            if (s.find('\n') != std::string::npos) {
                os << indent << key << ":\n";
                std::istringstream lines(s);
                for (std::string line; std::getline(lines, line);) os << indent << "  " << line << "\n";
            } else {
                os << indent << key << ": " << s << "\n";
            }
        } else if (val.is_array() && !val.empty() && val[0].is_object()) {
            os << indent << key << ":\n";
            for (const auto& item : val) {
                os << indent << "  -\n";
                render(os, item, indent + "    ");
            }
        } else {
            os << indent << key << ": " << val.dump() << "\n";
        }
    }
}

} // namespace detail

/// Human-readable rendering of a report; the input echo is left out.
inline std::string render_text(const Json& report) {
    std::ostringstream os;
    os << "command: " << report.value("command", "") << "\n";
    os << "verdict: " << report.value("verdict", "") << "\n";
    os << "checks:\n";
    for (const auto& [name, c] : report["checks"].items()) {
        os << "  [" << c.value("verdict", "") << "] " << name << " (" << c.value("theorem", "") << ")\n";
        Json rest = c;
        rest.erase("verdict");
        rest.erase("theorem");
        detail::render(os, rest, "      ");
    }
    os << "results:\n";
    detail::render(os, report["results"], "  ");
    return os.str();
}

namespace detail {

inline bool wants(const std::vector<std::string>& checks, const std::string& name) {
    for (const auto& c : checks) {
        if (c == name) return true;
    }
    return false;
}

inline void require_known(const std::vector<std::string>& checks, const std::vector<std::string>& known) {
    for (const auto& c : checks) {
        if (!wants(known, c)) {
            std::string all;
            for (const auto& k : known) all += (all.empty() ? "" : ",") + k;
            throw InvalidInput("unknown check '" + c + "' (available: " + all + ")");
        }
    }
}

inline std::vector<std::string> effective(const std::vector<std::string>& requested, const std::vector<std::string>& known,
                                          const std::vector<std::string>& defaults) {
    require_known(requested, known);
    return requested.empty() ? defaults : requested;
}

inline Json hilbert_json(const FPModule& M, int max_degree) {
    HilbertSeries h = M.hilbert_series();
    int lo = 0;
    for (int d : M.generators().degrees) lo = std::min(lo, d);
    Json coeffs = Json::array();
    auto c = h.coefficients(lo, max_degree);
    for (auto x : c) coeffs.push_back(x);
    return Json{{"series", h.to_string()}, {"from_degree", lo}, {"coefficients", coeffs}};
}

inline Json module_summary(const FPModule& M, int max_degree) {
    FPModule P = minimal_presentation(M);
    BettiTable b = betti_table(P);
    return Json{{"minimal_presentation", io::to_json(P)},
                {"betti", io::to_json(b)},
                {"betti_text", betti_to_string(b)},
                {"hilbert", hilbert_json(P, max_degree)},
                {"dimension", io::optional_int(dimension(P))},
                {"free", P.relations().rank() == 0},
                {"zero", P.generators().rank() == 0}};
}

inline Json cm_json(const CMReport& cm) {
    return Json{{"status", to_string(cm.status)},
                {"dimension", io::optional_int(cm.dimension)},
                {"depth", io::optional_int(cm.depth)},
                {"nonzero_ext", cm.nonzero_ext},
                {"ext_concentrated", cm.ext_concentrated},
                {"depth_equals_dim", cm.depth_equals_dim},
                {"tests_agree", cm.tests_agree}};
}

inline Json syzygy_json(const SyzygyOrder& s) {
    Json exact = Json::array();
    for (bool e : s.witness.exact) exact.push_back(e);
    return Json{{"order", s.order}, {"cross_check", s.cross_check}, {"agree", s.agree}, {"free", s.free},
                {"witness_exact", exact}};
}

// ---- module-analyze ----

inline void module_analyze(const Json& in, const Request& req, Report& rep) {
    FPModule M = io::module_from_json(in.contains("module") ? in["module"] : in);
    auto checks = effective(req.checks, {"cm", "syzygy", "biduality", "ext"}, {"cm", "syzygy", "biduality", "ext"});
    rep.results() = module_summary(M, req.max_degree);
    FPModule P = minimal_presentation(M);
    int r = num_vars(P);
    bool zero = P.generators().rank() == 0;
    rep.results()["ring_rank"] = r;
    rep.results()["depth"] = zero ? Json(nullptr) : Json(depth(P));
    rep.results()["projective_dimension"] = io::optional_int(projective_dimension(P));
    if (wants(checks, "cm")) {
        CMReport cm = is_cohen_macaulay(P);
        rep.results()["cohen_macaulay"] = cm.is_cm();
        rep.check("cm", "cohen-macaulay characterization", cm.tests_agree, cm_json(cm));
    }
    if (wants(checks, "syzygy")) {
        SyzygyOrder s = syzygy_order(P);
        rep.results()["syzygy_order"] = s.order;
        rep.check("syzygy", "syzygy order criterion", s.agree, syzygy_json(s));
    }
    if (wants(checks, "biduality")) {
        Biduality b = biduality(P);
        bool consistent = !b.reflexive() || b.torsion_free();
        rep.check("biduality", "natural map to the double dual", consistent,
                  Json{{"torsion_free", b.torsion_free()}, {"reflexive", b.reflexive()}});
    }
    if (wants(checks, "ext")) {
        Json ext = Json::array();
        for (const auto& E : ext_modules(P)) {
            FPModule Em = minimal_presentation(E);
            ext.push_back(Json{{"zero", Em.generators().rank() == 0}, {"betti", io::to_json(betti_table(Em))},
                               {"hilbert", Em.hilbert_series().to_string()}});
        }
        rep.results()["ext"] = ext;
    }
}

// ---- gkm ----

inline Json gkm_cohomology_json(const GKMGraph& G, const GKMCohomology& H, int max_degree) {
    Json basis = Json::array();
    for (const auto& c : H.inclusion.columns()) basis.push_back(io::to_json(c, G.ring(), G.vertices().size()));
    Json out = module_summary(H.module, max_degree);
    out["generators_as_tuples"] = basis;
    out["rank"] = H.module.generators().rank();
    return out;
}

inline void gkm(const Json& in, const Request& req, Report& rep) {
    auto input = io::gkm_from_json(in.contains("gkm") ? in["gkm"] : in);
    const GKMGraph& G = input.graph;
    std::vector<std::string> known{"cs", "pairing", "cm", "partial", "descent"};
    std::vector<std::string> defaults{"cs", "pairing"};
    if (input.symmetry) defaults.push_back("descent");
    auto checks = effective(req.checks, known, defaults);
    auto H = gkm_cohomology(G);
    rep.results()["vertices"] = G.vertices();
    rep.results()["cohomology"] = gkm_cohomology_json(G, H, req.max_degree);
    FiltrationDatum D = filtration_from_gkm(G);
    if (wants(checks, "cs")) {
        auto aug = augmented_cohomology(D);
        bool injective = is_zero(aug[0]);
        bool exact_ab0 = is_zero(aug[1]);
        bool reflexive = biduality(H.module).reflexive();
        rep.check("cs", "Chang-Skjelbred exactness and reflexivity", injective && exact_ab0 && reflexive,
                  Json{{"restriction_injective", injective}, {"exact_at_ab0", exact_ab0}, {"reflexive", reflexive},
                       {"free", H.is_free()}});
    }
    if (wants(checks, "pairing")) {
        PairingReport p = pairing_perfection(G);
        Json gram = Json::array();
        for (const auto& row : p.gram) {
            Json r = Json::array();
            for (const auto& e : row) r.push_back(e.to_string());
            gram.push_back(r);
        }
        Json detail{{"applicable", p.applicable}, {"perfect", p.perfect}, {"reflexive", p.reflexive}, {"agree", p.agree},
                    {"gram", gram}, {"determinant", p.applicable ? Json(p.determinant.to_string()) : Json(nullptr)}};
        if (!p.reason.empty()) detail["reason"] = p.reason;
        rep.check("pairing", "pairing perfection equals reflexivity", p.agree && (!p.applicable || p.perfect), detail);
    }
    if (wants(checks, "cm")) {
        auto cm = cm_filtration_check(D);
        Json pieces = Json::array();
        for (const auto& pc : cm.pieces) pieces.push_back(Json{{"index", pc.index}, {"expected_dimension", pc.expected_dimension},
                                                               {"status", to_string(pc.cm.status)}, {"pass", pc.pass}});
        rep.check("cm", "Cohen-Macaulay orbit filtration", cm.pass(), Json{{"pieces", pieces}});
    }
    if (wants(checks, "partial")) {
        auto pe = partial_exactness_vs_syzygy(D);
        rep.check("partial", "partial exactness equals syzygy order", pe.pass(),
                  Json{{"j_exact", pe.j_exact}, {"j_syzygy", pe.j_syzygy}});
    }
    if (wants(checks, "descent")) {
        if (!input.symmetry) throw InvalidInput("descent check needs a 'symmetry' field");
        auto d = descend_invariants(G, *input.symmetry, *input.group);
        auto cmG = cm_filtration_check(d.descended);
        auto cmT = cm_filtration_check(base_change(d.descended, input.group->embedding()));
        Json detail{{"invariant_cohomology", module_summary(d.H_G.module, req.max_degree)},
                    {"group_order", input.group->order()},
                    {"order_G", d.order_G},
                    {"order_T", d.order_T},
                    {"hilbert_match", d.hilbert_match},
                    {"free_G", d.free_G},
                    {"cm_filtration_G", cmG.pass()},
                    {"cm_filtration_T", cmT.pass()}};
        rep.check("descent", "invariant descent of equivariant cohomology", d.pass() && cmG.pass() == cmT.pass(), detail);
    }
}

// ---- weyl-verify ----

inline void weyl_verify(const Json& in, const Request& req, Report& rep) {
    ReflectionGroupDatum W = io::group_from_json(in.contains("group") ? in["group"] : in);
    auto checks = effective(req.checks, {"invariants", "kostant", "restriction"}, {"invariants", "kostant"});
    int n = std::max(1, req.max_degree);
    rep.results()["order"] = W.order();
    rep.results()["invariant_degrees"] = W.invariant_degrees();
    Json inv = Json::array();
    for (const auto& f : W.invariants()) inv.push_back(f.to_string());
    rep.results()["invariants"] = inv;
    rep.results()["ring_T"] = io::to_json(W.ring_T());
    rep.results()["ring_G"] = io::to_json(W.ring_G());
    if (wants(checks, "invariants")) {
        InvariantsReport ir = verify_invariants(W, n);
        Json list = Json::array();
        for (const auto& c : ir.checks) list.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        rep.check("invariants", "fundamental invariants and Molien identity", ir.accepted(), Json{{"items", list}});
    }
    if (wants(checks, "kostant")) {
        CoinvariantBasis cb;
        try {
            cb = coinvariant_basis(W);
        } catch (const PreconditionFailed& e) {
            rep.check("kostant", "freeness over the invariants", false, Json{{"reason", e.what()}});
            return;
        }
        QPolynomial pw = cb.poincare();
        HilbertSeries lhs = hilbert_series(W.ring_T());
        HilbertSeries rhs = hilbert_series(W.ring_G()) * pw;
        auto a = lhs.coefficients(0, 2 * n), b = rhs.coefficients(0, 2 * n);
        bool series = a == b;
        long at_one = 0;
        for (const auto& [e, c] : pw) at_one += static_cast<long>(c);
        Json basis = Json::array();
        for (const auto& m : cb.monomials) basis.push_back(m.to_string());
        rep.check("kostant", "freeness over the invariants", series && at_one == static_cast<long>(W.order()),
                  Json{{"poincare", HilbertSeries::qpoly_to_string(pw)}, {"poincare_at_1", at_one},
                       {"coefficients_compared", 2 * n + 1}, {"series_match", series}, {"coinvariant_basis", basis}});
    }
    if (wants(checks, "restriction")) {
        RandomModules gen(W.ring_G(), req.seed);
        Json trials = Json::array();
        bool ok = true;
        for (int k = 0; k < 10; ++k) {
            RandomKind kind = gen.kind();
            FPModule M = gen.module(kind);
            int oG = syzygy_order(M).order;
            int oT = syzygy_order(base_change(M, W.embedding())).order;
            ok = ok && oG == oT;
            trials.push_back(Json{{"kind", to_string(kind)}, {"order_G", oG}, {"order_T", oT}});
        }
        rep.check("restriction", "syzygy order invariant under restriction to the torus", ok,
                  Json{{"seed", req.seed}, {"trials", trials}});
    }
}

// ---- cartan ----

inline void cartan(const Json& in, const Request& req, Report& rep) {
    const Json& gj = in.contains("gstar") ? in["gstar"] : in;
    GStarModule A = io::gstar_from_json(gj);
    RingPtr R = io::gstar_ring_from_json(in, A.rank());
    auto checks = effective(req.checks, {"uct", "restriction-rank", "involution"}, {"uct", "restriction-rank", "involution"});
    Json ordinary = Json::object();
    for (const auto& [deg, h] : A.cohomology_dimensions()) ordinary[std::to_string(deg)] = h;
    rep.results()["ordinary_cohomology"] = ordinary;
    rep.results()["equivariant_cohomology"] = module_summary(equivariant_cohomology(A, R), req.max_degree);
    rep.results()["equivariant_homology"] = module_summary(equivariant_homology(A, R), req.max_degree);
    if (wants(checks, "uct")) {
        UCTReport u = uct_collapse_check(A, R);
        Json detail{{"applicable", u.applicable}, {"ext_index", u.ext_index}, {"betti_match", u.betti_match},
                    {"hilbert_match", u.hilbert_match}, {"cm", cm_json(u.cm)}};
        if (!u.reason.empty()) detail["reason"] = u.reason;
        rep.check("uct", "universal coefficient collapse", u.pass(), detail);
    }
    if (wants(checks, "restriction-rank")) {
        auto rr = restriction_rank_check(A, R, req.max_degree);
        rep.check("restriction-rank", "generators bounded by ordinary cohomology", rr.bound_holds && rr.equality_iff_free,
                  Json{{"generators", rr.generators}, {"ordinary_total", rr.ordinary_total}, {"free", rr.free},
                       {"bound_holds", rr.bound_holds}, {"equality_iff_free", rr.equality_iff_free}});
    }
    if (wants(checks, "involution")) {
        GStarModule dd = dualize_gstar(dualize_gstar(A));
        bool same = koszul_sign_twist(dd) == A;
        rep.check("involution", "double dual of a G-star module", same);
    }
}

// ---- filtration-verify ----

inline void filtration_verify(const Json& in, const Request& req, Report& rep) {
    FiltrationDatum D = io::filtration_from_json(in.contains("filtration") ? in["filtration"] : in);
    validate(D);
    std::vector<std::string> known{"cm", "ext-duality", "partial-exactness", "syzygy-gap", "truncation"};
    std::vector<std::string> defaults{"cm"};
    if (D.N) defaults.push_back("ext-duality");
    if (D.augmented()) defaults.push_back("partial-exactness");
    if (D.poincare_duality) defaults.push_back("syzygy-gap");
    if (!D.truncations.empty()) defaults.push_back("truncation");
    auto checks = effective(req.checks, known, defaults);
    rep.results()["name"] = D.name;
    rep.results()["rank"] = D.rank();
    rep.results()["assumptions"] = D.assumptions;
    Json coh = Json::array();
    for (const auto& h : ab_cohomology(D)) coh.push_back(module_summary(h, req.max_degree));
    rep.results()["ab_cohomology"] = coh;
    if (wants(checks, "cm")) {
        auto cm = cm_filtration_check(D);
        Json pieces = Json::array();
        for (const auto& pc : cm.pieces) pieces.push_back(Json{{"index", pc.index}, {"expected_dimension", pc.expected_dimension},
                                                               {"status", to_string(pc.cm.status)}, {"pass", pc.pass}});
        rep.check("cm", "Cohen-Macaulay orbit filtration", cm.pass(), Json{{"pieces", pieces}});
    }
    if (wants(checks, "ext-duality")) {
        auto ed = verify_ext_duality(D);
        Json entries = Json::array();
        for (const auto& e : ed.entries) {
            entries.push_back(Json{{"j", e.j}, {"betti_match", e.betti_match}, {"hilbert_match", e.hilbert_match},
                                   {"cohomology_hilbert", e.cohomology_hilbert}, {"ext_hilbert", e.ext_hilbert}});
        }
        rep.check("ext-duality", "Atiyah-Bredon cohomology equals Ext of equivariant homology", ed.pass(),
                  Json{{"cm_filtration", ed.cm_filtration}, {"entries", entries}});
    }
    if (wants(checks, "partial-exactness")) {
        auto pe = partial_exactness_vs_syzygy(D);
        Json van = Json::array();
        for (bool v : pe.vanishing) van.push_back(v);
        rep.check("partial-exactness", "partial exactness equals syzygy order", pe.pass(),
                  Json{{"j_exact", pe.j_exact}, {"j_syzygy", pe.j_syzygy}, {"vanishing_from_minus_one", van},
                       {"syzygy", syzygy_json(pe.syzygy)}});
    }
    if (wants(checks, "syzygy-gap")) {
        auto sg = syzygy_gap_check(D);
        rep.check("syzygy-gap", "syzygy gap under Poincare duality", sg.pass,
                  Json{{"applicable", sg.applicable}, {"j_syzygy", sg.j_syzygy}, {"threshold", sg.threshold}});
    }
    if (wants(checks, "truncation")) {
        bool ok = true;
        Json list = Json::array();
        for (const auto& t : truncation_check(D)) {
            ok = ok && t.pass;
            list.push_back(Json{{"index", t.index}, {"pass", t.pass}, {"total", t.total}, {"parts", t.parts}});
        }
        rep.check("truncation", "short exact sequence of truncations", ok, Json{{"items", list}});
    }
}

// ---- integrate ----

inline void integrate(const Json& in, const Request& req, Report& rep) {
    auto input = io::gkm_from_json(io::detail::field(in, "gkm", "input"), "gkm");
    const GKMGraph& G = input.graph;
    detail::require_known(req.checks, {"classes"});
    const Json& cj = io::detail::array(io::detail::field(in, "classes", "input"), "classes");
    Json out = Json::array();
    bool ok = true;
    for (std::size_t k = 0; k < cj.size(); ++k) {
        std::string w = "classes[" + std::to_string(k) + "]";
        std::vector<Polynomial> col;
        if (io::detail::array(cj[k], w).size() != G.vertices().size()) {
            throw InvalidInput(w + ": expected one polynomial per vertex");
        }
        for (std::size_t v = 0; v < cj[k].size(); ++v) {
            col.push_back(io::polynomial_from_json(cj[k][v], G.ring(), w + "[" + std::to_string(v) + "]"));
        }
        ModuleElement f = ModuleElement::from_column(col);
        bool is_class = is_gkm_class(G, f);
        Json item{{"is_class", is_class}};
        if (is_class) item["integral"] = integrate(G, f).to_string();
        ok = ok && is_class;
        out.push_back(item);
    }
    rep.results()["classes"] = out;
    rep.check("classes", "localization integral of GKM classes", ok);
}

} // namespace detail

/// Runs one request. Input documents that are themselves reports are replaced by their echo.
inline Outcome run(const Request& req) {
    Outcome out;
    try {
        if (req.format != "json" && req.format != "text") throw InvalidInput("format must be json or text");
        if (!detail::wants(commands(), req.command)) throw InvalidInput("unknown command '" + req.command + "'");
        Json in = io::load_json(req.input);
        if (in.is_object() && in.contains("inputs_echo")) in = in["inputs_echo"];
        Json options{{"checks", req.checks}, {"max_degree", req.max_degree}, {"seed", req.seed}};
        Report rep(req.command, in, options);
        if (req.command == "module-analyze") detail::module_analyze(in, req, rep);
        else if (req.command == "gkm") detail::gkm(in, req, rep);
        else if (req.command == "weyl-verify") detail::weyl_verify(in, req, rep);
        else if (req.command == "cartan") detail::cartan(in, req, rep);
        else if (req.command == "filtration-verify") detail::filtration_verify(in, req, rep);
        else detail::integrate(in, req, rep);
        bool pass = rep.pass();
        Json doc = rep.finish();
        out.output = req.format == "json" ? doc.dump(2) + "\n" : render_text(doc);
        out.exit_code = pass ? exit_code::pass : exit_code::check_failed;
    } catch (const Error& e) {
        out.exit_code = exit_code::input_error;
        out.output = std::string("error: ") + e.what() + "\n";
    } catch (const Json::exception& e) {
        out.exit_code = exit_code::input_error;
        out.output = std::string("error: ") + e.what() + "\n";
    }
    return out;
}

/// Splits a comma separated list, dropping empty items.
inline std::vector<std::string> split_checks(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace eqsyz::cli
