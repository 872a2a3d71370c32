// fglab command-line driver. Exit codes: 0 success, 1 usage or input
// error, 2 mathematical verification failure.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "fglab/fgl/lubin_tate.hpp"
#include "fglab/io/json_io.hpp"
#include "fglab/koszul/complex.hpp"
#include "fglab/moduli/cross_check.hpp"
#include "fglab/selftest.hpp"
#include "fglab/series/ops.hpp"

using namespace fglab;
using io::json;

namespace {

constexpr int kVerificationFailed = 2;

struct Verdict {
    json out;
    bool ok = true;
};

json load(const std::string& arg)
{
    if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return io::parse_json(arg);
    return io::read_json_file(arg);
}

bool verification_error(ErrorCode c)
{
    return c == ErrorCode::IntegralityViolation || c == ErrorCode::NotPTypical || c == ErrorCode::DSquaredNonzero || c == ErrorCode::NonUniqueSolution;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

json axioms_json(const fgl::AxiomReport& r)
{
    json j{{"passed", r.passed()}, {"cap", r.cap}, {"min_precision", r.min_precision}};
    j["unit"] = json{{"holds", r.unit}, {"first_bad_degree", r.unit_degree}};
    j["commutative"] = json{{"holds", r.commutative}, {"first_bad_degree", r.commutative_degree}};
    j["associative"] = json{{"holds", r.associative}, {"first_bad_degree", r.associative_degree}};
    json failed = json::array();
    if (!r.unit) failed.push_back("unit");
    if (!r.commutative) failed.push_back("commutative");
    if (!r.associative) failed.push_back("associative");
    j["failed_axioms"] = failed;
    return j;
}

local::LocalFieldPtr field_with_prec(const std::string& arg, int prec)
{
    json j = load(arg);
    if (prec > 0) j["precision"] = prec;
    return io::field_from_json(j);
}

Verdict cmd_field(const std::string& field, int prec)
{
    const auto L = field_with_prec(field, prec);
    json sc = json::array();
    for (const auto& a : L->structure_constants()) {
        json row = json::array();
        for (const auto& b : a) {
            json cell = json::array();
            for (const auto& c : b) {
                json w = json::array();
                for (const auto& x : c) w.push_back(x.get_str());
                cell.push_back(w);
            }
            row.push_back(cell);
        }
        sc.push_back(row);
    }
    json minpoly = json::array();
    for (long c : L->base().minpoly()) minpoly.push_back(c);
    return {json{{"field", io::field_to_json(L)},
                 {"q", L->q().get_str()},
                 {"residue_field", local::FiniteRing::residue_field(L->base())->name()},
                 {"residue_minpoly", minpoly},
                 {"uniformizer", io::localnum_to_json(L->uniformizer())},
                 {"structure_constants", sc}},
            true};
}

Verdict cmd_build(const std::string& field, const std::string& method, int deg, int prec, const std::string& vlist, int honda_n)
{
    const auto L = field_with_prec(field, prec);
    const LocalRing R{L};
    fgl::FormalGroupLaw<LocalRing> law = [&]() -> fgl::FormalGroupLaw<LocalRing> {
        if (method == "log") {
            auto l = fgl::from_log(fgl::lubin_tate_log(L, deg), deg, true);
            l.provenance = fgl::Provenance::FromLog;
            return l;
        }
        if (method == "frobenius") return fgl::lubin_tate_from_frobenius(L, deg);
        if (method == "honda") return fgl::from_log(fgl::honda_log(R, L->p(), honda_n, deg), deg, true);
        if (method == "araki") {
            std::vector<local::LocalNum> v;
            for (const auto& s : split_list(vlist)) v.push_back(io::coeff_from_text(R, s));
            return fgl::ptypical_from_araki(R, L->p(), v, deg);
        }
        if (method == "additive") return fgl::additive_law(R, deg);
        if (method == "multiplicative") return fgl::multiplicative_law(R, deg);
        fail(ErrorCode::InvalidArgument, "unknown method '" + method + "'");
    }();
    return {io::law_to_json(law), true};
}

Verdict cmd_verify(const std::string& law_arg)
{
    const auto law = io::law_from_json(load(law_arg));
    const auto rep = std::visit([](const auto& l) { return fgl::verify_axioms(l); }, law);
    return {axioms_json(rep), rep.passed()};
}

Verdict cmd_endo(const std::string& law_arg, const std::string& a)
{
    const auto law = io::law_from_json(load(law_arg));
    return std::visit(
        [&](const auto& l) -> Verdict {
            const auto c = io::coeff_from_text(l.ring(), a);
            const auto s = fgl::endo(l, c);
            return {json{{"a", a}, {"series", io::series_to_json(s)}, {"text", io::series_to_text(s)}}, true};
        },
        law);
}

Verdict cmd_height(const std::optional<std::string>& law_arg, const std::optional<std::string>& field, int deg, int prec)
{
    if (law_arg) {
        const auto law = io::law_from_json(load(*law_arg));
        if (const auto* l = std::get_if<fgl::FormalGroupLaw<LocalRing>>(&law)) return {json{{"height", fgl::height_mod_pi(*l).to_string()}}, true};
        if (const auto* l = std::get_if<fgl::FormalGroupLaw<FiniteRingHandle>>(&law)) return {json{{"height", fgl::height_mod_pi(*l).to_string()}}, true};
        fail(ErrorCode::InvalidArgument, "height needs a law over o_L or a finite field");
    }
    if (!field) fail(ErrorCode::InvalidArgument, "height needs --law or --field");
    const auto L = field_with_prec(*field, prec);
    return {json{{"field", io::field_to_json(L)}, {"deg", deg}, {"height", fgl::height_mod_pi(fgl::lubin_tate_log(L, deg)).to_string()}}, true};
}

Verdict cmd_araki(const std::optional<std::string>& law_arg, const std::optional<std::string>& field, const std::string& vlist, int deg, int prec)
{
    if (law_arg) {
        const auto law = io::law_from_json(load(*law_arg));
        const auto* l = std::get_if<fgl::FormalGroupLaw<LocalRing>>(&law);
        if (!l) fail(ErrorCode::InvalidArgument, "araki expects a law over a local field");
        const auto data = fgl::araki_from_ptypical(*l, l->ring().field->p());
        json v = json::array();
        for (const auto& x : data.v) v.push_back(io::localnum_to_json(x));
        return {json{{"p", data.p}, {"v", v}}, true};
    }
    if (!field) fail(ErrorCode::InvalidArgument, "araki needs --law or --field with --v");
    const auto L = field_with_prec(*field, prec);
    const LocalRing R{L};
    std::vector<local::LocalNum> v;
    for (const auto& s : split_list(vlist)) v.push_back(io::coeff_from_text(R, s));
    const auto lg = fgl::araki_logarithm(R, L->p(), v, deg);
    // Large one-variable caps: report the logarithm only.
    return {json{{"p", L->p()}, {"log", io::series_to_json(lg.log)}, {"height", fgl::height_mod_pi(lg).to_string()}}, true};
}

Verdict cmd_classify(const std::string& law_arg, int m)
{
    const auto law = io::law_from_json(load(law_arg));
    return std::visit(
        [&](const auto& l) -> Verdict {
            if (!l.log) fail(ErrorCode::MissingLogarithm, "classifying values need a logarithm");
            const auto c = fgl::classifying_value(*l.log, m);
            return {json{{"m", m}, {"value", io::coeff_to_json(l.ring(), c)}}, true};
        },
        law);
}

Verdict cmd_iso(const std::string& from, const std::string& to, int deg)
{
    const auto a = io::law_from_json(load(from));
    const auto b = io::law_from_json(load(to));
    if (a.index() != b.index()) fail(ErrorCode::RingMismatch, "laws over different kinds of rings");
    return std::visit(
        [&](const auto& F) -> Verdict {
            using Law = std::decay_t<decltype(F)>;
            const auto& G = std::get<Law>(b);
            const int D = deg > 0 ? deg : std::min(F.cap(), G.cap());
            const auto r = fgl::find_isomorphism(F.F, G.F, D);
            json j{{"found", r.found}, {"deg", D}, {"obstructed_degree", r.obstructed_degree}};
            if (r.found) {
                j["t"] = io::series_to_json(r.t);
                j["verified"] = fgl::conjugate(F.F.truncated(D), r.t).equals(G.F.truncated(D));
            } else if (r.residual) {
                j["partial_t"] = io::series_to_json(r.t);
                j["residual"] = io::series_to_json(*r.residual);
            }
            return {j, r.found && j.value("verified", false)};
        },
        a);
}

json homology_json(const std::vector<koszul::HomologyGroup>& hs)
{
    json out = json::array();
    for (const auto& h : hs) {
        json t = json::array();
        for (const auto& x : h.torsion) t.push_back(x.get_str());
        out.push_back(json{{"degree", h.degree}, {"free_rank", h.free_rank}, {"invariant_factors", t}});
    }
    return out;
}

Verdict cmd_koszul(const std::string& input, bool dump)
{
    const json j = load(input);
    const auto A = io::algebra_from_json(j.at("algebra"));
    std::vector<koszul::Vec> seq;
    for (const auto& e : j.at("sequence")) seq.push_back(io::algebra_element_from_json(A, e));
    const koszul::KoszulComplex K(A, seq);
    json out{{"rank", A.rank()}, {"length", K.length()}, {"homology", homology_json(koszul::homology(K))}};
    if (A.over_integers()) {
        const auto v = koszul::is_regular(A, seq);
        out["regular"] = json{{"homological", v.regular},       {"witness_degree", v.witness_degree}, {"direct", v.direct_regular},
                              {"direct_failure_index", v.direct_failure_index}, {"agree", v.agree()}};
        const auto c = koszul::collapse_check(A, seq);
        out["collapse_holds"] = c.holds();
    }
    if (dump) {
        json ds = json::array();
        for (int k = 1; k <= K.length(); ++k) ds.push_back(json{{"k", k}, {"matrix", K.differential(k).dump()}});
        out["differentials"] = ds;
    }
    const bool ok = !out.contains("regular") || out["regular"]["agree"].get<bool>();
    return {out, ok};
}

Verdict cmd_moduli(const std::string& ring, int deg, bool with_buds)
{
    const auto R = local::FiniteRing::parse(ring);
    const auto rep = moduli::groupoid_report(*R, deg);
    const FiniteRingHandle H{R};
    json orbits = json::array();
    for (const auto& o : rep.orbits) {
        orbits.push_back(json{{"size", o.members.size()},
                              {"stabilizer_order", o.stabilizer.size()},
                              {"representative", io::series_to_text(moduli::to_series(rep.buds[o.representative], H, fgl::xy_vars()))}});
    }
    const auto& c = rep.checks;
    json checks{{"identity_in_group", c.identity_in_group},   {"inverses_in_group", c.inverses_in_group},
                {"action_identity", c.action_identity},       {"action_closed", c.action_closed},
                {"right_action_law", c.right_action_law},     {"orbit_stabilizer", c.orbit_stabilizer},
                {"stabilizers_are_subgroups", c.stabilizers_are_subgroups}, {"morphism_sets_constant", c.morphism_sets_constant},
                {"cross_orbit_empty", c.cross_orbit_empty},   {"composition_closed", c.composition_closed}};
    json out{{"ring", rep.ring}, {"degree", deg}, {"bud_count", rep.buds.size()}, {"orbits", orbits}, {"group_order", rep.group.size()}, {"checks", checks}};
    if (with_buds) {
        json buds = json::array();
        for (const auto& b : rep.buds) buds.push_back(io::series_to_text(moduli::to_series(b, H, fgl::xy_vars())));
        out["buds"] = buds;
    }
    return {out, c.all()};
}

Verdict cmd_selftest(std::uint64_t seed, const std::string& filter, const std::string& golden, int prec)
{
    selftest::Options opt;
    opt.seed = seed;
    opt.filter = filter;
    opt.golden_dir = golden;
    if (prec > 0) opt.field_precision = prec;
    const auto results = selftest::run(opt);
    const json rep = selftest::report(results, seed);
    return {rep, rep["passed"].get<bool>()};
}

}  // namespace

int main(int argc, char** argv)
{
    if (const char* t = std::getenv("FGLAB_THREADS")) {
        const int n = std::atoi(t);
        if (n > 0) series::set_kernel_threads(n);
    }

    CLI::App app{"Formal group laws, Lubin-Tate theory and Koszul homology"};
    app.fallthrough();
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "Write JSON here instead of stdout");

    int deg = 25;
    int prec = 0;
    std::uint64_t seed = 42;
    std::string filter;
    std::string golden;
    std::string field;
    std::string law;
    std::string law2;
    std::string method = "log";
    std::string vlist;
    std::string a_text;
    std::string input;
    std::string ring;
    int m = 0;
    int honda_n = 1;
    bool dump = false;
    bool with_buds = false;

    auto* s_field = app.add_subcommand("field", "Describe a local field");
    s_field->add_option("--field", field, "Field descriptor (path or inline JSON)")->required();
    s_field->add_option("--prec", prec, "Override the working precision");

    auto* s_build = app.add_subcommand("fgl-build", "Build a formal group law over o_L");
    s_build->add_option("--field", field)->required();
    s_build->add_option("--method", method, "log | frobenius | honda | araki | additive | multiplicative");
    s_build->add_option("--deg", deg, "Degree cap");
    s_build->add_option("--prec", prec);
    s_build->add_option("--v", vlist, "Araki generators v_1,v_2,.. (rationals)");
    s_build->add_option("--height", honda_n, "Honda height n");

    auto* s_verify = app.add_subcommand("fgl-verify", "Check the group-law axioms");
    s_verify->add_option("--law", law)->required();

    auto* s_endo = app.add_subcommand("endo", "The endomorphism [a](T)");
    s_endo->add_option("--law", law)->required();
    s_endo->add_option("--a", a_text, "Ring element (integer or rational)")->required();

    auto* s_height = app.add_subcommand("height", "Height of the reduction mod pi");
    auto* o_hlaw = s_height->add_option("--law", law);
    auto* o_hfield = s_height->add_option("--field", field, "Lubin-Tate law of this field, one-variable route");
    s_height->add_option("--deg", deg);
    s_height->add_option("--prec", prec);

    auto* s_araki = app.add_subcommand("araki", "Araki generators of a law, or the Araki logarithm of v");
    auto* o_alaw = s_araki->add_option("--law", law);
    auto* o_afield = s_araki->add_option("--field", field);
    s_araki->add_option("--v", vlist);
    s_araki->add_option("--deg", deg);
    s_araki->add_option("--prec", prec);

    auto* s_classify = app.add_subcommand("classify", "Classifying value (m+1) l_{m+1}");
    s_classify->add_option("--law", law)->required();
    s_classify->add_option("--m", m)->required();

    auto* s_iso = app.add_subcommand("iso", "Find t with F^t = G");
    s_iso->add_option("--from", law, "Law F")->required();
    s_iso->add_option("--to", law2, "Law G")->required();
    auto* o_isodeg = s_iso->add_option("--deg", deg);

    auto* s_koszul = app.add_subcommand("koszul", "Koszul homology and regularity");
    s_koszul->add_option("--input", input, "Complex JSON {algebra, sequence}")->required();
    s_koszul->add_flag("--dump", dump, "Include the differential matrices");

    auto* s_moduli = app.add_subcommand("moduli", "Bud orbits, stabilizers and groupoid checks");
    s_moduli->add_option("--ring", ring, "F_q or Z/m, e.g. F5, F4, Z/4")->required();
    s_moduli->add_option("--deg", deg)->required();
    s_moduli->add_flag("--buds", with_buds, "List every bud");

    auto* s_self = app.add_subcommand("selftest", "Run the acceptance battery");
    s_self->add_option("--seed", seed);
    s_self->add_option("--filter", filter, "Module name or criterion name substring");
    s_self->add_option("--golden", golden, "Directory with selftest.json");
    s_self->add_option("--prec", prec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    Verdict v;
    try {
        if (*s_field) v = cmd_field(field, prec);
        else if (*s_build) v = cmd_build(field, method, deg, prec, vlist, honda_n);
        else if (*s_verify) v = cmd_verify(law);
        else if (*s_endo) v = cmd_endo(law, a_text);
        else if (*s_height) v = cmd_height(*o_hlaw ? std::optional(law) : std::nullopt, *o_hfield ? std::optional(field) : std::nullopt, deg, prec);
        else if (*s_araki) v = cmd_araki(*o_alaw ? std::optional(law) : std::nullopt, *o_afield ? std::optional(field) : std::nullopt, vlist, deg, prec);
        else if (*s_classify) v = cmd_classify(law, m);
        else if (*s_iso) v = cmd_iso(law, law2, *o_isodeg ? deg : 0);
        else if (*s_koszul) v = cmd_koszul(input, dump);
        else if (*s_moduli) v = cmd_moduli(ring, deg, with_buds);
        else if (*s_self) v = cmd_selftest(seed, filter, golden, prec);
    } catch (const Error& e) {
        std::cerr << "fglab: " << e.what() << "\n";
        if (verification_error(e.code())) {
            std::cout << io::dump(json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}});
            return kVerificationFailed;
        }
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "fglab: malformed input: " << e.what() << "\n";
        return 1;
    }

    const std::string text = io::dump(v.out);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "fglab: cannot write " << out_path << "\n";
            return 1;
        }
        f << text;
    }
    return v.ok ? 0 : kVerificationFailed;
}
