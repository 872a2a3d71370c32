#include "fglab/io/json_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

namespace fglab::io {

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::ParseError, e.what());
    }
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    try {
        return json::parse(os.str());
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::ParseError, path + ": " + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Int int_from_json(const json& j)
{
    if (j.is_number_integer()) return Int(j.get<long>());
    if (!j.is_string()) fail(ErrorCode::ParseError, "expected an integer or decimal string");
    Int n;
    if (n.set_str(j.get<std::string>(), 10) != 0) fail(ErrorCode::ParseError, "bad integer '" + j.get<std::string>() + "'");
    return n;
}

json int_to_json(const Int& n) { return n.get_str(); }

Rational rational_from_json(const json& j)
{
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(ErrorCode::ParseError, "expected a rational as \"a/b\"");
    return coeff_from_text(RationalField{}, j.get<std::string>());
}

json rational_to_json(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

json field_to_json(const local::LocalFieldPtr& L)
{
    json eis = json::array();
    for (const auto& c : L->eisenstein()) {
        json row = json::array();
        for (const auto& x : c) row.push_back(x.fits_slong_p() ? json(x.get_si()) : json(x.get_str()));
        eis.push_back(row);
    }
    return json{{"p", L->p()}, {"f", L->f()}, {"e", L->e()}, {"eisenstein", eis}, {"precision", L->precision()}};
}

local::LocalFieldPtr field_from_json(const json& j)
{
    try {
        const long p = j.at("p").get<long>();
        const int f = j.value("f", 1);
        const int prec = j.value("precision", 40);
        if (prec < 1 || prec > 2000) fail(ErrorCode::InvalidArgument, "precision must lie in 1..2000");
        std::vector<std::vector<Int>> eis;
        for (const auto& row : j.at("eisenstein")) {
            std::vector<Int> c;
            for (const auto& x : row) c.push_back(int_from_json(x));
            eis.push_back(std::move(c));
        }
        if (j.contains("e") && j.at("e").get<std::size_t>() != eis.size()) fail(ErrorCode::ParseError, "e disagrees with the Eisenstein data");
        const int e = static_cast<int>(eis.size());
        // Identical descriptors share one field so values parsed separately stay compatible.
        static std::mutex mu;
        static std::map<std::string, local::LocalFieldPtr> cache;
        std::ostringstream key;
        key << p << ':' << f << ':' << prec;
        for (const auto& c : eis) {
            key << '|';
            for (const auto& x : c) key << x.get_str() << ',';
        }
        std::lock_guard lock(mu);
        auto& slot = cache[key.str()];
        if (!slot) slot = local::make_local_field(local::make_unramified(p, f, (prec + e - 1) / e + 2), std::move(eis), prec);
        return slot;
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("field descriptor: ") + ex.what());
    }
}

json localnum_to_json(const local::LocalNum& a)
{
    if (a.is_exact_zero()) return json{{"v", "zero"}, {"unit", json::array()}, {"prec", "exact"}};
    if (a.is_zero()) return json{{"v", "zero"}, {"unit", json::array()}, {"prec", a.abs_precision()}};
    const auto& L = *a.field_ptr();
    json unit = json::array();
    for (int i = 0; i < L.e(); ++i) {
        json row = json::array();
        for (int k = 0; k < L.f(); ++k) row.push_back(a.unit_coords()[static_cast<std::size_t>(i * L.f() + k)].get_str());
        unit.push_back(row);
    }
    return json{{"v", a.valuation()}, {"unit", unit}, {"prec", a.abs_precision()}};
}

local::LocalNum localnum_from_json(const local::LocalFieldPtr& L, const json& j)
{
    try {
        const auto& prec = j.at("prec");
        if (prec.is_string()) {
            if (prec.get<std::string>() != "exact") fail(ErrorCode::ParseError, "prec must be an integer or \"exact\"");
            return L->zero();
        }
        const int abs = prec.get<int>();
        if (j.at("v").is_string()) return local::LocalNum::make_zero(L, abs);
        const int v = j.at("v").get<int>();
        std::vector<Int> u;
        const auto& unit = j.at("unit");
        if (unit.size() != static_cast<std::size_t>(L->e())) fail(ErrorCode::ParseError, "unit needs e rows");
        for (const auto& row : unit) {
            if (row.size() != static_cast<std::size_t>(L->f())) fail(ErrorCode::ParseError, "unit rows need f entries");
            for (const auto& x : row) u.push_back(int_from_json(x));
        }
        if (abs - v < 1) fail(ErrorCode::ParseError, "nonzero value needs prec > v");
        // Rebuild through the integral constructor so the unit is re-canonicalized.
        local::LocalNum unit_part = L->from_integral_coords(std::move(u), abs - v);
        if (!unit_part.is_unit()) fail(ErrorCode::ParseError, "unit coordinates are not a unit");
        return unit_part.times_pi_pow(v);
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("local number: ") + ex.what());
    }
}

local::FiniteElem coeff_from_json(const FiniteRingHandle& R, const json& j)
{
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() >= R.ring->size()) fail(ErrorCode::ParseError, "finite-ring code out of range");
    return R.ring->element(j.get<std::uint32_t>());
}

json ring_to_json(const IntegerRing&) { return json{{"kind", "Z"}}; }
json ring_to_json(const RationalField&) { return json{{"kind", "Q"}}; }
json ring_to_json(const LocalRing& R) { return json{{"kind", "local"}, {"field", field_to_json(R.field)}}; }
json ring_to_json(const FiniteRingHandle& R) { return json{{"kind", "finite"}, {"name", R.ring->name()}}; }

Int coeff_from_text(const IntegerRing&, const std::string& s)
{
    Int n;
    if (s.empty() || n.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) fail(ErrorCode::ParseError, "bad integer coefficient '" + s + "'");
    return n;
}

Rational coeff_from_text(const RationalField&, const std::string& s)
{
    Rational q;
    const std::string t = !s.empty() && s[0] == '+' ? s.substr(1) : s;
    const auto slash = t.find('/');
    if (t.empty() || q.set_str(t, 10) != 0 || (slash != std::string::npos && Int(t.substr(slash + 1)) == 0)) {
        fail(ErrorCode::ParseError, "bad rational coefficient '" + s + "'");
    }
    q.canonicalize();
    return q;
}

local::LocalNum coeff_from_text(const LocalRing& R, const std::string& s)
{
    if (!s.empty() && s[0] == '(') fail(ErrorCode::ParseError, "local-field coefficients with precision need the JSON form");
    return R.field->from_rational(coeff_from_text(RationalField{}, s));
}

local::FiniteElem coeff_from_text(const FiniteRingHandle& R, const std::string& s)
{
    const bool neg = !s.empty() && s[0] == '-';
    const Int n = coeff_from_text(IntegerRing{}, neg ? s.substr(1) : s);
    if (n < 0 || n >= R.ring->size()) fail(ErrorCode::ParseError, "finite-ring code out of range: " + s);
    const auto e = R.ring->element(static_cast<std::uint32_t>(n.get_ui()));
    return neg ? -e : e;
}

std::string coeff_to_text(const IntegerRing&, const Int& a) { return a.get_str(); }
std::string coeff_to_text(const RationalField&, const Rational& a) { return a.get_str(); }
std::string coeff_to_text(const LocalRing&, const local::LocalNum& a) { return "(" + a.to_string() + ")"; }
std::string coeff_to_text(const FiniteRingHandle&, const local::FiniteElem& a) { return std::to_string(a.value); }

namespace detail {

std::string negate_text(const std::string& c)
{
    if (c.empty()) return "-";
    if (c == "-") return "";
    return c[0] == '-' ? c.substr(1) : "-" + c;
}

namespace {

[[noreturn]] void bad(const std::string& text, std::size_t pos, const std::string& what)
{
    fail(ErrorCode::ParseError, "series text at position " + std::to_string(pos) + ": " + what + " in '" + text + "'");
}

}  // namespace

std::vector<TextTerm> split_series_text(const std::string& text, const std::vector<std::string>& vars, int& cap)
{
    std::vector<TextTerm> out;
    std::size_t i = 0;
    const auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    const auto number = [&] {
        const std::size_t b = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (b == i) bad(text, b, "expected a number");
        return text.substr(b, i - b);
    };
    bool negative = false;
    skip();
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    for (;;) {
        skip();
        if (i >= text.size()) bad(text, i, "expected a term");
        if (text.compare(i, 2, "O(") == 0) {
            i += 2;
            skip();
            if (text.compare(i, 3, "deg") != 0) bad(text, i, "expected 'deg'");
            i += 3;
            skip();
            const int D = std::stoi(number());
            skip();
            if (i >= text.size() || text[i] != ')') bad(text, i, "expected ')'");
            ++i;
            skip();
            if (i != text.size()) bad(text, i, "text after the O(deg) trailer");
            if (D < 1) bad(text, i, "O(deg D) needs D >= 1");
            cap = D - 1;
            return out;
        }
        TextTerm t;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(text[i]))) {
            t.coeff = number();
            if (i < text.size() && text[i] == '/') {
                ++i;
                t.coeff += "/" + number();
            }
            have_coeff = true;
        }
        bool need_factor = !have_coeff;
        for (;;) {
            skip();
            if (have_coeff || !need_factor) {
                if (i < text.size() && text[i] == '*') {
                    ++i;
                    skip();
                } else {
                    break;
                }
            }
            std::size_t best = vars.size();
            for (std::size_t k = 0; k < vars.size(); ++k) {
                if (text.compare(i, vars[k].size(), vars[k]) == 0 && (best == vars.size() || vars[k].size() > vars[best].size())) best = k;
            }
            if (best == vars.size()) bad(text, i, "unknown variable");
            i += vars[best].size();
            int n = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                n = std::stoi(number());
            }
            t.e[best] += n;
            have_coeff = true;
            need_factor = false;
        }
        if (negative) t.coeff = negate_text(t.coeff);
        out.push_back(t);
        skip();
        if (i >= text.size()) return out;
        if (text[i] != '+' && text[i] != '-') bad(text, i, "expected '+' or '-'");
        negative = text[i++] == '-';
    }
}

}  // namespace detail

namespace {

template <CoefficientRing R>
fgl::FormalGroupLaw<R> law_over(const R& ring, const json& j)
{
    fgl::FormalGroupLaw<R> law{series_from_json(ring, j.at("F")), std::nullopt, fgl::provenance_from_string(j.value("provenance", "raw"))};
    if (law.F.nvars() != 2) fail(ErrorCode::VariableMismatch, "a law is a series in two variables");
    if (j.contains("log") && !j.at("log").is_null()) law.log = fgl::make_logarithm(series_from_json(ring, j.at("log")));
    return law;
}

}  // namespace

AnyLaw law_from_json(const json& j)
{
    try {
        const auto& r = j.at("ring");
        const std::string kind = r.at("kind").get<std::string>();
        if (kind == "Z") return law_over(IntegerRing{}, j);
        if (kind == "Q") return law_over(RationalField{}, j);
        if (kind == "local") return law_over(LocalRing{field_from_json(r.at("field"))}, j);
        if (kind == "finite") return law_over(FiniteRingHandle{local::FiniteRing::parse(r.at("name").get<std::string>())}, j);
        fail(ErrorCode::ParseError, "unknown ring kind '" + kind + "'");
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("law JSON: ") + ex.what());
    }
}

json any_law_to_json(const AnyLaw& law)
{
    return std::visit([](const auto& l) { return law_to_json(l); }, law);
}

koszul::FinAlgebra algebra_from_json(const json& j)
{
    try {
        const Int modulus = j.contains("modulus") ? int_from_json(j.at("modulus")) : Int(0);
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "monomial") {
            return koszul::FinAlgebra::monomial(j.at("vars").get<std::vector<std::string>>(), j.at("bounds").get<std::vector<int>>(),
                                                j.value("max_degree", -1), modulus);
        }
        if (kind == "univariate") {
            std::vector<Int> rel;
            for (const auto& c : j.at("relation")) rel.push_back(int_from_json(c));
            return koszul::FinAlgebra::univariate(j.value("var", std::string("x")), rel, modulus);
        }
        if (kind == "table") {
            const auto labels = j.at("labels").get<std::vector<std::string>>();
            std::vector<std::vector<koszul::Vec>> table;
            for (const auto& row : j.at("table")) {
                std::vector<koszul::Vec> r;
                for (const auto& cell : row) {
                    koszul::Vec v;
                    for (const auto& x : cell) v.push_back(int_from_json(x));
                    r.push_back(std::move(v));
                }
                table.push_back(std::move(r));
            }
            koszul::Vec unit;
            for (const auto& x : j.at("unit")) unit.push_back(int_from_json(x));
            return koszul::FinAlgebra(modulus, labels, std::move(table), std::move(unit));
        }
        fail(ErrorCode::ParseError, "unknown algebra kind '" + kind + "'");
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("algebra JSON: ") + ex.what());
    }
}

koszul::Vec algebra_element_from_json(const koszul::FinAlgebra& A, const json& j)
{
    if (j.is_string()) {
        const auto& labels = A.labels();
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == j.get<std::string>()) return A.basis(i);
        }
        return A.scalar(int_from_json(j));
    }
    if (j.is_number_integer()) return A.scalar(Int(j.get<long>()));
    if (!j.is_array() || j.size() != A.rank()) fail(ErrorCode::ParseError, "algebra element needs rank-many coordinates");
    koszul::Vec v;
    for (const auto& x : j) v.push_back(int_from_json(x));
    return A.reduce(std::move(v));
}

}  // namespace fglab::io
