#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fglab/fgl/formal_group.hpp"
#include "fglab/koszul/algebra.hpp"

namespace fglab::io {

using json = nlohmann::ordered_json;

/// Parses text, rethrowing nlohmann errors as ParseError (message keeps the
/// byte position).
json parse_json(const std::string& text);
json read_json_file(const std::string& path);
/// Pretty, with a trailing newline.
std::string dump(const json& j);

Int int_from_json(const json& j);
json int_to_json(const Int& n);
Rational rational_from_json(const json& j);
json rational_to_json(const Rational& q);

// Fields and local numbers.
json field_to_json(const local::LocalFieldPtr& L);
/// {"p":5,"f":1,"e":2,"eisenstein":[[-5],[0]],"precision":40}
local::LocalFieldPtr field_from_json(const json& j);
json localnum_to_json(const local::LocalNum& a);
local::LocalNum localnum_from_json(const local::LocalFieldPtr& L, const json& j);

// Coefficient codecs, one per ring.
inline json coeff_to_json(const IntegerRing&, const Int& a) { return int_to_json(a); }
inline json coeff_to_json(const RationalField&, const Rational& a) { return rational_to_json(a); }
inline json coeff_to_json(const LocalRing&, const local::LocalNum& a) { return localnum_to_json(a); }
inline json coeff_to_json(const FiniteRingHandle&, const local::FiniteElem& a) { return a.value; }
inline Int coeff_from_json(const IntegerRing&, const json& j) { return int_from_json(j); }
inline Rational coeff_from_json(const RationalField&, const json& j) { return rational_from_json(j); }
inline local::LocalNum coeff_from_json(const LocalRing& R, const json& j) { return localnum_from_json(R.field, j); }
local::FiniteElem coeff_from_json(const FiniteRingHandle& R, const json& j);

json ring_to_json(const IntegerRing&);
json ring_to_json(const RationalField&);
json ring_to_json(const LocalRing& R);
json ring_to_json(const FiniteRingHandle& R);

/// Coefficients written in series text: integers, fractions, F_q codes.
Int coeff_from_text(const IntegerRing&, const std::string& s);
Rational coeff_from_text(const RationalField&, const std::string& s);
local::LocalNum coeff_from_text(const LocalRing& R, const std::string& s);
local::FiniteElem coeff_from_text(const FiniteRingHandle& R, const std::string& s);
std::string coeff_to_text(const IntegerRing&, const Int& a);
std::string coeff_to_text(const RationalField&, const Rational& a);
std::string coeff_to_text(const LocalRing&, const local::LocalNum& a);
std::string coeff_to_text(const FiniteRingHandle&, const local::FiniteElem& a);

namespace detail {
struct TextTerm {
    std::string coeff;  // "" for 1, "-" for -1, else a signed coefficient
    series::Exponent e{0, 0, 0};
};
/// Splits "3*X^2*Y - 1/2*Y + O(deg 5)" into terms and the trailer cap.
std::vector<TextTerm> split_series_text(const std::string& text, const std::vector<std::string>& vars, int& cap);
std::string negate_text(const std::string& c);
}  // namespace detail

/// {"vars":["X","Y"],"cap":D,"terms":[[[2,1],coef],...]}; exact zeros are
/// omitted.
template <CoefficientRing R>
json series_to_json(const series::TruncSeries<R>& s)
{
    json terms = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.ring().is_exact_zero(s[i])) continue;
        const auto& e = s.layout().exponent(i);
        json ex = json::array();
        for (int k = 0; k < s.nvars(); ++k) ex.push_back(e[static_cast<std::size_t>(k)]);
        terms.push_back(json::array({ex, coeff_to_json(s.ring(), s[i])}));
    }
    return json{{"vars", s.vars()}, {"cap", s.cap()}, {"terms", terms}};
}

template <CoefficientRing R>
series::TruncSeries<R> series_from_json(const R& ring, const json& j)
{
    try {
        const auto vars = j.at("vars").get<std::vector<std::string>>();
        const int cap = j.at("cap").get<int>();
        if (vars.empty() || vars.size() > static_cast<std::size_t>(series::kMaxVars)) fail(ErrorCode::ParseError, "series needs 1 to 3 variables");
        if (cap < 0) fail(ErrorCode::ParseError, "negative cap");
        series::TruncSeries<R> s(ring, vars, cap);
        for (const auto& t : j.at("terms")) {
            series::Exponent e{0, 0, 0};
            const auto& ex = t.at(0);
            if (ex.size() != vars.size()) fail(ErrorCode::ParseError, "exponent length differs from the variable count");
            int deg = 0;
            for (std::size_t k = 0; k < vars.size(); ++k) {
                e[k] = ex.at(k).get<int>();
                if (e[k] < 0) fail(ErrorCode::ParseError, "negative exponent");
                deg += e[k];
            }
            if (deg > cap) fail(ErrorCode::ParseError, "term beyond the cap");
            s.set(e, coeff_from_json(ring, t.at(1)));
        }
        return s;
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("series JSON: ") + ex.what());
    }
}

/// "X^2*Y + 3*X*Y^2 + O(deg 5)"; the trailer names the cap.
template <CoefficientRing R>
std::string series_to_text(const series::TruncSeries<R>& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.ring().is_zero(s[i]) && s.ring().is_exact_zero(s[i])) continue;
        const auto& e = s.layout().exponent(i);
        std::string mono;
        for (int k = 0; k < s.nvars(); ++k) {
            const int n = e[static_cast<std::size_t>(k)];
            if (n == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += s.vars()[static_cast<std::size_t>(k)];
            if (n > 1) mono += "^" + std::to_string(n);
        }
        std::string c = coeff_to_text(s.ring(), s[i]);
        bool negative = !c.empty() && c[0] == '-';
        if (negative) c.erase(0, 1);
        std::string term = mono.empty() ? c : (c == "1" ? mono : c + "*" + mono);
        if (out.empty()) {
            out = negative ? "-" + term : term;
        } else {
            out += negative ? " - " : " + ";
            out += term;
        }
    }
    if (out.empty()) out = "0";
    return out + " + O(deg " + std::to_string(s.cap() + 1) + ")";
}

/// Inverse of series_to_text for the given variables. Without a trailer the
/// cap is the largest degree present.
template <CoefficientRing R>
series::TruncSeries<R> series_from_text(const R& ring, const std::string& text, const std::vector<std::string>& vars)
{
    int cap = -1;
    const auto terms = detail::split_series_text(text, vars, cap);
    if (cap < 0) {
        cap = 0;
        for (const auto& t : terms) cap = std::max(cap, t.e[0] + t.e[1] + t.e[2]);
    }
    series::TruncSeries<R> s(ring, vars, cap);
    for (const auto& t : terms) {
        if (t.e[0] + t.e[1] + t.e[2] > cap) fail(ErrorCode::ParseError, "term beyond the O(deg) trailer");
        typename R::value_type c = t.coeff.empty() ? ring.one() : t.coeff == "-" ? typename R::value_type(-ring.one()) : coeff_from_text(ring, t.coeff);
        s.set(t.e, typename R::value_type(s.coeff(t.e) + c));
    }
    return s;
}

// Laws.
using AnyLaw = std::variant<fgl::FormalGroupLaw<IntegerRing>, fgl::FormalGroupLaw<RationalField>, fgl::FormalGroupLaw<LocalRing>,
                            fgl::FormalGroupLaw<FiniteRingHandle>>;

template <CoefficientRing R>
json law_to_json(const fgl::FormalGroupLaw<R>& law)
{
    json j{{"ring", ring_to_json(law.ring())}, {"provenance", fgl::to_string(law.provenance)}, {"F", series_to_json(law.F)}};
    j["log"] = law.log ? series_to_json(law.log->log) : json(nullptr);
    return j;
}

AnyLaw law_from_json(const json& j);
json any_law_to_json(const AnyLaw& law);

// Koszul inputs: {"algebra": {...}, "sequence": [...]}.
koszul::FinAlgebra algebra_from_json(const json& j);
koszul::Vec algebra_element_from_json(const koszul::FinAlgebra& A, const json& j);

}  // namespace fglab::io
