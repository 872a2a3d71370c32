#include "doctest.h"

#include "fglab/io/json_io.hpp"

using namespace fglab;
using namespace fglab::io;
using series::TruncSeries;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("numbers")
{
    CHECK(int_from_json(int_to_json(Int("-123456789012345678901234567890"))) == Int("-123456789012345678901234567890"));
    CHECK(int_from_json(json(17)) == 17);
    CHECK(rational_from_json(rational_to_json(Rational(-3, 624))) == Rational(-1, 208));
    CHECK(rational_to_json(Rational(6, 4)) == json("3/2"));
    CHECK(code_of([] { rational_from_json(json("1/0")); }) == ErrorCode::ParseError);
    CHECK(code_of([] { int_from_json(json("12a")); }) == ErrorCode::ParseError);
}

TEST_CASE("fields and local numbers")
{
    const json desc = parse_json(R"({"p":5,"f":1,"e":2,"eisenstein":[[-5],[0]],"precision":30})");
    const auto L = field_from_json(desc);
    CHECK(field_from_json(desc) == L);
    CHECK(field_from_json(field_to_json(L)) == L);
    CHECK(L->e() == 2);
    const auto x = L->from_rational(Rational(7, 25)) + L->uniformizer();
    const auto y = localnum_from_json(L, localnum_to_json(x));
    CHECK((y - x).is_zero());
    CHECK(y.ord() == x.ord());
    CHECK(localnum_from_json(L, localnum_to_json(L->zero())).is_zero());
    CHECK(code_of([] { field_from_json(parse_json(R"({"p":4,"f":1,"e":1,"eisenstein":[[-4]],"precision":10})")); }) == ErrorCode::NonPrime);
    CHECK(code_of([] { field_from_json(parse_json(R"({"p":5,"f":1,"e":1,"eisenstein":[[-25]],"precision":10})")); }) == ErrorCode::NotEisenstein);
}

TEST_CASE("series round trips")
{
    const RationalField Q;
    const auto s = series_from_text(Q, "X + Y - 1/2*X^2*Y + 3*X*Y^2 + O(deg 5)", fgl::xy_vars());
    CHECK(s.cap() == 4);
    CHECK(s.coeff(2, 1) == Rational(-1, 2));
    CHECK(series_to_text(s) == "X + Y - 1/2*X^2*Y + 3*X*Y^2 + O(deg 5)");
    CHECK(series_from_json(Q, series_to_json(s)).equals(s));
    CHECK(series_from_text(Q, series_to_text(s), fgl::xy_vars()).equals(s));
    CHECK(series_from_text(Q, "X*Y + X*Y", fgl::xy_vars()).coeff(1, 1) == 2);

    const FiniteRingHandle F25{local::FiniteRing::parse("F25")};
    TruncSeries<FiniteRingHandle> f(F25, fgl::t_var(), 3);
    f.set({1, 0, 0}, F25.ring->element(7));
    f.set({3, 0, 0}, F25.ring->element(24));
    CHECK(series_from_json(F25, series_to_json(f)).equals(f));
    CHECK(series_from_text(F25, series_to_text(f), fgl::t_var()).equals(f));

    const auto L = field_from_json(parse_json(R"({"p":5,"f":1,"e":2,"eisenstein":[[-5],[0]],"precision":20})"));
    const auto lt = fgl::lubin_tate_log(L, 5);
    CHECK(series_from_json(LocalRing{L}, series_to_json(lt.log)).equals(lt.log));

    CHECK(code_of([&] { series_from_text(Q, "X + Z", fgl::xy_vars()); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { series_from_text(Q, "X^3 + O(deg 3)", fgl::xy_vars()); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { series_from_json(Q, parse_json(R"({"vars":["X"],"cap":2,"terms":[[[3],"1"]]})")); }) == ErrorCode::ParseError);
    CHECK(code_of([&] { series_from_json(Q, parse_json(R"({"vars":["X"],"cap":2})")); }) == ErrorCode::ParseError);
}

TEST_CASE("laws")
{
    const auto L = field_from_json(parse_json(R"({"p":5,"f":1,"e":1,"eisenstein":[[-5]],"precision":20})"));
    const auto law = fgl::from_log(fgl::lubin_tate_log(L, 6), 6, true);
    const auto back = law_from_json(law_to_json(law));
    REQUIRE(std::holds_alternative<fgl::FormalGroupLaw<LocalRing>>(back));
    const auto& b = std::get<fgl::FormalGroupLaw<LocalRing>>(back);
    CHECK(b.F.equals(law.F));
    REQUIRE(b.log.has_value());
    CHECK(b.log->log.equals(law.log->log));
    CHECK(b.provenance == law.provenance);
    CHECK(any_law_to_json(back) == law_to_json(law));

    const auto m = fgl::multiplicative_law(FiniteRingHandle{local::FiniteRing::parse("Z/9")}, 4);
    CHECK(any_law_to_json(law_from_json(law_to_json(m))) == law_to_json(m));
}

TEST_CASE("parse errors keep positions")
{
    try {
        parse_json("{\"a\": [1, 2,, 3]}");
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("13") != std::string::npos);
    }
    CHECK(code_of([] { read_json_file("/nonexistent/file.json"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("algebra inputs")
{
    const auto A = algebra_from_json(parse_json(R"({"kind":"univariate","var":"pi","relation":[5,0]})"));
    CHECK(A.rank() == 2);
    CHECK(algebra_element_from_json(A, json("pi")) == koszul::Vec{0, 1});
    CHECK(algebra_element_from_json(A, json(3)) == koszul::Vec{3, 0});
    CHECK(algebra_element_from_json(A, json::array({1, 2})) == koszul::Vec{1, 2});
    const auto M = algebra_from_json(parse_json(R"({"kind":"monomial","vars":["x","y"],"bounds":[3,3]})"));
    CHECK(M.rank() == 9);
    CHECK(code_of([&] { algebra_element_from_json(A, json("zeta")); }) == ErrorCode::ParseError);
}
