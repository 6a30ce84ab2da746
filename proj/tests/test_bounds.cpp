#include "doctest.h"

#include "tbembed/bounds.hpp"

using namespace tbembed::bounds;

namespace {

Rational parse(const std::string& s) {
    const auto dot = s.find('.');
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    while (digits.size() > 1 && digits[0] == '0') digits.erase(0, 1);
    return Rational(BigInt(digits), boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(s.size() - dot - 1)));
}

bool encloses(const Interval& i, const std::string& value, const std::string& tol = "1e-30") {
    const Rational v = parse(value);
    const Rational t(1, boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::stoi(tol.substr(3)))));
    return i.lo - t <= v && v <= i.hi + t && i.width() < t;
}

}  // namespace

TEST_CASE("constant brackets") {
    CHECK(encloses(ln2_bracket(), "0.693147180559945309417232121458176568"));
    CHECK(encloses(log2e_bracket(), "1.442695040888963407359924681001892137"));
    CHECK(encloses(e_bracket(), "2.718281828459045235360287471352662497"));
    CHECK(encloses(epsilon_bracket(), "1.698643600576038085443005668205779239", "1e-20"));
    CHECK(constants_cross_checked());
    CHECK(ln2_bracket().contains(ln2_series(200)));
    CHECK(e_bracket().contains(e_series(60)));
}

TEST_CASE("square root and exponential enclosures") {
    const Interval two{2, 2};
    const auto r = sqrt_bracket(two);
    CHECK(r.lo * r.lo <= 2);
    CHECK(r.hi * r.hi >= 2);
    CHECK(encloses(exp_bracket(1), "2.718281828459045235360287471352662497", "1e-25"));
    CHECK(to_decimal(Rational(1, 3), 5) == "0.33333");
}

TEST_CASE("induction inequality") {
    for (unsigned n = 2; n <= 128; ++n) CHECK(induction_holds(n));
    CHECK(induction_holds(131));
    CHECK_FALSE(induction_holds(132));
    const auto r = check_induction_inequality();
    CHECK(r.verdict);
    CHECK(r.right == "all hold");
}

TEST_CASE("factorial bracket") {
    for (unsigned N = 7; N <= 60; ++N) CHECK(stirling_bracket_exact(N));
    CHECK_THROWS(stirling_bracket_exact(6));
    CHECK(check_factorial_bracket().verdict);
}

TEST_CASE("linearization exponents") {
    const auto c = min_linearization_exponent_by_counting();
    CHECK(c.min_exponent == 67);
    CHECK(c.report.verdict);
    CHECK_FALSE(c.report.informational);
    const auto o = min_linearization_exponent_by_order();
    CHECK(o.min_exponent == 67);
    CHECK(o.report.verdict);
    const auto s = min_linearization_exponent_by_stirling();
    CHECK(s.min_exponent == 68);
    CHECK(s.report.informational);
    CHECK(min_linearization_exponent_by_landau().min_exponent == 68);
}

TEST_CASE("even orders") {
    // GL(4,2) = A8, whose largest even element order is 6, from cycle type (6,2)
    CHECK(max_even_order_gl(4) == 6);
    CHECK(max_even_order_gl(8) == 126);
    CHECK_THROWS(max_even_order_gl(3));

    const auto w = alt_even_order_witness(7);
    CHECK(w.order == 223092870);
    CHECK(w.prime_sum + 4 == 102);
    CHECK(w.exceeds_threshold);
    CHECK(encloses(w.threshold, "257953.971493474366", "1e-9"));
    const auto capped = alt_even_order_witness(7, 19);
    CHECK(capped.order == 9699690);
    CHECK(capped.prime_sum + 4 == 79);
}
