#include <string>

#include <doctest.h>

#include "helpers.hpp"
#include "ncpx/errors.hpp"
#include "ncpx/expr.hpp"

using namespace ncpx;

TEST_CASE("the introduction example") {
    const Expression e = parse("(1+1)(1+1+1)");
    CHECK(evaluate(e) == 6);
    CHECK(count_ones(e) == 5);
}

TEST_CASE("minimal Fibonacci and Mersenne representations") {
    const Expression f25 = parse("(1+2^2)(1+2^2)(1+2(1+2^2)(1+2^2)(2^2*3(1+2^2)))");
    CHECK(evaluate(f25) == 75025);
    CHECK(count_ones(f25) == 35);

    const Expression m27 = parse("(1+2*3)(1+2^3*3^2)(1+2^9*3^3(1+2*3^2))");
    CHECK(evaluate(m27) == 134217727);
    CHECK(count_ones(m27) == 56);
}

TEST_CASE("the two sum-only split witnesses") {
    const Expression a = parse("2*3+(1+2^2*3^6)(2+3^11)");
    CHECK(evaluate(a) == 516743639);
    CHECK(count_ones(a) == 63);

    const Expression b = parse("2*3+(1+2^2*3^2)*(2+3^4(1+2*3^10))");
    CHECK(evaluate(b) == 353942783);
    CHECK(count_ones(b) == 63);
}

TEST_CASE("trivial expressions") {
    const Expression one = parse("1");
    CHECK(evaluate(one) == 1);
    CHECK(count_ones(one) == 1);
    CHECK(one == Expression::one());

    const Expression two = Expression::sum({Expression::one(), Expression::one()});
    CHECK(evaluate(two) == 2);
    CHECK(parse("2") == two);
}

TEST_CASE("whitespace juxtaposition versus glued digits") {
    const Expression e = parse("2 3");
    CHECK(evaluate(e) == 6);
    CHECK(count_ones(e) == 5);
    CHECK_THROWS_AS(parse("23"), parse_error);
}

TEST_CASE("big exponents expand exactly") {
    const Expression e = parse("(1+2^5*3)(1+2^4*3^5)");
    CHECK(evaluate(e) == 377233);
    CHECK(count_ones(e) == 38);

    const Expression p = parse("3^12");
    CHECK(evaluate(p) == 531441);
    CHECK(count_ones(p) == 36);
}

TEST_CASE("parse errors carry positions") {
    auto pos_of = [](const char* text) {
        try {
            parse(text);
        } catch (const parse_error& e) {
            return e.position;
        }
        return std::size_t(-1);
    };
    CHECK(pos_of("4") == 0);
    CHECK(pos_of("1+4") == 2);
    CHECK(pos_of("2^0") == 2);
    CHECK(pos_of("(1+1") == 4);
    CHECK(pos_of("") == 0);
    CHECK(pos_of("1+") == 2);
    CHECK(pos_of(")") == 0);
    CHECK(pos_of("2^^2") == 2);
    CHECK(pos_of("2^") == 2);
    CHECK_THROWS_AS(parse("3^9999999"), parse_error);  // would blow the ones cap
}

TEST_CASE("plain format uses the five symbols only") {
    const Expression e = parse("2^2*3");
    const std::string plain = format(e, ExprStyle::plain);
    CHECK(plain == "(1+1)*(1+1)*(1+1+1)");
    for (char c : plain)
        CHECK((c == '1' || c == '+' || c == '*' || c == '(' || c == ')'));
    CHECK(parse(plain) == e);
}

TEST_CASE("shorthand format collapses") {
    CHECK(format(Expression::sum({Expression::one(), Expression::one()}), ExprStyle::shorthand) ==
          "2");
    const Expression e = Expression::product(
        {Expression::sum({Expression::one(), Expression::one()}),
         Expression::sum({Expression::one(), Expression::one(), Expression::one()})});
    CHECK(format(e, ExprStyle::shorthand) == "2*3");
    CHECK(format(Expression::one(), ExprStyle::shorthand) == "1");

    const Expression powers = parse("(1+2^2)^2*3^9");
    CHECK(format(powers, ExprStyle::shorthand) == "(1+2^2)^2*3^9");
    const Expression back = parse(format(powers, ExprStyle::shorthand));
    CHECK(evaluate(back) == 492075);
    CHECK(count_ones(back) == 37);
}

TEST_CASE("reconstruction witnesses the table") {
    const ComplexityTable& t = cached_table(531441);

    const Expression four = reconstruct_minimal(t, 4);
    CHECK(evaluate(four) == 4);
    CHECK(count_ones(four) == 4);

    CHECK(reconstruct_minimal(t, 1) == Expression::one());

    const Expression e = reconstruct_minimal(t, 413343);
    CHECK(evaluate(e) == 413343);
    CHECK(count_ones(e) == 36);

    CHECK_THROWS_AS(reconstruct_minimal(t, 0), std::out_of_range);
    CHECK_THROWS_AS(reconstruct_minimal(t, t.limit() + 1), std::out_of_range);
}

TEST_CASE("reconstruction sweep with round trips") {
    const ComplexityTable& t = cached_table(100000);
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        const Expression e = reconstruct_minimal(t, n);
        REQUIRE(evaluate(e) == n);
        REQUIRE(count_ones(e) == t[n]);

        const Expression sh = parse(format(e, ExprStyle::shorthand));
        REQUIRE(evaluate(sh) == n);
        REQUIRE(count_ones(sh) == t[n]);

        REQUIRE(parse(format(e, ExprStyle::plain)) == e);
    }
}

TEST_CASE("no expression beats the table") {
    const ComplexityTable& t = cached_table(100000);
    for (const char* text : {"(1+1)(1+1+1)", "2^2*3^4", "1+2^2(1+3^3)", "2^16", "3(1+3(1+3))"}) {
        const Expression e = parse(text);
        const auto v = evaluate(e).convert_to<std::uint64_t>();
        REQUIRE(v <= t.limit());
        CHECK(count_ones(e) >= t[v]);
    }
}

TEST_CASE("a corrupt table is detected during reconstruction") {
    std::vector<std::uint8_t> bogus(50, 1);
    const ComplexityTable broken{std::move(bogus)};
    CHECK_THROWS_AS(reconstruct_minimal(broken, 10), invariant_error);
}
