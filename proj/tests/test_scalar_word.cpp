#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ncurv/errors.hpp"
#include "ncurv/scalar.hpp"
#include "ncurv/word.hpp"

using namespace ncurv;

TEST_CASE("rational grammar") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-0.375") == Rational(-3, 8));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK(parse_rational("2.5E2") == 250);
    CHECK(parse_rational("sqrt(9/4)") == Rational(3, 2));
    CHECK(parse_rational(" 7 ") == 7);
    CHECK_THROWS_AS(parse_rational("sqrt(2)"), std::domain_error);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("real grammar evaluates roots in double precision") {
    CHECK(parse_real("sqrt(2)") == doctest::Approx(1.4142135623730951));
    CHECK(parse_real("1/3") == doctest::Approx(1.0 / 3.0));
    CHECK(parse_real("-0.25") == -0.25);
}

TEST_CASE("exact square roots") {
    Rational out;
    CHECK(exact_sqrt(Rational(49, 64), out));
    CHECK(out == Rational(7, 8));
    CHECK_FALSE(exact_sqrt(Rational(1, 2), out));
    CHECK_FALSE(exact_sqrt(Rational(-1), out));
    CHECK(real_sqrt<Exact>(Rational(25, 4)) == Rational(5, 2));
    CHECK_THROWS_AS(real_sqrt<Exact>(Rational(3)), std::domain_error);
}

TEST_CASE("double text round-trips bit for bit") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        const double x = dist(rng) / (1 + (i % 17));
        CHECK(parse_real(to_string(x)) == x);
    }
}

TEST_CASE("rational text round-trips") {
    for (const Rational& r : {Rational(0), Rational(-5, 7), Rational(123456789, 1024)}) CHECK(parse_rational(to_string(r)) == r);
}

TEST_CASE("complex arithmetic over both fields") {
    const Exact z(Rational(3), Rational(4));
    CHECK(z * conj(z) == Exact(Rational(25)));
    CHECK(abs2(z) == 25);
    CHECK(z / z == Exact(1));
    CHECK((z - z).is_real());
    CHECK(Exact(Rational(1, 2)) * Exact(Rational(2, 3)) == Exact(Rational(1, 3)));
    CHECK_THROWS_AS(z / Exact(0), std::domain_error);
    const Float f(0.6, 0.8);
    CHECK(abs2(f) == doctest::Approx(1.0));
    CHECK((f * conj(f)).re == doctest::Approx(1.0));
}

TEST_CASE("word text form") {
    CHECK(word_to_string(Word{}) == "e");
    CHECK(word_to_string(parse_word("121", 2)) == "121");
    CHECK(parse_word("e", 3).empty());
    CHECK(parse_word("", 3).empty());
    const Word big = parse_word("10.2.12", 12);
    CHECK(big.size() == 3);
    CHECK(letter(big, 0) == 10);
    CHECK(word_to_string(big) == "10.2.12");
    CHECK_THROWS_AS(parse_word("3", 2), ParseError);
    CHECK_THROWS_AS(parse_word("1a", 2), ParseError);
    CHECK_THROWS_AS(parse_word("1..2", 12), ParseError);
    CHECK(valid_word(parse_word("12", 2), 2));
    CHECK_FALSE(valid_word(power(3, 2), 2));
}

TEST_CASE("enumeration is length-lex and ordinal inverts it") {
    for (int n : {2, 3}) {
        const auto ws = enumerate_words_below(n, 5);
        CHECK(ws.size() == basis_dimension(n, 5));
        for (std::size_t i = 0; i < ws.size(); ++i) {
            CHECK(ordinal(ws[i], n) == i);
            if (i) CHECK(LengthLex{}(ws[i - 1], ws[i]));
        }
        CHECK(enumerate_words(n, 3).size() == checked_pow(n, 3));
    }
}

TEST_CASE("counts detect overflow") {
    CHECK(basis_dimension(2, 10) == 1023);
    CHECK(basis_dimension(3, 4) == 40);
    CHECK(checked_pow(2, 63) == (std::uint64_t{1} << 63));
    CHECK_THROWS_AS(checked_pow(2, 64), std::overflow_error);
    CHECK_THROWS_AS(basis_dimension(3, 50), std::overflow_error);
}

TEST_CASE("prefix relation") {
    CHECK(is_prefix(Word{}, parse_word("12", 2)));
    CHECK(is_prefix(parse_word("1", 2), parse_word("12", 2)));
    CHECK_FALSE(is_prefix(parse_word("2", 2), parse_word("12", 2)));
}
