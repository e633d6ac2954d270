#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncurv/catalog.hpp"
#include "ncurv/errors.hpp"
#include "ncurv/invariants.hpp"
#include "oracles.hpp"

using namespace ncurv;

namespace {

// (n-1)(1-r)/(n-r) evaluated independently of the catalog.
Rational one_dim_curvature(int n, const Rational& r) { return (n - 1) * (1 - r) / (n - r); }

}  // namespace

TEST_CASE("every entry builds with its defaults") {
    for (const auto& info : catalog_index()) {
        CAPTURE(info.name);
        const auto f = make_entry<Float>(info.name);
        CHECK((f.contraction || f.subspace));
        CHECK_FALSE(f.source.empty());
        CHECK(catalog_info(info.name).name == info.name);
        if (info.exact_supported) {
            const auto e = make_entry<Exact>(info.name);
            CHECK(e.name == info.name);
        } else {
            CHECK_THROWS_AS(make_entry<Exact>(info.name), ValidationError);
        }
        if (!info.sweep_param.empty()) {
            bool found = false;
            for (const auto& p : info.params) found = found || p.name == info.sweep_param;
            CHECK(found);
        }
    }
}

TEST_CASE("parameter errors") {
    CHECK_THROWS_AS(catalog_info("nope"), ValidationError);
    CHECK_THROWS_AS(make_entry<Exact>("nope"), ValidationError);
    CHECK_THROWS_AS(make_entry<Exact>("decaying", {{"bogus", "1"}}), ValidationError);
    CHECK_THROWS_AS(make_entry<Exact>("decaying", {{"lambda", "x"}}), ParseError);
    CHECK_THROWS_AS(make_entry<Exact>("decaying", {{"ring", "3"}}), ParseError);
    CHECK_THROWS_AS(make_entry<Exact>("decaying", {{"r", "3/2"}}), ValidationError);
    CHECK_THROWS_AS(make_entry<Exact>("curvature_range", {{"r", "3/4"}}), ValidationError);
    CHECK_THROWS_AS(make_entry<Exact>("cyclic_range", {{"n", "3"}, {"r", "1/4"}}), ValidationError);
    CHECK_NOTHROW(make_entry<Float>("cyclic_range", {{"n", "3"}, {"r", "1/4"}}));
    CHECK_THROWS_AS(make_entry<Exact>("cyclic_range", {{"n", "3"}, {"r", "1/20"}}), ValidationError);
    CHECK_THROWS_AS(make_entry<Exact>("binary_expansion", {{"r", "1/3"}}), ValidationError);
    CHECK_THROWS_AS(make_entry<Exact>("eigenvector", {{"lambda", "sqrt(1/2)"}}), ValidationError);
    CHECK_THROWS_AS(make_entry<Exact>("polynomial_isometry", {{"coefficients", "12"}}), ParseError);
}

TEST_CASE("decaying closed forms") {
    for (int n : {2, 3})
        for (const Rational r : {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
            const auto e = make_entry<Exact>("decaying", {{"n", std::to_string(n)}, {"r", to_string(r)}});
            CHECK(*e.expected.curvature == one_dim_curvature(n, r));
            CHECK(*e.expected.euler == Rational(n - 1, n));
            CHECK(*e.expected.pure_rank == 1);
            const auto seq = defect_sequence(*e.contraction, 8);
            for (std::size_t k = 1; k <= 8; ++k) {
                CHECK(seq.level(k).trace == *e.expected.trace_at(k));
                CHECK(seq.level(k).rank == *e.expected.rank_at(k));
            }
        }
    // u = 1, n = 2, r = 1/2: level 2 is (1 - r^2) + (1 - r) = 5/4, not 9/8.
    const auto half = make_decaying_atomic_moduli<Exact>(2, single(1), {Rational(1, 2)});
    CHECK(defect_trace(half, 2) == Rational(5, 4));
    // 1/sqrt(2) enters only through |lambda|^2 = 1/2.
    const auto e = make_entry<Exact>("decaying", {{"lambda", "sqrt(1/2)"}});
    CHECK(*e.expected.curvature == Rational(1, 3));
}

TEST_CASE("pure rank counts the decaying factors") {
    const auto e = make_entry<Exact>("decaying", {{"n", "3"}, {"ring", "1213"}, {"lambda", "1/2,1,-3/5,0"}});
    CHECK(*e.expected.pure_rank == 3);
    CHECK(pure_rank(*e.contraction) == 3);
}

TEST_CASE("curvature range: |lambda|^2 = (1 - 2r)/(1 - r) gives K = r") {
    for (const Rational r : {Rational(0), Rational(1, 10), Rational(1, 3), Rational(1, 2)}) {
        const auto e = make_entry<Exact>("curvature_range", {{"r", to_string(r)}});
        CHECK(*e.expected.curvature == r);
        CHECK(one_dim_curvature(2, (1 - 2 * r) / (1 - r)) == r);
    }
}

TEST_CASE("binary expansions") {
    const auto a = make_entry<Exact>("binary_expansion", {{"r", "5/8"}});
    const auto b = make_entry<Exact>("binary_expansion", {{"bits", "1,0,1"}});
    CHECK(*a.expected.curvature == Rational(5, 8));
    CHECK(*b.expected.curvature == Rational(5, 8));
    CHECK(*a.expected.tilde == Rational(3, 8));
    CHECK(defect_sequence(*a.contraction, 6) == defect_sequence(*b.contraction, 6));
    const auto z = make_entry<Exact>("binary_expansion", {{"bits", "0,0"}});
    CHECK(*z.expected.curvature == 0);
}

TEST_CASE("polynomial isometries: K = chi = 1 - n^-k0, K-tilde = n^-k0") {
    const auto e = make_entry<Exact>("polynomial_isometry", {{"n", "3"}, {"coefficients", "12:3/5;21:4/5"}});
    CHECK(*e.expected.curvature == Rational(8, 9));
    CHECK(*e.expected.euler == Rational(8, 9));
    CHECK(*e.expected.tilde == Rational(1, 9));
    // R must be an isometry: unit coefficient norm and a single degree.
    CHECK_THROWS_AS(make_entry<Exact>("polynomial_isometry", {{"n", "3"}, {"coefficients", "12:3;21:4"}}), ValidationError);
    CHECK_THROWS_AS(make_entry<Exact>("polynomial_isometry", {{"coefficients", "1:3/5;12:4/5"}}), ValidationError);
}

TEST_CASE("symmetric Fock: level-k trace is C(k + n - 1, n)") {
    for (int n : {2, 3}) {
        const auto e = make_entry<Float>("symmetric_fock", {{"n", std::to_string(n)}, {"depth", "8"}});
        const auto seq = defect_sequence(*e.contraction, 7);
        for (std::size_t k = 1; k <= 7; ++k) {
            const double want = static_cast<double>(oracle::choose(k + n - 1, n));
            CHECK(seq.level(k).trace == doctest::Approx(want).epsilon(1e-9));
            CHECK(seq.level(k).rank == oracle::choose(k + n - 1, n));
        }
    }
}

TEST_CASE("truncation family rank is N_l") {
    for (int n : {2, 3})
        for (std::size_t l : {1u, 2u, 3u}) {
            const auto e = make_entry<Exact>("truncation_family", {{"n", std::to_string(n)}, {"l", std::to_string(l)}});
            const auto seq = defect_sequence(*e.contraction, 5);
            for (std::size_t k = 1; k <= 5; ++k) {
                CHECK(seq.level(k).rank == basis_dimension(n, std::min(k, l)));
                CHECK(seq.level(k).trace == Rational(static_cast<long>(basis_dimension(n, std::min(k, l)))));
            }
        }
}

TEST_CASE("three-letter family and its limit") {
    const auto a = make_entry<Exact>("three_letter", {{"alpha", "3/5"}});
    const auto l = make_entry<Exact>("three_letter_limit");
    CHECK(*a.expected.euler == Rational(2, 3));
    CHECK(*l.expected.euler == Rational(1, 3));
    CHECK(a.contraction->n() == 3);
}

TEST_CASE("sweep helpers") {
    CHECK(cycling_ring(3, 4) == parse_word("1231", 3));
    CHECK(split_list(" a, b ,,c ") == std::vector<std::string>{"a", "b", "c"});
    const auto sweep = entry_decay_sweep<Exact>(2, 2, {Rational(0), Rational(1, 2), Rational(1)});
    CHECK(sweep.size() == 3);
    CHECK(*sweep[2].expected.curvature == 0);
    CHECK(*sweep[0].expected.euler == Rational(3, 4));
}
