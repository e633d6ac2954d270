#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ncurv/catalog.hpp"
#include "ncurv/errors.hpp"
#include "ncurv/invariants.hpp"
#include "ncurv/random_models.hpp"

using namespace ncurv;

namespace {

Rational pow_q(int n, std::size_t k) {
    Rational r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= n;
    return r;
}

}  // namespace

TEST_CASE("normalization") {
    CHECK(normalized<Exact>(Rational(7), 2, 3) == Rational(7, 8));
    CHECK(normalized<Exact>(Rational(13), 3, 3) == Rational(26, 27));
    CHECK(normalized<Float>(13.0, 3, 3) == doctest::Approx(26.0 / 27.0));
}

TEST_CASE("left regular estimates bracket alpha") {
    for (int n : {2, 3}) {
        const auto a = make_left_regular<Exact>(n, 3);
        const auto k = curvature(a, 6), x = euler(a, 6);
        CHECK(k.value == 3 - 3 / pow_q(n, 6));
        CHECK(*k.upper_bound == 3);
        CHECK(x.value == k.value);
        CHECK(k.k_used == 6);
        CHECK(k.levels.size() == 6);
        CHECK(pure_rank(a) == 3);
    }
}

TEST_CASE("diagnostics") {
    const auto a = make_decaying_atomic<Float>(2, parse_word("1", 2), {Float(std::sqrt(0.5))});
    EstimateOptions opt;
    opt.gap = 1e-3;
    const auto k = curvature(a, 14, opt);
    CHECK(k.converged);
    CHECK(k.cauchy_gap < 1e-3);
    REQUIRE(k.aitken);
    // Geometric convergence: Aitken lands on the limit 1/3 far closer than the last level.
    CHECK(std::abs(*k.aitken - 1.0 / 3.0) < std::abs(k.value - 1.0 / 3.0));
    const auto one = curvature(a, 1, opt);
    CHECK(std::isinf(one.cauchy_gap));
    CHECK_FALSE(one.converged);
    CHECK_FALSE(one.aitken);
    CHECK_THROWS_AS(estimate_from(DefectSequence<Float>{}, 0, false, 1e-6), std::invalid_argument);
}

TEST_CASE("hierarchy 0 <= K <= chi <= pure rank on random tuples") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 25; ++t) {
        const int n = 2 + t % 2;
        const auto a = make_dense<Exact>(random_contraction<Exact>(n, 1 + t % 6, rng));
        const auto r = hierarchy_report(a, 6);
        CHECK(r.hierarchy_ok);
        CHECK(r.levelwise_ok);
        for (std::size_t k = 0; k < 6; ++k) {
            CHECK(r.curvature.levels[k] >= 0);
            CHECK(r.curvature.levels[k] <= r.euler.levels[k]);
            CHECK(r.euler.levels[k] <= Rational(static_cast<long>(r.pure_rank)));
        }
        const auto f = make_dense<Float>(random_contraction<Float>(n, 1 + t % 8, rng));
        const auto rf = hierarchy_report(f, 8);
        CHECK(rf.hierarchy_ok);
        CHECK(rf.levelwise_ok);
    }
}

TEST_CASE("K-tilde brackets and wandering check") {
    const auto e = make_entry<Exact>("binary_expansion", {{"bits", "1,0,1"}});
    const auto& gens = std::get<Compression<Exact>>(e.contraction->model()).generators;
    const auto t = tilde_curvature(2, 1, gens, 10);
    CHECK(*t.lower_bound == t.value);
    CHECK(*t.upper_bound == t.value + Rational(static_cast<long>(gens.size())) / pow_q(2, 10));
    CHECK(t.value <= Rational(3, 8));
    CHECK(Rational(3, 8) <= *t.upper_bound);
    for (std::size_t k = 1; k < t.levels.size(); ++k) CHECK(t.levels[k - 1] <= t.levels[k]);

    FockVector<Exact> bad(2, 1);
    bad.add(0, Word{}, Exact(1));
    bad.add(0, parse_word("1", 2), Exact(1));
    CHECK_THROWS_AS(tilde_curvature(2, 1, std::vector<Generator<Exact>>{Generator<Exact>(bad)}, 4), ValidationError);
    EstimateOptions tight;
    tight.compute.cap = 100;
    CHECK_THROWS_AS(tilde_curvature(2, 1, gens, 12, tight), ResourceError);
}

TEST_CASE("free tuples are detected through K = pure rank") {
    const auto l = make_left_regular<Exact>(2, 2);
    const auto free = freeness_test(l, 8);
    CHECK(free.verdict == FreenessVerdict::free_consistent);
    CHECK(free.pure_rank == 2);
    CHECK(to_string(free.verdict) == "free-consistent");

    const auto decay = make_decaying_atomic<Exact>(2, parse_word("1", 2), {Exact(Rational(1, 2))});
    const auto nf = freeness_test(decay, 10);
    CHECK(nf.verdict == FreenessVerdict::not_free);
    CHECK(nf.pure_rank == 1);

    const auto cuntz = make_decaying_atomic<Exact>(2, parse_word("1", 2), {Exact(1)});
    const auto zero = freeness_test(cuntz, 6);
    CHECK(zero.verdict == FreenessVerdict::inconclusive);
    CHECK(zero.pure_rank == 0);

    const auto mixed = freeness_test(direct_sum(make_left_regular<Exact>(2), cuntz), 6);
    CHECK(mixed.verdict == FreenessVerdict::inconclusive);
    CHECK(mixed.non_pure);
    CHECK(mixed.purity == doctest::Approx(1.0));

    // A free summand beside a decaying ring is pure but not free.
    const auto sum = freeness_test(direct_sum(make_left_regular<Exact>(2), decay), 10);
    CHECK(sum.verdict == FreenessVerdict::not_free);
    CHECK(sum.pure_rank == 2);
}

TEST_CASE("additivity of the estimates under direct sums") {
    std::mt19937_64 rng(2);
    const auto a = make_decaying_atomic<Exact>(2, parse_word("12", 2), {Exact(Rational(1, 2)), Exact(Rational(3, 5))});
    const auto b = make_dense<Exact>(random_contraction<Exact>(2, 3, rng));
    const auto ka = curvature(a, 8), kb = curvature(b, 8), ks = curvature(direct_sum(a, b), 8);
    const auto xa = euler(a, 8), xb = euler(b, 8), xs = euler(direct_sum(a, b), 8);
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(ks.levels[k] == ka.levels[k] + kb.levels[k]);
        CHECK(xs.levels[k] == xa.levels[k] + xb.levels[k]);
    }
}
