#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <random>

#include "ncurv/catalog.hpp"
#include "ncurv/kernels.hpp"
#include "ncurv/random_models.hpp"
#include "ncurv/rank.hpp"
#include "oracles.hpp"

using namespace ncurv;

namespace {

// d x d matrix of rank <= r: product of random d x r and r x d integer factors.
Matrix<Exact> planted(std::size_t d, std::size_t r, bool complex, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-4, 4);
    Matrix<Exact> a(d, r), b(r, d);
    auto z = [&] { return Exact(Rational(c(rng)), complex ? Rational(c(rng)) : Rational(0)); };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            a(i, j) = z();
            b(j, i) = z();
        }
    return a * b;
}

// Hermitian PSD block-diagonal matrix with the given block sizes and ranks.
Matrix<Exact> block_gram(const std::vector<std::pair<std::size_t, std::size_t>>& blocks, std::mt19937_64& rng) {
    std::size_t d = 0;
    for (const auto& [size, r] : blocks) d += size;
    Matrix<Exact> m(d, d);
    std::size_t off = 0;
    for (const auto& [size, r] : blocks) {
        const auto f = planted(size, r, true, rng);
        const auto g = f * f.adjoint();
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j < size; ++j) m(off + i, off + j) = g(i, j);
        off += size;
    }
    // Interleave the blocks so components are not contiguous.
    Matrix<Exact> p(d, d);
    for (std::size_t i = 0; i < d; ++i) p(i, (i * 5 + 3) % d) = Exact(1);  // d = 14 is coprime to 5
    return p * m * p.adjoint();
}

struct Threads {
    Threads() { omp_set_num_threads(4); }
} const force_threads;

}  // namespace

TEST_CASE("exact rank agrees with plain Gauss-Jordan") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        const std::size_t d = 1 + rng() % 9, r = rng() % (d + 1);
        const auto m = planted(d, r, t % 2 == 1, rng);
        CHECK(rank_exact(m) == oracle::rank(m));
        CHECK(rank_exact(m) <= r);
    }
    Matrix<Exact> h(3, 3);
    h(0, 0) = Exact(Rational(1, 3));
    h(1, 2) = Exact(Rational(0), Rational(2, 7));
    CHECK(rank_exact(h) == 2);
    CHECK(rank_exact(Matrix<Exact>(4, 4)) == 0);
}

TEST_CASE("float rank thresholds eigenvalues") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        const std::size_t d = 2 + rng() % 8, r = rng() % (d + 1);
        const auto f = planted(d, r, true, rng);
        const auto g = f * f.adjoint();
        CHECK(rank_hermitian_float(to_float(g), 1e-9) == oracle::rank(g));
    }
    Matrix<Float> m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-12;
    CHECK(rank_hermitian_float(m, 1e-9) == 1);
    CHECK(rank_hermitian_float(m, 1e-13) == 2);
    const auto ev = hermitian_eigenvalues(m);
    CHECK(ev.front() == doctest::Approx(1e-12));
    CHECK(max_eigenvalue(m) == doctest::Approx(1.0));
}

TEST_CASE("exact positive semidefiniteness") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        const auto f = planted(5, 1 + t % 5, true, rng);
        const auto g = f * f.adjoint();
        CHECK(is_psd_exact(g));
        Matrix<Exact> shifted = g;
        shifted(t % 5, t % 5) -= Exact(Rational(1, 1000)) + g(t % 5, t % 5);
        CHECK_FALSE(is_psd_exact(shifted));
    }
}

TEST_CASE("Phi kernel matches the explicit index sum, serial and parallel") {
    std::mt19937_64 rng(8);
    for (int n : {2, 3}) {
        const auto mats = random_contraction<Exact>(n, 5, rng);
        const Matrix<Exact> x = planted(5, 3, true, rng);
        const auto want = oracle::phi(mats, x);
        CHECK(phi_kernel(mats, x, Exec::serial) == want);
        CHECK(phi_kernel(mats, x, Exec::parallel) == want);

        const auto fm = random_contraction<Float>(n, 12, rng);
        Matrix<Float> fx = Matrix<Float>::identity(12);
        fx(0, 3) = Float(0.25, -0.5);
        fx(3, 0) = Float(0.25, 0.5);
        const auto s = phi_kernel(fm, fx, Exec::serial), p = phi_kernel(fm, fx, Exec::parallel);
        CHECK(s == p);
        const auto o = oracle::phi(fm, fx);
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = 0; j < 12; ++j) CHECK(std::abs(s(i, j).re - o(i, j).re) < 1e-12);
    }
}

TEST_CASE("orbit norm kernel: serial = parallel = per-label formula") {
    for (const auto& [name, params] : std::vector<std::pair<std::string, Params>>{
             {"polynomial_isometry", {{"coefficients", "12:3/5;21:4/5"}}},
             {"binary_expansion", {{"bits", "1,0,1"}}},
             {"eigenvector", {{"lambda", "1/2"}}},
         }) {
        const auto e = make_entry<Exact>(name, params);
        const auto& gens = std::get<Compression<Exact>>(e.contraction->model()).generators;
        const TruncatedBasis basis(2, 7);
        const auto s = orbit_norm_kernel(gens, basis, Exec::serial), p = orbit_norm_kernel(gens, basis, Exec::parallel);
        CHECK(s == p);
        for (std::uint64_t i = 0; i < basis.size(); ++i) CHECK(s[i] == orbit_projection_norm2(gens, basis.label(i)));
    }
}

TEST_CASE("block rank: components, serial and parallel") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 8; ++t) {
        const auto m = block_gram({{3, 2}, {4, 1}, {2, 2}, {5, 3}}, rng);
        const auto comps = hermitian_components(m);
        CHECK(comps.size() >= 4);
        for (const auto& c : comps) CHECK(std::is_sorted(c.begin(), c.end()));
        const std::size_t want = oracle::rank(m);
        CHECK(want <= 8);
        CHECK(block_rank_kernel(m, comps, 0.0, Exec::serial) == want);
        CHECK(block_rank_kernel(m, comps, 0.0, Exec::parallel) == want);
        CHECK(hermitian_rank_blocked(to_float(m), 1e-9, Exec::parallel) == want);

        std::vector<Matrix<Exact>> blocks;
        for (const auto& c : comps) {
            Matrix<Exact> b(c.size(), c.size());
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = 0; j < c.size(); ++j) b(i, j) = m(c[i], c[j]);
            blocks.push_back(b);
        }
        CHECK(blocks_rank_kernel(blocks, 0.0, Exec::serial) == want);
        CHECK(blocks_rank_kernel(blocks, 0.0, Exec::parallel) == want);
    }
}

TEST_CASE("thread count is reported") { CHECK(kernel_threads() >= 1); }
