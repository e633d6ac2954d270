#include "ncurv/random_models.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ncurv/rank.hpp"

namespace ncurv {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// A rational point (c, s) on the unit circle, c^2 + s^2 = 1.
std::pair<Rational, Rational> rational_circle_point(Rng& rng) {
    const int p = uniform(rng, 0, 6), q = uniform(rng, 1, 6);
    const Rational den(p * p + q * q);
    return {Rational(p * p - q * q) / den, Rational(2 * p * q) / den};
}

}  // namespace

template <class S>
std::vector<Matrix<S>> random_contraction(int n, std::size_t d, Rng& rng) {
    std::vector<Matrix<S>> mats(n, Matrix<S>(d, d));
    if constexpr (backend_of<S>() == Backend::exact) {
        const bool complex = uniform(rng, 0, 1) == 1;
        Rational frob(0);
        for (auto& m : mats)
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) {
                    if (uniform(rng, 0, 2) == 0) continue;
                    const Exact z(Rational(uniform(rng, -3, 3)), complex ? Rational(uniform(rng, -2, 2)) : Rational(0));
                    m(r, c) = z;
                    frob += abs2(z);
                }
        if (frob == 0) return mats;
        // lambda_max(sum A A^*) <= tr(sum A A^*) = |A|_F^2.
        mpz_class root;
        mpz_class f = frob.get_num();
        mpz_sqrt(root.get_mpz_t(), f.get_mpz_t());
        if (root * root < f) root += 1;
        const Exact scale(Rational(1) / Rational(root));
        for (auto& m : mats) m *= scale;
    } else {
        std::normal_distribution<double> g(0.0, 1.0);
        for (auto& m : mats)
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) {
                    const double re = g(rng);
                    const double im = g(rng);
                    m(r, c) = Float(re, im);
                }
        Matrix<Float> sum(d, d);
        for (const auto& m : mats) sum += m * m.adjoint();
        const double top = max_eigenvalue(sum);
        if (top > 0) {
            const Float scale(1.0 / std::sqrt(top));
            for (auto& m : mats) m *= scale;
        }
    }
    return mats;
}

template <class S>
Matrix<S> random_unitary(int n, Rng& rng) {
    const auto dim = static_cast<std::size_t>(n);
    if constexpr (backend_of<S>() == Backend::exact) {
        Matrix<S> u = Matrix<S>::identity(dim);
        const int steps = 2 * n + uniform(rng, 0, n);
        for (int step = 0; step < steps; ++step) {
            const int kind = uniform(rng, 0, 2);
            const auto i = static_cast<std::size_t>(uniform(rng, 0, n - 1));
            auto j = static_cast<std::size_t>(uniform(rng, 0, n - 2));
            if (j >= i) ++j;
            Matrix<S> g = Matrix<S>::identity(dim);
            if (kind == 0) {
                auto [c, s] = rational_circle_point(rng);
                g(i, i) = S(c);
                g(i, j) = S(-s);
                g(j, i) = S(s);
                g(j, j) = S(c);
            } else if (kind == 1) {
                auto [c, s] = rational_circle_point(rng);
                g(i, i) = S(c, s);
            } else {
                g(i, i) = S(0);
                g(j, j) = S(0);
                g(i, j) = S(1);
                g(j, i) = S(1);
            }
            u = g * u;
        }
        return u;
    } else {
        std::normal_distribution<double> g(0.0, 1.0);
        Eigen::MatrixXcd a(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const double re = g(rng);
                const double im = g(rng);
                a(r, c) = {re, im};
            }
        Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
        const Eigen::MatrixXcd q = qr.householderQ();
        Matrix<S> u(dim, dim);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) u(r, c) = Float(q(r, c).real(), q(r, c).imag());
        return u;
    }
}

template <class S>
AtomicParams<S> random_atomic(int n, std::size_t max_d, Rng& rng) {
    AtomicParams<S> out;
    const auto d = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_d)));
    for (std::size_t s = 0; s < d; ++s) {
        out.ring += single(uniform(rng, 1, n));
        switch (uniform(rng, 0, 5)) {
            case 0: out.lambda.push_back(S(0)); break;
            case 1: out.lambda.push_back(scalar_from<S>(Rational(1, 2))); break;
            case 2: out.lambda.push_back(scalar_from<S>(Rational(3, 5), Rational(-1, 5))); break;
            case 3: out.lambda.push_back(scalar_from<S>(Rational(3, 5), Rational(4, 5))); break;
            case 4: out.lambda.push_back(scalar_from<S>(Rational(-1))); break;
            default: out.lambda.push_back(S(1)); break;
        }
    }
    return out;
}

#define NCURV_INSTANTIATE(S)                                                          \
    template std::vector<Matrix<S>> random_contraction<S>(int, std::size_t, Rng&);   \
    template Matrix<S> random_unitary<S>(int, Rng&);                                 \
    template AtomicParams<S> random_atomic<S>(int, std::size_t, Rng&);

NCURV_INSTANTIATE(Exact)
NCURV_INSTANTIATE(Float)

#undef NCURV_INSTANTIATE

}  // namespace ncurv
