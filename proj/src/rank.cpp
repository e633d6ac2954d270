#include "ncurv/rank.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

namespace ncurv {

namespace {

struct GaussInt {
    mpz_class re;
    mpz_class im;
    bool zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// a / b where b divides a exactly in Z[i].
GaussInt divexact(const GaussInt& a, const GaussInt& b) {
    mpz_class den = b.re * b.re + b.im * b.im;
    mpz_class re = a.re * b.re + a.im * b.im;
    mpz_class im = a.im * b.re - a.re * b.im;
    GaussInt out;
    mpz_divexact(out.re.get_mpz_t(), re.get_mpz_t(), den.get_mpz_t());
    mpz_divexact(out.im.get_mpz_t(), im.get_mpz_t(), den.get_mpz_t());
    return out;
}

mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

template <class T, class Mul, class Div, class Zero>
std::size_t bareiss(std::vector<std::vector<T>>& a, std::size_t cols, T one, Mul mul_fn, Div div_fn, Zero zero_fn) {
    const std::size_t rows = a.size();
    std::size_t rank = 0;
    T prev = one;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (!zero_fn(a[r][col])) {
                pivot = r;
                break;
            }
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        const T& p = a[rank][col];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                T lhs = mul_fn(p, a[r][c]);
                T rhs = mul_fn(a[r][col], a[rank][c]);
                a[r][c] = div_fn(sub(lhs, rhs), prev);
            }
            a[r][col] = T{};
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t rank_exact(const Matrix<Exact>& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    bool real = true;
    for (const auto& v : m.data()) real = real && sgn(v.im) == 0;

    // Row-wise common denominator.
    std::vector<mpz_class> scale(rows, 1);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const Exact& v = m(r, c);
            mpz_lcm(scale[r].get_mpz_t(), scale[r].get_mpz_t(), v.re.get_den_mpz_t());
            if (!real) mpz_lcm(scale[r].get_mpz_t(), scale[r].get_mpz_t(), v.im.get_den_mpz_t());
        }
    auto to_int = [&](const Rational& q, std::size_t r) {
        mpz_class out = q.get_num() * (scale[r] / q.get_den());
        return out;
    };

    if (real) {
        std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) a[r][c] = to_int(m(r, c).re, r);
        return bareiss<mpz_class>(
            a, cols, mpz_class(1), [](const mpz_class& x, const mpz_class& y) { return mpz_class(x * y); },
            [](const mpz_class& x, const mpz_class& y) {
                mpz_class out;
                mpz_divexact(out.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                return out;
            },
            [](const mpz_class& x) { return sgn(x) == 0; });
    }
    std::vector<std::vector<GaussInt>> a(rows, std::vector<GaussInt>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = {to_int(m(r, c).re, r), to_int(m(r, c).im, r)};
    return bareiss<GaussInt>(a, cols, GaussInt{1, 0}, mul, divexact, [](const GaussInt& x) { return x.zero(); });
}

namespace {

bool has_imaginary(const Matrix<Float>& m) {
    for (const auto& v : m.data())
        if (v.im != 0.0) return true;
    return false;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Matrix<Float>& m) {
    if (!m.square()) throw std::invalid_argument("eigenvalues of a non-square matrix");
    const auto d = static_cast<Eigen::Index>(m.rows());
    std::vector<double> out;
    if (d == 0) return out;
    if (!has_imaginary(m)) {
        Eigen::MatrixXd a(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index c = 0; c < d; ++c) a(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)).re;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
        out.assign(es.eigenvalues().data(), es.eigenvalues().data() + d);
        return out;
    }
    Eigen::MatrixXcd a(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) {
            const Float& v = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
            a(r, c) = {v.re, v.im};
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    out.assign(es.eigenvalues().data(), es.eigenvalues().data() + d);
    return out;
}

double max_eigenvalue(const Matrix<Float>& m) {
    auto ev = hermitian_eigenvalues(m);
    return ev.empty() ? 0.0 : ev.back();
}

std::size_t rank_hermitian_float(const Matrix<Float>& m, double tol) {
    auto ev = hermitian_eigenvalues(m);
    if (ev.empty()) return 0;
    const double threshold = tol * std::max(1.0, ev.back());
    return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [&](double x) { return x > threshold; }));
}

bool is_psd_exact(const Matrix<Exact>& m) {
    if (!m.square()) throw std::invalid_argument("PSD test of a non-square matrix");
    if (!m.is_hermitian()) return false;
    const std::size_t d = m.rows();
    std::vector<std::vector<Exact>> a(d, std::vector<Exact>(d));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) a[r][c] = m(r, c);
    std::vector<bool> done(d, false);
    for (std::size_t step = 0; step < d; ++step) {
        std::size_t pivot = d;
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i]) continue;
            const int s = sgn(a[i][i].re);
            if (s < 0) return false;
            if (s == 0) {
                for (std::size_t j = 0; j < d; ++j)
                    if (!done[j] && !is_zero(a[i][j])) return false;
            } else if (pivot == d) {
                pivot = i;
            }
        }
        if (pivot == d) return true;
        done[pivot] = true;
        const Exact p = a[pivot][pivot];
        for (std::size_t i = 0; i < d; ++i) {
            if (done[i] || is_zero(a[i][pivot])) continue;
            const Exact f = a[i][pivot] / p;
            for (std::size_t j = 0; j < d; ++j) {
                if (done[j] || is_zero(a[pivot][j])) continue;
                a[i][j] -= f * a[pivot][j];
            }
        }
    }
    return true;
}

}  // namespace ncurv
