#include "ncurv/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <cctype>
#include <iomanip>
#include <sstream>

namespace ncurv {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// Decimal literal with optional sign, fraction and exponent, converted exactly.
Rational parse_decimal(std::string_view s) {
    std::string_view orig = s;
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp = s.substr(e + 1);
        bool eneg = false;
        if (!exp.empty() && (exp.front() == '-' || exp.front() == '+')) {
            eneg = exp.front() == '-';
            exp.remove_prefix(1);
        }
        if (!all_digits(exp)) throw std::invalid_argument("malformed number: " + std::string(orig));
        auto [p, ec] = std::from_chars(exp.data(), exp.data() + exp.size(), exponent);
        if (ec != std::errc()) throw std::invalid_argument("malformed number: " + std::string(orig));
        if (eneg) exponent = -exponent;
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("malformed number: " + std::string(orig));
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed number: " + std::string(orig));
        digits = std::string(s);
    }
    if (digits.empty()) digits = "0";
    mpz_class num(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    Rational out = exponent < 0 ? Rational(num, scale) : Rational(num * scale);
    out.canonicalize();
    return neg ? Rational(-out) : out;
}

Rational parse_plain(std::string_view s) {
    s = trim(s);
    if (s.empty()) throw std::invalid_argument("empty number");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(trim(s.substr(0, slash)));
        Rational den = parse_decimal(trim(s.substr(slash + 1)));
        if (sgn(den) == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
        return num / den;
    }
    return parse_decimal(s);
}

bool is_sqrt_form(std::string_view s, std::string_view& inner) {
    if (s.size() > 6 && s.substr(0, 5) == "sqrt(" && s.back() == ')') {
        inner = s.substr(5, s.size() - 6);
        return true;
    }
    return false;
}

}  // namespace

bool exact_sqrt(const Rational& r, Rational& out) {
    if (sgn(r) < 0) return false;
    mpz_class n = r.get_num();
    mpz_class d = r.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Rational(rn, rd);
    out.canonicalize();
    return true;
}

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    std::string_view inner;
    bool neg = false;
    if (!s.empty() && s.front() == '-' && s.size() > 1 && s[1] == 's') {
        neg = true;
        s.remove_prefix(1);
    }
    if (is_sqrt_form(s, inner)) {
        Rational arg = parse_plain(inner);
        Rational root;
        if (!exact_sqrt(arg, root)) throw std::domain_error("sqrt(" + arg.get_str() + ") is not rational");
        return neg ? Rational(-root) : root;
    }
    return parse_plain(s);
}

double nearest_double(const Rational& r) {
    const double t = r.get_d();
    if (!std::isfinite(t)) return t;
    const double away = std::nextafter(t, sgn(r) < 0 ? -HUGE_VAL : HUGE_VAL);
    if (!std::isfinite(away)) return t;
    const Rational dt = abs(r - Rational(t)), da = abs(r - Rational(away));
    if (da < dt) return away;
    if (dt < da) return t;
    std::int64_t bits;
    std::memcpy(&bits, &t, sizeof bits);
    return (bits & 1) ? away : t;
}

double parse_real(std::string_view text) {
    std::string_view s = trim(text);
    std::string_view inner;
    bool neg = false;
    if (!s.empty() && s.front() == '-' && s.size() > 1 && s[1] == 's') {
        neg = true;
        s.remove_prefix(1);
    }
    if (is_sqrt_form(s, inner)) {
        double v = std::sqrt(nearest_double(parse_plain(inner)));
        return neg ? -v : v;
    }
    return nearest_double(parse_plain(s));
}

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(double r) {
    std::ostringstream os;
    os << std::setprecision(17) << r;
    return os.str();
}

std::string to_string(const Exact& z) {
    if (sgn(z.im) == 0) return z.re.get_str();
    return "(" + z.re.get_str() + "," + z.im.get_str() + ")";
}

std::string to_string(const Float& z) {
    if (z.im == 0.0) return to_string(z.re);
    return "(" + to_string(z.re) + "," + to_string(z.im) + ")";
}

}  // namespace ncurv
