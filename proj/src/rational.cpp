#include "cusp/rational.hpp"

#include <stdexcept>

namespace cusp {

std::string to_string(const Rational& q) {
    const Integer n = numerator(q);
    const Integer d = denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

namespace {

Integer parse_integer(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("parse_rational: empty integer");
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') ++i;
    if (i == s.size()) throw std::invalid_argument("parse_rational: bad integer");
    for (std::size_t k = i; k < s.size(); ++k) {
        if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("parse_rational: bad digit in '" + std::string(s) + "'");
    }
    Integer v(std::string(s.substr(i)));
    return s[0] == '-' ? Integer(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    const Integer n = parse_integer(text.substr(0, slash));
    const Integer d = parse_integer(text.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(n, d);
}

long double to_long_double(const Rational& q) {
    return static_cast<long double>(q);
}

double to_double(const Rational& q) {
    return static_cast<double>(q);
}

Rational ipow(const Rational& q, int n) {
    Rational r = 1;
    for (int i = 0; i < n; ++i) r *= q;
    return r;
}

CoeffAffineT& CoeffAffineT::operator+=(const CoeffAffineT& o) {
    c0_ += o.c0_;
    c1_ += o.c1_;
    return *this;
}

CoeffAffineT& CoeffAffineT::operator-=(const CoeffAffineT& o) {
    c0_ -= o.c0_;
    c1_ -= o.c1_;
    return *this;
}

CoeffAffineT& CoeffAffineT::operator*=(const Rational& k) {
    c0_ *= k;
    c1_ *= k;
    return *this;
}

CoeffAffineT operator*(const CoeffAffineT& a, const CoeffAffineT& b) {
    if (a.c1_ != 0 && b.c1_ != 0) throw std::domain_error("coefficient would leave the ring affine in s");
    return {a.c0_ * b.c0_, a.c0_ * b.c1_ + a.c1_ * b.c0_};
}

long double CoeffAffineT::eval(long double s) const {
    return to_long_double(c0_) + to_long_double(c1_) * s;
}

std::string CoeffAffineT::str() const {
    if (c1_ == 0) return to_string(c0_);
    std::string lin = c1_ == 1 ? "s" : c1_ == -1 ? "-s" : to_string(c1_) + "*s";
    if (c0_ == 0) return lin;
    if (lin[0] == '-') return to_string(c0_) + " - " + lin.substr(1);
    return to_string(c0_) + " + " + lin;
}

namespace {

Integer lcm_int(const Integer& a, const Integer& b) {
    return a / boost::multiprecision::gcd(a, b) * b;
}

// Scales (a, b, c, d) to coprime integers.
void to_coprime_integers(Rational* v, std::size_t n) {
    Integer l = 1;
    for (std::size_t i = 0; i < n; ++i) l = lcm_int(l, denominator(v[i]));
    Integer g = 0;
    for (std::size_t i = 0; i < n; ++i) {
        v[i] *= l;
        g = boost::multiprecision::gcd(g, numerator(v[i]));
    }
    if (g > 1) {
        for (std::size_t i = 0; i < n; ++i) v[i] /= g;
    }
}

}  // namespace

RationalFunctionS::RationalFunctionS(CoeffAffineT num, CoeffAffineT den) {
    if (den.is_zero()) throw std::domain_error("RationalFunctionS: zero denominator");
    if (num.is_zero()) {
        num_ = CoeffAffineT(0);
        den_ = CoeffAffineT(1);
        return;
    }
    // Proportional numerator and denominator collapse to a constant.
    if (num.c0() * den.c1() == num.c1() * den.c0()) {
        const Rational q = den.c1() != 0 ? num.c1() / den.c1() : num.c0() / den.c0();
        num_ = CoeffAffineT(q);
        den_ = CoeffAffineT(1);
        return;
    }
    Rational v[4] = {num.c0(), num.c1(), den.c0(), den.c1()};
    to_coprime_integers(v, 4);
    const Rational lead = v[3] != 0 ? v[3] : v[2];
    if (lead < 0) {
        for (auto& x : v) x = -x;
    }
    num_ = CoeffAffineT(v[0], v[1]);
    den_ = CoeffAffineT(v[2], v[3]);
}

bool RationalFunctionS::is_constant() const {
    return num_.is_constant() && den_.is_constant();
}

Rational RationalFunctionS::constant_value() const {
    if (!is_constant()) throw std::logic_error("RationalFunctionS: depends on s");
    return num_.c0() / den_.c0();
}

Rational RationalFunctionS::eval(const Rational& s) const {
    const Rational d = den_.eval(s);
    if (d == 0) throw std::domain_error("RationalFunctionS: pole at s = " + to_string(s));
    return num_.eval(s) / d;
}

RationalFunctionS RationalFunctionS::minus(const Rational& a) const {
    return {num_ - den_ * a, den_};
}

bool operator==(const RationalFunctionS& a, const RationalFunctionS& b) {
    // a.n * b.d - b.n * a.d as a quadratic in s.
    const auto& an = a.num_;
    const auto& ad = a.den_;
    const auto& bn = b.num_;
    const auto& bd = b.den_;
    return an.c0() * bd.c0() == bn.c0() * ad.c0() &&
           an.c0() * bd.c1() + an.c1() * bd.c0() == bn.c0() * ad.c1() + bn.c1() * ad.c0() &&
           an.c1() * bd.c1() == bn.c1() * ad.c1();
}

namespace {

std::string affine_factor(const CoeffAffineT& c, bool wrap) {
    if (c.c1() == 0) return to_string(c.c0());
    std::string lin = c.c1() == 1 ? "s" : c.c1() == -1 ? "-s" : to_string(c.c1()) + "*s";
    if (c.c0() == 0) return lin;
    const std::string out = lin + (c.c0() < 0 ? "-" + to_string(-c.c0()) : "+" + to_string(c.c0()));
    return wrap ? "(" + out + ")" : out;
}

}  // namespace

std::string RationalFunctionS::str() const {
    if (is_constant()) return to_string(constant_value());
    const std::string n = affine_factor(num_, true);
    if (den_.is_constant() && den_.c0() == 1) return n;
    const bool wrap_den = !den_.is_constant() && den_.c0() != 0;
    std::string d = affine_factor(den_, wrap_den);
    if (!den_.is_constant() && den_.c0() == 0 && den_.c1() != 1 && den_.c1() != -1) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace cusp
