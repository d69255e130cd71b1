#pragma once

// Exact rationals and the coefficient ring {c0 + c1 s} used by the blow-up engine.

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cusp {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q".  Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Nearest double (via long double division).
double to_double(const Rational& q);
long double to_long_double(const Rational& q);

/// q^n for n >= 0.
Rational ipow(const Rational& q, int n);

/// c0 + c1 s with s = t + 1.
class CoeffAffineT {
public:
    CoeffAffineT() = default;
    CoeffAffineT(Rational c0, Rational c1 = 0) : c0_(std::move(c0)), c1_(std::move(c1)) {}
    CoeffAffineT(int c0) : c0_(c0) {}

    static CoeffAffineT s() { return {Rational(0), Rational(1)}; }

    const Rational& c0() const { return c0_; }
    const Rational& c1() const { return c1_; }

    bool is_zero() const { return c0_ == 0 && c1_ == 0; }
    bool is_constant() const { return c1_ == 0; }

    CoeffAffineT operator-() const { return {-c0_, -c1_}; }
    CoeffAffineT& operator+=(const CoeffAffineT& o);
    CoeffAffineT& operator-=(const CoeffAffineT& o);
    CoeffAffineT& operator*=(const Rational& k);

    /// Product stays in the ring only if one factor is constant; otherwise throws
    /// std::domain_error (the s-degree guard).
    friend CoeffAffineT operator*(const CoeffAffineT& a, const CoeffAffineT& b);
    friend CoeffAffineT operator+(CoeffAffineT a, const CoeffAffineT& b) { return a += b; }
    friend CoeffAffineT operator-(CoeffAffineT a, const CoeffAffineT& b) { return a -= b; }
    friend CoeffAffineT operator*(CoeffAffineT a, const Rational& k) { return a *= k; }
    friend CoeffAffineT operator*(const Rational& k, CoeffAffineT a) { return a *= k; }
    friend bool operator==(const CoeffAffineT& a, const CoeffAffineT& b) { return a.c0_ == b.c0_ && a.c1_ == b.c1_; }
    friend bool operator!=(const CoeffAffineT& a, const CoeffAffineT& b) { return !(a == b); }

    Rational eval(const Rational& s) const { return c0_ + c1_ * s; }
    long double eval(long double s) const;

    /// Readable form such as "-1/8 + 1/8*s".
    std::string str() const;

private:
    Rational c0_{0};
    Rational c1_{0};
};

/// num(s)/den(s) with affine numerator and denominator, kept in a canonical form:
/// integer coprime coefficients, common proportional factors removed, and the
/// denominator's leading coefficient positive.
class RationalFunctionS {
public:
    RationalFunctionS() : num_(0), den_(1) {}
    RationalFunctionS(CoeffAffineT num, CoeffAffineT den);
    static RationalFunctionS constant(const Rational& q) { return {CoeffAffineT(q), CoeffAffineT(1)}; }

    const CoeffAffineT& num() const { return num_; }
    const CoeffAffineT& den() const { return den_; }

    bool is_constant() const;
    /// Value when constant; throws std::logic_error otherwise.
    Rational constant_value() const;

    Rational eval(const Rational& s) const;
    RationalFunctionS minus(const Rational& a) const;

    /// Equality as rational functions (cross multiplication).
    friend bool operator==(const RationalFunctionS& a, const RationalFunctionS& b);
    friend bool operator!=(const RationalFunctionS& a, const RationalFunctionS& b) { return !(a == b); }

    /// e.g. "(s-1)/(8*s)", "1/8", "5/32".
    std::string str() const;

private:
    CoeffAffineT num_;
    CoeffAffineT den_;
};

}  // namespace cusp
