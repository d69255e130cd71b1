#pragma once

// Bivariate polynomials in (x, y) with coefficients in Q + Q s.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cusp/rational.hpp"

namespace cusp {

class ExactPoly {
public:
    using Key = std::pair<int, int>;   // (power of x, power of y)
    using Terms = std::map<Key, CoeffAffineT>;

    ExactPoly() = default;
    static ExactPoly monomial(int i, int j, CoeffAffineT c);
    static ExactPoly constant(CoeffAffineT c) { return monomial(0, 0, std::move(c)); }

    /// Adds c x^i y^j; zero coefficients are dropped.
    void add_term(int i, int j, const CoeffAffineT& c);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    CoeffAffineT coefficient(int i, int j) const;

    int total_degree() const;
    int degree_x() const;
    int degree_y() const;
    /// Smallest power of y present; -1 for the zero polynomial.
    int min_y_power() const;
    bool is_s_free() const;

    ExactPoly operator-() const;
    ExactPoly& operator+=(const ExactPoly& o);
    ExactPoly& operator-=(const ExactPoly& o);
    friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
    friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
    /// Products go through CoeffAffineT and throw std::domain_error if the s-degree would exceed 1.
    friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
    friend ExactPoly operator*(const ExactPoly& a, const CoeffAffineT& k);
    friend bool operator==(const ExactPoly& a, const ExactPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ExactPoly& a, const ExactPoly& b) { return !(a == b); }

    /// Multiplies by x^di y^dj (dj may be negative if every term allows it).
    ExactPoly shifted(int di, int dj) const;

    /// Divides by y^k; throws std::domain_error if some term has a smaller y power.
    ExactPoly divide_y_power(int k) const;

    /// x -> x y.
    ExactPoly subs_x_times_y() const;

    /// x -> x + a.
    ExactPoly translate_x(const Rational& a) const;

    /// Fixes s to a value, leaving constant coefficients.
    ExactPoly subs_s(const Rational& s) const;

    /// Coefficients of p(x, 0), indexed by the power of x.
    std::vector<CoeffAffineT> restrict_y0() const;

    CoeffAffineT eval(const Rational& x, const Rational& y) const;
    Rational eval(const Rational& x, const Rational& y, const Rational& s) const;
    long double eval(long double x, long double y, long double s) const;

    /// Readable form, terms in key order, e.g. "-x + (1/2)*y^2 + s*(2*x)"-like.
    std::string str() const;

private:
    Terms terms_;
};

/// x^i y^j -> (-1)^j x^i y^(d-i-j): the chart X = -x/y, Y = -1/y with the factor Y^d.
/// Throws std::invalid_argument if some term has total degree above d.
ExactPoly homogenize_at_infinity(const ExactPoly& p, int d);

}  // namespace cusp
