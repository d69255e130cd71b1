#pragma once

// Univariate polynomials over Q with exact real root isolation.

#include <vector>

#include "cusp/rational.hpp"

namespace cusp {

class UPoly {
public:
    UPoly() = default;
    /// c[k] is the coefficient of x^k.
    explicit UPoly(std::vector<Rational> c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }   // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& lead() const { return c_.back(); }

    Rational eval(const Rational& x) const;
    double eval(double x) const;
    UPoly derivative() const;
    UPoly monic() const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division; throws std::domain_error on a zero divisor.
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);

private:
    void trim();
    std::vector<Rational> c_;
};

/// Monic gcd (zero if both are zero).
UPoly gcd(UPoly a, UPoly b);

/// p / gcd(p, p').
UPoly squarefree_part(const UPoly& p);

/// All rational roots, ascending and without repetition.
std::vector<Rational> rational_roots(const UPoly& p);

struct RealRoot {
    bool exact = false;
    Rational value;    // when exact
    Rational lo, hi;   // isolating interval (lo == hi == value when exact)
    double approx = 0.0;
};

/// Distinct real roots in ascending order.  Rational roots are reported exactly;
/// the rest get isolating intervals of width at most `width` (Sturm sequences).
std::vector<RealRoot> real_roots(const UPoly& p, const Rational& width = Rational(1, 1 << 30));

}  // namespace cusp
