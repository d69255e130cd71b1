#include "cusp/univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace cusp {

UPoly::UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::eval(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
}

double UPoly::eval(double x) const {
    double v = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + to_double(*it);
    return v;
}

UPoly UPoly::derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<int>(k));
    return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
    if (c_.empty()) return *this;
    std::vector<Rational> c = c_;
    const Rational l = c.back();
    for (auto& v : c) v /= l;
    return UPoly(std::move(c));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(c));
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.is_zero()) throw std::domain_error("UPoly::divmod: division by zero");
    std::vector<Rational> rem = a.c_;
    std::vector<Rational> quo(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0, Rational(0));
    for (std::size_t k = quo.size(); k-- > 0;) {
        const Rational f = rem[k + b.c_.size() - 1] / b.c_.back();
        quo[k] = f;
        for (std::size_t j = 0; j < b.c_.size(); ++j) rem[k + j] -= f * b.c_[j];
    }
    q = UPoly(std::move(quo));
    r = UPoly(std::move(rem));
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly q, r;
        UPoly::divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p;
    const UPoly g = gcd(p, p.derivative());
    UPoly q, r;
    UPoly::divmod(p, g, q, r);
    return q.monic();
}

namespace {

// Integer coefficients with the same roots.
std::vector<Integer> integer_coeffs(const UPoly& p) {
    Integer l = 1;
    for (const auto& c : p.coeffs()) {
        const Integer d = denominator(c);
        l = l / boost::multiprecision::gcd(l, d) * d;
    }
    std::vector<Integer> out;
    for (const auto& c : p.coeffs()) out.push_back(numerator(Rational(c * l)));
    return out;
}

std::vector<Integer> divisors(Integer n) {
    if (n < 0) n = -n;
    std::vector<Integer> small, large;
    if (n > Integer(1) << 62) throw std::domain_error("rational_roots: coefficient too large to factor");
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

}  // namespace

std::vector<Rational> rational_roots(const UPoly& p) {
    std::vector<Rational> roots;
    if (p.degree() <= 0) return roots;
    UPoly q = squarefree_part(p);
    // Strip the root at zero first so the constant term is nonzero.
    if (q.coeffs().front() == 0) {
        roots.push_back(0);
        std::vector<Rational> c(q.coeffs().begin() + 1, q.coeffs().end());
        q = UPoly(std::move(c));
    }
    if (q.degree() >= 1) {
        const std::vector<Integer> ic = integer_coeffs(q);
        const auto num = divisors(ic.front());
        const auto den = divisors(ic.back());
        for (const auto& a : num) {
            for (const auto& b : den) {
                for (int sign : {1, -1}) {
                    const Rational cand = Rational(a, b) * sign;
                    if (q.eval(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end()) {
                        roots.push_back(cand);
                    }
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace {

std::vector<UPoly> sturm_chain(const UPoly& p) {
    std::vector<UPoly> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        UPoly q, r;
        UPoly::divmod(chain[chain.size() - 2], chain.back(), q, r);
        if (r.is_zero()) break;
        chain.push_back(UPoly() - r);
    }
    return chain;
}

int sign_changes(const std::vector<UPoly>& chain, const Rational& x) {
    int changes = 0;
    int prev = 0;
    for (const auto& q : chain) {
        const Rational v = q.eval(x);
        const int s = v > 0 ? 1 : v < 0 ? -1 : 0;
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

// Number of roots in (a, b].
int count_roots(const std::vector<UPoly>& chain, const Rational& a, const Rational& b) {
    return sign_changes(chain, a) - sign_changes(chain, b);
}

void isolate(const std::vector<UPoly>& chain, const UPoly& p, Rational a, Rational b, const Rational& width,
             std::vector<RealRoot>& out) {
    const int n = count_roots(chain, a, b);
    if (n == 0) return;
    if (n == 1) {
        // Bisect to width; p has no rational roots here, so p(mid) != 0.
        while (b - a > width) {
            const Rational m = (a + b) / 2;
            if (count_roots(chain, a, m) == 1) {
                b = m;
            } else {
                a = m;
            }
        }
        RealRoot r;
        r.lo = a;
        r.hi = b;
        r.approx = to_double((a + b) / 2);
        out.push_back(r);
        return;
    }
    const Rational m = (a + b) / 2;
    isolate(chain, p, a, m, width, out);
    isolate(chain, p, m, b, width, out);
}

}  // namespace

std::vector<RealRoot> real_roots(const UPoly& p, const Rational& width) {
    std::vector<RealRoot> out;
    if (p.degree() <= 0) return out;
    const std::vector<Rational> rat = rational_roots(p);
    UPoly rest = squarefree_part(p);
    for (const auto& r : rat) {
        UPoly q, rem;
        UPoly::divmod(rest, UPoly({-r, Rational(1)}), q, rem);
        rest = q;
        RealRoot e;
        e.exact = true;
        e.value = e.lo = e.hi = r;
        e.approx = to_double(r);
        out.push_back(e);
    }
    if (rest.degree() >= 1) {
        // Cauchy bound.
        Rational bound = 0;
        for (std::size_t k = 0; k + 1 < rest.coeffs().size(); ++k) {
            const Rational v = abs(rest.coeffs()[k] / rest.lead());
            if (v > bound) bound = v;
        }
        bound += 1;
        isolate(sturm_chain(rest), rest, -bound, bound, width, out);
    }
    std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace cusp
