#include "cusp/exact_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace cusp {

ExactPoly ExactPoly::monomial(int i, int j, CoeffAffineT c) {
    ExactPoly p;
    p.add_term(i, j, c);
    return p;
}

void ExactPoly::add_term(int i, int j, const CoeffAffineT& c) {
    if (i < 0 || j < 0) throw std::domain_error("ExactPoly: negative exponent");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({i, j}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CoeffAffineT ExactPoly::coefficient(int i, int j) const {
    const auto it = terms_.find({i, j});
    return it == terms_.end() ? CoeffAffineT(0) : it->second;
}

int ExactPoly::total_degree() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
}

int ExactPoly::degree_x() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
}

int ExactPoly::degree_y() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.second);
    return d;
}

int ExactPoly::min_y_power() const {
    if (terms_.empty()) return -1;
    int m = terms_.begin()->first.second;
    for (const auto& [k, c] : terms_) m = std::min(m, k.second);
    return m;
}

bool ExactPoly::is_s_free() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_constant(); });
}

ExactPoly ExactPoly::operator-() const {
    ExactPoly p = *this;
    for (auto& [k, c] : p.terms_) c = -c;
    return p;
}

ExactPoly& ExactPoly::operator+=(const ExactPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

ExactPoly& ExactPoly::operator-=(const ExactPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
    return *this;
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
    ExactPoly p;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) p.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    }
    return p;
}

ExactPoly operator*(const ExactPoly& a, const CoeffAffineT& k) {
    ExactPoly p;
    for (const auto& [key, c] : a.terms_) p.add_term(key.first, key.second, c * k);
    return p;
}

ExactPoly ExactPoly::shifted(int di, int dj) const {
    ExactPoly p;
    for (const auto& [k, c] : terms_) p.add_term(k.first + di, k.second + dj, c);
    return p;
}

ExactPoly ExactPoly::divide_y_power(int k) const {
    if (k < 0) throw std::domain_error("divide_y_power: negative power");
    if (!terms_.empty() && min_y_power() < k) throw std::domain_error("divide_y_power: not divisible");
    return shifted(0, -k);
}

ExactPoly ExactPoly::subs_x_times_y() const {
    ExactPoly p;
    for (const auto& [k, c] : terms_) p.add_term(k.first, k.first + k.second, c);
    return p;
}

ExactPoly ExactPoly::translate_x(const Rational& a) const {
    ExactPoly p;
    for (const auto& [k, c] : terms_) {
        // (x + a)^i = sum_m binom(i, m) a^(i-m) x^m
        Rational binom = 1;
        Rational apow = 1;
        std::vector<Rational> pw(k.first + 1);
        for (int m = 0; m <= k.first; ++m) {
            pw[m] = apow;
            apow *= a;
        }
        for (int m = k.first; m >= 0; --m) {
            p.add_term(m, k.second, c * (binom * pw[k.first - m]));
            binom = binom * m / (k.first - m + 1);
        }
    }
    return p;
}

ExactPoly ExactPoly::subs_s(const Rational& s) const {
    ExactPoly p;
    for (const auto& [k, c] : terms_) p.add_term(k.first, k.second, CoeffAffineT(c.eval(s)));
    return p;
}

std::vector<CoeffAffineT> ExactPoly::restrict_y0() const {
    std::vector<CoeffAffineT> out;
    for (const auto& [k, c] : terms_) {
        if (k.second != 0) continue;
        if (out.size() <= static_cast<std::size_t>(k.first)) out.resize(k.first + 1, CoeffAffineT(0));
        out[k.first] += c;
    }
    return out;
}

CoeffAffineT ExactPoly::eval(const Rational& x, const Rational& y) const {
    CoeffAffineT sum(0);
    for (const auto& [k, c] : terms_) sum += c * (ipow(x, k.first) * ipow(y, k.second));
    return sum;
}

Rational ExactPoly::eval(const Rational& x, const Rational& y, const Rational& s) const {
    return eval(x, y).eval(s);
}

long double ExactPoly::eval(long double x, long double y, long double s) const {
    long double sum = 0.0L;
    for (const auto& [k, c] : terms_) {
        long double m = c.eval(s);
        for (int i = 0; i < k.first; ++i) m *= x;
        for (int j = 0; j < k.second; ++j) m *= y;
        sum += m;
    }
    return sum;
}

std::string ExactPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        const bool neg = c.is_constant() && c.c0() < 0;
        const CoeffAffineT cc = neg ? -c : c;
        const std::string coef = cc.str();
        const bool compound = !cc.is_constant() && cc.c0() != 0;
        std::string mono;
        if (k.first > 0) mono += k.first == 1 ? "x" : "x^" + std::to_string(k.first);
        if (k.second > 0) {
            if (!mono.empty()) mono += "*";
            mono += k.second == 1 ? "y" : "y^" + std::to_string(k.second);
        }
        std::string term;
        if (mono.empty()) {
            term = compound ? "(" + coef + ")" : coef;
        } else if (coef == "1") {
            term = mono;
        } else {
            term = (compound || coef.find('/') != std::string::npos ? "(" + coef + ")" : coef) + "*" + mono;
        }
        if (neg) term = "-" + term;
        if (out.empty()) {
            out = term;
        } else if (term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    return out;
}

ExactPoly homogenize_at_infinity(const ExactPoly& p, int d) {
    ExactPoly out;
    for (const auto& [k, c] : p.terms()) {
        const int e = d - k.first - k.second;
        if (e < 0) throw std::invalid_argument("homogenize_at_infinity: degree exceeds d");
        out.add_term(k.first, e, k.second % 2 == 0 ? c : -c);
    }
    return out;
}

}  // namespace cusp
