#include "cusp/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cusp {

namespace {

const CoeffAffineT kS = CoeffAffineT::s();

ExactPoly term(int i, int j, const Rational& c) { return ExactPoly::monomial(i, j, CoeffAffineT(c)); }

}  // namespace

ExactPoly phase_P() {
    return term(1, 1, 1) + term(2, 0, -2) + term(0, 0, Rational(1, 2));
}

ExactPoly phase_Q() {
    return term(1, 1, 2) + term(2, 0, -2) + term(0, 0, Rational(1, 2));
}

ExactPoly ct_polynomial() {
    ExactPoly base = term(1, 1, 2) + term(2, 0, -1) + term(0, 0, 1);
    ExactPoly bracket = term(1, 3, -2) + term(2, 2, 2) + term(0, 2, -1);
    return base + bracket * kS;
}

ExactPoly vertical_isocline_polynomial() { return phase_P(); }

std::string to_string(CurveChoice c) { return c == CurveChoice::ct ? "ct" : "vertical_isocline"; }
std::string to_string(SMode m) { return m == SMode::generic ? "generic" : "s_one"; }

CurveChoice parse_curve_choice(const std::string& s) {
    if (s == "ct") return CurveChoice::ct;
    if (s == "vertical_isocline") return CurveChoice::vertical_isocline;
    throw std::invalid_argument("unknown curve '" + s + "'");
}

SMode parse_s_mode(const std::string& s) {
    if (s == "generic") return SMode::generic;
    if (s == "s_one" || s == "1") return SMode::s_one;
    throw std::invalid_argument("unknown s mode '" + s + "'");
}

ExactPoly curve_polynomial(CurveChoice c) {
    return c == CurveChoice::ct ? ct_polynomial() : vertical_isocline_polynomial();
}

std::string to_string(Step::Kind k) {
    switch (k) {
        case Step::Kind::chart: return "chart";
        case Step::Kind::fix_s: return "fix_s";
        case Step::Kind::blowup: return "blowup";
        case Step::Kind::translate: return "translate";
    }
    return "?";
}

int BlowupState::blowups() const {
    return static_cast<int>(std::count_if(log.begin(), log.end(), [](const Step& s) { return s.kind == Step::Kind::blowup; }));
}

int BlowupState::curve_power_total() const {
    int m = 0;
    for (const auto& s : log) m += s.curve_power;
    return m;
}

namespace {

int common_y_power(const ExactPoly& a, const ExactPoly& b) {
    if (a.is_zero() && b.is_zero()) throw BlowupError("vector field vanishes identically");
    if (a.is_zero()) return b.min_y_power();
    if (b.is_zero()) return a.min_y_power();
    return std::min(a.min_y_power(), b.min_y_power());
}

const ExactPoly& x_poly() {
    static const ExactPoly x = ExactPoly::monomial(1, 0, 1);
    return x;
}

}  // namespace

BlowupState chart_to_infinity(const ExactPoly& curve) {
    const ExactPoly P = phase_P();
    const ExactPoly Q = phase_Q();
    const int d = std::max(P.total_degree(), Q.total_degree());
    const ExactPoly Ph = homogenize_at_infinity(P, d);
    const ExactPoly Qh = homogenize_at_infinity(Q, d);
    // X' = (P^ + X Q^) Y^(1-d), Y' = Q^ Y^(2-d); the factor Y^(d-1) is dropped.
    ExactPoly N = Ph + x_poly() * Qh;
    ExactPoly M = Qh.shifted(0, 1);
    const int k = common_y_power(N, M);

    BlowupState st;
    st.P = N.divide_y_power(k);
    st.Q = M.divide_y_power(k);
    const ExactPoly Ch = homogenize_at_infinity(curve, curve.total_degree());
    const int m = Ch.min_y_power();
    st.curve = Ch.divide_y_power(m);
    st.log.push_back({Step::Kind::chart, Rational(d), k, m});
    return st;
}

BlowupState fix_s(const BlowupState& st, const Rational& s) {
    BlowupState out = st;
    out.P = st.P.subs_s(s);
    out.Q = st.Q.subs_s(s);
    out.curve = st.curve.subs_s(s);
    out.log.push_back({Step::Kind::fix_s, s, 0, 0});
    return out;
}

BlowupState blowup_once(const BlowupState& st) {
    const ExactPoly Pn = st.P.subs_x_times_y();
    const ExactPoly Qn = st.Q.subs_x_times_y();
    ExactPoly N = Pn - x_poly() * Qn;
    ExactPoly M = Qn.shifted(0, 1);
    const int k = common_y_power(N, M);

    BlowupState out;
    out.P = N.divide_y_power(k);
    out.Q = M.divide_y_power(k);
    const ExactPoly Cn = st.curve.subs_x_times_y();
    const int m = Cn.is_zero() ? 0 : Cn.min_y_power();
    out.curve = Cn.divide_y_power(m);
    out.log = st.log;
    out.log.push_back({Step::Kind::blowup, Rational(0), k, m});
    return out;
}

BlowupState translate(const BlowupState& st, const Rational& a) {
    BlowupState out;
    out.P = st.P.translate_x(a);
    out.Q = st.Q.translate_x(a);
    out.curve = st.curve.translate_x(a);
    out.log = st.log;
    out.log.push_back({Step::Kind::translate, a, 0, 0});
    return out;
}

BlowupState replay(const std::vector<Step>& log, const ExactPoly& curve) {
    if (log.empty() || log.front().kind != Step::Kind::chart) throw BlowupError("replay: log must start with the chart");
    BlowupState st = chart_to_infinity(curve);
    for (std::size_t i = 1; i < log.size(); ++i) {
        switch (log[i].kind) {
            case Step::Kind::chart: throw BlowupError("replay: chart step in the middle of a log");
            case Step::Kind::fix_s: st = fix_s(st, log[i].value); break;
            case Step::Kind::blowup: st = blowup_once(st); break;
            case Step::Kind::translate: st = translate(st, log[i].value); break;
        }
    }
    if (st.log != log) throw BlowupError("replay: rebuilt log differs from the recorded one");
    return st;
}

namespace {

UPoly constant_upoly(const std::vector<CoeffAffineT>& c, const char* what) {
    std::vector<Rational> v;
    for (const auto& x : c) {
        if (!x.is_constant()) throw BlowupError(std::string(what) + " depends on s");
        v.push_back(x.c0());
    }
    return UPoly(std::move(v));
}

}  // namespace

std::vector<RealRoot> divisor_critical_points(const BlowupState& st) {
    const UPoly p = constant_upoly(st.P.restrict_y0(), "field on the divisor");
    const UPoly q = constant_upoly(st.Q.restrict_y0(), "field on the divisor");
    if (p.is_zero() && q.is_zero()) throw BlowupError("field vanishes along the whole divisor");
    if (q.is_zero()) return real_roots(p);
    if (p.is_zero()) return real_roots(q);
    return real_roots(gcd(p, q));
}

bool CurveIntersection::contains(const Rational& a) const {
    const RationalFunctionS ca = RationalFunctionS::constant(a);
    // Irrational roots never equal a rational point.
    return std::any_of(exact.begin(), exact.end(), [&](const RationalFunctionS& e) { return e == ca; });
}

CurveIntersection curve_divisor_intersection(const BlowupState& st) {
    const std::vector<CoeffAffineT> c = st.curve.restrict_y0();
    CurveIntersection out;
    std::vector<Rational> A, B;
    for (const auto& x : c) {
        A.push_back(x.c0());
        B.push_back(x.c1());
    }
    const UPoly a(A), b(B);
    if (a.is_zero() && b.is_zero()) throw BlowupError("curve contains the divisor");

    auto add_constant_roots = [&out](const UPoly& p) {
        for (const auto& r : real_roots(p)) {
            if (r.exact) {
                out.exact.push_back(RationalFunctionS::constant(r.value));
            } else {
                out.algebraic.push_back(r);
            }
        }
    };

    // Coefficient vector proportional to a rational one: the roots do not depend on s.
    bool proportional = true;
    std::size_t j = 0;
    while (j < c.size() && c[j].is_zero()) ++j;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (A[k] * B[j] != A[j] * B[k]) proportional = false;
    }
    if (proportional) {
        add_constant_roots(A[j] != 0 ? a : b);
        return out;
    }
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg == 1) {
        out.exact.emplace_back(-c[0], c[1]);
        return out;
    }
    // Roots common to both parts are s-free; anything else is algebraic in s.
    const UPoly g = gcd(a, b);
    if (g.degree() >= 1) add_constant_roots(g);
    UPoly qa, ra, qb, rb;
    UPoly::divmod(a, g, qa, ra);
    UPoly::divmod(b, g, qb, rb);
    if (qa.degree() == 0 && qb.degree() <= 0) return out;
    if (std::max(qa.degree(), qb.degree()) == 1) {
        const Rational a0 = qa.coeffs().empty() ? Rational(0) : qa.coeffs()[0];
        const Rational a1 = qa.degree() >= 1 ? qa.coeffs()[1] : Rational(0);
        const Rational b0 = qb.coeffs().empty() ? Rational(0) : qb.coeffs()[0];
        const Rational b1 = qb.degree() >= 1 ? qb.coeffs()[1] : Rational(0);
        out.exact.emplace_back(CoeffAffineT(-a0, -b0), CoeffAffineT(a1, b1));
        return out;
    }
    throw BlowupError("curve meets the divisor at points algebraic in s");
}

ChartPoint push_forward(const std::vector<Step>& log, const Rational& H, const Rational& F) {
    if (F == 0) throw BlowupError("push_forward: F = 0 is not in the chart");
    ChartPoint p{-H / F, Rational(-1) / F};
    for (const auto& s : log) {
        switch (s.kind) {
            case Step::Kind::chart:
            case Step::Kind::fix_s: break;
            case Step::Kind::blowup:
                if (p.y == 0) throw BlowupError("push_forward: point on the divisor");
                p.x /= p.y;
                break;
            case Step::Kind::translate: p.x -= s.value; break;
        }
    }
    return p;
}

ChartPoint pull_back_to_chart(const std::vector<Step>& log, const Rational& x, const Rational& y) {
    ChartPoint p{x, y};
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
        switch (it->kind) {
            case Step::Kind::chart:
            case Step::Kind::fix_s: break;
            case Step::Kind::blowup: p.x *= p.y; break;
            case Step::Kind::translate: p.x += it->value; break;
        }
    }
    return p;
}

namespace {

Rational exact_from_double(double v) { return Rational(v); }

}  // namespace

BlowupReport run_sequence(const SequenceConfig& cfg) {
    BlowupReport rep;
    rep.mode = cfg.mode;
    rep.curve = cfg.curve;

    const ShadowSample* probe = nullptr;
    for (const auto& s : cfg.shadow) {
        if (!probe || s.r > probe->r) probe = &s;
    }

    BlowupState st = chart_to_infinity(curve_polynomial(cfg.curve));
    if (cfg.mode == SMode::s_one) st = fix_s(st, 1);

    for (;;) {
        StageRecord rec;
        rec.blowup = st.blowups();
        for (auto it = st.log.rbegin(); it != st.log.rend(); ++it) {
            if (it->kind == Step::Kind::chart || it->kind == Step::Kind::blowup) {
                rec.cancelled = it->cancelled;
                rec.curve_power = it->curve_power;
                break;
            }
        }
        rec.critical_points = divisor_critical_points(st);
        if (rec.critical_points.empty()) throw BlowupError("no singular point on the divisor to follow");

        std::size_t pick = 0;
        if (probe) {
            const ChartPoint img = push_forward(st.log, exact_from_double(probe->H), exact_from_double(probe->F));
            const double xi = to_double(img.x);
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rec.critical_points.size(); ++i) {
                const double dist = std::abs(xi - rec.critical_points[i].approx);
                rec.shadow_distance.push_back(dist);
                if (dist < best) {
                    best = dist;
                    pick = i;
                }
            }
        } else if (rec.critical_points.size() > 1) {
            throw BlowupError("several singular points on the divisor and no orbit samples to choose between them");
        }
        const RealRoot& chosen = rec.critical_points[pick];
        if (!chosen.exact) throw BlowupError("tracked point is irrational, near " + std::to_string(chosen.approx));
        rec.tracked = chosen.value;

        rec.curve = curve_divisor_intersection(st);
        rec.separated = !rec.curve.contains(rec.tracked);

        if (rec.separated) {
            rep.blowups = rec.blowup;
            rep.contact_order = std::max(0, rec.blowup - 1);
            rep.final_point = rec.tracked;
            rep.final_state = rec.tracked != 0 ? translate(st, rec.tracked) : st;
            if (rec.curve.exact.size() == 1 && rec.curve.algebraic.empty()) {
                rep.abscissa = rec.curve.exact.front().minus(rec.tracked);
            } else if (!rec.curve.exact.empty()) {
                // Several branches: report the one closest to the tracked point at s = 1.
                auto closest = std::min_element(rec.curve.exact.begin(), rec.curve.exact.end(),
                                                [&](const RationalFunctionS& a, const RationalFunctionS& b) {
                                                    return abs(a.eval(1) - rec.tracked) < abs(b.eval(1) - rec.tracked);
                                                });
                rep.abscissa = closest->minus(rec.tracked);
            }
            rep.stages.push_back(std::move(rec));
            break;
        }
        if (rec.blowup >= cfg.max_blowups) throw BlowupError("no separation within the blow-up budget");
        if (rec.tracked != 0) {
            st = translate(st, rec.tracked);
            rec.translation = rec.tracked;
            rep.translations.emplace_back(rec.blowup, rec.tracked);
        }
        rep.stages.push_back(std::move(rec));
        st = blowup_once(st);
    }

    if (rep.translations.size() >= 2) {
        const int gap = rep.translations[1].first - rep.translations[0].first;
        bool regular = rep.translations[0].first == gap;
        for (std::size_t i = 1; i < rep.translations.size(); ++i) {
            if (rep.translations[i].first - rep.translations[i - 1].first != gap) regular = false;
        }
        if (regular) rep.rhythm = gap;
    }
    return rep;
}

}  // namespace cusp
