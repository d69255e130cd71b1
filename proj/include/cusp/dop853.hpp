#pragma once

// Dormand-Prince 8(5,3) embedded Runge-Kutta pair with a 7th order continuous
// extension built from the 13 stages of each step (no extra evaluations).
//
// The stepper is header-only and fixed-dimension: the phase system uses N = 3
// (H, F, W) and the flow-line integration in the evolution module uses N = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace cusp {

template <std::size_t N>
using StateN = std::array<double, N>;

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double r)
        : std::runtime_error(what + " at r = " + std::to_string(r)), r_(r) {}
    double r() const { return r_; }

private:
    double r_;
};

struct StepControls {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    std::vector<double> abs_scale;  // per-component multiplier of abs_tol; empty means 1
};

namespace detail {

// Exponents (a, b) of the dense-output basis p^a (1-p)^b, in nesting order.
inline constexpr std::array<std::array<int, 2>, 8> kDenseBasis{
    {{0, 0}, {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}, {4, 3}}};

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

// \int_0^theta p^a (1-p)^b dp by binomial expansion; a + b <= 7 keeps this exact enough.
inline double basis_integral(int a, int b, double theta) {
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 0; j <= b; ++j) {
        sum += sign * binomial(b, j) * std::pow(theta, a + j + 1) / (a + j + 1);
        sign = -sign;
    }
    return sum;
}

}  // namespace detail

/// One accepted step with its interpolation coefficients.  `r_start` is where the
/// step began, so for backward integration r_end < r_start.
template <std::size_t N>
struct DenseStep {
    double r_start = 0.0;
    double r_end = 0.0;
    std::array<StateN<N>, 8> c{};

    double lo() const { return std::min(r_start, r_end); }
    double hi() const { return std::max(r_start, r_end); }

    double fraction(double r) const { return (r - r_start) / (r_end - r_start); }

    double eval(std::size_t k, double r) const {
        const double p = fraction(r);
        const double q = 1.0 - p;
        return c[0][k] +
               p * (c[1][k] +
                    q * (c[2][k] +
                         p * (c[3][k] + q * (c[4][k] + p * (c[5][k] + q * (c[6][k] + p * c[7][k]))))));
    }

    StateN<N> eval(double r) const {
        StateN<N> out{};
        for (std::size_t k = 0; k < N; ++k) out[k] = eval(k, r);
        return out;
    }

    /// Signed \int_{r_start}^{r} y_k dr' of the interpolant.
    double integral_from_start(std::size_t k, double r) const {
        const double theta = fraction(r);
        double acc = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            acc += c[i][k] * detail::basis_integral(detail::kDenseBasis[i][0], detail::kDenseBasis[i][1], theta);
        }
        return acc * (r_end - r_start);
    }
};

template <std::size_t N>
class Dop853 {
public:
    using Rhs = std::function<void(double, const StateN<N>&, StateN<N>&)>;

    Dop853(Rhs rhs, double r0, const StateN<N>& y0, const StepControls& controls, double direction)
        : rhs_(std::move(rhs)), controls_(controls), r_(r0), y_(y0), dir_(direction < 0 ? -1.0 : 1.0) {
        if (!(controls_.rel_tol > 0.0) || !(controls_.abs_tol > 0.0)) {
            throw std::invalid_argument("Dop853: tolerances must be positive");
        }
        for (std::size_t i = 0; i < N; ++i) {
            atol_[i] = controls_.abs_tol * (i < controls_.abs_scale.size() ? controls_.abs_scale[i] : 1.0);
            if (!(atol_[i] > 0.0)) throw std::invalid_argument("Dop853: per-component tolerance must be positive");
        }
        rhs_(r_, y_, k1_);
        ++evaluations_;
        h_ = dir_ * initial_step();
    }

    double r() const { return r_; }
    const StateN<N>& y() const { return y_; }
    const StateN<N>& dy() const { return k1_; }
    std::size_t accepted() const { return accepted_; }
    std::size_t rejected() const { return rejected_; }
    std::size_t evaluations() const { return evaluations_; }

    /// Takes one accepted step without passing `r_limit`.
    DenseStep<N> step(double r_limit) {
        // Butcher tableau and dense-output weights for DOP853.
        constexpr double c2 = 0.05260015195876773187856, c3 = 0.07890022793815159781784,
                         c4 = 0.11835034190722739672676, c5 = 0.28164965809277260327324,
                         c6 = 0.33333333333333333333333, c7 = 0.25, c8 = 0.30769230769230769230769,
                         c9 = 0.65128205128205128205128, c10 = 0.6, c11 = 0.85714285714285714285714;
        constexpr double a21 = 0.05260015195876773187856, a31 = 0.01972505698453789945446,
                         a32 = 0.05917517095361369836338, a41 = 0.02958758547680684918169,
                         a43 = 0.08876275643042054754507, a51 = 0.24136513415926668550237,
                         a53 = -0.88454947932828608534486, a54 = 0.92483400326179200311574,
                         a61 = 0.03703703703703703703704, a64 = 0.17082860872947387127960,
                         a65 = 0.12546768756682242501669, a71 = 0.037109375, a74 = 0.17025221101954403931498,
                         a75 = 0.06021653898045596068502, a76 = -0.017578125,
                         a81 = 0.03709200011850479271088, a84 = 0.17038392571223999381021,
                         a85 = 0.10726203044637328465181, a86 = -0.01531943774862440175279,
                         a87 = 0.00827378916381402288758, a91 = 0.62411095871607571711443,
                         a94 = -3.36089262944694129406857, a95 = -0.86821934684172600681819,
                         a96 = 27.5920996994467083049416, a97 = 20.1540675504778934086187,
                         a98 = -43.4898841810699588477366, a101 = 0.47766253643826436589043,
                         a104 = -2.48811461997166764192642, a105 = -0.59029082683684299637145,
                         a106 = 21.2300514481811942347289, a107 = 15.2792336328824235832597,
                         a108 = -33.2882109689848629194453, a109 = -0.02033120170850862613582,
                         a111 = -0.93714243008598732571704, a114 = 5.18637242884406370830024,
                         a115 = 1.09143734899672957818500, a116 = -8.14978701074692612513997,
                         a117 = -18.5200656599969598641566, a118 = 22.7394870993505042818970,
                         a119 = 2.49360555267965238987089, a1110 = -3.04676447189821950038237,
                         a121 = 2.27331014751653820792360, a124 = -10.5344954667372501984067,
                         a125 = -2.00087205822486249909676, a126 = -17.9589318631187989172766,
                         a127 = 27.9488845294199600508500, a128 = -2.85899827713502369474066,
                         a129 = -8.87285693353062954433549, a1210 = 12.3605671757943030647266,
                         a1211 = 0.64339274601576353035597;
        constexpr double b1 = 0.05429373411656876223805, b6 = 4.45031289275240888144114,
                         b7 = 1.89151789931450038304282, b8 = -5.80120396001058478146721,
                         b9 = 0.31116436695781989440892, b10 = -0.15216094966251607855618,
                         b11 = 0.20136540080403034837478, b12 = 0.04471061572777259051769;
        constexpr double bhh1 = 0.24409448818897637795276, bhh2 = 0.73384668828161185734136,
                         bhh3 = 0.02205882352941176470588;
        constexpr double er1 = 0.01312004499419488073250, er6 = -1.22515644637620444072057,
                         er7 = -0.49575894965725019152141, er8 = 1.66437718245498653696153,
                         er9 = -0.35032884874997368168865, er10 = 0.33417911871301747902973,
                         er11 = 0.08192320648511571246571, er12 = -0.02235530786388629525884;
        constexpr double d41 = -5.40685903845352664250302, d46 = 367.268892700041893590281,
                         d47 = 154.609958204083905482676, d48 = -505.920283865412564024766,
                         d49 = 15.5975154819608130688200, d410 = -26.1936204184402805956691,
                         d411 = -0.74003512364122230844721, d412 = 1.11776539319431476294221,
                         d413 = -0.33333333333333333333333;
        constexpr double d51 = 6.51987095363079615048119, d56 = -1066.34956011730205278592,
                         d57 = -351.864047514639508625601, d58 = 1363.51955696662884408368,
                         d59 = -112.727669432657582669864, d510 = 159.796191868560289612921,
                         d511 = -2.13865100308788816220259, d512 = -3.75569172113289760348584, d513 = 7.0;
        constexpr double d61 = 10.4698004763293477204238, d66 = -1380.01473607038123167155,
                         d67 = -531.219827862514074379012, d68 = 1866.98964341870892451324,
                         d69 = -53.3302605020547902574560, d610 = 82.4147560258671369782481,
                         d611 = 7.38443654502992069572676, d612 = 0.41729908012587751149843,
                         d613 = -3.11111111111111111111111;
        constexpr double d71 = -16.6338582677165354330709, d76 = 4516.16568914956011730205,
                         d77 = 1393.85185384057776465219, d78 = -5687.52042419481539670071,
                         d79 = 473.965563750151263163661, d710 = -661.810776942355889724311,
                         d711 = -18.0180473354013232598119;
        constexpr double fdec = 0.333, finc = 6.0, safe = 0.9;

        StateN<N> k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, k13, yt, ynew;
        bool rejected_last = false;

        for (;;) {
            double h = h_;
            if (std::abs(h) > controls_.max_step) h = dir_ * controls_.max_step;
            const bool last = (r_ + h - r_limit) * dir_ >= 0.0;
            if (last) h = r_limit - r_;
            const double tiny = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(r_));
            if (std::abs(h) <= tiny) {
                if (last && std::abs(r_limit - r_) <= tiny) {
                    throw IntegrationError("Dop853: already at the integration limit", r_);
                }
                throw IntegrationError("Dop853: step size underflow", r_);
            }

            auto stage = [&](StateN<N>& out, double cfrac, auto&& combine) {
                for (std::size_t i = 0; i < N; ++i) yt[i] = y_[i] + h * combine(i);
                rhs_(r_ + cfrac * h, yt, out);
            };
            stage(k2, c2, [&](std::size_t i) { return a21 * k1_[i]; });
            stage(k3, c3, [&](std::size_t i) { return a31 * k1_[i] + a32 * k2[i]; });
            stage(k4, c4, [&](std::size_t i) { return a41 * k1_[i] + a43 * k3[i]; });
            stage(k5, c5, [&](std::size_t i) { return a51 * k1_[i] + a53 * k3[i] + a54 * k4[i]; });
            stage(k6, c6, [&](std::size_t i) { return a61 * k1_[i] + a64 * k4[i] + a65 * k5[i]; });
            stage(k7, c7, [&](std::size_t i) { return a71 * k1_[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]; });
            stage(k8, c8, [&](std::size_t i) {
                return a81 * k1_[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i];
            });
            stage(k9, c9, [&](std::size_t i) {
                return a91 * k1_[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] + a97 * k7[i] + a98 * k8[i];
            });
            stage(k10, c10, [&](std::size_t i) {
                return a101 * k1_[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] + a107 * k7[i] +
                       a108 * k8[i] + a109 * k9[i];
            });
            stage(k11, c11, [&](std::size_t i) {
                return a111 * k1_[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] + a117 * k7[i] +
                       a118 * k8[i] + a119 * k9[i] + a1110 * k10[i];
            });
            stage(k12, 1.0, [&](std::size_t i) {
                return a121 * k1_[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] + a127 * k7[i] +
                       a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] + a1211 * k11[i];
            });
            evaluations_ += 11;

            double err5 = 0.0, err3 = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                k13[i] = b1 * k1_[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] + b10 * k10[i] +
                         b11 * k11[i] + b12 * k12[i];
                ynew[i] = y_[i] + h * k13[i];
                const double sk = atol_[i] + controls_.rel_tol * std::max(std::abs(y_[i]), std::abs(ynew[i]));
                const double e3 = (k13[i] - bhh1 * k1_[i] - bhh2 * k9[i] - bhh3 * k12[i]) / sk;
                const double e5 = (er1 * k1_[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] + er9 * k9[i] +
                                   er10 * k10[i] + er11 * k11[i] + er12 * k12[i]) /
                                  sk;
                err3 += e3 * e3;
                err5 += e5 * e5;
            }
            double deno = err5 + 0.01 * err3;
            if (deno <= 0.0) deno = 1.0;
            double err = std::abs(h) * err5 * std::sqrt(1.0 / (static_cast<double>(N) * deno));
            if (!std::isfinite(err)) err = 1e10;

            const double fac11 = std::pow(err, 0.125);
            double fac = std::clamp(fac11 / safe, 1.0 / finc, 1.0 / fdec);

            if (err <= 1.0) {
                for (std::size_t i = 0; i < N; ++i) {
                    if (!std::isfinite(ynew[i])) throw IntegrationError("Dop853: non-finite state", r_ + h);
                }
                const double r_new = last ? r_limit : r_ + h;
                rhs_(r_new, ynew, k13);
                ++evaluations_;

                DenseStep<N> out;
                out.r_start = r_;
                out.r_end = r_new;
                for (std::size_t i = 0; i < N; ++i) {
                    const double yd = ynew[i] - y_[i];
                    const double bspl = h * k1_[i] - yd;
                    out.c[0][i] = y_[i];
                    out.c[1][i] = yd;
                    out.c[2][i] = bspl;
                    out.c[3][i] = yd - h * k13[i] - bspl;
                    out.c[4][i] = h * (d41 * k1_[i] + d46 * k6[i] + d47 * k7[i] + d48 * k8[i] + d49 * k9[i] +
                                       d410 * k10[i] + d411 * k11[i] + d412 * k12[i] + d413 * k13[i]);
                    out.c[5][i] = h * (d51 * k1_[i] + d56 * k6[i] + d57 * k7[i] + d58 * k8[i] + d59 * k9[i] +
                                       d510 * k10[i] + d511 * k11[i] + d512 * k12[i] + d513 * k13[i]);
                    out.c[6][i] = h * (d61 * k1_[i] + d66 * k6[i] + d67 * k7[i] + d68 * k8[i] + d69 * k9[i] +
                                       d610 * k10[i] + d611 * k11[i] + d612 * k12[i] + d613 * k13[i]);
                    out.c[7][i] = h * (d71 * k1_[i] + d76 * k6[i] + d77 * k7[i] + d78 * k8[i] + d79 * k9[i] +
                                       d710 * k10[i] + d711 * k11[i]);
                }

                double h_next = h / fac;
                if (rejected_last) h_next = dir_ * std::min(std::abs(h_next), std::abs(h));
                h_ = h_next;
                r_ = r_new;
                y_ = ynew;
                k1_ = k13;
                ++accepted_;
                return out;
            }

            ++rejected_;
            rejected_last = true;
            h_ = h / std::min(1.0 / fdec, fac11 / safe);
        }
    }

private:
    // Hairer's starting step heuristic (explicit Euler probe).
    double initial_step() {
        double dnf = 0.0, dny = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = atol_[i] + controls_.rel_tol * std::abs(y_[i]);
            dnf += (k1_[i] / sk) * (k1_[i] / sk);
            dny += (y_[i] / sk) * (y_[i] / sk);
        }
        double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
        h = std::min(h, controls_.max_step);
        StateN<N> y1, k2;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + dir_ * h * k1_[i];
        rhs_(r_ + dir_ * h, y1, k2);
        ++evaluations_;
        double der2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sk = atol_[i] + controls_.rel_tol * std::abs(y_[i]);
            der2 += ((k2[i] - k1_[i]) / sk) * ((k2[i] - k1_[i]) / sk);
        }
        der2 = std::sqrt(der2) / h;
        const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 1.0 / 8.0);
        return std::min({100.0 * std::abs(h), h1, controls_.max_step});
    }

    Rhs rhs_;
    StepControls controls_;
    double r_;
    StateN<N> y_;
    StateN<N> k1_{};
    StateN<N> atol_{};
    double dir_;
    double h_ = 0.0;
    std::size_t accepted_ = 0;
    std::size_t rejected_ = 0;
    std::size_t evaluations_ = 0;
};

}  // namespace cusp
