#pragma once

// Phase-plane reduction of the warped-torus soliton equations.
//
// With g = dr^2 + e^{2h(r)}(dx^2 + dy^2) and potential f(r), the soliton
// equations become a planar polynomial system in H = h', F = f'.  Everything
// downstream (separatrix, curvature, evolution) works on orbits of this field.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cusp/dop853.hpp"
#include "cusp/trajectory.hpp"

namespace cusp {

enum class SolitonSign : int { shrinking = -1, steady = 0, expanding = 1 };

/// Parses -1/0/+1; anything else is rejected.
SolitonSign soliton_sign_from_int(int value);

inline double eps_value(SolitonSign eps) { return static_cast<double>(static_cast<int>(eps)); }

struct PhaseVelocity {
    double dH = 0.0;
    double dF = 0.0;
};

struct Jacobian2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;

    double det() const { return a11 * a22 - a12 * a21; }
    double trace() const { return a11 + a22; }
};

struct EigenPair {
    double value = 0.0;
    std::array<double, 2> vector{};
};

/// Result of solving {H' = 0, F' = 0}.  For eps = 0 the zero set is the whole
/// line H = 0, which is reported through `degenerate_line` rather than points.
struct CriticalPointSet {
    std::vector<PhasePoint> points;
    bool degenerate_line = false;
    std::string description;
};

PhaseVelocity vector_field(PhasePoint p, SolitonSign eps = SolitonSign::expanding);

CriticalPointSet critical_points(SolitonSign eps);

/// Jacobian of the field; independent of eps.
Jacobian2 linearize(PhasePoint p);

/// Real distinct eigenpairs sorted by descending eigenvalue.  Eigenvectors are
/// scaled so the first component is 1 (second component 1 if the first vanishes).
/// Throws std::domain_error for complex or repeated eigenvalues.
std::array<EigenPair, 2> eigen_saddle(const Jacobian2& j);

/// The saddle (1/2, 0) of the expanding system.
inline constexpr PhasePoint kSaddle{0.5, 0.0};

/// Right-hand side of the augmented system (H, F, W) where
/// W = H F - H^2 + eps/2 is carried as its own component:
///   W' = W (F - H) + H^3.
/// W equals -sec_rx and stays well conditioned where H F -> -1/2.
void augmented_rhs(const PhaseState& y, PhaseState& dy, SolitonSign eps);

/// Builds the augmented state for a phase point.
PhaseState augment(PhasePoint p, SolitonSign eps = SolitonSign::expanding);

/// Integrates the augmented system from `start` at r0 in the direction set by
/// `controls.direction`.  Throws IntegrationError on step-size underflow or a
/// non-finite state.
Trajectory integrate(PhasePoint start, double r0, const IntegratorControls& controls,
                     SolitonSign eps = SolitonSign::expanding);

/// Same as above but from a full augmented state, used when resuming a leg.
Trajectory integrate_state(const PhaseState& start, double r0, const IntegratorControls& controls,
                           SolitonSign eps = SolitonSign::expanding);

}  // namespace cusp
