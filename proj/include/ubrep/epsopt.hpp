#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ubrep/matcore.hpp"

namespace ubrep {

/// Chart for a positive 2x2 matrix with smallest eigenvalue pinned to 1:
///
///   v = 1 + (c - 1) P(alpha, beta),   P = projection onto
///   u2 = (-e^{-i beta} sin(alpha), cos(alpha)),
///
/// so v has eigenvalues (1, c) and cond(v) = c. The summed distance to the
/// unitary group is invariant under scaling and under unitary left factors,
/// and any invertible v has the same joint defect as the positive factor of
/// its right polar decomposition, so this chart covers the whole feasible
/// set of the obstruction infimum.
struct PositiveParam {
    double alpha = 0.0;  // [0, pi/2]
    double beta = 0.0;   // [0, 2 pi)
    double c = 1.0;      // >= 1, the eigenvalue ratio = cond(v)

    CMat to_matrix() const;
};

struct OptimizerConfig {
    int grid_alpha = 48;
    int grid_beta = 96;
    int grid_c = 48;
    int refine_iters = 64;
    double shrink = 0.6;
    std::uint64_t rng_seed = 0;   // extra deterministic random starts
    int random_starts = 4;
    double tol = 1e-12;
};

/// d(v s0 v^-1, U) + d(v s1 v^-1, U). Throws SingularInput.
double joint_defect(const CMat& v, const CMat& s0, const CMat& s1, const Tolerances& tol = kDefaultTol);

struct EpsEstimate {
    double value = 0.0;
    PositiveParam argmin;
};

/// Upper estimate of the obstruction infimum at condition cap C: coarse
/// grid over the chart followed by deterministic compass-search refinement.
/// Same config gives bit-identical output; the value is nonincreasing in C.
EpsEstimate epsilon_estimate(double C, const CMat& s0, const CMat& s1, const OptimizerConfig& cfg = {});

/// Certified lower bound for the obstruction infimum. Two certificates are
/// combined and the better one returned:
///
/// (1) Grid sweep minus a modulus-of-continuity slack. Within a cell with
///     c in [c_lo, c_hi] and half-widths (h_a, h_b, h_c),
///       |f(p) - f(p')| <= sum_k ‖s_k‖ [ dc (1 + c_hi / c_lo^2)
///                                       + 2 (c_hi - 1)(da + db/2) ]
///     because d(., U) is 1-Lipschitz (Weyl), ‖dP/dalpha‖ <= 1,
///     ‖dP/dbeta‖ <= 1/2, ‖v - v'‖ <= dc + (c_hi - 1)‖dP‖ and
///     ‖v^-1 - v'^-1‖ <= dc/c_lo^2 + (1 - 1/c_hi)‖dP‖. The slack is applied
///     per c-slice; it vanishes at C = 1.
///
/// (2) Power growth of g = s0 s1. If both conjugated generators are within
///     (d0, d1) of unitaries then ‖v g^n v^-1‖ <= ((1+d0)(1+d1))^n
///     <= (1 + f/2)^{2n}, while ‖v g^n v^-1‖ >= sigma_max(g^n)/cond(v).
///     Hence f >= 2 ((sigma_max(g^n)/C)^{1/(2n)} - 1) for every n >= 1.
///
/// A result <= 0 is inconclusive, not an error.
struct EpsLowerBound {
    double bound = 0.0;       // max of the two certificates
    double grid_bound = 0.0;  // certificate (1)
    double growth_bound = 0.0;// certificate (2)
    double grid_min = 0.0;    // raw grid minimum (upper estimate)
    bool conclusive = false;  // bound > 0
};
EpsLowerBound epsilon_grid_lower_bound(double C, int resolution, const CMat& s0, const CMat& s1);

/// Certificate (2) alone.
double power_growth_lower_bound(const CMat& s0, const CMat& s1, double C);

/// Minimal n with ‖(s0 s1)^n‖ > C^2, or nullopt when the powers stay
/// bounded (within a 10^7 step budget). At such n no v with cond(v) <= C
/// can make both generators unitary: the conjugated power would be unitary
/// while ‖v (s0 s1)^n v^-1‖ >= ‖(s0 s1)^n‖ / C^2 > 1.
std::optional<long> unboundedness_witness(const CMat& s0, const CMat& s1, double C);

struct ShearFamily {
    CMat matrix{2};
    double norm = 1.0;        // sqrt((2 + t^2 + t sqrt(t^2+4)) / 2)
    double amen_bound = 1.0;  // norm^4
};

/// The one-parameter shear [[1,0],[t,-1]] replacing the second generator;
/// its norm decreases to 1 as t -> 0. Throws BadParameter outside (0, 1].
ShearFamily s1_of_t(double t);

}  // namespace ubrep
