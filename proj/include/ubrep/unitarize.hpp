#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ubrep/matcore.hpp"
#include "ubrep/rep.hpp"

namespace ubrep {

/// Outcome of an averaging run: the similarity element, its condition
/// number, the worst unitarity defect of the conjugated images, and the
/// uniform norm bound of the representation it certifies against.
/// Every certificate satisfies cond <= norm_bound_pi^2 (+1e-9).
struct SimilarityCertificate {
    CMat v;                       // single similarity element (may be empty)
    std::vector<CMat> v_coords;   // per-coordinate elements (may be empty)
    double cond = 1.0;
    double max_unitarity_defect = 0.0;
    double norm_bound_pi = 1.0;
    std::vector<int> flagged;     // coordinates left untouched (unbounded group)

    /// Flat key-value report, one field per line.
    std::string to_report() const;
};

/// Average h = |G|^-1 sum g g* over a verified finite matrix group and the
/// similarity element v = h^{-1/2}. Closure is checked pairwise within
/// tolerance and a witness pair is reported on failure. The averaged h is
/// invariant under the group, so every v g v^{-1} is unitary, and
/// cond(v) <= (max_g ‖g‖)^2.
std::pair<CMat, SimilarityCertificate> average_finite_group(const std::vector<CMat>& images,
                                                            const Tolerances& tol = kDefaultTol);

/// Word-to-matrix map on the integer lattice, d coordinates per word.
struct LatticeRep {
    int rank = 1;  // d <= 2
    std::function<CMat(const std::vector<int>&)> eval;
};

struct FolnerResult {
    CMat h;
    std::vector<double> defects;       // ‖pi(s) h pi(s)* − h‖ per generator
    std::vector<double> defect_bounds; // (|F △ sF|/|F|) ‖pi‖^2 per generator
    double norm_bound_pi = 1.0;
    double boundary_ratio = 0.0;       // |F △ sF|/|F| for a unit step
};

/// Averages h over the box [0, radius)^d and reports, per generator, the
/// invariance defect together with the boundary bound it must satisfy.
/// Multiplicativity of the map is spot-checked on sampled word pairs.
FolnerResult folner_average(const LatticeRep& rep, int box_radius, const std::vector<std::vector<int>>& generators,
                            const Tolerances& tol = kDefaultTol);

/// Per-coordinate averaging for the generator matrices active at each
/// coordinate of the context. Coordinates whose active matrices generate an
/// unbounded group are flagged and left at the identity; elsewhere the
/// finite coordinate group is averaged. The certificate's cond is the sup
/// over non-flagged coordinates.
std::pair<std::vector<CMat>, SimilarityCertificate>
coordinatewise_unitarize(const RepresentationContext& ctx, const std::vector<GroupWord>& words,
                         const Tolerances& tol = kDefaultTol);

/// Spectral clamp of each Hermitian coordinate into [lower, upper].
MatrixSequence positive_clamped_lift(const std::vector<CMat>& targets, double lower, double upper,
                                     const Tolerances& tol = kDefaultTol);

/// Worst distance, over elements a and coordinates n, from (v a v^-1)(n)*
/// to the linear span of the conjugated family at n (Frobenius
/// least-squares residual). Zero certifies coordinatewise *-closedness.
double selfadjointness_defect(const std::vector<CMat>& v, const std::vector<MatrixSequence>& elements,
                              const Tolerances& tol = kDefaultTol);

/// Frobenius distance from `target` to span{basis} (complex least squares).
double span_distance(const CMat& target, const std::vector<CMat>& basis);

/// True if the matrices generate a bounded group; grows the closure and
/// gives up once a product norm passes 1e6 or 64 closure rounds.
bool generates_bounded_group(const std::vector<CMat>& gens, std::vector<CMat>* closure_out = nullptr,
                             const Tolerances& tol = kDefaultTol);

}  // namespace ubrep
