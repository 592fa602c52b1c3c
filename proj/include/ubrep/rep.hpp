#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ubrep/luzin.hpp"
#include "ubrep/matcore.hpp"

namespace ubrep {

/// Truncated element of the sequence algebra over 2x2 matrices: N explicit
/// coordinates, identity beyond the window by convention.
struct MatrixSequence {
    int window = 0;
    std::vector<CMat> coords;

    static MatrixSequence identity(int window) {
        MatrixSequence ms;
        ms.window = window;
        ms.coords.assign(static_cast<std::size_t>(window), CMat::identity(2));
        return ms;
    }

    const CMat& at(int n) const { return coords[static_cast<std::size_t>(n)]; }
    CMat& at(int n) { return coords[static_cast<std::size_t>(n)]; }
};

/// Element of the restricted direct sum of order-2 cyclic groups: a finite
/// support of (family position, kind) generator labels. The group is
/// abelian and every generator squares to the identity, so words are
/// support sets and the product is symmetric difference.
struct GroupWord {
    std::set<std::pair<int, int>> support;  // (i, k) with k in {0, 1}

    static GroupWord single(int i, int k) {
        GroupWord w;
        w.support.insert({i, k});
        return w;
    }

    GroupWord operator*(const GroupWord& o) const {
        GroupWord r;
        std::set_symmetric_difference(support.begin(), support.end(), o.support.begin(), o.support.end(),
                                      std::inserter(r.support, r.support.begin()));
        return r;
    }
    bool operator==(const GroupWord& o) const = default;
};

/// A split pair of set families together with the two order-2 matrices
/// driving the representation, over a common coordinate window.
struct RepresentationContext {
    FiniteSetFamily family0;  // sets behind kind-0 generators
    FiniteSetFamily family1;  // sets behind kind-1 generators
    CMat s0{2};
    CMat s1{2};
    int window = 4096;

    RepresentationContext() = default;
    RepresentationContext(FiniteSetFamily f0, FiniteSetFamily f1, CMat s0_in, CMat s1_in, int window_in,
                          const Tolerances& tol = kDefaultTol);

    const FiniteSetFamily& family(int k) const { return k == 0 ? family0 : family1; }
    const CMat& s_matrix(int k) const { return k == 0 ? s0 : s1; }
    /// Elements of E_i^k clipped to [0, window).
    std::vector<int> coords_of(int i, int k) const;
};

/// The generator image: s^k at the coordinates of E_i^k, identity elsewhere.
MatrixSequence generator(const RepresentationContext& ctx, int i, int k);

struct Represented {
    MatrixSequence seq;
    std::set<int> overlap;  // coordinates with >= 2 active generators
};

/// Image of a word: at each coordinate the product of the active generator
/// matrices in lexicographic (i, k) order. Off `overlap` the coordinate is
/// one of {identity, s0, s1} and the homomorphism law holds exactly.
Represented represent(const RepresentationContext& ctx, const GroupWord& w);

/// Max coordinate norm ignoring a declared exceptional set. Empty max is 0.
double uniform_norm_mod_finite(const MatrixSequence& ms, const std::set<int>& ignore);

/// Least k with ‖a(n) − b(n)‖ < tol for all n >= k, or nullopt.
std::optional<int> mod_finite_equal(const MatrixSequence& a, const MatrixSequence& b, double tol);

struct SpanElement {
    MatrixSequence seq;
    std::set<int> exceptional;  // word overlaps plus perturbation support
};

/// Linear combination of represented words plus a finitely supported
/// perturbation (the sequence-algebra model of a vanishing tail).
SpanElement span_element(const RepresentationContext& ctx,
                         const std::vector<std::pair<cplx, GroupWord>>& terms,
                         const std::map<int, CMat>& perturbation);

// --- serialization ---------------------------------------------------------
// "mseq v1 N=<N>" then one line per coordinate with 8 reals (row-major
// re/im pairs). Full 17-digit precision, exact round-trip.

void write_mseq(std::ostream& os, const MatrixSequence& ms);
MatrixSequence read_mseq(std::istream& is);
std::string mseq_to_string(const MatrixSequence& ms);
MatrixSequence mseq_from_string(const std::string& text);

}  // namespace ubrep
