#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ubrep/errors.hpp"

namespace ubrep {

/// Ordered family of finite, strictly increasing integer sets over the
/// truncated universe [0, N). Seed sets follow the dyadic pattern
/// 2^i(2k+1); diagonal sets are produced by the minimum-recursion over a
/// re-enumeration of all earlier sets.
struct FiniteSetFamily {
    enum class Tag { seed, diagonal };

    struct Set {
        Tag tag = Tag::seed;
        int global_index = 0;
        std::vector<int> elements;  // strictly increasing, all in [0, N)
        // construction audit for diagonal sets: the re-enumeration used
        // (as global indices) and the k(n) sequence. Empty for seeds and
        // for families parsed back from disk.
        std::vector<int> enumeration;
        std::vector<int> k_sequence;
    };

    int universe_bound = 0;  // N
    std::vector<Set> sets;

    std::size_t size() const { return sets.size(); }
};

/// Intersection of two sorted integer vectors.
std::vector<int> set_intersection_sorted(const std::vector<int>& a, const std::vector<int>& b);

/// Elements of `a` not in `b`, both sorted.
std::vector<int> set_difference_sorted(const std::vector<int>& a, const std::vector<int>& b);

/// First `count` dyadic seed sets truncated to [0, N).
/// Throws UniverseTooSmall if a truncated set would be empty.
FiniteSetFamily seed_family(int count, int universe_bound);

/// Appends one diagonal set built by the minimum recursion over
/// F_n = family.sets[order[n]] for n < T:
///
///   k(0) = 0,  k(n) = min F_n \ ({0..k(n-1)} u F_0 u ... u F_{n-1})
///
/// Each new element is taken strictly above its predecessor, so the k
/// sequence is strictly increasing by construction. Throws
/// RecursionExhausted (carrying the failing position n) when some F_n has
/// no admissible element below N.
FiniteSetFamily diagonal_extend(const FiniteSetFamily& family, const std::vector<int>& order, int T);

/// Seed sets plus `stages` diagonal sets. The enumeration used at each
/// stage is a seeded shuffle of all earlier sets, rotated so that a set
/// containing 0 comes first whenever one exists (the re-enumeration is
/// free, and leading with a 0-set keeps every earlier set meeting the new
/// one). Deterministic in rng_seed.
FiniteSetFamily build_luzin_family(int stages, int universe_bound, int seed_count, std::uint64_t rng_seed);

/// Quantitative growth audit at level m. For each diagonal set i it counts
///   c(i, m) = |{ j < i : E_j intersect E_i is contained in {0..m-1} }|
/// and checks it against the bound implied by the construction:
///   c(i, m) <= m for m >= 1, and for m = 0 the only admissible witness is
///   the set enumerated first at stage i (when that set misses 0, its
///   intersection with E_i is empty while every later F_n contains k(n)).
struct GrowthReport {
    int m = 0;
    int max_count = 0;
    int argmax_index = -1;   // global index of the diagonal set attaining max_count
    bool bound_holds = true;
    struct Violation {
        int diagonal_index;
        int count;
        std::vector<int> witnesses;  // global indices j with small intersection
    };
    std::vector<Violation> violations;
};
GrowthReport growth_bound_check(const FiniteSetFamily& family, int m);

/// Separation audit: given subfamilies X, Y of one parent family (global
/// indices preserved), a candidate separator F and a level m, computes
///   X' = { i in X : E_i \ F  subset of {0..m-1} }
///   Y' = { i in Y : E_i ^ F  subset of {0..m-1} }
/// and for each i in Y' counts the predecessors j in X' (j < i); the
/// containment E_j ^ E_i subset (E_j \ F) u (E_i ^ F) subset {0..m-1} is
/// verified for each such pair. A count above m contradicts the growth
/// bound and is reported as a refutation witness.
struct SeparationReport {
    std::vector<int> x_prime;  // global indices
    std::vector<int> y_prime;
    struct Entry {
        int i;                        // member of Y'
        std::vector<int> predecessors;  // X' members below i
        bool containment_ok = true;
        bool exceeds_growth_bound = false;
    };
    std::vector<Entry> entries;
    int max_predecessor_count = 0;
    bool refutation_found = false;
};
SeparationReport separation_audit(const FiniteSetFamily& x_sets, const FiniteSetFamily& y_sets,
                                  const std::vector<int>& separator, int m);

/// Even/odd split by position, global indices retained.
std::pair<FiniteSetFamily, FiniteSetFamily> split_into_pair(const FiniteSetFamily& family);

/// Greatest |E_i ^ E_j| over distinct pairs (0 for a single-set family).
int max_pairwise_intersection(const FiniteSetFamily& family);

/// Per-stage audit from the construction record: the k sequences are
/// strictly increasing and |E_i ^ F_n| <= n + 1 for every diagonal i and
/// every position n of its enumeration.
struct DiagonalAudit {
    bool k_strictly_increasing = true;
    bool stage_intersection_bound = true;  // |E_i ^ F_n| <= n+1
    int worst_intersection = 0;
};
DiagonalAudit audit_diagonals(const FiniteSetFamily& family);

// --- serialization ---------------------------------------------------------
// Line format:  "luzin v1 N=<N> sets=<count>" then one line per set,
// "<tag> <global_index>: e1 e2 ...". Exact round-trip; construction audit
// fields are not part of the format.

void write_family(std::ostream& os, const FiniteSetFamily& family);
FiniteSetFamily read_family(std::istream& is);
std::string family_to_string(const FiniteSetFamily& family);
FiniteSetFamily family_from_string(const std::string& text);

}  // namespace ubrep
