#pragma once

// Independent verification oracles for the reproduction suite. Everything
// here recomputes results from first principles (global union-find closure,
// raw permutation search, DFS reachability) and deliberately shares no code
// path with the production algorithms it cross-checks.

#include <cstdint>
#include <vector>

#include "uphocore/poset.hpp"
#include "uphocore/presentation.hpp"

namespace upho::oracle {

struct BruteClasses {
    std::vector<std::size_t> counts;                 // classes per length 0..depth
    std::vector<std::vector<Word>> reps_by_length;   // lex-least member per class, sorted
};

/// Congruence classes by exhaustive enumeration of all r^l words per length
/// and a global union-find over single rewrites.
BruteClasses brute_congruence(const Presentation& p, int depth);

/// The left-divisibility cover poset assembled from the union-find classes.
TruncatedPoset brute_divisibility(const Presentation& p, int depth);

/// Element count and rank of the interval from the bottom to the unique
/// minimal common upper bound of the atoms, by DFS reachability; returns
/// {count, rank}, or {0, -1} when the join is not determined in the
/// truncation.
std::pair<int, int> brute_core_size(const TruncatedPoset& P);

/// Rank-preserving isomorphism by raw backtracking over per-rank bijections.
/// Intended for posets of at most ~12 nodes.
bool brute_isomorphic(const TruncatedPoset& P, const TruncatedPoset& Q);

/// Exact automorphism count by the same raw backtracking.
std::uint64_t brute_automorphism_count(const TruncatedPoset& P);

/// Minimal common upper bounds via per-node DFS reachability.
std::vector<NodeId> brute_mub(const TruncatedPoset& P, NodeId x, NodeId y);

}  // namespace upho::oracle
