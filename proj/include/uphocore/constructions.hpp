#pragma once

#include <vector>

#include "uphocore/poset.hpp"
#include "uphocore/presentation.hpp"

namespace upho {

/// Weakly decreasing positive parts summing to n.
struct Partition {
    std::vector<int> parts;

    int n() const;
    void validate() const;
};

/// All partitions of n in lexicographically decreasing order of part lists.
std::vector<Partition> all_partitions(int n);
std::size_t partition_count(int n);

/// A total function [n] -> [n], stored 0-based.
struct FiberFunction {
    int n = 0;
    std::vector<int> values;  // values[i] = f(i+1)-1

    void validate() const;
    bool is_constant() const;
    bool is_bijective() const;
};

/// The block-constant idempotent f_lambda whose fiber sizes are lambda.
FiberFunction fiber_function_of_partition(const Partition& lambda);

/// M(f) = < s_1..s_n | s_1 s_f(1) = s_2 s_f(2) = ... = s_n s_f(n) >,
/// chained as n-1 adjacent pairs.
Presentation monoid_Mf(const FiberFunction& f);

Presentation monoid_free_commutative(int n);
/// < s_1..s_n | s_i s_(j-1) = s_j s_i for i < j >.
Presentation monoid_shifted(int n);

/// Depth-N truncation of the dominating vertex construction: at each rank one
/// new element covers the entire previous rank, then every previous-rank
/// element gets n-1 private covers.
TruncatedPoset build_Dn(int n, int depth);

/// Depth-N truncation of the flip construction: each element two ranks down
/// gets a new element covering exactly its covers, then privates are added
/// until every element is covered by exactly n elements.
TruncatedPoset build_Fn(int n, int depth);

/// The unique rank-two lattice with n atoms.
TruncatedPoset build_Mn(int n);
/// The Boolean lattice of subsets of [n].
TruncatedPoset build_Bn(int n);
/// The chain 0 < 1 < ... < depth.
TruncatedPoset build_chain(int depth);

/// The seven-element rank-three lattice with atoms a,b,c, two coatoms
/// covering {a,b} and {b,c}, and a top; it has a nontrivial automorphism
/// swapping a and c.
TruncatedPoset build_asym_core_example();

}  // namespace upho
