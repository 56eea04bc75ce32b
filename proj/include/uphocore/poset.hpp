#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "uphocore/series.hpp"

namespace upho {

using NodeId = int;
using Bits = boost::dynamic_bitset<>;

inline std::uint64_t edge_key(NodeId u, NodeId v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(u)) << 32) |
           static_cast<std::uint32_t>(v);
}

/// A finite-type N-graded poset cut at rank `depth`, stored as ranked node
/// lists with cover adjacency. Node ids are dense and sorted by rank:
/// every id at rank r is smaller than every id at rank r+1. Immutable
/// after construction; all analysis functions are read-only.
struct TruncatedPoset {
    int depth = 0;
    std::vector<std::vector<NodeId>> ranks;  // ranks[i] = ascending node ids
    std::vector<int> rank_of;                // per node
    std::vector<std::vector<NodeId>> up;     // covered-by, ascending
    std::vector<std::vector<NodeId>> down;   // covers, ascending
    bool colored = false;
    std::unordered_map<std::uint64_t, int> edge_color;  // edge_key(u,v) -> atom id
    std::vector<std::string> labels;                    // optional, may be empty

    int node_count() const { return static_cast<int>(rank_of.size()); }
    int edge_count() const;
    NodeId bottom() const { return ranks.at(0).at(0); }
    const std::vector<NodeId>& atoms() const { return ranks.size() > 1 ? ranks[1] : empty_; }
    std::vector<std::size_t> rank_sizes() const;
    int color_of(NodeId u, NodeId v) const { return edge_color.at(edge_key(u, v)); }

    /// Checks the structural invariants (one bottom, gradedness, inverse
    /// adjacency, every positive-rank node has a down-cover) and throws
    /// std::invalid_argument on violation.
    void validate() const;

  private:
    static const std::vector<NodeId> empty_;
};

/// Assembles a poset from rank sizes and cover pairs; node ids must already
/// be rank-sorted (all of rank 0 first, then rank 1, ...). Validates.
TruncatedPoset make_poset(const std::vector<std::size_t>& rank_sizes,
                          const std::vector<std::pair<NodeId, NodeId>>& covers);

/// Restriction to ranks <= d (node ids preserved).
TruncatedPoset truncate(const TruncatedPoset& P, int d);

/// Per-node downward closure as bitsets over node ids; self included.
std::vector<Bits> down_closure(const TruncatedPoset& P);
/// Per-node upward closure; self included.
std::vector<Bits> up_closure(const TruncatedPoset& P);

struct MobiusVector {
    std::vector<Int> mu;  // mu(bottom, node), per node
};

MobiusVector mobius_from_bottom(const TruncatedPoset& P);

Series rank_series(const TruncatedPoset& P);
Series char_series(const TruncatedPoset& P);
Series char_series(const TruncatedPoset& P, const MobiusVector& mv);

/// Antichain of minimal common upper bounds of x and y within the truncation.
std::vector<NodeId> minimal_upper_bounds(const TruncatedPoset& P, const std::vector<Bits>& ups,
                                         NodeId x, NodeId y);
/// Antichain of maximal common lower bounds.
std::vector<NodeId> maximal_lower_bounds(const TruncatedPoset& P, const std::vector<Bits>& downs,
                                         NodeId x, NodeId y);

/// All-pairs tables, keyed by edge_key(x, y) with x <= y as ids.
std::unordered_map<std::uint64_t, std::vector<NodeId>> joins_table(const TruncatedPoset& P);
std::unordered_map<std::uint64_t, std::vector<NodeId>> meets_table(const TruncatedPoset& P);

struct LatticeVerdict {
    enum Kind {
        LatticeToDepth,  // unique joins where decidable, unique meets; no counterexample
        JoinAmbiguity,   // >= 2 minimal upper bounds inside the truncation (definitive)
        MeetAmbiguity,   // >= 2 maximal lower bounds (definitive: down-sets are complete)
        JoinMissing,     // no common upper bound within rank N (inconclusive evidence)
    } kind = LatticeToDepth;
    int depth = 0;
    NodeId x = -1, y = -1;
    std::vector<NodeId> witnesses;

    bool is_lattice_to_depth() const { return kind == LatticeToDepth; }
    std::string to_string() const;
};

LatticeVerdict lattice_certificate(const TruncatedPoset& P);

struct CoreResult {
    bool determined = false;
    std::string reason;            // set when undetermined
    TruncatedPoset core;           // re-ranked from 0
    NodeId top = -1;               // join of atoms in the host poset
    std::vector<NodeId> node_map;  // core node -> host node
};

/// The interval from the bottom to the join of the atoms, when that join
/// is determined within the truncation (unique minimal common upper bound).
CoreResult core(const TruncatedPoset& P);

struct FilterResult {
    TruncatedPoset poset;          // re-ranked from 0, depth N - rank(p)
    std::vector<NodeId> node_map;  // filter node -> host node
};

/// The principal order filter V_p as an induced subposet, re-ranked from 0.
FilterResult order_filter(const TruncatedPoset& P, NodeId p);

/// Induced subposet on a rank-convex id set (used by core and order_filter);
/// keep must be an up-set or down-set so induced covers equal original covers.
FilterResult induced_subposet(const TruncatedPoset& P, const std::vector<NodeId>& keep,
                              int base_rank, int new_depth);

struct UphoVerdict {
    bool pass = true;
    NodeId failed_node = -1;
    std::string to_string() const;
};

/// Checks that every principal order filter rooted at rank <= probe_rank is
/// rank-preserving isomorphic to the poset truncated to the matching depth.
UphoVerdict upho_check(const TruncatedPoset& P, int probe_rank);

/// Product poset truncated to min depth; covers change one coordinate.
TruncatedPoset direct_product(const TruncatedPoset& P, const TruncatedPoset& Q);

}  // namespace upho
