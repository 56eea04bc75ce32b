#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uphocore/element_table.hpp"
#include "uphocore/iso.hpp"
#include "uphocore/poset.hpp"
#include "uphocore/presentation.hpp"

namespace upho {

/// An assignment of an atom id to every cover edge of a finite graded
/// lattice or truncation. Bottom edges are forced: c(0 <. s) = s.
struct Coloring {
    std::map<std::uint64_t, int> edges;  // edge_key(u,v) -> atom index (0-based)

    int at(NodeId u, NodeId v) const { return edges.at(edge_key(u, v)); }
};

/// The coloring a colored poset carries on its own edges.
Coloring coloring_of_poset(const TruncatedPoset& P);
/// A copy of P carrying c as its edge colors.
TruncatedPoset apply_coloring(const TruncatedPoset& P, const Coloring& c);

struct ColorVerdict {
    bool pass = true;
    NodeId failed_node = -1;
    std::string to_string() const;
};

/// Upho-coloring check on a truncation: for each p of rank <= probe_rank, a
/// color-preserving rank-preserving isomorphism from the order filter V_p to
/// the poset truncated to the matching depth.
ColorVerdict check_upho_coloring(const TruncatedPoset& P, const Coloring& c, int probe_rank);

/// Pre-upho coloring check on a finite graded lattice L (1 must be the join
/// of the atoms): bottom edges forced, and for every interior x with covers
/// y_1..y_k there is a rank- and color-preserving embedding of the interval
/// [x, y_1 v ... v y_k] into L.
ColorVerdict check_pre_upho(const TruncatedPoset& L, const Coloring& c);

/// Exhaustive backtracking over per-edge atom choices with the forced bottom
/// edges pre-assigned, pruning by partial embedding failure. Deterministic
/// output order.
std::vector<Coloring> enumerate_pre_upho_colorings(const TruncatedPoset& L);

struct ChainCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Compiles a pre-upho coloring to its monoid: generators are the atoms; for
/// each unordered atom pair, the color words of all saturated chains from 0
/// to the pair's join are equated as a chain of relations on the sorted
/// distinct words.
Presentation monoid_of_coloring(const TruncatedPoset& L, const Coloring& c,
                                std::size_t chain_cap = 1'000'000);

struct RealizeOptions {
    int depth = 5;
    int probe_rank = 2;
    std::uint64_t word_cap = 5'000'000;
    std::size_t chain_cap = 1'000'000;
    int workers = 0;  // 0 = hardware concurrency
};

struct CandidateReport {
    int coloring_index = -1;
    Presentation presentation;
    std::string status;  // "survivor", "undecided", or "rejected: <reason>"
    bool survivor = false;
    bool undecided = false;
    // set for survivors
    CanonicalForm form;           // plain canonical form of the depth-N truncation
    std::string cancellativity;
    std::string lattice;
    bool core_matches = false;
    int stability_depth = -1;     // least d with core(trunc d') stable up to N
    int decided_at_depth = -1;
};

struct RealizationReport {
    std::string input_name;
    int depth = 0;
    int probe_rank = 0;
    std::size_t colorings_enumerated = 0;
    std::vector<CandidateReport> candidates;      // one per coloring, in order
    std::vector<std::size_t> survivor_classes;    // candidate index of each distinct class
    std::vector<std::size_t> undecided;           // candidate indices
    std::string caveat =
        "counts cover colorable upho lattices only; survivor classes are distinct at this depth";
};

/// The realization pipeline: enumerate pre-upho colorings, compile each to a
/// monoid, build its truncation, filter by cancellativity, lattice
/// certificate, core equality with L, and the upho-coloring check, then
/// deduplicate survivors by plain canonical form. Undecided candidates are
/// rerun once at depth+1.
RealizationReport realize_core(const TruncatedPoset& L, const RealizeOptions& opt,
                               const std::string& input_name = "lattice");

}  // namespace upho
