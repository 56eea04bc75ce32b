#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uphocore/poset.hpp"

namespace upho {

enum class IsoMode {
    Plain,            // rank-preserving isomorphism, edge colors ignored
    ColoredExact,     // edge colors must match literally
    ColoredCanonical  // edge colors match up to a permutation of atom ids
};

/// Canonical certificate: two truncations have equal certificates iff a
/// rank-preserving (and, per mode, color-compatible) isomorphism exists.
struct CanonicalForm {
    std::string bytes;
    bool operator==(const CanonicalForm& o) const { return bytes == o.bytes; }
    bool operator<(const CanonicalForm& o) const { return bytes < o.bytes; }
    std::string hex() const;
};

CanonicalForm canonical_form(const TruncatedPoset& P, IsoMode mode = IsoMode::Plain);

/// Witness bijection between two truncations; rank- and cover-preserving
/// both ways, color-preserving when requested.
struct IsoMap {
    std::vector<NodeId> to;  // node of P -> node of Q

    bool is_identity() const;
};

std::optional<IsoMap> find_isomorphism(const TruncatedPoset& P, const TruncatedPoset& Q,
                                       IsoMode mode = IsoMode::Plain);

/// Checks that m maps covers of P bijectively onto covers of Q, preserving
/// rank (and colors per mode).
bool verify_isomorphism(const TruncatedPoset& P, const TruncatedPoset& Q, const IsoMap& m,
                        IsoMode mode);

struct AutomorphismReport {
    std::uint64_t order = 1;
    std::vector<IsoMap> generators;  // all non-identity automorphisms, capped
    bool generators_complete = true;
};

/// Exact automorphism group order of the truncation by complete enumeration
/// with refinement pruning. Practical for posets whose group is small or
/// that are rigid; the stored maps are capped at `max_stored`.
AutomorphismReport automorphisms(const TruncatedPoset& P, IsoMode mode = IsoMode::Plain,
                                 std::size_t max_stored = 1024);

/// True iff every automorphism of the truncation fixes every atom.
bool atom_action_is_trivial(const TruncatedPoset& P);

}  // namespace upho
