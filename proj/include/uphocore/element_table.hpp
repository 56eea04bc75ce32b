#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "uphocore/poset.hpp"
#include "uphocore/presentation.hpp"

namespace upho {

using ClassId = int;

struct ClassRecord {
    Word rep;  // lexicographically least word of the congruence class
    int length = 0;
};

/// All congruence classes of words of length <= depth, enumerated
/// length-by-length. Canonical representative of a class is the lex-least
/// word in its rewrite component; the memo maps every word of length
/// <= depth to its class id. Single-writer during build, immutable after.
struct ElementTable {
    int depth = 0;
    std::vector<ClassRecord> classes;                // indexed by class id
    std::vector<std::vector<ClassId>> by_length;     // ids per length, discovery order
    std::unordered_map<Word, ClassId> word_to_class;

    std::vector<std::size_t> counts() const;
    const Word& rep(ClassId c) const { return classes[static_cast<size_t>(c)].rep; }
};

struct BuildLimits {
    // r^N growth is exponential; fail fast instead of exhausting memory.
    std::uint64_t word_cap = 5'000'000;
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ElementTable build_element_table(const Presentation& p, int depth, BuildLimits limits = {});

/// Class id of w, via the memo; on a miss (only possible for words the
/// builder has not seen, i.e. when called on a partially built table)
/// resolves by breadth-first closure over single-relation substring
/// replacements. Throws std::invalid_argument if len(w) > table.depth.
ClassId class_of(const Presentation& p, const Word& w, ElementTable& table);

struct CancellativityVerdict {
    enum Kind {
        SyntacticPass,  // at most one relation word begins with each generator
        EmpiricalPass,  // s * b injective on classes of length <= depth-1, all s
        Violation,
    } kind = EmpiricalPass;
    int depth = 0;
    // witness for Violation: class(s*b) == class(s*c) with b != c
    int gen = -1;
    ClassId b = -1, c = -1;

    bool violated() const { return kind == Violation; }
    std::string to_string(const Presentation& p, const ElementTable& t) const;
};

CancellativityVerdict check_left_cancellative(const Presentation& p, const ElementTable& table);

/// The left-divisibility cover digraph: one node per class, an edge from
/// class u (length l-1) to class(rep(u)*s) labeled by generator s. Edge
/// labels are kept as the coloring when they are unambiguous, which holds
/// exactly when no two generators induce the same cover; otherwise the
/// poset is returned uncolored.
TruncatedPoset divisibility_covers(const Presentation& p, const ElementTable& table);

}  // namespace upho
