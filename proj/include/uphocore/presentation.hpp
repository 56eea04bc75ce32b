#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace upho {

/// A word over the generators, one byte per generator index.
/// std::string gives us lexicographic comparison (indices compare as
/// unsigned bytes via traits), hashing, and concatenation for free.
using Word = std::string;

inline Word word_of(std::initializer_list<int> letters) {
    Word w;
    for (int g : letters) w.push_back(static_cast<char>(g));
    return w;
}

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + what_),
          line(line_),
          column(column_) {}
};

/// A homogeneous monoid presentation: r generators with display names,
/// and relation pairs of equal-length nonempty words.
struct Presentation {
    std::vector<std::string> gen_names;
    std::vector<std::pair<Word, Word>> relations;

    int rank() const { return static_cast<int>(gen_names.size()); }

    /// Throws std::invalid_argument on invariant violations: empty or
    /// unequal-length relation sides, a relation equating a word with
    /// itself, out-of-range letters, or bad generator names.
    void validate() const;

    std::string word_to_string(const Word& w) const;
    bool single_char_names() const;

    /// Renders the presentation in .mono syntax.
    std::string to_mono() const;
};

/// Convenience constructor used throughout tests and builders: names are
/// taken verbatim, relation words are given as index lists.
Presentation make_presentation(std::vector<std::string> gen_names,
                               std::vector<std::pair<Word, Word>> relations);

/// Parses the .mono presentation format:
///   gens: <tok> <tok> ...        (exactly once, first non-comment line)
///   rel: <word> = <word>         (zero or more)
/// '#' starts a comment; blank lines ignored. Words are concatenated
/// characters when all generator tokens are single characters, otherwise
/// whitespace-separated tokens.
Presentation parse_presentation(const std::string& text);

}  // namespace upho
