#include "uphocore/presentation.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace upho {

void Presentation::validate() const {
    if (gen_names.empty()) throw std::invalid_argument("presentation has no generators");
    std::unordered_set<std::string> seen;
    for (const auto& name : gen_names) {
        if (name.empty()) throw std::invalid_argument("generator name is empty");
        for (char c : name)
            if (std::isspace(static_cast<unsigned char>(c)) || c == '=' || c == '#')
                throw std::invalid_argument("generator name '" + name +
                                            "' contains whitespace, '=' or '#'");
        if (!seen.insert(name).second)
            throw std::invalid_argument("duplicate generator name '" + name + "'");
    }
    for (const auto& [lhs, rhs] : relations) {
        if (lhs.empty() || rhs.empty())
            throw std::invalid_argument("relation word is empty");
        if (lhs.size() != rhs.size())
            throw std::invalid_argument("inhomogeneous relation: " + word_to_string(lhs) +
                                        " = " + word_to_string(rhs));
        if (lhs == rhs)
            throw std::invalid_argument("relation equates a word with itself: " +
                                        word_to_string(lhs));
        for (const Word* w : {&lhs, &rhs})
            for (char ch : *w)
                if (static_cast<unsigned char>(ch) >= gen_names.size())
                    throw std::invalid_argument("relation letter index out of range");
    }
}

bool Presentation::single_char_names() const {
    return std::all_of(gen_names.begin(), gen_names.end(),
                       [](const std::string& n) { return n.size() == 1; });
}

std::string Presentation::word_to_string(const Word& w) const {
    std::string out;
    bool compact = single_char_names();
    for (size_t i = 0; i < w.size(); ++i) {
        if (!compact && i > 0) out += ' ';
        out += gen_names[static_cast<unsigned char>(w[i])];
    }
    return out;
}

std::string Presentation::to_mono() const {
    std::ostringstream os;
    os << "gens:";
    for (const auto& n : gen_names) os << ' ' << n;
    os << '\n';
    for (const auto& [lhs, rhs] : relations)
        os << "rel: " << word_to_string(lhs) << " = " << word_to_string(rhs) << '\n';
    return os.str();
}

Presentation make_presentation(std::vector<std::string> gen_names,
                               std::vector<std::pair<Word, Word>> relations) {
    Presentation p;
    p.gen_names = std::move(gen_names);
    p.relations = std::move(relations);
    p.validate();
    return p;
}

namespace {

struct Line {
    int number;
    std::string text;
};

// Strips comments and returns surviving lines with their 1-based numbers.
std::vector<Line> significant_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
        ++no;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back({no, raw});
    }
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> toks;
    std::istringstream in(s);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

Word parse_word(const std::string& body, int line, int col_base,
                const std::unordered_map<std::string, int>& index,
                bool single_char) {
    Word w;
    if (single_char) {
        for (size_t i = 0; i < body.size(); ++i) {
            char c = body[i];
            if (c == ' ' || c == '\t' || c == '\r') continue;
            auto it = index.find(std::string(1, c));
            if (it == index.end())
                throw ParseError(line, col_base + static_cast<int>(i) + 1,
                                 std::string("unknown generator token '") + c + "'");
            w.push_back(static_cast<char>(it->second));
        }
    } else {
        for (const auto& tok : split_ws(body)) {
            auto it = index.find(tok);
            if (it == index.end())
                throw ParseError(line, col_base + 1, "unknown generator token '" + tok + "'");
            w.push_back(static_cast<char>(it->second));
        }
    }
    if (w.empty()) throw ParseError(line, col_base + 1, "empty word in relation");
    return w;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
    auto lines = significant_lines(text);
    if (lines.empty()) throw ParseError(1, 1, "expected 'gens:' line");

    Presentation p;
    {
        const auto& [no, s] = lines.front();
        auto pos = s.find_first_not_of(" \t");
        if (s.compare(pos, 5, "gens:") != 0)
            throw ParseError(no, static_cast<int>(pos) + 1,
                             "first non-comment line must start with 'gens:'");
        p.gen_names = split_ws(s.substr(pos + 5));
        if (p.gen_names.empty()) throw ParseError(no, static_cast<int>(pos) + 6, "no generators listed");
        if (p.gen_names.size() > 255) throw ParseError(no, 1, "too many generators (max 255)");
    }
    std::unordered_map<std::string, int> index;
    for (size_t i = 0; i < p.gen_names.size(); ++i) index[p.gen_names[i]] = static_cast<int>(i);
    bool single = p.single_char_names();

    for (size_t li = 1; li < lines.size(); ++li) {
        const auto& [no, s] = lines[li];
        auto pos = s.find_first_not_of(" \t");
        if (s.compare(pos, 5, "gens:") == 0)
            throw ParseError(no, static_cast<int>(pos) + 1, "duplicate 'gens:' line");
        if (s.compare(pos, 4, "rel:") != 0)
            throw ParseError(no, static_cast<int>(pos) + 1, "expected 'rel:' line");
        std::string body = s.substr(pos + 4);
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ParseError(no, static_cast<int>(s.size()) + 1, "relation is missing '='");
        if (body.find('=', eq + 1) != std::string::npos)
            throw ParseError(no, static_cast<int>(pos + 4 + eq) + 2, "more than one '=' in relation");
        Word lhs = parse_word(body.substr(0, eq), no, static_cast<int>(pos) + 4, index, single);
        Word rhs = parse_word(body.substr(eq + 1), no, static_cast<int>(pos + 4 + eq) + 1, index, single);
        if (lhs.size() != rhs.size())
            throw ParseError(no, static_cast<int>(pos) + 5,
                             "inhomogeneous relation: sides have lengths " +
                                 std::to_string(lhs.size()) + " and " + std::to_string(rhs.size()));
        if (lhs == rhs)
            throw ParseError(no, static_cast<int>(pos) + 5, "relation equates a word with itself");
        p.relations.emplace_back(std::move(lhs), std::move(rhs));
    }
    p.validate();
    return p;
}

}  // namespace upho
