#include "uphocore/element_table.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <unordered_set>

namespace upho {

std::vector<std::size_t> ElementTable::counts() const {
    std::vector<std::size_t> out;
    out.reserve(by_length.size());
    for (const auto& v : by_length) out.push_back(v.size());
    return out;
}

namespace {

// Breadth-first closure of w under single substring replacements, in either
// direction of each relation. Relations are homogeneous, so the component
// stays within one word length.
std::vector<Word> rewrite_component(const Presentation& p, const Word& w) {
    std::unordered_set<Word> seen{w};
    std::deque<Word> queue{w};
    std::vector<Word> comp;
    auto push = [&](Word&& u) {
        assert(u.size() == w.size());
        if (seen.insert(u).second) queue.push_back(std::move(u));
    };
    while (!queue.empty()) {
        Word u = std::move(queue.front());
        queue.pop_front();
        for (const auto& [lhs, rhs] : p.relations) {
            size_t k = lhs.size();
            if (k > u.size()) continue;
            for (size_t pos = 0; pos + k <= u.size(); ++pos) {
                if (u.compare(pos, k, lhs) == 0) {
                    Word v = u;
                    v.replace(pos, k, rhs);
                    push(std::move(v));
                }
                if (u.compare(pos, k, rhs) == 0) {
                    Word v = u;
                    v.replace(pos, k, lhs);
                    push(std::move(v));
                }
            }
        }
        comp.push_back(std::move(u));
    }
    return comp;
}

ClassId resolve(const Presentation& p, const Word& w, ElementTable& t, std::uint64_t cap) {
    auto it = t.word_to_class.find(w);
    if (it != t.word_to_class.end()) return it->second;
    auto comp = rewrite_component(p, w);
    if (t.word_to_class.size() + comp.size() > cap)
        throw CapExceeded("word cap of " + std::to_string(cap) +
                          " exceeded while enumerating congruence classes; reduce the depth "
                          "or raise --word-cap");
    ClassId id = static_cast<ClassId>(t.classes.size());
    const Word* least = &comp.front();
    for (const auto& u : comp)
        if (u < *least) least = &u;
    t.classes.push_back({*least, static_cast<int>(w.size())});
    for (auto& u : comp) t.word_to_class.emplace(std::move(u), id);
    return id;
}

// After a full build every word of length <= depth is memoized: a word
// w = u.s lies in the rewrite component of rep(class(u)).s, which the
// builder resolves. A miss therefore indicates a builder bug.
ClassId lookup(const ElementTable& t, const Word& w) {
    auto it = t.word_to_class.find(w);
    if (it == t.word_to_class.end())
        throw std::logic_error("element table lookup miss for a word within depth");
    return it->second;
}

}  // namespace

ClassId class_of(const Presentation& p, const Word& w, ElementTable& table) {
    if (static_cast<int>(w.size()) > table.depth)
        throw std::invalid_argument("class_of: word of length " + std::to_string(w.size()) +
                                    " exceeds table depth " + std::to_string(table.depth));
    return resolve(p, w, table, BuildLimits{}.word_cap);
}

ElementTable build_element_table(const Presentation& p, int depth, BuildLimits limits) {
    if (depth < 0) throw std::invalid_argument("build_element_table: negative depth");
    p.validate();
    // upfront estimate: sum of r^l for l <= depth
    std::uint64_t est = 0, pw = 1;
    for (int l = 0; l <= depth; ++l) {
        est += pw;
        if (est > limits.word_cap ||
            (l < depth && pw > limits.word_cap / static_cast<std::uint64_t>(std::max(p.rank(), 1))))
            throw CapExceeded("estimated word count exceeds cap of " +
                              std::to_string(limits.word_cap) + " at depth " +
                              std::to_string(depth) + "; reduce the depth or raise --word-cap");
        pw *= static_cast<std::uint64_t>(p.rank());
    }

    ElementTable t;
    t.depth = depth;
    t.by_length.resize(static_cast<size_t>(depth) + 1);
    resolve(p, Word{}, t, limits.word_cap);
    t.by_length[0] = {0};
    for (int l = 1; l <= depth; ++l) {
        for (ClassId u : t.by_length[static_cast<size_t>(l - 1)]) {
            Word base = t.rep(u);
            for (int s = 0; s < p.rank(); ++s) {
                Word w = base;
                w.push_back(static_cast<char>(s));
                resolve(p, w, t, limits.word_cap);
            }
        }
        // ids are assigned in discovery order, so this length's classes are
        // exactly the ids handed out since the previous length finished
        ClassId lo = t.by_length[static_cast<size_t>(l - 1)].back() + 1;
        for (ClassId c = lo; c < static_cast<ClassId>(t.classes.size()); ++c)
            t.by_length[static_cast<size_t>(l)].push_back(c);
    }
    return t;
}

std::string CancellativityVerdict::to_string(const Presentation& p, const ElementTable& t) const {
    switch (kind) {
        case SyntacticPass:
            return "SyntacticPass (left-cancellative outright)";
        case EmpiricalPass:
            return "EmpiricalPass(" + std::to_string(depth) + ")";
        case Violation:
            return "Violation(" + p.gen_names[static_cast<size_t>(gen)] + ", " +
                   p.word_to_string(t.rep(b)) + ", " + p.word_to_string(t.rep(c)) + ")";
    }
    return {};
}

CancellativityVerdict check_left_cancellative(const Presentation& p, const ElementTable& table) {
    // Syntactic condition: for each generator s, at most one distinct word
    // beginning with s appears among the relation sides.
    {
        std::vector<std::unordered_set<Word>> starts(static_cast<size_t>(p.rank()));
        bool ok = true;
        for (const auto& [lhs, rhs] : p.relations)
            for (const Word* w : {&lhs, &rhs})
                starts[static_cast<size_t>(static_cast<unsigned char>((*w)[0]))].insert(*w);
        for (const auto& s : starts)
            if (s.size() > 1) { ok = false; break; }
        if (ok) return {CancellativityVerdict::SyntacticPass, table.depth, -1, -1, -1};
    }
    // Empirical check: b -> class(s.b) injective on classes of length <= depth-1,
    // scanning generators, then lengths, then class ids, for a deterministic witness.
    for (int s = 0; s < p.rank(); ++s) {
        std::unordered_map<ClassId, ClassId> seen;  // target -> first source
        for (int l = 0; l + 1 <= table.depth; ++l) {
            for (ClassId b : table.by_length[static_cast<size_t>(l)]) {
                Word w;
                w.push_back(static_cast<char>(s));
                w += table.rep(b);
                ClassId v = lookup(table, w);
                auto [it, fresh] = seen.emplace(v, b);
                if (!fresh)
                    return {CancellativityVerdict::Violation, table.depth, s, it->second, b};
            }
        }
    }
    return {CancellativityVerdict::EmpiricalPass, table.depth, -1, -1, -1};
}

TruncatedPoset divisibility_covers(const Presentation& p, const ElementTable& table) {
    TruncatedPoset P;
    P.depth = table.depth;
    P.ranks = table.by_length;  // class ids are assigned length-by-length, hence rank-sorted
    int n = static_cast<int>(table.classes.size());
    P.rank_of.resize(static_cast<size_t>(n));
    for (int l = 0; l <= table.depth; ++l)
        for (ClassId c : table.by_length[static_cast<size_t>(l)])
            P.rank_of[static_cast<size_t>(c)] = l;
    P.up.resize(static_cast<size_t>(n));
    P.down.resize(static_cast<size_t>(n));
    bool color_ok = true;
    for (int l = 0; l < table.depth; ++l) {
        for (ClassId u : table.by_length[static_cast<size_t>(l)]) {
            for (int s = 0; s < p.rank(); ++s) {
                Word w = table.rep(u);
                w.push_back(static_cast<char>(s));
                ClassId v = lookup(table, w);
                auto key = edge_key(u, v);
                auto [it, fresh] = P.edge_color.emplace(key, s);
                if (fresh) {
                    P.up[static_cast<size_t>(u)].push_back(v);
                    P.down[static_cast<size_t>(v)].push_back(u);
                } else if (it->second != s) {
                    // two generators inducing the same cover: the edge labeling
                    // is not a coloring (and the monoid is not left-cancellative)
                    color_ok = false;
                }
            }
        }
    }
    P.colored = color_ok;
    if (!color_ok) P.edge_color.clear();
    for (auto& a : P.up) std::sort(a.begin(), a.end());
    for (auto& a : P.down) std::sort(a.begin(), a.end());
    P.labels.reserve(static_cast<size_t>(n));
    for (const auto& c : table.classes) P.labels.push_back(p.word_to_string(c.rep));
    if (!P.labels.empty()) P.labels[0] = "e";
    P.validate();
    return P;
}

}  // namespace upho
