#include "uphocore/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace upho::oracle {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// words encoded base r, most significant letter first, so that numeric order
// equals lexicographic order within a length
std::uint64_t encode(const Word& w, int r) {
    std::uint64_t code = 0;
    for (char ch : w) code = code * static_cast<std::uint64_t>(r) + static_cast<unsigned char>(ch);
    return code;
}

Word decode(std::uint64_t code, int r, int len) {
    Word w(static_cast<size_t>(len), '\0');
    for (int i = len - 1; i >= 0; --i) {
        w[static_cast<size_t>(i)] = static_cast<char>(code % static_cast<std::uint64_t>(r));
        code /= static_cast<std::uint64_t>(r);
    }
    return w;
}

std::uint64_t pow_u(int r, int l) {
    std::uint64_t x = 1;
    for (int i = 0; i < l; ++i) x *= static_cast<std::uint64_t>(r);
    return x;
}

// per-length union-find over all r^l words, merged across single rewrites
UnionFind close_length(const Presentation& p, int len) {
    int r = p.rank();
    std::uint64_t n = pow_u(r, len);
    if (n > 20'000'000) throw std::invalid_argument("oracle: word space too large");
    UnionFind uf(n);
    for (std::uint64_t code = 0; code < n; ++code) {
        Word w = decode(code, r, len);
        for (const auto& [lhs, rhs] : p.relations) {
            int k = static_cast<int>(lhs.size());
            if (k > len) continue;
            for (int pos = 0; pos + k <= len; ++pos) {
                if (w.compare(static_cast<size_t>(pos), static_cast<size_t>(k), lhs) == 0) {
                    Word v = w;
                    v.replace(static_cast<size_t>(pos), static_cast<size_t>(k), rhs);
                    uf.unite(static_cast<std::uint32_t>(code), static_cast<std::uint32_t>(encode(v, r)));
                }
                if (w.compare(static_cast<size_t>(pos), static_cast<size_t>(k), rhs) == 0) {
                    Word v = w;
                    v.replace(static_cast<size_t>(pos), static_cast<size_t>(k), lhs);
                    uf.unite(static_cast<std::uint32_t>(code), static_cast<std::uint32_t>(encode(v, r)));
                }
            }
        }
    }
    return uf;
}

}  // namespace

BruteClasses brute_congruence(const Presentation& p, int depth) {
    p.validate();
    BruteClasses out;
    int r = p.rank();
    for (int len = 0; len <= depth; ++len) {
        auto uf = close_length(p, len);
        std::uint64_t n = pow_u(r, len);
        std::vector<Word> reps;
        for (std::uint64_t code = 0; code < n; ++code)
            if (uf.find(static_cast<std::uint32_t>(code)) == code)
                reps.push_back(decode(code, r, len));  // first of its root = lex-least
        out.counts.push_back(reps.size());
        out.reps_by_length.push_back(std::move(reps));
    }
    return out;
}

TruncatedPoset brute_divisibility(const Presentation& p, int depth) {
    int r = p.rank();
    std::vector<UnionFind> ufs;
    for (int len = 0; len <= depth; ++len) ufs.push_back(close_length(p, len));
    // class ids: lengths ascending, roots (lex-least codes) ascending
    std::vector<std::map<std::uint64_t, NodeId>> id_of(static_cast<size_t>(depth) + 1);
    std::vector<std::size_t> sizes;
    NodeId next = 0;
    for (int len = 0; len <= depth; ++len) {
        std::uint64_t n = pow_u(r, len);
        std::size_t count = 0;
        for (std::uint64_t code = 0; code < n; ++code)
            if (ufs[static_cast<size_t>(len)].find(static_cast<std::uint32_t>(code)) == code) {
                id_of[static_cast<size_t>(len)][code] = next++;
                ++count;
            }
        sizes.push_back(count);
    }
    // covers from every word of every class, for full congruence cross-checking
    std::set<std::pair<NodeId, NodeId>> covers;
    for (int len = 0; len < depth; ++len) {
        std::uint64_t n = pow_u(r, len);
        for (std::uint64_t code = 0; code < n; ++code) {
            NodeId u = id_of[static_cast<size_t>(len)].at(
                ufs[static_cast<size_t>(len)].find(static_cast<std::uint32_t>(code)));
            for (int s = 0; s < r; ++s) {
                std::uint64_t ext = code * static_cast<std::uint64_t>(r) + static_cast<std::uint64_t>(s);
                NodeId v = id_of[static_cast<size_t>(len) + 1].at(
                    ufs[static_cast<size_t>(len) + 1].find(static_cast<std::uint32_t>(ext)));
                covers.emplace(u, v);
            }
        }
    }
    return make_poset(sizes, {covers.begin(), covers.end()});
}

namespace {

std::vector<std::vector<char>> reach_up(const TruncatedPoset& P) {
    int n = P.node_count();
    std::vector<std::vector<char>> reach(static_cast<size_t>(n),
                                         std::vector<char>(static_cast<size_t>(n), 0));
    std::function<void(int, std::vector<char>&)> dfs = [&](int v, std::vector<char>& row) {
        if (row[static_cast<size_t>(v)]) return;
        row[static_cast<size_t>(v)] = 1;
        for (NodeId w : P.up[static_cast<size_t>(v)]) dfs(w, row);
    };
    for (int v = 0; v < n; ++v) dfs(v, reach[static_cast<size_t>(v)]);
    return reach;
}

}  // namespace

std::vector<NodeId> brute_mub(const TruncatedPoset& P, NodeId x, NodeId y) {
    auto reach = reach_up(P);
    std::vector<NodeId> common;
    for (NodeId u = 0; u < P.node_count(); ++u)
        if (reach[static_cast<size_t>(x)][static_cast<size_t>(u)] &&
            reach[static_cast<size_t>(y)][static_cast<size_t>(u)])
            common.push_back(u);
    std::vector<NodeId> minimal;
    for (NodeId u : common) {
        bool is_min = true;
        for (NodeId w : common)
            if (w != u && reach[static_cast<size_t>(w)][static_cast<size_t>(u)]) {
                is_min = false;
                break;
            }
        if (is_min) minimal.push_back(u);
    }
    return minimal;
}

std::pair<int, int> brute_core_size(const TruncatedPoset& P) {
    auto reach = reach_up(P);
    const auto& atoms = P.atoms();
    if (atoms.empty()) return {0, -1};
    std::vector<NodeId> common;
    for (NodeId u = 0; u < P.node_count(); ++u) {
        bool all = true;
        for (NodeId a : atoms)
            if (!reach[static_cast<size_t>(a)][static_cast<size_t>(u)]) {
                all = false;
                break;
            }
        if (all) common.push_back(u);
    }
    std::vector<NodeId> minimal;
    for (NodeId u : common) {
        bool is_min = true;
        for (NodeId w : common)
            if (w != u && reach[static_cast<size_t>(w)][static_cast<size_t>(u)]) {
                is_min = false;
                break;
            }
        if (is_min) minimal.push_back(u);
    }
    if (minimal.size() != 1) return {0, -1};
    NodeId top = minimal[0];
    int count = 0;
    for (NodeId z = 0; z < P.node_count(); ++z)
        if (reach[static_cast<size_t>(z)][static_cast<size_t>(top)]) ++count;
    return {count, P.rank_of[static_cast<size_t>(top)]};
}

namespace {

bool extend(const TruncatedPoset& P, const TruncatedPoset& Q, std::vector<NodeId>& m,
            std::vector<char>& used, NodeId v, std::uint64_t* counter) {
    if (v == P.node_count()) {
        if (counter) {
            ++*counter;
            return false;  // keep enumerating
        }
        return true;
    }
    int rk = P.rank_of[static_cast<size_t>(v)];
    std::vector<NodeId> mapped_down;
    for (NodeId d : P.down[static_cast<size_t>(v)]) mapped_down.push_back(m[static_cast<size_t>(d)]);
    std::sort(mapped_down.begin(), mapped_down.end());
    for (NodeId w : Q.ranks[static_cast<size_t>(rk)]) {
        if (used[static_cast<size_t>(w)]) continue;
        if (Q.down[static_cast<size_t>(w)] != mapped_down) continue;
        used[static_cast<size_t>(w)] = 1;
        m[static_cast<size_t>(v)] = w;
        if (extend(P, Q, m, used, v + 1, counter)) return true;
        used[static_cast<size_t>(w)] = 0;
        m[static_cast<size_t>(v)] = -1;
    }
    return false;
}

}  // namespace

bool brute_isomorphic(const TruncatedPoset& P, const TruncatedPoset& Q) {
    if (P.rank_sizes() != Q.rank_sizes() || P.edge_count() != Q.edge_count()) return false;
    std::vector<NodeId> m(static_cast<size_t>(P.node_count()), -1);
    std::vector<char> used(static_cast<size_t>(Q.node_count()), 0);
    return extend(P, Q, m, used, 0, nullptr);
}

std::uint64_t brute_automorphism_count(const TruncatedPoset& P) {
    std::vector<NodeId> m(static_cast<size_t>(P.node_count()), -1);
    std::vector<char> used(static_cast<size_t>(P.node_count()), 0);
    std::uint64_t counter = 0;
    extend(P, P, m, used, 0, &counter);
    return counter;
}

}  // namespace upho::oracle
