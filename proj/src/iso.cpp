#include "uphocore/iso.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

namespace upho {

namespace {

// ---------- byte encoding ----------

void put_u32(std::string& b, std::uint32_t x) {
    for (int i = 3; i >= 0; --i) b.push_back(static_cast<char>((x >> (8 * i)) & 0xff));
}

void put_i64(std::string& b, std::int64_t x) {
    auto u = static_cast<std::uint64_t>(x);
    put_u32(b, static_cast<std::uint32_t>(u >> 32));
    put_u32(b, static_cast<std::uint32_t>(u & 0xffffffffu));
}

void put_str(std::string& b, const std::string& s) {
    put_u32(b, static_cast<std::uint32_t>(s.size()));
    b += s;
}

// ---------- engine graph ----------

// Leveled digraph with opaque initial vertex colors and integer edge colors
// (-1 when colors are ignored). This is what refinement and search run on.
struct EGraph {
    int n = 0;
    std::vector<std::string> vcolor;
    std::vector<std::vector<std::pair<int, int>>> up, down;  // (neighbor, color), sorted
};

int edge_color_for(const TruncatedPoset& P, NodeId u, NodeId v, bool use_colors) {
    return use_colors ? P.edge_color.at(edge_key(u, v)) : -1;
}

EGraph unreduced_graph(const TruncatedPoset& P, bool use_colors) {
    EGraph g;
    g.n = P.node_count();
    g.vcolor.resize(static_cast<size_t>(g.n));
    g.up.resize(static_cast<size_t>(g.n));
    g.down.resize(static_cast<size_t>(g.n));
    for (int v = 0; v < g.n; ++v) {
        put_u32(g.vcolor[static_cast<size_t>(v)],
                static_cast<std::uint32_t>(P.rank_of[static_cast<size_t>(v)]));
        for (NodeId w : P.up[static_cast<size_t>(v)]) {
            int c = edge_color_for(P, v, w, use_colors);
            g.up[static_cast<size_t>(v)].emplace_back(w, c);
            g.down[static_cast<size_t>(w)].emplace_back(v, c);
        }
    }
    for (auto& a : g.up) std::sort(a.begin(), a.end());
    for (auto& a : g.down) std::sort(a.begin(), a.end());
    return g;
}

// ---------- structure reduction ----------
//
// Three isomorphism-complete rewrites shrink the graph before canonical
// search; each is deterministic and equivariant, so equal residuals (with
// vertex attributes) correspond exactly to isomorphic inputs.
//
//  U  a vertex covering its entire lower rank loses those edges and gains
//     a marker (plain mode only: the deleted edges carry colors otherwise);
//  F  a pendant (no up-edges, single down-edge) into a multiplicity-one
//     parent folds into that parent's attribute multiset;
//  T  vertices with identical level, marker, attribute, and neighbor sets
//     merge into one vertex carrying the total multiplicity.

struct AttrEntry {
    int color;
    std::string code;
    long long count;
};

std::string serialize_attr(std::vector<AttrEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const AttrEntry& a, const AttrEntry& b) {
        return std::tie(a.color, a.code) < std::tie(b.color, b.code);
    });
    std::string out;
    size_t i = 0;
    while (i < entries.size()) {
        size_t j = i;
        long long total = 0;
        while (j < entries.size() && entries[j].color == entries[i].color &&
               entries[j].code == entries[i].code)
            total += entries[j++].count;
        put_u32(out, static_cast<std::uint32_t>(entries[i].color + 1));
        put_str(out, entries[i].code);
        put_i64(out, total);
        i = j;
    }
    return out;
}

struct Reducer {
    std::vector<int> level, umark;
    std::vector<long long> mult;
    std::vector<std::vector<AttrEntry>> attr;
    std::vector<std::vector<std::pair<int, int>>> up, down;
    std::vector<char> alive;

    explicit Reducer(const TruncatedPoset& P, bool use_colors) {
        int n = P.node_count();
        level.resize(static_cast<size_t>(n));
        umark.assign(static_cast<size_t>(n), 0);
        mult.assign(static_cast<size_t>(n), 1);
        attr.resize(static_cast<size_t>(n));
        up.resize(static_cast<size_t>(n));
        down.resize(static_cast<size_t>(n));
        alive.assign(static_cast<size_t>(n), 1);
        for (int v = 0; v < n; ++v) {
            level[static_cast<size_t>(v)] = P.rank_of[static_cast<size_t>(v)];
            for (NodeId w : P.up[static_cast<size_t>(v)]) {
                int c = edge_color_for(P, v, w, use_colors);
                up[static_cast<size_t>(v)].emplace_back(w, c);
                down[static_cast<size_t>(w)].emplace_back(v, c);
            }
        }
        for (auto& a : up) std::sort(a.begin(), a.end());
        for (auto& a : down) std::sort(a.begin(), a.end());
    }

    std::string code_of(int v) const {
        std::string out;
        put_u32(out, static_cast<std::uint32_t>(umark[static_cast<size_t>(v)]));
        put_str(out, serialize_attr(attr[static_cast<size_t>(v)]));
        return out;
    }

    // U: delete the down-edges of every vertex whose down-set is its entire
    // lower rank. Applied once, from the original adjacency.
    void extract_universal(const TruncatedPoset& P) {
        std::vector<int> to_mark;
        for (int v = 0; v < P.node_count(); ++v) {
            int r = P.rank_of[static_cast<size_t>(v)];
            if (r >= 1 &&
                P.down[static_cast<size_t>(v)].size() == P.ranks[static_cast<size_t>(r - 1)].size())
                to_mark.push_back(v);
        }
        for (int v : to_mark) {
            umark[static_cast<size_t>(v)] = 1;
            for (auto [w, c] : down[static_cast<size_t>(v)]) {
                auto& a = up[static_cast<size_t>(w)];
                a.erase(std::remove(a.begin(), a.end(), std::make_pair(v, c)), a.end());
            }
            down[static_cast<size_t>(v)].clear();
        }
    }

    bool fold_round() {
        std::vector<int> foldable;
        int max_level = -1;
        for (size_t v = 0; v < alive.size(); ++v) {
            if (!alive[v] || !up[v].empty() || down[v].size() != 1) continue;
            if (mult[static_cast<size_t>(down[v][0].first)] != 1) continue;
            foldable.push_back(static_cast<int>(v));
            max_level = std::max(max_level, level[v]);
        }
        if (foldable.empty()) return false;
        bool folded = false;
        for (int v : foldable) {
            if (level[static_cast<size_t>(v)] != max_level) continue;
            auto [p, c] = down[static_cast<size_t>(v)][0];
            attr[static_cast<size_t>(p)].push_back({c, code_of(v), mult[static_cast<size_t>(v)]});
            auto& pu = up[static_cast<size_t>(p)];
            pu.erase(std::remove(pu.begin(), pu.end(), std::make_pair(v, c)), pu.end());
            alive[static_cast<size_t>(v)] = 0;
            folded = true;
        }
        return folded;
    }

    bool merge_round() {
        std::map<std::string, std::vector<int>> groups;
        for (size_t v = 0; v < alive.size(); ++v) {
            if (!alive[v]) continue;
            std::string key;
            put_u32(key, static_cast<std::uint32_t>(level[v]));
            put_u32(key, static_cast<std::uint32_t>(umark[v]));
            put_str(key, serialize_attr(attr[v]));
            put_u32(key, static_cast<std::uint32_t>(up[v].size()));
            for (auto [w, c] : up[v]) { put_u32(key, static_cast<std::uint32_t>(w)); put_u32(key, static_cast<std::uint32_t>(c + 1)); }
            put_u32(key, static_cast<std::uint32_t>(down[v].size()));
            for (auto [w, c] : down[v]) { put_u32(key, static_cast<std::uint32_t>(w)); put_u32(key, static_cast<std::uint32_t>(c + 1)); }
            groups[key].push_back(static_cast<int>(v));
        }
        std::vector<char> dead(alive.size(), 0);
        bool merged = false;
        for (auto& [key, members] : groups) {
            if (members.size() < 2) continue;
            int rep = members[0];  // members ascend: map iteration gives sorted vectors
            for (size_t i = 1; i < members.size(); ++i) {
                mult[static_cast<size_t>(rep)] += mult[static_cast<size_t>(members[i])];
                alive[static_cast<size_t>(members[i])] = 0;
                dead[static_cast<size_t>(members[i])] = 1;
            }
            merged = true;
        }
        if (merged) {
            auto filter = [&](std::vector<std::pair<int, int>>& a) {
                a.erase(std::remove_if(a.begin(), a.end(),
                                       [&](const std::pair<int, int>& e) {
                                           return dead[static_cast<size_t>(e.first)];
                                       }),
                        a.end());
            };
            for (size_t v = 0; v < alive.size(); ++v)
                if (alive[v]) { filter(up[v]); filter(down[v]); }
        }
        return merged;
    }

    EGraph residual() const {
        EGraph g;
        std::vector<int> id(alive.size(), -1);
        for (size_t v = 0; v < alive.size(); ++v)
            if (alive[v]) id[v] = g.n++;
        g.vcolor.resize(static_cast<size_t>(g.n));
        g.up.resize(static_cast<size_t>(g.n));
        g.down.resize(static_cast<size_t>(g.n));
        for (size_t v = 0; v < alive.size(); ++v) {
            if (!alive[v]) continue;
            int i = id[v];
            std::string& col = g.vcolor[static_cast<size_t>(i)];
            put_u32(col, static_cast<std::uint32_t>(level[v]));
            put_u32(col, static_cast<std::uint32_t>(umark[v]));
            put_i64(col, mult[v]);
            put_str(col, serialize_attr(attr[v]));
            for (auto [w, c] : up[v]) g.up[static_cast<size_t>(i)].emplace_back(id[static_cast<size_t>(w)], c);
            for (auto [w, c] : down[v]) g.down[static_cast<size_t>(i)].emplace_back(id[static_cast<size_t>(w)], c);
        }
        for (auto& a : g.up) std::sort(a.begin(), a.end());
        for (auto& a : g.down) std::sort(a.begin(), a.end());
        return g;
    }
};

EGraph reduced_graph(const TruncatedPoset& P, bool use_colors) {
    Reducer red(P, use_colors);
    if (!use_colors) red.extract_universal(P);
    while (true) {
        bool changed = red.fold_round();
        changed = red.merge_round() || changed;
        if (!changed) break;
    }
    return red.residual();
}

// ---------- partition refinement ----------

struct Partition {
    std::vector<std::vector<int>> cells;
    std::vector<int> cell_of;

    void rebuild_cell_of(int n) {
        cell_of.assign(static_cast<size_t>(n), -1);
        for (size_t c = 0; c < cells.size(); ++c)
            for (int v : cells[c]) cell_of[static_cast<size_t>(v)] = static_cast<int>(c);
    }
    bool discrete() const {
        for (const auto& c : cells)
            if (c.size() != 1) return false;
        return true;
    }
};

Partition initial_partition(const EGraph& g) {
    std::map<std::string, std::vector<int>> by_color;
    for (int v = 0; v < g.n; ++v) by_color[g.vcolor[static_cast<size_t>(v)]].push_back(v);
    Partition pi;
    for (auto& [col, vs] : by_color) pi.cells.push_back(std::move(vs));
    pi.rebuild_cell_of(g.n);
    return pi;
}

using Sig = std::vector<std::tuple<int, int, int>>;  // (dir, neighbor cell, color)

Sig signature(const EGraph& g, const Partition& pi, int v) {
    Sig s;
    s.reserve(g.up[static_cast<size_t>(v)].size() + g.down[static_cast<size_t>(v)].size());
    for (auto [w, c] : g.up[static_cast<size_t>(v)]) s.emplace_back(0, pi.cell_of[static_cast<size_t>(w)], c);
    for (auto [w, c] : g.down[static_cast<size_t>(v)]) s.emplace_back(1, pi.cell_of[static_cast<size_t>(w)], c);
    std::sort(s.begin(), s.end());
    return s;
}

void append_sig(std::string& trace, const Sig& s) {
    put_u32(trace, static_cast<std::uint32_t>(s.size()));
    for (auto [d, c, col] : s) {
        put_u32(trace, static_cast<std::uint32_t>(d));
        put_u32(trace, static_cast<std::uint32_t>(c));
        put_u32(trace, static_cast<std::uint32_t>(col + 1));
    }
}

// Refines to the coarsest stable partition; cells split by signature with
// sub-cells ordered by signature value, which keeps the cell order (and the
// trace) isomorphism-invariant. The trace records every split so that two
// lockstep refinements can be compared byte-for-byte.
void refine(const EGraph& g, Partition& pi, std::string* trace) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::vector<int>> next;
        next.reserve(pi.cells.size());
        for (size_t ci = 0; ci < pi.cells.size(); ++ci) {
            auto& cell = pi.cells[ci];
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::vector<std::pair<Sig, int>> keyed;
            keyed.reserve(cell.size());
            for (int v : cell) keyed.emplace_back(signature(g, pi, v), v);
            std::sort(keyed.begin(), keyed.end());
            size_t i = 0;
            bool split = false;
            while (i < keyed.size()) {
                size_t j = i;
                std::vector<int> group;
                while (j < keyed.size() && keyed[j].first == keyed[i].first)
                    group.push_back(keyed[j++].second);
                if (group.size() != cell.size()) split = true;
                if (trace) {
                    put_u32(*trace, static_cast<std::uint32_t>(ci));
                    put_u32(*trace, static_cast<std::uint32_t>(group.size()));
                    append_sig(*trace, keyed[i].first);
                }
                next.push_back(std::move(group));
                i = j;
            }
            if (split) changed = true;
        }
        if (changed) {
            pi.cells = std::move(next);
            pi.rebuild_cell_of(g.n);
        }
    }
}

int first_nonsingleton(const Partition& pi) {
    for (size_t c = 0; c < pi.cells.size(); ++c)
        if (pi.cells[c].size() > 1) return static_cast<int>(c);
    return -1;
}

Partition individualize(const Partition& pi, int n, int ci, int v) {
    Partition out;
    out.cells.reserve(pi.cells.size() + 1);
    for (size_t c = 0; c < pi.cells.size(); ++c) {
        if (static_cast<int>(c) != ci) {
            out.cells.push_back(pi.cells[c]);
            continue;
        }
        out.cells.push_back({v});
        std::vector<int> rest;
        for (int u : pi.cells[c])
            if (u != v) rest.push_back(u);
        out.cells.push_back(std::move(rest));
    }
    out.rebuild_cell_of(n);
    return out;
}

// ---------- canonical search ----------

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a); b = find(b);
        if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

bool graph_automorphism_valid(const EGraph& g, const std::vector<int>& sigma) {
    for (int v = 0; v < g.n; ++v) {
        if (g.vcolor[static_cast<size_t>(v)] != g.vcolor[static_cast<size_t>(sigma[static_cast<size_t>(v)])])
            return false;
        auto mapped = g.up[static_cast<size_t>(v)];
        for (auto& [w, c] : mapped) w = sigma[static_cast<size_t>(w)];
        std::sort(mapped.begin(), mapped.end());
        if (mapped != g.up[static_cast<size_t>(sigma[static_cast<size_t>(v)])]) return false;
    }
    return true;
}

struct CanonSearcher {
    const EGraph& g;
    std::string best_cert;
    std::vector<int> best_pos_to_vertex;
    bool have_best = false;
    std::vector<std::vector<int>> gens;
    std::vector<int> path;

    explicit CanonSearcher(const EGraph& graph) : g(graph) {}

    std::string certificate(const Partition& pi) const {
        std::vector<int> lab(static_cast<size_t>(g.n));
        for (size_t c = 0; c < pi.cells.size(); ++c) lab[static_cast<size_t>(pi.cells[c][0])] = static_cast<int>(c);
        std::string cert;
        put_u32(cert, static_cast<std::uint32_t>(g.n));
        for (size_t c = 0; c < pi.cells.size(); ++c)
            put_str(cert, g.vcolor[static_cast<size_t>(pi.cells[c][0])]);
        for (size_t c = 0; c < pi.cells.size(); ++c) {
            int v = pi.cells[c][0];
            std::vector<std::pair<int, int>> edges;
            for (auto [w, col] : g.up[static_cast<size_t>(v)])
                edges.emplace_back(lab[static_cast<size_t>(w)], col);
            std::sort(edges.begin(), edges.end());
            put_u32(cert, static_cast<std::uint32_t>(edges.size()));
            for (auto [w, col] : edges) {
                put_u32(cert, static_cast<std::uint32_t>(w));
                put_u32(cert, static_cast<std::uint32_t>(col + 1));
            }
        }
        return cert;
    }

    void leaf(const Partition& pi) {
        std::string cert = certificate(pi);
        if (!have_best || cert < best_cert) {
            best_cert = std::move(cert);
            best_pos_to_vertex.assign(static_cast<size_t>(g.n), -1);
            for (size_t c = 0; c < pi.cells.size(); ++c)
                best_pos_to_vertex[c] = pi.cells[c][0];
            have_best = true;
            return;
        }
        if (cert == best_cert) {
            // equal leaves yield an automorphism: map via the two labelings
            std::vector<int> sigma(static_cast<size_t>(g.n));
            bool identity = true;
            for (size_t c = 0; c < pi.cells.size(); ++c) {
                sigma[static_cast<size_t>(pi.cells[c][0])] = best_pos_to_vertex[c];
                if (pi.cells[c][0] != best_pos_to_vertex[c]) identity = false;
            }
            if (!identity && graph_automorphism_valid(g, sigma) &&
                std::find(gens.begin(), gens.end(), sigma) == gens.end())
                gens.push_back(std::move(sigma));
        }
    }

    UnionFind orbits_fixing_path() {
        UnionFind uf(g.n);
        for (const auto& sigma : gens) {
            bool fixes = true;
            for (int p : path)
                if (sigma[static_cast<size_t>(p)] != p) { fixes = false; break; }
            if (!fixes) continue;
            for (int v = 0; v < g.n; ++v) uf.unite(v, sigma[static_cast<size_t>(v)]);
        }
        return uf;
    }

    void explore(Partition pi) {
        refine(g, pi, nullptr);
        int ci = first_nonsingleton(pi);
        if (ci < 0) {
            leaf(pi);
            return;
        }
        std::vector<int> cands = pi.cells[static_cast<size_t>(ci)];
        std::vector<int> processed;
        for (int v : cands) {
            if (!processed.empty()) {
                auto uf = orbits_fixing_path();
                bool skip = false;
                for (int u : processed)
                    if (uf.find(u) == uf.find(v)) { skip = true; break; }
                if (skip) continue;
            }
            path.push_back(v);
            explore(individualize(pi, g.n, ci, v));
            path.pop_back();
            processed.push_back(v);
        }
    }
};

std::string engine_certificate(const EGraph& g) {
    CanonSearcher s(g);
    s.explore(initial_partition(g));
    return s.best_cert;
}

// ---------- joint search (witness isomorphisms) ----------

struct JointSearcher {
    const EGraph& gp;
    const EGraph& gq;
    bool enumerate_all = false;
    std::uint64_t count = 0;
    std::size_t max_stored = 1024;
    std::vector<std::vector<int>> found;

    bool verify(const std::vector<int>& m) const {
        for (int v = 0; v < gp.n; ++v) {
            if (gp.vcolor[static_cast<size_t>(v)] != gq.vcolor[static_cast<size_t>(m[static_cast<size_t>(v)])])
                return false;
            auto mapped = gp.up[static_cast<size_t>(v)];
            for (auto& [w, c] : mapped) w = m[static_cast<size_t>(w)];
            std::sort(mapped.begin(), mapped.end());
            if (mapped != gq.up[static_cast<size_t>(m[static_cast<size_t>(v)])]) return false;
        }
        return true;
    }

    // returns true to stop the search (single-witness mode, witness found)
    bool search(Partition pp, Partition pq) {
        std::string tp, tq;
        refine(gp, pp, &tp);
        refine(gq, pq, &tq);
        if (tp != tq || pp.cells.size() != pq.cells.size()) return false;
        for (size_t c = 0; c < pp.cells.size(); ++c)
            if (pp.cells[c].size() != pq.cells[c].size()) return false;
        int ci = first_nonsingleton(pp);
        if (ci < 0) {
            std::vector<int> m(static_cast<size_t>(gp.n));
            for (size_t c = 0; c < pp.cells.size(); ++c)
                m[static_cast<size_t>(pp.cells[c][0])] = pq.cells[c][0];
            if (!verify(m)) return false;
            ++count;
            if (found.size() < max_stored) found.push_back(std::move(m));
            return !enumerate_all;
        }
        int u = pp.cells[static_cast<size_t>(ci)][0];
        for (int w : pq.cells[static_cast<size_t>(ci)]) {
            if (search(individualize(pp, gp.n, ci, u), individualize(pq, gq.n, ci, w)))
                return true;
        }
        return false;
    }
};

bool quick_mismatch(const TruncatedPoset& P, const TruncatedPoset& Q) {
    return P.depth != Q.depth || P.node_count() != Q.node_count() ||
           P.rank_sizes() != Q.rank_sizes() || P.edge_count() != Q.edge_count();
}

void require_colored(const TruncatedPoset& P, const char* who) {
    if (!P.colored)
        throw std::invalid_argument(std::string(who) + ": colored mode requested for an uncolored poset");
}

int atom_color_count(const TruncatedPoset& P) {
    int r = static_cast<int>(P.atoms().size());
    for (const auto& [k, c] : P.edge_color)
        if (c < 0 || c >= r)
            throw std::invalid_argument("edge color " + std::to_string(c) +
                                        " outside the atom range of the poset");
    return r;
}

TruncatedPoset recolor(const TruncatedPoset& P, const std::vector<int>& tau) {
    TruncatedPoset Q = P;
    for (auto& [k, c] : Q.edge_color) c = tau[static_cast<size_t>(c)];
    return Q;
}

std::optional<IsoMap> witness_exact(const TruncatedPoset& P, const TruncatedPoset& Q,
                                    bool use_colors) {
    EGraph gp = unreduced_graph(P, use_colors);
    EGraph gq = unreduced_graph(Q, use_colors);
    JointSearcher js{gp, gq, false, 0, 1024, {}};
    Partition pp = initial_partition(gp);
    Partition pq = initial_partition(gq);
    if (pp.cells.size() != pq.cells.size()) return std::nullopt;
    if (!js.search(std::move(pp), std::move(pq))) return std::nullopt;
    return IsoMap{js.found.front()};
}

}  // namespace

std::string CanonicalForm::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (unsigned char b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

bool IsoMap::is_identity() const {
    for (size_t i = 0; i < to.size(); ++i)
        if (to[i] != static_cast<NodeId>(i)) return false;
    return true;
}

CanonicalForm canonical_form(const TruncatedPoset& P, IsoMode mode) {
    CanonicalForm cf;
    switch (mode) {
        case IsoMode::Plain: {
            cf.bytes.push_back('P');
            put_u32(cf.bytes, static_cast<std::uint32_t>(P.depth));
            cf.bytes += engine_certificate(reduced_graph(P, false));
            return cf;
        }
        case IsoMode::ColoredExact: {
            require_colored(P, "canonical_form");
            cf.bytes.push_back('C');
            put_u32(cf.bytes, static_cast<std::uint32_t>(P.depth));
            cf.bytes += engine_certificate(reduced_graph(P, true));
            return cf;
        }
        case IsoMode::ColoredCanonical: {
            require_colored(P, "canonical_form");
            int r = atom_color_count(P);
            if (r > 8)
                throw std::invalid_argument(
                    "canonical_form: relabeling canonicalization over " + std::to_string(r) +
                    " atoms is impractical (limit 8)");
            std::vector<int> tau(static_cast<size_t>(r));
            std::iota(tau.begin(), tau.end(), 0);
            std::string best;
            bool first = true;
            do {
                std::string cert = engine_certificate(reduced_graph(recolor(P, tau), true));
                if (first || cert < best) { best = std::move(cert); first = false; }
            } while (std::next_permutation(tau.begin(), tau.end()));
            cf.bytes.push_back('K');
            put_u32(cf.bytes, static_cast<std::uint32_t>(P.depth));
            cf.bytes += best;
            return cf;
        }
    }
    throw std::logic_error("unreachable");
}

bool verify_isomorphism(const TruncatedPoset& P, const TruncatedPoset& Q, const IsoMap& m,
                        IsoMode mode) {
    int n = P.node_count();
    if (Q.node_count() != n || static_cast<int>(m.to.size()) != n) return false;
    std::vector<char> hit(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        NodeId w = m.to[static_cast<size_t>(v)];
        if (w < 0 || w >= n || hit[static_cast<size_t>(w)]) return false;
        hit[static_cast<size_t>(w)] = 1;
        if (P.rank_of[static_cast<size_t>(v)] != Q.rank_of[static_cast<size_t>(w)]) return false;
    }
    if (P.edge_count() != Q.edge_count()) return false;
    for (int v = 0; v < n; ++v) {
        for (NodeId u : P.up[static_cast<size_t>(v)]) {
            NodeId a = m.to[static_cast<size_t>(v)], b = m.to[static_cast<size_t>(u)];
            if (!std::binary_search(Q.up[static_cast<size_t>(a)].begin(),
                                    Q.up[static_cast<size_t>(a)].end(), b))
                return false;
            if (mode != IsoMode::Plain &&
                P.edge_color.at(edge_key(v, u)) != Q.edge_color.at(edge_key(a, b)))
                return false;
        }
    }
    return true;
}

std::optional<IsoMap> find_isomorphism(const TruncatedPoset& P, const TruncatedPoset& Q,
                                       IsoMode mode) {
    if (quick_mismatch(P, Q)) return std::nullopt;
    switch (mode) {
        case IsoMode::Plain:
            return witness_exact(P, Q, false);
        case IsoMode::ColoredExact:
            require_colored(P, "find_isomorphism");
            require_colored(Q, "find_isomorphism");
            return witness_exact(P, Q, true);
        case IsoMode::ColoredCanonical: {
            require_colored(P, "find_isomorphism");
            require_colored(Q, "find_isomorphism");
            int r = atom_color_count(P);
            if (atom_color_count(Q) != r) return std::nullopt;
            if (r > 8)
                throw std::invalid_argument("find_isomorphism: atom relabeling over " +
                                            std::to_string(r) + " atoms is impractical (limit 8)");
            std::vector<int> tau(static_cast<size_t>(r));
            std::iota(tau.begin(), tau.end(), 0);
            do {
                if (auto m = witness_exact(recolor(P, tau), Q, true)) return m;
            } while (std::next_permutation(tau.begin(), tau.end()));
            return std::nullopt;
        }
    }
    throw std::logic_error("unreachable");
}

AutomorphismReport automorphisms(const TruncatedPoset& P, IsoMode mode, std::size_t max_stored) {
    bool use_colors = mode != IsoMode::Plain;
    if (use_colors) require_colored(P, "automorphisms");
    EGraph g = unreduced_graph(P, use_colors);
    JointSearcher js{g, g, true, 0, 1024, {}};
    js.max_stored = max_stored + 1;  // identity shows up among the leaves
    js.search(initial_partition(g), initial_partition(g));
    AutomorphismReport rep;
    rep.order = js.count;
    for (auto& m : js.found) {
        IsoMap im{std::move(m)};
        if (!im.is_identity()) rep.generators.push_back(std::move(im));
    }
    rep.generators_complete = js.count <= static_cast<std::uint64_t>(max_stored) + 1;
    return rep;
}

bool atom_action_is_trivial(const TruncatedPoset& P) {
    EGraph g = unreduced_graph(P, false);
    const auto& atoms = P.atoms();
    for (size_t i = 0; i < atoms.size(); ++i) {
        for (size_t j = 0; j < atoms.size(); ++j) {
            if (i == j) continue;
            Partition pp = initial_partition(g);
            Partition pq = initial_partition(g);
            int ci = pp.cell_of[static_cast<size_t>(atoms[i])];
            JointSearcher js{g, g, false, 0, 1024, {}};
            if (js.search(individualize(pp, g.n, ci, atoms[i]),
                          individualize(pq, g.n, ci, atoms[j])))
                return false;  // found an automorphism moving atom i to atom j
        }
    }
    return true;
}

UphoVerdict upho_check(const TruncatedPoset& P, int probe_rank) {
    if (probe_rank < 0 || probe_rank > P.depth)
        throw std::invalid_argument("upho_check: probe rank out of range");
    for (NodeId p = 0; p < P.node_count(); ++p) {
        if (P.rank_of[static_cast<size_t>(p)] > probe_rank) break;
        auto filter = order_filter(P, p);
        auto target = truncate(P, P.depth - P.rank_of[static_cast<size_t>(p)]);
        if (!find_isomorphism(filter.poset, target, IsoMode::Plain)) return {false, p};
    }
    return {true, -1};
}

}  // namespace upho
