#include "uphocore/poset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace upho {

const std::vector<NodeId> TruncatedPoset::empty_{};

int TruncatedPoset::edge_count() const {
    int e = 0;
    for (const auto& u : up) e += static_cast<int>(u.size());
    return e;
}

std::vector<std::size_t> TruncatedPoset::rank_sizes() const {
    std::vector<std::size_t> s;
    s.reserve(ranks.size());
    for (const auto& r : ranks) s.push_back(r.size());
    return s;
}

void TruncatedPoset::validate() const {
    if (depth + 1 != static_cast<int>(ranks.size()))
        throw std::invalid_argument("poset: depth does not match rank count");
    if (ranks.empty() || ranks[0].size() != 1)
        throw std::invalid_argument("poset: must have exactly one node at rank 0");
    int n = node_count();
    if (static_cast<int>(up.size()) != n || static_cast<int>(down.size()) != n)
        throw std::invalid_argument("poset: adjacency size mismatch");
    std::vector<char> seen(n, 0);
    int expect = 0;
    for (int r = 0; r <= depth; ++r) {
        for (NodeId v : ranks[static_cast<size_t>(r)]) {
            if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
                throw std::invalid_argument("poset: bad node id in ranks");
            if (v != expect++)
                throw std::invalid_argument("poset: node ids must be dense and rank-sorted");
            seen[static_cast<size_t>(v)] = 1;
            if (rank_of[static_cast<size_t>(v)] != r)
                throw std::invalid_argument("poset: rank_of mismatch");
        }
    }
    for (NodeId v = 0; v < n; ++v) {
        if (rank_of[static_cast<size_t>(v)] >= 1 && down[static_cast<size_t>(v)].empty())
            throw std::invalid_argument("poset: node of positive rank without down-cover");
        if (!std::is_sorted(up[static_cast<size_t>(v)].begin(), up[static_cast<size_t>(v)].end()) ||
            std::adjacent_find(up[static_cast<size_t>(v)].begin(), up[static_cast<size_t>(v)].end()) !=
                up[static_cast<size_t>(v)].end())
            throw std::invalid_argument("poset: up adjacency not sorted/duplicate-free");
        for (NodeId w : up[static_cast<size_t>(v)]) {
            if (rank_of[static_cast<size_t>(w)] != rank_of[static_cast<size_t>(v)] + 1)
                throw std::invalid_argument("poset: cover edge not between consecutive ranks");
            if (!std::binary_search(down[static_cast<size_t>(w)].begin(),
                                    down[static_cast<size_t>(w)].end(), v))
                throw std::invalid_argument("poset: up/down adjacency not mutually inverse");
        }
        for (NodeId w : down[static_cast<size_t>(v)])
            if (!std::binary_search(up[static_cast<size_t>(w)].begin(),
                                    up[static_cast<size_t>(w)].end(), v))
                throw std::invalid_argument("poset: down/up adjacency not mutually inverse");
    }
    if (colored) {
        for (NodeId v = 0; v < n; ++v)
            for (NodeId w : up[static_cast<size_t>(v)])
                if (!edge_color.count(edge_key(v, w)))
                    throw std::invalid_argument("poset: colored but an edge has no color");
    }
}

TruncatedPoset make_poset(const std::vector<std::size_t>& rank_sizes,
                          const std::vector<std::pair<NodeId, NodeId>>& covers) {
    TruncatedPoset P;
    P.depth = static_cast<int>(rank_sizes.size()) - 1;
    int next = 0;
    for (std::size_t r = 0; r < rank_sizes.size(); ++r) {
        std::vector<NodeId> ids;
        for (std::size_t i = 0; i < rank_sizes[r]; ++i) {
            ids.push_back(next++);
            P.rank_of.push_back(static_cast<int>(r));
        }
        P.ranks.push_back(std::move(ids));
    }
    P.up.resize(static_cast<size_t>(next));
    P.down.resize(static_cast<size_t>(next));
    for (auto [u, v] : covers) {
        P.up[static_cast<size_t>(u)].push_back(v);
        P.down[static_cast<size_t>(v)].push_back(u);
    }
    for (auto& a : P.up) std::sort(a.begin(), a.end());
    for (auto& a : P.down) std::sort(a.begin(), a.end());
    P.validate();
    return P;
}

TruncatedPoset truncate(const TruncatedPoset& P, int d) {
    if (d >= P.depth) return P;
    if (d < 0) throw std::invalid_argument("truncate: negative depth");
    TruncatedPoset Q;
    Q.depth = d;
    Q.ranks.assign(P.ranks.begin(), P.ranks.begin() + d + 1);
    int n = 0;
    for (const auto& r : Q.ranks) n += static_cast<int>(r.size());
    Q.rank_of.assign(P.rank_of.begin(), P.rank_of.begin() + n);
    Q.up.resize(static_cast<size_t>(n));
    Q.down.resize(static_cast<size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        Q.down[static_cast<size_t>(v)] = P.down[static_cast<size_t>(v)];
        if (P.rank_of[static_cast<size_t>(v)] < d) Q.up[static_cast<size_t>(v)] = P.up[static_cast<size_t>(v)];
    }
    Q.colored = P.colored;
    if (P.colored) {
        for (NodeId v = 0; v < n; ++v)
            for (NodeId w : Q.up[static_cast<size_t>(v)])
                Q.edge_color[edge_key(v, w)] = P.edge_color.at(edge_key(v, w));
    }
    if (!P.labels.empty())
        Q.labels.assign(P.labels.begin(), P.labels.begin() + n);
    return Q;
}

std::vector<Bits> down_closure(const TruncatedPoset& P) {
    size_t n = static_cast<size_t>(P.node_count());
    std::vector<Bits> below(n, Bits(n));
    for (size_t v = 0; v < n; ++v) {  // ids are rank-sorted, so down-covers precede v
        below[v].set(v);
        for (NodeId d : P.down[v]) below[v] |= below[static_cast<size_t>(d)];
    }
    return below;
}

std::vector<Bits> up_closure(const TruncatedPoset& P) {
    size_t n = static_cast<size_t>(P.node_count());
    std::vector<Bits> above(n, Bits(n));
    for (size_t i = n; i-- > 0;) {
        above[i].set(i);
        for (NodeId u : P.up[i]) above[i] |= above[static_cast<size_t>(u)];
    }
    return above;
}

MobiusVector mobius_from_bottom(const TruncatedPoset& P) {
    auto below = down_closure(P);
    size_t n = static_cast<size_t>(P.node_count());
    MobiusVector mv;
    mv.mu.assign(n, 0);
    mv.mu[0] = 1;
    for (size_t y = 1; y < n; ++y) {
        Int acc = 0;
        const Bits& b = below[y];
        for (size_t z = b.find_first(); z != Bits::npos; z = b.find_next(z))
            if (z != y) acc += mv.mu[z];
        mv.mu[y] = -acc;
    }
    return mv;
}

Series rank_series(const TruncatedPoset& P) {
    Series s;
    for (const auto& r : P.ranks) s.coeff.emplace_back(r.size());
    return s;
}

Series char_series(const TruncatedPoset& P, const MobiusVector& mv) {
    Series s;
    s.coeff.assign(static_cast<size_t>(P.depth) + 1, 0);
    for (int v = 0; v < P.node_count(); ++v)
        s.coeff[static_cast<size_t>(P.rank_of[static_cast<size_t>(v)])] += mv.mu[static_cast<size_t>(v)];
    return s;
}

Series char_series(const TruncatedPoset& P) { return char_series(P, mobius_from_bottom(P)); }

std::vector<NodeId> minimal_upper_bounds(const TruncatedPoset&, const std::vector<Bits>& ups,
                                         NodeId x, NodeId y) {
    Bits common = ups[static_cast<size_t>(x)] & ups[static_cast<size_t>(y)];
    std::vector<NodeId> out;
    for (size_t u = common.find_first(); u != Bits::npos; u = common.find_next(u)) {
        // minimal iff no strictly smaller element of `common` lies below u;
        // ids are rank-sorted so it suffices that u's strict up-set covers
        // the rest... instead test directly via the up-closure of u:
        // v < u and v in common would make u non-minimal, and then u is in
        // ups[v]. Scan the candidates found so far (all smaller ids).
        bool minimal = true;
        for (NodeId v : out)
            if (ups[static_cast<size_t>(v)].test(u)) { minimal = false; break; }
        if (minimal) out.push_back(static_cast<NodeId>(u));
    }
    return out;
}

std::vector<NodeId> maximal_lower_bounds(const TruncatedPoset&, const std::vector<Bits>& downs,
                                         NodeId x, NodeId y) {
    Bits common = downs[static_cast<size_t>(x)] & downs[static_cast<size_t>(y)];
    std::vector<NodeId> out;
    // iterate descending so already-accepted elements have larger ids
    std::vector<NodeId> members;
    for (size_t u = common.find_first(); u != Bits::npos; u = common.find_next(u))
        members.push_back(static_cast<NodeId>(u));
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
        bool maximal = true;
        for (NodeId v : out)
            if (downs[static_cast<size_t>(v)].test(static_cast<size_t>(*it))) { maximal = false; break; }
        if (maximal) out.push_back(*it);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::unordered_map<std::uint64_t, std::vector<NodeId>> joins_table(const TruncatedPoset& P) {
    auto ups = up_closure(P);
    std::unordered_map<std::uint64_t, std::vector<NodeId>> t;
    int n = P.node_count();
    for (NodeId x = 0; x < n; ++x)
        for (NodeId y = x; y < n; ++y)
            t[edge_key(x, y)] = minimal_upper_bounds(P, ups, x, y);
    return t;
}

std::unordered_map<std::uint64_t, std::vector<NodeId>> meets_table(const TruncatedPoset& P) {
    auto downs = down_closure(P);
    std::unordered_map<std::uint64_t, std::vector<NodeId>> t;
    int n = P.node_count();
    for (NodeId x = 0; x < n; ++x)
        for (NodeId y = x; y < n; ++y)
            t[edge_key(x, y)] = maximal_lower_bounds(P, downs, x, y);
    return t;
}

std::string LatticeVerdict::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case LatticeToDepth: os << "LatticeToDepth(" << depth << ")"; break;
        case JoinAmbiguity:
        case MeetAmbiguity:
            os << (kind == JoinAmbiguity ? "JoinAmbiguity(" : "MeetAmbiguity(") << x << ", " << y << ", {";
            for (size_t i = 0; i < witnesses.size(); ++i) os << (i ? ", " : "") << witnesses[i];
            os << "})";
            break;
        case JoinMissing: os << "JoinMissing(" << x << ", " << y << ") [inconclusive]"; break;
    }
    return os.str();
}

LatticeVerdict lattice_certificate(const TruncatedPoset& P) {
    auto ups = up_closure(P);
    auto downs = down_closure(P);
    int n = P.node_count();
    LatticeVerdict missing;
    bool have_missing = false;
    for (NodeId x = 0; x < n; ++x) {
        for (NodeId y = x + 1; y < n; ++y) {
            auto mub = minimal_upper_bounds(P, ups, x, y);
            // Two minimal upper bounds inside the truncation are final: down-sets
            // are complete, so both stay minimal in any extension and no least
            // upper bound can exist below either.
            if (mub.size() >= 2)
                return {LatticeVerdict::JoinAmbiguity, P.depth, x, y, std::move(mub)};
            // A pair with no visible upper bound is flagged only when the cut
            // leaves two ranks of headroom above the pair's rank sum; joins of
            // higher pairs routinely live above rank N and say nothing about
            // the full poset.
            if (mub.empty() && !have_missing &&
                P.rank_of[static_cast<size_t>(x)] + P.rank_of[static_cast<size_t>(y)] + 2 <= P.depth) {
                missing = {LatticeVerdict::JoinMissing, P.depth, x, y, {}};
                have_missing = true;
            }
            auto mlb = maximal_lower_bounds(P, downs, x, y);
            if (mlb.size() >= 2)
                return {LatticeVerdict::MeetAmbiguity, P.depth, x, y, std::move(mlb)};
        }
    }
    if (have_missing) return missing;
    return {LatticeVerdict::LatticeToDepth, P.depth, -1, -1, {}};
}

FilterResult induced_subposet(const TruncatedPoset& P, const std::vector<NodeId>& keep,
                              int base_rank, int new_depth) {
    FilterResult res;
    res.node_map = keep;  // keep is expected ascending, hence rank-sorted
    std::vector<NodeId> inv(static_cast<size_t>(P.node_count()), -1);
    for (size_t i = 0; i < keep.size(); ++i) inv[static_cast<size_t>(keep[i])] = static_cast<NodeId>(i);
    TruncatedPoset& Q = res.poset;
    Q.depth = new_depth;
    Q.ranks.assign(static_cast<size_t>(new_depth) + 1, {});
    for (size_t i = 0; i < keep.size(); ++i) {
        int r = P.rank_of[static_cast<size_t>(keep[i])] - base_rank;
        Q.ranks[static_cast<size_t>(r)].push_back(static_cast<NodeId>(i));
        Q.rank_of.push_back(r);
    }
    Q.up.resize(keep.size());
    Q.down.resize(keep.size());
    for (size_t i = 0; i < keep.size(); ++i) {
        for (NodeId w : P.up[static_cast<size_t>(keep[i])]) {
            NodeId j = inv[static_cast<size_t>(w)];
            if (j < 0) continue;
            Q.up[i].push_back(j);
            Q.down[static_cast<size_t>(j)].push_back(static_cast<NodeId>(i));
        }
    }
    Q.colored = P.colored;
    if (P.colored)
        for (size_t i = 0; i < keep.size(); ++i)
            for (NodeId j : Q.up[i])
                Q.edge_color[edge_key(static_cast<NodeId>(i), j)] =
                    P.edge_color.at(edge_key(keep[i], res.node_map[static_cast<size_t>(j)]));
    if (!P.labels.empty())
        for (NodeId v : keep) Q.labels.push_back(P.labels[static_cast<size_t>(v)]);
    Q.validate();
    return res;
}

CoreResult core(const TruncatedPoset& P) {
    CoreResult res;
    if (P.depth == 0 || P.atoms().empty()) {
        res.reason = "poset has no atoms";
        return res;
    }
    auto ups = up_closure(P);
    Bits common = ups[static_cast<size_t>(P.atoms()[0])];
    for (NodeId a : P.atoms()) common &= ups[static_cast<size_t>(a)];
    std::vector<NodeId> minimal;
    for (size_t u = common.find_first(); u != Bits::npos; u = common.find_next(u)) {
        bool is_min = true;
        for (NodeId v : minimal)
            if (ups[static_cast<size_t>(v)].test(u)) { is_min = false; break; }
        if (is_min) minimal.push_back(static_cast<NodeId>(u));
    }
    if (minimal.empty()) {
        res.reason = "CoreUndetermined: atoms have no common upper bound within rank " +
                     std::to_string(P.depth) + " (deepen N)";
        return res;
    }
    if (minimal.size() > 1) {
        res.reason = "CoreUndetermined: atoms have " + std::to_string(minimal.size()) +
                     " minimal common upper bounds within rank " + std::to_string(P.depth) +
                     " (deepen N)";
        return res;
    }
    NodeId top = minimal[0];
    auto downs = down_closure(P);
    std::vector<NodeId> keep;
    const Bits& b = downs[static_cast<size_t>(top)];
    for (size_t v = b.find_first(); v != Bits::npos; v = b.find_next(v))
        keep.push_back(static_cast<NodeId>(v));
    auto sub = induced_subposet(P, keep, 0, P.rank_of[static_cast<size_t>(top)]);
    res.determined = true;
    res.top = top;
    res.core = std::move(sub.poset);
    res.node_map = std::move(sub.node_map);
    return res;
}

FilterResult order_filter(const TruncatedPoset& P, NodeId p) {
    if (p < 0 || p >= P.node_count()) throw std::invalid_argument("order_filter: bad node");
    auto ups = up_closure(P);
    std::vector<NodeId> keep;
    const Bits& b = ups[static_cast<size_t>(p)];
    for (size_t v = b.find_first(); v != Bits::npos; v = b.find_next(v))
        keep.push_back(static_cast<NodeId>(v));
    int pr = P.rank_of[static_cast<size_t>(p)];
    return induced_subposet(P, keep, pr, P.depth - pr);
}

std::string UphoVerdict::to_string() const {
    return pass ? "Pass" : ("Fail(node " + std::to_string(failed_node) + ")");
}

TruncatedPoset direct_product(const TruncatedPoset& P, const TruncatedPoset& Q) {
    int N = std::min(P.depth, Q.depth);
    int rp = static_cast<int>(P.atoms().size());
    // enumerate pairs rank by rank, lexicographic (p, q) within a rank
    std::unordered_map<std::uint64_t, NodeId> id_of;
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::vector<std::size_t> sizes;
    for (int r = 0; r <= N; ++r) {
        std::size_t count = 0;
        for (NodeId p = 0; p < P.node_count(); ++p) {
            int pr = P.rank_of[static_cast<size_t>(p)];
            if (pr > r) break;
            for (NodeId q : Q.ranks[static_cast<size_t>(r - pr)]) {
                id_of[edge_key(p, q)] = static_cast<NodeId>(pairs.size());
                pairs.emplace_back(p, q);
                ++count;
            }
        }
        sizes.push_back(count);
    }
    std::vector<std::pair<NodeId, NodeId>> covers;
    bool colorable = P.colored && Q.colored;
    std::vector<int> cover_colors;
    for (size_t i = 0; i < pairs.size(); ++i) {
        auto [p, q] = pairs[i];
        int r = P.rank_of[static_cast<size_t>(p)] + Q.rank_of[static_cast<size_t>(q)];
        if (r == N) continue;
        for (NodeId p2 : P.up[static_cast<size_t>(p)]) {
            covers.emplace_back(static_cast<NodeId>(i), id_of.at(edge_key(p2, q)));
            if (colorable) cover_colors.push_back(P.edge_color.at(edge_key(p, p2)));
        }
        for (NodeId q2 : Q.up[static_cast<size_t>(q)]) {
            covers.emplace_back(static_cast<NodeId>(i), id_of.at(edge_key(p, q2)));
            if (colorable) cover_colors.push_back(rp + Q.edge_color.at(edge_key(q, q2)));
        }
    }
    TruncatedPoset R = make_poset(sizes, covers);
    if (colorable) {
        R.colored = true;
        for (size_t e = 0; e < covers.size(); ++e)
            R.edge_color[edge_key(covers[e].first, covers[e].second)] = cover_colors[e];
    }
    if (!P.labels.empty() && !Q.labels.empty()) {
        for (auto [p, q] : pairs)
            R.labels.push_back("(" + P.labels[static_cast<size_t>(p)] + "," +
                               Q.labels[static_cast<size_t>(q)] + ")");
    }
    return R;
}

}  // namespace upho
