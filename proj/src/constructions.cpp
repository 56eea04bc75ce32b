#include "uphocore/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace upho {

int Partition::n() const { return std::accumulate(parts.begin(), parts.end(), 0); }

void Partition::validate() const {
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw std::invalid_argument("partition part must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

namespace {
void gen_partitions(int n, int max_part, std::vector<int>& acc, std::vector<Partition>& out) {
    if (n == 0) {
        out.push_back(Partition{acc});
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        acc.push_back(k);
        gen_partitions(n - k, k, acc, out);
        acc.pop_back();
    }
}
}  // namespace

std::vector<Partition> all_partitions(int n) {
    if (n < 0) throw std::invalid_argument("all_partitions: negative n");
    std::vector<Partition> out;
    std::vector<int> acc;
    gen_partitions(n, n, acc, out);
    return out;
}

std::size_t partition_count(int n) { return all_partitions(n).size(); }

void FiberFunction::validate() const {
    if (n <= 0 || static_cast<int>(values.size()) != n)
        throw std::invalid_argument("fiber function must be total on [n]");
    for (int v : values)
        if (v < 0 || v >= n) throw std::invalid_argument("fiber function value out of range");
}

bool FiberFunction::is_constant() const {
    for (int v : values)
        if (v != values[0]) return false;
    return true;
}

bool FiberFunction::is_bijective() const {
    std::vector<char> hit(static_cast<size_t>(n), 0);
    for (int v : values) {
        if (hit[static_cast<size_t>(v)]) return false;
        hit[static_cast<size_t>(v)] = 1;
    }
    return true;
}

FiberFunction fiber_function_of_partition(const Partition& lambda) {
    lambda.validate();
    FiberFunction f;
    f.n = lambda.n();
    f.values.resize(static_cast<size_t>(f.n));
    int offset = 0;
    for (int part : lambda.parts) {
        for (int i = 0; i < part; ++i) f.values[static_cast<size_t>(offset + i)] = offset + part - 1;
        offset += part;
    }
    f.validate();
    return f;
}

namespace {
std::vector<std::string> s_names(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("s" + std::to_string(i));
    return names;
}
}  // namespace

Presentation monoid_Mf(const FiberFunction& f) {
    f.validate();
    std::vector<std::pair<Word, Word>> rels;
    for (int i = 0; i + 1 < f.n; ++i)
        rels.emplace_back(word_of({i, f.values[static_cast<size_t>(i)]}),
                          word_of({i + 1, f.values[static_cast<size_t>(i + 1)]}));
    return make_presentation(s_names(f.n), std::move(rels));
}

Presentation monoid_free_commutative(int n) {
    if (n < 1) throw std::invalid_argument("monoid_free_commutative: n must be positive");
    std::vector<std::pair<Word, Word>> rels;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rels.emplace_back(word_of({i, j}), word_of({j, i}));
    return make_presentation(s_names(n), std::move(rels));
}

Presentation monoid_shifted(int n) {
    if (n < 1) throw std::invalid_argument("monoid_shifted: n must be positive");
    std::vector<std::pair<Word, Word>> rels;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rels.emplace_back(word_of({i, j - 1}), word_of({j, i}));
    return make_presentation(s_names(n), std::move(rels));
}

TruncatedPoset build_Dn(int n, int depth) {
    if (n < 1 || depth < 0) throw std::invalid_argument("build_Dn: need n >= 1, depth >= 0");
    std::vector<std::size_t> sizes{1};
    std::vector<std::pair<NodeId, NodeId>> covers;
    std::vector<NodeId> prev{0};
    NodeId next = 1;
    for (int i = 1; i <= depth; ++i) {
        std::vector<NodeId> cur;
        NodeId dom = next++;
        cur.push_back(dom);
        for (NodeId p : prev) covers.emplace_back(p, dom);
        for (NodeId p : prev)
            for (int k = 0; k < n - 1; ++k) {
                NodeId v = next++;
                cur.push_back(v);
                covers.emplace_back(p, v);
            }
        sizes.push_back(cur.size());
        prev = std::move(cur);
    }
    return make_poset(sizes, covers);
}

TruncatedPoset build_Fn(int n, int depth) {
    if (n < 1 || depth < 0) throw std::invalid_argument("build_Fn: need n >= 1, depth >= 0");
    std::vector<std::size_t> sizes{1};
    std::vector<std::pair<NodeId, NodeId>> covers;
    std::vector<std::vector<NodeId>> up_of{{}};  // grows with the node count
    std::vector<NodeId> two_back;                // rank i-2
    std::vector<NodeId> prev{0};                 // rank i-1
    NodeId next = 1;
    for (int i = 1; i <= depth; ++i) {
        std::vector<NodeId> cur;
        auto new_node = [&]() {
            up_of.emplace_back();
            cur.push_back(next);
            return next++;
        };
        auto add_cover = [&](NodeId lo, NodeId hi) {
            covers.emplace_back(lo, hi);
            up_of[static_cast<size_t>(lo)].push_back(hi);
        };
        if (i == 1) {
            for (int k = 0; k < n; ++k) add_cover(0, new_node());
        } else {
            // flip of each element two ranks down, covering exactly its covers
            for (NodeId p : two_back) {
                std::vector<NodeId> qs = up_of[static_cast<size_t>(p)];
                NodeId flip = new_node();
                for (NodeId q : qs) add_cover(q, flip);
            }
            // privates bring every rank-(i-1) element up to exactly n covers
            for (NodeId p : prev) {
                int need = n - static_cast<int>(up_of[static_cast<size_t>(p)].size());
                for (int k = 0; k < need; ++k) add_cover(p, new_node());
            }
        }
        sizes.push_back(cur.size());
        two_back = std::move(prev);
        prev = std::move(cur);
    }
    return make_poset(sizes, covers);
}

TruncatedPoset build_Mn(int n) {
    if (n < 1) throw std::invalid_argument("build_Mn: n must be positive");
    std::vector<std::pair<NodeId, NodeId>> covers;
    for (int i = 1; i <= n; ++i) {
        covers.emplace_back(0, i);
        covers.emplace_back(i, n + 1);
    }
    return make_poset({1, static_cast<std::size_t>(n), 1}, covers);
}

TruncatedPoset build_Bn(int n) {
    if (n < 0) throw std::invalid_argument("build_Bn: negative n");
    int total = 1 << n;
    std::vector<std::pair<int, int>> order;  // (popcount, mask)
    for (int m = 0; m < total; ++m) order.emplace_back(__builtin_popcount(static_cast<unsigned>(m)), m);
    std::sort(order.begin(), order.end());
    std::vector<NodeId> id(static_cast<size_t>(total));
    std::vector<std::size_t> sizes(static_cast<size_t>(n) + 1, 0);
    for (size_t i = 0; i < order.size(); ++i) {
        id[static_cast<size_t>(order[i].second)] = static_cast<NodeId>(i);
        ++sizes[static_cast<size_t>(order[i].first)];
    }
    std::vector<std::pair<NodeId, NodeId>> covers;
    for (int m = 0; m < total; ++m)
        for (int b = 0; b < n; ++b)
            if (!(m & (1 << b)))
                covers.emplace_back(id[static_cast<size_t>(m)], id[static_cast<size_t>(m | (1 << b))]);
    return make_poset(sizes, covers);
}

TruncatedPoset build_chain(int depth) {
    if (depth < 0) throw std::invalid_argument("build_chain: negative depth");
    std::vector<std::size_t> sizes(static_cast<size_t>(depth) + 1, 1);
    std::vector<std::pair<NodeId, NodeId>> covers;
    for (int i = 0; i < depth; ++i) covers.emplace_back(i, i + 1);
    return make_poset(sizes, covers);
}

TruncatedPoset build_asym_core_example() {
    // 0 < a,b,c ; d > {a,b}, e > {b,c} ; top > {d,e}
    auto P = make_poset({1, 3, 2, 1},
                        {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 6}});
    P.labels = {"0", "a", "b", "c", "d", "e", "1"};
    return P;
}

}  // namespace upho
