#include "uphocore/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <set>
#include <thread>

namespace upho {

std::string ColorVerdict::to_string() const {
    return pass ? "Pass" : ("Fail(node " + std::to_string(failed_node) + ")");
}

Coloring coloring_of_poset(const TruncatedPoset& P) {
    if (!P.colored) throw std::invalid_argument("coloring_of_poset: poset carries no colors");
    Coloring c;
    for (const auto& [k, v] : P.edge_color) c.edges.emplace(k, v);
    return c;
}

TruncatedPoset apply_coloring(const TruncatedPoset& P, const Coloring& c) {
    TruncatedPoset Q = P;
    Q.edge_color.clear();
    for (NodeId v = 0; v < Q.node_count(); ++v)
        for (NodeId w : Q.up[static_cast<size_t>(v)]) {
            auto it = c.edges.find(edge_key(v, w));
            if (it == c.edges.end())
                throw std::invalid_argument("apply_coloring: cover edge without a color");
            Q.edge_color[edge_key(v, w)] = it->second;
        }
    Q.colored = true;
    return Q;
}

ColorVerdict check_upho_coloring(const TruncatedPoset& P, const Coloring& c, int probe_rank) {
    if (probe_rank < 0 || probe_rank > P.depth)
        throw std::invalid_argument("check_upho_coloring: probe rank out of range");
    TruncatedPoset colored = apply_coloring(P, c);
    for (NodeId p = 0; p < colored.node_count(); ++p) {
        if (colored.rank_of[static_cast<size_t>(p)] > probe_rank) break;
        auto filter = order_filter(colored, p);
        auto target = truncate(colored, colored.depth - colored.rank_of[static_cast<size_t>(p)]);
        if (!find_isomorphism(filter.poset, target, IsoMode::ColoredExact)) return {false, p};
    }
    return {true, -1};
}

namespace {

// Demands a finite graded lattice whose maximum is the join of its atoms;
// throws std::invalid_argument otherwise.
void require_core_lattice(const TruncatedPoset& L, const char* who) {
    if (L.depth < 1 || L.ranks.back().size() != 1)
        throw std::invalid_argument(std::string(who) + ": input has no unique maximum");
    for (NodeId v = 0; v < L.node_count(); ++v)
        if (L.rank_of[static_cast<size_t>(v)] < L.depth && L.up[static_cast<size_t>(v)].empty())
            throw std::invalid_argument(std::string(who) +
                                        ": input has a maximal element below the top (not a lattice with 1)");
    auto verdict = lattice_certificate(L);
    if (!verdict.is_lattice_to_depth())
        throw std::invalid_argument(std::string(who) + ": input is not a lattice (" +
                                    verdict.to_string() + ")");
    auto cr = core(L);
    NodeId top = L.ranks.back()[0];
    if (!cr.determined || cr.top != top)
        throw std::invalid_argument(std::string(who) +
                                    ": the maximum is not the join of the atoms");
}

int atom_index(const TruncatedPoset& L, NodeId atom) {
    const auto& atoms = L.atoms();
    auto it = std::lower_bound(atoms.begin(), atoms.end(), atom);
    return static_cast<int>(it - atoms.begin());
}

void require_forced_edges(const TruncatedPoset& L, const Coloring& c, const char* who) {
    for (NodeId v = 0; v < L.node_count(); ++v)
        for (NodeId w : L.up[static_cast<size_t>(v)])
            if (!c.edges.count(edge_key(v, w)))
                throw std::invalid_argument(std::string(who) + ": cover edge without a color");
    for (NodeId s : L.atoms())
        if (c.at(L.bottom(), s) != atom_index(L, s))
            throw std::invalid_argument(std::string(who) + ": bottom edge color of atom " +
                                        std::to_string(s) + " is not the atom itself");
}

// color lookup that treats unassigned target edges as wildcards
struct PartialColors {
    const std::map<std::uint64_t, int>* edges;
    std::optional<int> at(NodeId u, NodeId v) const {
        auto it = edges->find(edge_key(u, v));
        if (it == edges->end()) return std::nullopt;
        return it->second;
    }
};

// Rank- and color-preserving embedding search: does the colored interval
// [x, J] of L embed into (L, target colors)? The interval's own colors must
// be fully assigned; target colors may be partial (wildcards).
bool interval_embeds(const TruncatedPoset& L, const std::vector<Bits>& ups,
                     const std::vector<Bits>& downs, NodeId x, NodeId J,
                     const std::map<std::uint64_t, int>& source_colors,
                     const PartialColors& target) {
    Bits member = ups[static_cast<size_t>(x)] & downs[static_cast<size_t>(J)];
    std::vector<NodeId> nodes;
    for (size_t v = member.find_first(); v != Bits::npos; v = member.find_next(v))
        nodes.push_back(static_cast<NodeId>(v));  // ascending, hence rank-sorted
    int base = L.rank_of[static_cast<size_t>(x)];
    std::vector<NodeId> image(nodes.size(), -1);
    std::vector<char> used(static_cast<size_t>(L.node_count()), 0);

    std::function<bool(size_t)> place = [&](size_t i) -> bool {
        if (i == nodes.size()) return true;
        NodeId z = nodes[i];
        int want_rank = L.rank_of[static_cast<size_t>(z)] - base;
        for (NodeId u : L.ranks[static_cast<size_t>(want_rank)]) {
            if (used[static_cast<size_t>(u)]) continue;
            bool ok = true;
            // order-embedding against earlier placements; covers must map to
            // covers with matching colors
            for (size_t j = 0; j < i && ok; ++j) {
                NodeId w = nodes[j];
                NodeId uw = image[j];
                bool rel_src = downs[static_cast<size_t>(z)].test(static_cast<size_t>(w));
                bool rel_img = downs[static_cast<size_t>(u)].test(static_cast<size_t>(uw));
                if (rel_src != rel_img) { ok = false; break; }
                if (rel_src &&
                    std::binary_search(L.up[static_cast<size_t>(w)].begin(),
                                       L.up[static_cast<size_t>(w)].end(), z)) {
                    if (!std::binary_search(L.up[static_cast<size_t>(uw)].begin(),
                                            L.up[static_cast<size_t>(uw)].end(), u)) {
                        ok = false;
                        break;
                    }
                    int want = source_colors.at(edge_key(w, z));
                    auto have = target.at(uw, u);
                    if (have && *have != want) { ok = false; break; }
                }
            }
            if (!ok) continue;
            used[static_cast<size_t>(u)] = 1;
            image[i] = u;
            if (place(i + 1)) return true;
            used[static_cast<size_t>(u)] = 0;
            image[i] = -1;
        }
        return false;
    };
    return place(0);
}

// Checks the pre-upho embedding condition for every interior node whose
// interval is fully colored by `assigned`; with partial target colors the
// check is a sound prune (wildcards only ever admit more embeddings).
std::optional<NodeId> pre_upho_failure(const TruncatedPoset& L, const std::vector<Bits>& ups,
                                       const std::vector<Bits>& downs,
                                       const std::map<std::uint64_t, int>& assigned) {
    NodeId top = L.ranks.back()[0];
    PartialColors target{&assigned};
    for (NodeId x = 1; x < L.node_count(); ++x) {
        if (x == top) continue;
        const auto& covers = L.up[static_cast<size_t>(x)];
        Bits common = ups[static_cast<size_t>(covers[0])];
        for (NodeId y : covers) common &= ups[static_cast<size_t>(y)];
        NodeId J = static_cast<NodeId>(common.find_first());  // least id = the join
        Bits member = ups[static_cast<size_t>(x)] & downs[static_cast<size_t>(J)];
        bool complete = true;
        for (size_t v = member.find_first(); v != Bits::npos && complete; v = member.find_next(v))
            for (NodeId w : L.up[v])
                if (member.test(static_cast<size_t>(w)) &&
                    !assigned.count(edge_key(static_cast<NodeId>(v), w))) {
                    complete = false;
                    break;
                }
        if (!complete) continue;
        if (!interval_embeds(L, ups, downs, x, J, assigned, target)) return x;
    }
    return std::nullopt;
}

}  // namespace

ColorVerdict check_pre_upho(const TruncatedPoset& L, const Coloring& c) {
    require_core_lattice(L, "check_pre_upho");
    require_forced_edges(L, c, "check_pre_upho");
    auto ups = up_closure(L);
    auto downs = down_closure(L);
    if (auto x = pre_upho_failure(L, ups, downs, c.edges)) return {false, *x};
    return {true, -1};
}

std::vector<Coloring> enumerate_pre_upho_colorings(const TruncatedPoset& L) {
    require_core_lattice(L, "enumerate_pre_upho_colorings");
    auto ups = up_closure(L);
    auto downs = down_closure(L);
    int r = static_cast<int>(L.atoms().size());

    std::map<std::uint64_t, int> assigned;
    for (NodeId s : L.atoms()) assigned[edge_key(L.bottom(), s)] = atom_index(L, s);
    std::vector<std::pair<NodeId, NodeId>> free_edges;
    for (NodeId v = 1; v < L.node_count(); ++v)
        for (NodeId w : L.up[static_cast<size_t>(v)]) free_edges.emplace_back(v, w);

    std::vector<Coloring> out;
    std::function<void(size_t)> assign = [&](size_t i) {
        if (pre_upho_failure(L, ups, downs, assigned)) return;
        if (i == free_edges.size()) {
            Coloring c;
            c.edges = assigned;
            out.push_back(std::move(c));
            return;
        }
        auto [v, w] = free_edges[i];
        for (int color = 0; color < r; ++color) {
            assigned[edge_key(v, w)] = color;
            assign(i + 1);
        }
        assigned.erase(edge_key(v, w));
    };
    assign(0);
    return out;
}

Presentation monoid_of_coloring(const TruncatedPoset& L, const Coloring& c,
                                std::size_t chain_cap) {
    require_core_lattice(L, "monoid_of_coloring");
    require_forced_edges(L, c, "monoid_of_coloring");
    if (!check_pre_upho(L, c).pass)
        throw std::invalid_argument("monoid_of_coloring: coloring is not pre-upho");

    const auto& atoms = L.atoms();
    int r = static_cast<int>(atoms.size());
    std::vector<std::string> names;
    {
        bool label_ok = !L.labels.empty();
        std::set<std::string> seen;
        if (label_ok)
            for (NodeId s : atoms) {
                const std::string& n = L.labels[static_cast<size_t>(s)];
                if (n.empty() || n.find_first_of(" \t=#") != std::string::npos ||
                    !seen.insert(n).second) {
                    label_ok = false;
                    break;
                }
            }
        if (label_ok)
            for (NodeId s : atoms) names.push_back(L.labels[static_cast<size_t>(s)]);
        else
            for (int i = 1; i <= r; ++i) names.push_back("s" + std::to_string(i));
    }

    auto ups = up_closure(L);
    auto downs = down_closure(L);
    std::vector<std::pair<Word, Word>> relations;
    std::set<std::pair<Word, Word>> seen_rel;
    for (int i = 0; i < r; ++i) {
        for (int j = i + 1; j < r; ++j) {
            Bits common = ups[static_cast<size_t>(atoms[static_cast<size_t>(i)])] &
                          ups[static_cast<size_t>(atoms[static_cast<size_t>(j)])];
            NodeId J = static_cast<NodeId>(common.find_first());
            // all saturated chains from the bottom to J, read as color words
            std::set<Word> words;
            std::size_t chains = 0;
            Word acc;
            std::function<void(NodeId)> walk = [&](NodeId v) {
                if (v == J) {
                    if (++chains > chain_cap)
                        throw ChainCapExceeded(
                            "monoid_of_coloring: more than " + std::to_string(chain_cap) +
                            " saturated chains to an atom-pair join; raise --chain-cap");
                    words.insert(acc);
                    return;
                }
                for (NodeId w : L.up[static_cast<size_t>(v)]) {
                    if (!downs[static_cast<size_t>(J)].test(static_cast<size_t>(w))) continue;
                    acc.push_back(static_cast<char>(c.at(v, w)));
                    walk(w);
                    acc.pop_back();
                }
            };
            walk(L.bottom());
            std::vector<Word> sorted(words.begin(), words.end());
            for (size_t t = 0; t + 1 < sorted.size(); ++t) {
                auto rel = std::make_pair(sorted[t], sorted[t + 1]);
                if (seen_rel.insert(rel).second) relations.push_back(rel);
            }
        }
    }
    return make_presentation(std::move(names), std::move(relations));
}

namespace {

CandidateReport evaluate_candidate(const TruncatedPoset& L, const Coloring& c, int index,
                                   int depth, int probe, const RealizeOptions& opt) {
    CandidateReport rep;
    rep.coloring_index = index;
    rep.decided_at_depth = depth;
    try {
        rep.presentation = monoid_of_coloring(L, c, opt.chain_cap);
    } catch (const ChainCapExceeded& e) {
        rep.status = std::string("rejected: ") + e.what();
        return rep;
    }
    ElementTable table;
    try {
        table = build_element_table(rep.presentation, depth, {opt.word_cap});
    } catch (const CapExceeded& e) {
        rep.status = std::string("rejected: ") + e.what();
        return rep;
    }
    auto P = divisibility_covers(rep.presentation, table);
    auto cancel = check_left_cancellative(rep.presentation, table);
    rep.cancellativity = cancel.to_string(rep.presentation, table);
    if (cancel.violated()) {
        rep.status = "rejected: not left-cancellative (" + rep.cancellativity + ")";
        return rep;
    }
    auto lat = lattice_certificate(P);
    rep.lattice = lat.to_string();
    if (lat.kind == LatticeVerdict::JoinAmbiguity || lat.kind == LatticeVerdict::MeetAmbiguity) {
        rep.status = "rejected: not a lattice (" + rep.lattice + ")";
        return rep;
    }
    if (lat.kind == LatticeVerdict::JoinMissing) {
        rep.status = "undecided: " + rep.lattice;
        rep.undecided = true;
        return rep;
    }
    auto cr = core(P);
    if (!cr.determined) {
        rep.status = "undecided: " + cr.reason;
        rep.undecided = true;
        return rep;
    }
    rep.core_matches = find_isomorphism(cr.core, L, IsoMode::Plain).has_value();
    if (!rep.core_matches) {
        rep.status = "rejected: core mismatch (core has " + std::to_string(cr.core.node_count()) +
                     " elements vs input " + std::to_string(L.node_count()) + ")";
        return rep;
    }
    if (!P.colored) {
        rep.status = "rejected: divisibility labels are not a coloring";
        return rep;
    }
    auto uc = check_upho_coloring(P, coloring_of_poset(P), probe);
    if (!uc.pass) {
        rep.status = "rejected: upho coloring check failed at node " +
                     std::to_string(uc.failed_node);
        return rep;
    }
    rep.survivor = true;
    rep.status = "survivor";
    return rep;
}

}  // namespace

RealizationReport realize_core(const TruncatedPoset& L, const RealizeOptions& opt,
                               const std::string& input_name) {
    RealizationReport report;
    report.input_name = input_name;
    report.depth = opt.depth;
    report.probe_rank = opt.probe_rank;
    if (opt.depth < L.depth + 1)
        throw std::invalid_argument("realize_core: depth must be at least rank(L)+1");

    auto colorings = enumerate_pre_upho_colorings(L);
    report.colorings_enumerated = colorings.size();
    report.candidates.resize(colorings.size());

    int workers = opt.workers > 0 ? opt.workers
                                  : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(colorings.size())));
    std::atomic<size_t> next{0};
    auto run = [&]() {
        for (size_t i = next.fetch_add(1); i < colorings.size(); i = next.fetch_add(1)) {
            auto rep = evaluate_candidate(L, colorings[i], static_cast<int>(i), opt.depth,
                                          opt.probe_rank, opt);
            if (rep.undecided) {
                // one automatic retry, one rank deeper, to separate truncation
                // artifacts from genuine failures
                auto deeper = evaluate_candidate(L, colorings[i], static_cast<int>(i),
                                                 opt.depth + 1, opt.probe_rank, opt);
                deeper.decided_at_depth = opt.depth + 1;
                rep = std::move(deeper);
            }
            report.candidates[i] = std::move(rep);
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }

    // survivors deduplicate by the plain canonical form of the depth-N
    // truncation, in coloring order
    std::set<std::string> seen_forms;
    for (size_t i = 0; i < report.candidates.size(); ++i) {
        auto& cand = report.candidates[i];
        if (cand.undecided) {
            report.undecided.push_back(i);
            continue;
        }
        if (!cand.survivor) continue;
        auto table = build_element_table(cand.presentation, opt.depth, {opt.word_cap});
        auto P = divisibility_covers(cand.presentation, table);
        cand.form = canonical_form(P, IsoMode::Plain);
        // stability: the shallowest depth from which the core stays put
        cand.stability_depth = opt.depth;
        auto core_form = canonical_form(core(P).core, IsoMode::Plain);
        for (int d = opt.depth - 1; d >= L.depth; --d) {
            auto cd = core(truncate(P, d));
            if (!cd.determined || !(canonical_form(cd.core, IsoMode::Plain) == core_form)) break;
            cand.stability_depth = d;
        }
        if (seen_forms.insert(cand.form.bytes).second) report.survivor_classes.push_back(i);
    }
    return report;
}

}  // namespace upho
