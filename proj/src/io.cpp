#include "uphocore/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace upho {

using ordered_json = nlohmann::ordered_json;

std::string poset_to_json(const TruncatedPoset& P) {
    ordered_json j;
    j["depth"] = P.depth;
    j["ranks"] = P.ranks;
    std::vector<std::pair<NodeId, NodeId>> covers;
    for (NodeId v = 0; v < P.node_count(); ++v)
        for (NodeId w : P.up[static_cast<size_t>(v)]) covers.emplace_back(v, w);
    std::sort(covers.begin(), covers.end());
    auto& jc = j["covers"] = ordered_json::array();
    for (auto [u, v] : covers) jc.push_back(ordered_json::array({u, v}));
    if (P.colored) {
        auto& je = j["edge_colors"] = ordered_json::object();
        for (auto [u, v] : covers)
            je[std::to_string(u) + "-" + std::to_string(v)] = P.edge_color.at(edge_key(u, v));
    }
    if (!P.labels.empty()) j["labels"] = P.labels;
    return j.dump(2) + "\n";
}

TruncatedPoset poset_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("poset file is not valid JSON: ") + e.what());
    }
    if (!j.contains("depth") || !j.contains("ranks") || !j.contains("covers"))
        throw std::invalid_argument("poset file must have fields depth, ranks, covers");
    TruncatedPoset P;
    P.depth = j["depth"].get<int>();
    P.ranks = j["ranks"].get<std::vector<std::vector<NodeId>>>();
    int n = 0;
    for (const auto& r : P.ranks) n += static_cast<int>(r.size());
    P.rank_of.assign(static_cast<size_t>(n), 0);
    for (size_t r = 0; r < P.ranks.size(); ++r)
        for (NodeId v : P.ranks[r]) {
            if (v < 0 || v >= n) throw std::invalid_argument("poset file: node id out of range");
            P.rank_of[static_cast<size_t>(v)] = static_cast<int>(r);
        }
    P.up.resize(static_cast<size_t>(n));
    P.down.resize(static_cast<size_t>(n));
    for (const auto& e : j["covers"]) {
        NodeId u = e.at(0).get<NodeId>(), v = e.at(1).get<NodeId>();
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("poset file: cover endpoint out of range");
        P.up[static_cast<size_t>(u)].push_back(v);
        P.down[static_cast<size_t>(v)].push_back(u);
    }
    for (auto& a : P.up) std::sort(a.begin(), a.end());
    for (auto& a : P.down) std::sort(a.begin(), a.end());
    if (j.contains("edge_colors")) {
        P.colored = true;
        for (auto& [key, val] : j["edge_colors"].items()) {
            auto dash = key.find('-');
            if (dash == std::string::npos)
                throw std::invalid_argument("poset file: edge_colors key must be 'u-v'");
            NodeId u = std::stoi(key.substr(0, dash));
            NodeId v = std::stoi(key.substr(dash + 1));
            P.edge_color[edge_key(u, v)] = val.get<int>();
        }
    }
    if (j.contains("labels")) P.labels = j["labels"].get<std::vector<std::string>>();
    P.validate();
    return P;
}

namespace {

const char* kPalette[] = {"red",    "blue",   "forestgreen", "orange", "purple",
                          "brown",  "teal",   "magenta",     "gray40", "olive"};

std::string atom_name(const TruncatedPoset& P, int atom) {
    const auto& atoms = P.atoms();
    if (!P.labels.empty() && atom >= 0 && atom < static_cast<int>(atoms.size()))
        return P.labels[static_cast<size_t>(atoms[static_cast<size_t>(atom)])];
    return "s" + std::to_string(atom + 1);
}

}  // namespace

std::string emit_dot(const TruncatedPoset& P, bool colored) {
    if (colored && !P.colored)
        throw std::invalid_argument("emit_dot: colored rendering requested for an uncolored poset");
    std::ostringstream os;
    os << "digraph poset {\n  rankdir=BT;\n  node [shape=circle, width=0.25, label=\"\"];\n";
    for (int r = 0; r <= P.depth; ++r) {
        os << "  { rank=same;";
        for (NodeId v : P.ranks[static_cast<size_t>(r)]) os << " n" << v << ";";
        os << " }\n";
    }
    if (!P.labels.empty())
        for (NodeId v = 0; v < P.node_count(); ++v)
            os << "  n" << v << " [tooltip=\"" << P.labels[static_cast<size_t>(v)] << "\"];\n";
    for (NodeId v = 0; v < P.node_count(); ++v) {
        for (NodeId w : P.up[static_cast<size_t>(v)]) {
            os << "  n" << v << " -> n" << w;
            if (colored) {
                int c = P.edge_color.at(edge_key(v, w));
                os << " [color=" << kPalette[static_cast<size_t>(c) % 10] << ", label=\""
                   << atom_name(P, c) << "\"]";
            }
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string report_to_json(const RealizationReport& rep) {
    ordered_json j;
    j["input"] = rep.input_name;
    j["depth"] = rep.depth;
    j["probe_rank"] = rep.probe_rank;
    j["colorings_enumerated"] = rep.colorings_enumerated;
    j["caveat"] = rep.caveat;
    auto& survivors = j["survivor_classes"] = ordered_json::array();
    for (auto i : rep.survivor_classes) {
        const auto& c = rep.candidates[i];
        ordered_json s;
        s["coloring_index"] = c.coloring_index;
        s["monoid"] = c.presentation.to_mono();
        s["canonical_form"] = c.form.hex();
        s["cancellativity"] = c.cancellativity;
        s["lattice"] = c.lattice;
        s["core_matches_input"] = c.core_matches;
        s["core_stable_from_depth"] = c.stability_depth;
        s["decided_at_depth"] = c.decided_at_depth;
        survivors.push_back(std::move(s));
    }
    auto& und = j["undecided"] = ordered_json::array();
    for (auto i : rep.undecided) {
        ordered_json u;
        u["coloring_index"] = rep.candidates[i].coloring_index;
        u["monoid"] = rep.candidates[i].presentation.to_mono();
        u["status"] = rep.candidates[i].status;
        und.push_back(std::move(u));
    }
    auto& all = j["candidates"] = ordered_json::array();
    for (const auto& c : rep.candidates) {
        ordered_json e;
        e["coloring_index"] = c.coloring_index;
        e["status"] = c.status;
        all.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::string report_summary(const RealizationReport& rep, double wall_seconds) {
    std::ostringstream os;
    std::size_t survivors_total = 0, rejected = 0;
    for (const auto& c : rep.candidates) {
        if (c.survivor) ++survivors_total;
        else if (!c.undecided) ++rejected;
    }
    os << "realization of " << rep.input_name << " at depth " << rep.depth << ", probe rank "
       << rep.probe_rank << "\n"
       << "  colorings enumerated : " << rep.colorings_enumerated << "\n"
       << "  surviving candidates : " << survivors_total << "\n"
       << "  distinct classes     : " << rep.survivor_classes.size() << " (distinct at depth "
       << rep.depth << ")\n"
       << "  undecided            : " << rep.undecided.size() << "\n"
       << "  rejected             : " << rejected << "\n"
       << "  wall time            : " << wall_seconds << " s\n"
       << "  note: " << rep.caveat << "\n";
    for (auto i : rep.survivor_classes) {
        const auto& c = rep.candidates[i];
        os << "  class (coloring " << c.coloring_index << "): " << c.cancellativity << "; "
           << c.lattice << "; core ok; stable from depth " << c.stability_depth << "\n";
        std::istringstream mono(c.presentation.to_mono());
        std::string line;
        while (std::getline(mono, line)) os << "    " << line << "\n";
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace upho
