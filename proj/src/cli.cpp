#include "uphocore/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "uphocore/coloring.hpp"
#include "uphocore/constructions.hpp"
#include "uphocore/element_table.hpp"
#include "uphocore/io.hpp"
#include "uphocore/iso.hpp"
#include "uphocore/repro.hpp"

namespace upho {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t default_word_cap() {
    if (const char* env = std::getenv("UPHOCORE_WORD_CAP")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return BuildLimits{}.word_cap;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": '" + tok + "' is not an integer");
        }
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

void put_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty())
        out << text;
    else
        write_file(out_path, text);
}

struct AnalyzeReport {
    std::string to_summary() const;
    std::string to_json() const;
    int depth = 0;
    std::vector<std::size_t> sizes;
    std::string f, chi, product;
    bool identity = false;
    std::string lattice;
    bool core_found = false;
    std::vector<std::size_t> core_sizes;
    std::string core_reason, core_form;
    int probe = 0;
    std::string upho;
};

std::string AnalyzeReport::to_summary() const {
    std::ostringstream os;
    os << "depth: " << depth << "\nrank sizes:";
    for (auto s : sizes) os << " " << s;
    os << "\nF(P;x)    = " << f << "\nchi*(P;x) = " << chi << "\nF*chi     = " << product
       << (identity ? "  (upho series identity holds to this depth)" : "") << "\nlattice: " << lattice
       << "\n";
    if (core_found) {
        os << "core: rank " << (core_sizes.size() - 1) << ", sizes";
        for (auto s : core_sizes) os << " " << s;
        os << ", canonical form " << core_form.substr(0, 16) << "...\n";
    } else {
        os << "core: " << core_reason << "\n";
    }
    os << "upho check (probe rank " << probe << "): " << upho << "\n";
    return os.str();
}

std::string AnalyzeReport::to_json() const {
    ordered_json j;
    j["depth"] = depth;
    j["rank_sizes"] = sizes;
    j["rank_series"] = f;
    j["char_series"] = chi;
    j["product"] = product;
    j["series_identity"] = identity;
    j["lattice"] = lattice;
    j["core_found"] = core_found;
    if (core_found) {
        j["core_rank_sizes"] = core_sizes;
        j["core_canonical_form"] = core_form;
    } else {
        j["core_reason"] = core_reason;
    }
    j["probe_rank"] = probe;
    j["upho_check"] = upho;
    return j.dump(2) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"uphocore — truncations of upper-homogeneous posets from monoid presentations"};
    app.require_subcommand(1);

    std::vector<std::string> in_paths;
    std::string out_path;
    int depth = 5;
    int probe = -1;
    int nval = 2;
    std::string f_list, lambda_list, format = "summary", mode = "plain";
    int workers = 0;
    std::uint64_t word_cap = default_word_cap();
    std::size_t chain_cap = 1'000'000;
    std::uint64_t seed = 20240;
    bool colored = false;

    auto add_common = [&](CLI::App* sub, bool needs_in) {
        auto* opt_in = sub->add_option("--in", in_paths, "input file");
        if (needs_in) opt_in->required();
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--format", format, "summary | structured | dot | mono");
        sub->add_option("--word-cap", word_cap,
                        "max enumerated words (env UPHOCORE_WORD_CAP)");
        sub->add_option("--chain-cap", chain_cap, "max saturated chains per atom pair");
        sub->add_option("--workers", workers, "worker threads (0 = all cores)");
        sub->add_option("--seed", seed, "seed for randomized suites");
    };

    auto* cmd_build = app.add_subcommand("build", "presentation (.mono) -> truncated poset file");
    add_common(cmd_build, true);
    cmd_build->add_option("--depth", depth, "truncation depth N")->required();

    auto* cmd_analyze = app.add_subcommand("analyze", "poset -> series, Moebius, core, verdicts");
    add_common(cmd_analyze, true);
    cmd_analyze->add_option("--probe", probe, "upho probe rank (default min(2, depth))");

    auto* cmd_cancel = app.add_subcommand("check-cancel", "left-cancellativity verdict for a presentation");
    add_common(cmd_cancel, true);
    cmd_cancel->add_option("--depth", depth, "table depth N")->required();

    auto* cmd_lattice = app.add_subcommand("check-lattice", "lattice certificate for a poset file");
    add_common(cmd_lattice, true);

    auto* cmd_upho = app.add_subcommand("check-upho", "upho self-similarity check for a poset file");
    add_common(cmd_upho, true);
    cmd_upho->add_option("--probe", probe, "probe rank (default min(2, depth))");
    cmd_upho->add_flag("--colored", colored, "require color-preserving filter isomorphisms");

    auto* cmd_core = app.add_subcommand("core", "interval from the bottom to the join of the atoms");
    add_common(cmd_core, true);

    auto* cmd_colorings = app.add_subcommand("colorings", "enumerate pre-upho colorings of a lattice");
    add_common(cmd_colorings, true);

    auto* cmd_realize = app.add_subcommand("realize", "list colorable upho lattices with the given core");
    add_common(cmd_realize, true);
    cmd_realize->add_option("--depth", depth, "candidate truncation depth N")->required();
    cmd_realize->add_option("--probe", probe, "upho probe rank (default 2)");

    auto* cmd_iso = app.add_subcommand("iso", "isomorphism test between two poset files");
    add_common(cmd_iso, true);
    cmd_iso->add_option("--mode", mode, "plain | colored | colored-canonical");

    auto* cmd_construct = app.add_subcommand("construct", "build a named poset or presentation");
    std::string which;
    cmd_construct
        ->add_option("name", which,
                     "dn | fn | mf | flambda | mn | bn | chain | freecomm | shifted | product")
        ->required();
    add_common(cmd_construct, false);
    cmd_construct->add_option("--n", nval, "parameter n");
    cmd_construct->add_option("--depth", depth, "truncation depth N");
    cmd_construct->add_option("--f", f_list, "fiber function values, comma separated, 1-based");
    cmd_construct->add_option("--lambda", lambda_list, "partition parts, comma separated");

    auto* cmd_dot = app.add_subcommand("dot", "DOT rendering of a poset file");
    add_common(cmd_dot, true);
    cmd_dot->add_flag("--colored", colored, "style edges by atom colors");

    auto* cmd_repro = app.add_subcommand("repro", "run the full reproduction suite");
    add_common(cmd_repro, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_build) {
            auto p = parse_presentation(read_file(in_paths.at(0)));
            auto table = build_element_table(p, depth, {word_cap});
            auto P = divisibility_covers(p, table);
            put_output(poset_to_json(P), out_path, out);
            std::ostringstream note;
            note << "built " << P.node_count() << " elements to depth " << depth << "; class counts:";
            for (auto c : table.counts()) note << " " << c;
            err << note.str() << "\n";
            return 0;
        }
        if (*cmd_analyze) {
            auto P = poset_from_json(read_file(in_paths.at(0)));
            AnalyzeReport rep;
            rep.depth = P.depth;
            rep.sizes = P.rank_sizes();
            auto fs = rank_series(P);
            auto chi = char_series(P);
            auto prod = mul_trunc(fs, chi);
            rep.f = fs.to_string();
            rep.chi = chi.to_string();
            rep.product = prod.to_string();
            rep.identity = prod == Series::one(P.depth);
            rep.lattice = lattice_certificate(P).to_string();
            auto cr = core(P);
            rep.core_found = cr.determined;
            if (cr.determined) {
                rep.core_sizes = cr.core.rank_sizes();
                rep.core_form = canonical_form(cr.core).hex();
            } else {
                rep.core_reason = cr.reason;
            }
            rep.probe = probe >= 0 ? probe : std::min(2, P.depth);
            rep.upho = upho_check(P, rep.probe).to_string();
            put_output(format == "structured" ? rep.to_json() : rep.to_summary(), out_path, out);
            return 0;
        }
        if (*cmd_cancel) {
            auto p = parse_presentation(read_file(in_paths.at(0)));
            auto table = build_element_table(p, depth, {word_cap});
            auto v = check_left_cancellative(p, table);
            out << v.to_string(p, table) << "\n";
            return v.violated() ? 1 : 0;
        }
        if (*cmd_lattice) {
            auto P = poset_from_json(read_file(in_paths.at(0)));
            auto v = lattice_certificate(P);
            out << v.to_string() << "\n";
            return v.is_lattice_to_depth() ? 0 : 1;
        }
        if (*cmd_upho) {
            auto P = poset_from_json(read_file(in_paths.at(0)));
            int k = probe >= 0 ? probe : std::min(2, P.depth);
            if (colored) {
                auto v = check_upho_coloring(P, coloring_of_poset(P), k);
                out << v.to_string() << "\n";
                return v.pass ? 0 : 1;
            }
            auto v = upho_check(P, k);
            out << v.to_string() << "\n";
            return v.pass ? 0 : 1;
        }
        if (*cmd_core) {
            auto P = poset_from_json(read_file(in_paths.at(0)));
            auto cr = core(P);
            if (!cr.determined) {
                out << cr.reason << "\n";
                return 1;
            }
            put_output(poset_to_json(cr.core), out_path, out);
            return 0;
        }
        if (*cmd_colorings) {
            auto L = poset_from_json(read_file(in_paths.at(0)));
            auto colorings = enumerate_pre_upho_colorings(L);
            if (format == "structured") {
                ordered_json j;
                j["count"] = colorings.size();
                auto& arr = j["colorings"] = ordered_json::array();
                for (const auto& c : colorings) {
                    ordered_json jc;
                    auto& edges = jc["edges"] = ordered_json::object();
                    for (auto [k, v] : c.edges) {
                        NodeId u = static_cast<NodeId>(k >> 32), w = static_cast<NodeId>(k & 0xffffffffu);
                        edges[std::to_string(u) + "-" + std::to_string(w)] = v;
                    }
                    jc["monoid"] = monoid_of_coloring(L, c, chain_cap).to_mono();
                    arr.push_back(std::move(jc));
                }
                put_output(j.dump(2) + "\n", out_path, out);
            } else {
                std::ostringstream os;
                os << colorings.size() << " pre-upho colorings\n";
                for (size_t i = 0; i < colorings.size(); ++i) {
                    os << "coloring " << i << ":";
                    for (auto [k, v] : colorings[i].edges)
                        os << " " << (k >> 32) << "-" << (k & 0xffffffffu) << ":s" << (v + 1);
                    os << "\n";
                    std::istringstream mono(monoid_of_coloring(L, colorings[i], chain_cap).to_mono());
                    std::string line;
                    while (std::getline(mono, line)) os << "  " << line << "\n";
                }
                put_output(os.str(), out_path, out);
            }
            return 0;
        }
        if (*cmd_realize) {
            auto L = poset_from_json(read_file(in_paths.at(0)));
            RealizeOptions opt;
            opt.depth = depth;
            opt.probe_rank = probe >= 0 ? probe : 2;
            opt.word_cap = word_cap;
            opt.chain_cap = chain_cap;
            opt.workers = workers;
            auto t0 = std::chrono::steady_clock::now();
            auto rep = realize_core(L, opt, in_paths.at(0));
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            put_output(format == "structured" ? report_to_json(rep) : report_summary(rep, secs),
                       out_path, out);
            return 0;
        }
        if (*cmd_iso) {
            if (in_paths.size() != 2)
                throw std::invalid_argument("iso needs exactly two --in poset files");
            auto P = poset_from_json(read_file(in_paths[0]));
            auto Q = poset_from_json(read_file(in_paths[1]));
            IsoMode m = mode == "colored"             ? IsoMode::ColoredExact
                        : mode == "colored-canonical" ? IsoMode::ColoredCanonical
                        : mode == "plain"             ? IsoMode::Plain
                                                      : throw std::invalid_argument(
                                                            "unknown --mode: " + mode);
            out << "certificate A: " << canonical_form(P, m).hex() << "\n";
            out << "certificate B: " << canonical_form(Q, m).hex() << "\n";
            auto w = find_isomorphism(P, Q, m);
            if (!w) {
                out << "not isomorphic\n";
                return 1;
            }
            out << "isomorphic; map:";
            for (size_t v = 0; v < w->to.size(); ++v) out << " " << v << "->" << w->to[v];
            out << "\n";
            return 0;
        }
        if (*cmd_construct) {
            Presentation pres;
            bool have_pres = false;
            TruncatedPoset P;
            if (which == "dn") {
                P = build_Dn(nval, depth);
            } else if (which == "fn") {
                P = build_Fn(nval, depth);
            } else if (which == "mn") {
                P = build_Mn(nval);
            } else if (which == "bn") {
                P = build_Bn(nval);
            } else if (which == "chain") {
                P = build_chain(depth);
            } else if (which == "mf") {
                if (f_list.empty()) throw std::invalid_argument("construct mf needs --f");
                auto vals = parse_int_list(f_list, "--f");
                FiberFunction f{static_cast<int>(vals.size()), {}};
                for (int v : vals) f.values.push_back(v - 1);
                pres = monoid_Mf(f);
                have_pres = true;
            } else if (which == "flambda") {
                if (lambda_list.empty()) throw std::invalid_argument("construct flambda needs --lambda");
                Partition lam{parse_int_list(lambda_list, "--lambda")};
                pres = monoid_Mf(fiber_function_of_partition(lam));
                have_pres = true;
            } else if (which == "freecomm") {
                pres = monoid_free_commutative(nval);
                have_pres = true;
            } else if (which == "shifted") {
                pres = monoid_shifted(nval);
                have_pres = true;
            } else if (which == "product") {
                if (in_paths.size() != 2)
                    throw std::invalid_argument("construct product needs exactly two --in poset files");
                P = direct_product(poset_from_json(read_file(in_paths[0])),
                                   poset_from_json(read_file(in_paths[1])));
            } else {
                throw std::invalid_argument("unknown construction: " + which);
            }
            if (have_pres) {
                if (format == "mono") {
                    put_output(pres.to_mono(), out_path, out);
                    return 0;
                }
                auto table = build_element_table(pres, depth, {word_cap});
                P = divisibility_covers(pres, table);
            }
            put_output(poset_to_json(P), out_path, out);
            return 0;
        }
        if (*cmd_dot) {
            auto P = poset_from_json(read_file(in_paths.at(0)));
            put_output(emit_dot(P, colored), out_path, out);
            return 0;
        }
        if (*cmd_repro) {
            auto results = repro::run_all(out, {seed, workers});
            return repro::all_passed(results) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace upho
