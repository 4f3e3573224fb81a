#include "rackq/cli.hpp"

#include "rackq/cochain.hpp"
#include "rackq/coset.hpp"
#include "rackq/errors.hpp"
#include "rackq/freequandle.hpp"
#include "rackq/geometry.hpp"
#include "rackq/io.hpp"
#include "rackq/permgroup.hpp"
#include "rackq/rack.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace rackq::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

std::string slurp(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* theory_name(Theory t) { return t == Theory::rack ? "rack" : "quandle"; }

Theory theory_from(const std::string& name) {
    if (name == "rack") return Theory::rack;
    if (name == "quandle") return Theory::quandle;
    throw ParseError("--theory must be rack or quandle, got '" + name + "'");
}

ordered_json envelope(const std::string& command, const std::string& input) {
    ordered_json j;
    j["tool"] = "rackq";
    j["version"] = kVersion;
    j["command"] = command;
    if (!input.empty()) j["input"] = input;
    return j;
}

struct Settings {
    std::string json_path;
    bool timings = false;
    std::optional<size_t> cap;
    size_t group_cap() const { return cap.value_or(kDefaultGroupCap); }
    size_t node_cap() const { return cap.value_or(kDefaultBallElementCap); }
    Caps cochain_caps() const {
        Caps c;
        c.group_cap = group_cap();
        return c;
    }
};

void write_text(const std::string& text, const Settings& s, std::ostream& out) {
    if (s.json_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(s.json_path, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + s.json_path + "'");
    f << text;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"finite rack and quandle geometry, cohomology, and free-quandle experiments"};
    app.name("rackq");
    app.require_subcommand(1);

    Settings settings;
    unsigned long long cap_arg = 0;
    bool cap_given = false;
    unsigned long long seed_arg = 0; // accepted for harness symmetry; commands are deterministic
    app.add_option("--json", settings.json_path, "write the report to this file instead of stdout");
    app.add_option("--cap", cap_arg, "enumeration cap (group elements / search nodes)")
        ->each([&](const std::string&) { cap_given = true; });
    app.add_option("--seed", seed_arg, "seed for randomized property tests (unused here)");
    app.add_flag("--timings", settings.timings, "include wall-clock timings in the report");

    // gen
    auto* gen = app.add_subcommand("gen", "construct a rack and print it as a rack JSON file");
    gen->fallthrough();
    std::string gen_kind;
    std::vector<std::string> gen_args;
    gen->add_option("kind", gen_kind, "trivial | dihedral | cyclic | product | coset")->required();
    gen->add_option("args", gen_args, "N, or two rack files, or a group-spec file");

    // single-FILE commands
    auto add_file_cmd = [&](const char* name, const char* desc, std::string* file) {
        auto* sub = app.add_subcommand(name, desc);
        sub->fallthrough();
        sub->add_option("file", *file, "rack file, or - for stdin")->required();
        return sub;
    };
    std::string verify_file, components_file, metric_file, inn_file, extension_file, betti_file,
        amenable_file, joyce_file, defect_file, quotient_file;
    add_file_cmd("verify", "validate a rack file against the axioms", &verify_file);
    add_file_cmd("components", "connected components of a rack", &components_file);
    auto* metric = add_file_cmd("metric", "within-component distance tables", &metric_file);
    bool metric_diameters = false, metric_pairs = false;
    metric->add_flag("--diameters", metric_diameters, "report diameters only (the default)");
    metric->add_flag("--pairs", metric_pairs, "include the full distance matrices");
    auto* inn = add_file_cmd("inn", "inner automorphism group", &inn_file);
    bool inn_norm = false;
    inn->add_flag("--norm", inn_norm, "include the conjugation-invariant word norm");
    auto* quotient = app.add_subcommand("quotient-check",
                                       "compare the rack metric of a coset rack against the "
                                       "quotient word metric");
    quotient->fallthrough();
    quotient->add_option("file", quotient_file, "group-spec file with PAIR lines, or - for stdin")
        ->required();
    add_file_cmd("extension", "canonical quandle quotient and its Lipschitz property",
                 &extension_file);
    auto* betti_cmd = add_file_cmd("betti", "Betti numbers of the rack cochain complex", &betti_file);
    std::string betti_theory = "rack";
    int betti_maxdeg = 3;
    betti_cmd->add_option("--theory", betti_theory, "rack | quandle");
    betti_cmd->add_option("--max-degree", betti_maxdeg, "highest degree to compute");
    auto* amenable = add_file_cmd("amenable-check",
                                  "Betti numbers against the finite-components prediction, with "
                                  "the invariant/complement split",
                                  &amenable_file);
    std::string amenable_theory = "rack";
    int amenable_maxdeg = 3;
    amenable->add_option("--theory", amenable_theory, "rack | quandle");
    amenable->add_option("--max-degree", amenable_maxdeg, "highest degree to compute");
    add_file_cmd("joyce", "coset representation over the inner group, with round-trip check",
                 &joyce_file);
    add_file_cmd("defect", "defect of distance-to-basepoint under the rack moves", &defect_file);

    // fq family (free quandle on x, y)
    auto* fq = app.add_subcommand("fq", "free quandle on two generators");
    fq->fallthrough();
    fq->require_subcommand(1);
    auto* fqd = fq->add_subcommand("distance", "distance between two elements");
    fqd->fallthrough();
    std::string fq_target, fq_source;
    int fq_radius = FqDistanceCaps{}.radius;
    int fq_conjlen = FqDistanceCaps{}.mover_len_cap;
    fqd->add_option("--target", fq_target, "element, e.g. y^3@x")->required();
    fqd->add_option("--source", fq_source, "element (default: the target's basepoint)");
    fqd->add_option("--radius", fq_radius, "search radius");
    fqd->add_option("--conjlen", fq_conjlen, "conjugator-length cap for the moves");
    auto* fqb = fq->add_subcommand("ball", "breadth-first ball around the basepoints");
    fqb->fallthrough();
    int ball_radius = 4, ball_conjlen = 2;
    bool ball_list = false;
    fqb->add_option("--radius", ball_radius, "ball radius");
    fqb->add_option("--conjlen", ball_conjlen, "conjugator-length cap for the moves");
    fqb->add_flag("--list", ball_list, "list the elements");
    auto* fqq = fq->add_subcommand("quasimorphism", "empirical defect of a lifted quasimorphism");
    fqq->fallthrough();
    std::string qm_name = "phi";
    int qm_radius = 4, qm_conjlen = 2;
    fqq->add_option("--qm", qm_name, "phi | brooks");
    fqq->add_option("--radius", qm_radius, "sample ball radius");
    fqq->add_option("--conjlen", qm_conjlen, "conjugator-length cap for sample moves and movers");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    if (cap_given) settings.cap = static_cast<size_t>(cap_arg);
    (void)seed_arg;

    auto t0 = std::chrono::steady_clock::now();
    try {
        ordered_json report;
        bool raw_rack_output = false;
        std::string raw_output;

        if (app.got_subcommand("gen")) {
            FiniteRack r = [&]() -> FiniteRack {
                auto need = [&](size_t n, const char* what) {
                    if (gen_args.size() != n)
                        throw ParseError(std::string("gen ") + gen_kind + " needs " + what);
                };
                auto num = [&](const std::string& s) {
                    try {
                        size_t pos = 0;
                        int v = std::stoi(s, &pos);
                        if (pos != s.size() || v < 1) throw std::invalid_argument("");
                        return v;
                    } catch (const std::exception&) {
                        throw ParseError("'" + s + "' is not a positive integer");
                    }
                };
                if (gen_kind == "trivial") {
                    need(1, "N");
                    return trivial_rack(num(gen_args[0]));
                }
                if (gen_kind == "dihedral") {
                    need(1, "N");
                    return dihedral_quandle(num(gen_args[0]));
                }
                if (gen_kind == "cyclic") {
                    need(1, "N");
                    return cyclic_rack(num(gen_args[0]));
                }
                if (gen_kind == "product") {
                    need(2, "two rack files");
                    if (gen_args[0] == "-" && gen_args[1] == "-")
                        throw ParseError("only one input may be stdin");
                    FiniteRack a = parse_rack(slurp(gen_args[0], in));
                    FiniteRack b = parse_rack(slurp(gen_args[1], in));
                    return product_rack(a, b);
                }
                if (gen_kind == "coset") {
                    need(1, "a group-spec file");
                    GroupSpec gs = parse_group_spec(slurp(gen_args[0], in));
                    return build_coset_rack(coset_spec_from_group_spec(gs), settings.group_cap())
                        .rack;
                }
                throw ParseError("unknown gen kind '" + gen_kind +
                                 "' (trivial, dihedral, cyclic, product, coset)");
            }();
            raw_rack_output = true;
            raw_output = emit_rack_json(r);
        } else if (app.got_subcommand("verify")) {
            FiniteRack r = parse_rack(slurp(verify_file, in));
            report = envelope("verify", verify_file);
            report["size"] = r.size();
            report["is_quandle"] = r.is_quandle();
            report["valid"] = true;
        } else if (app.got_subcommand("components")) {
            FiniteRack r = parse_rack(slurp(components_file, in));
            ComponentDecomposition c = components(r);
            report = envelope("components", components_file);
            report["size"] = r.size();
            report["count"] = c.count;
            report["component_of"] = c.component_of;
            report["representatives"] = c.representatives;
            report["members"] = c.members;
        } else if (app.got_subcommand("metric")) {
            FiniteRack r = parse_rack(slurp(metric_file, in));
            DistanceTable t = distance_table(r);
            report = envelope("metric", metric_file);
            report["size"] = r.size();
            report["components"] = t.comps.count;
            ordered_json diam = ordered_json::object();
            for (int c = 0; c < t.comps.count; ++c)
                diam[std::to_string(t.comps.representatives[static_cast<size_t>(c)])] =
                    t.diameters[static_cast<size_t>(c)];
            report["diameters"] = diam;
            if (metric_pairs) {
                ordered_json mats = ordered_json::object();
                for (int c = 0; c < t.comps.count; ++c) {
                    ordered_json entry;
                    entry["members"] = t.comps.members[static_cast<size_t>(c)];
                    entry["distances"] = t.matrix[static_cast<size_t>(c)];
                    mats[std::to_string(t.comps.representatives[static_cast<size_t>(c)])] = entry;
                }
                report["matrices"] = mats;
            }
        } else if (app.got_subcommand("inn")) {
            FiniteRack r = parse_rack(slurp(inn_file, in));
            PermGroup g = inner_group(r, settings.group_cap());
            report = envelope("inn", inn_file);
            report["size"] = r.size();
            report["order"] = g.order();
            if (inn_norm) {
                NormTable nt = word_norm(g, g.generators());
                std::vector<Perm> closure = conjugation_closure(g.generators(), g);
                report["closed_generating_set"] = closure.size();
                report["diameter"] = nt.diameter;
                ordered_json hist = ordered_json::object();
                for (unsigned d = 0; d <= nt.diameter; ++d) {
                    size_t count = 0;
                    for (unsigned v : nt.norm)
                        if (v == d) ++count;
                    hist[std::to_string(d)] = count;
                }
                report["norm_histogram"] = hist;
            }
        } else if (app.got_subcommand("quotient-check")) {
            GroupSpec gs = parse_group_spec(slurp(quotient_file, in));
            MetricQuotientCheck chk = check_metric_quotient_equality(
                coset_spec_from_group_spec(gs), settings.group_cap());
            report = envelope("quotient-check", quotient_file);
            report["size"] = chk.rack.rack.size();
            report["is_quandle"] = chk.rack.rack.is_quandle();
            report["group_order"] = chk.rack.group.order();
            report["equal"] = chk.equal;
            ordered_json comps = ordered_json::object();
            for (size_t c = 0; c < chk.members.size(); ++c) {
                ordered_json entry;
                entry["members"] = chk.members[c];
                entry["rack_metric"] = chk.rack_matrix[c];
                entry["quotient_metric"] = chk.quotient_matrix[c];
                comps[std::to_string(chk.members[c].front())] = entry;
            }
            report["components"] = comps;
        } else if (app.got_subcommand("extension")) {
            FiniteRack r = parse_rack(slurp(extension_file, in));
            QuandleQuotient q = canonical_quandle_quotient(r);
            LipschitzCheck lip = check_extension_lipschitz(r);
            EnvelopingAbelianization ab = enveloping_abelianization(r);
            report = envelope("extension", extension_file);
            report["size"] = r.size();
            report["quotient_size"] = q.quandle.size();
            report["quotient_is_quandle"] = q.quandle.is_quandle();
            report["projection"] = q.projection;
            report["lipschitz_ok"] = lip.ok;
            report["max_slack"] = lip.max_slack;
            report["components"] = components(r).count;
            report["abelianization_rank"] = ab.rank;
        } else if (app.got_subcommand("betti")) {
            FiniteRack r = parse_rack(slurp(betti_file, in));
            Theory theory = theory_from(betti_theory);
            if (betti_maxdeg < 1) throw ParseError("--max-degree must be at least 1");
            std::vector<size_t> b = betti_range(r, betti_maxdeg, theory, settings.cochain_caps());
            size_t pi0 = static_cast<size_t>(components(r).count);
            std::vector<size_t> expected;
            for (int k = 1; k <= betti_maxdeg; ++k)
                expected.push_back(expected_betti(pi0, k, theory));
            report = envelope("betti", betti_file);
            report["size"] = r.size();
            report["theory"] = theory_name(theory);
            report["max_degree"] = betti_maxdeg;
            report["pi0"] = pi0;
            report["betti"] = b;
            report["expected"] = expected;
            report["match"] = b == expected;
        } else if (app.got_subcommand("amenable-check")) {
            FiniteRack r = parse_rack(slurp(amenable_file, in));
            Theory theory = theory_from(amenable_theory);
            if (amenable_maxdeg < 1) throw ParseError("--max-degree must be at least 1");
            BettiReport br = verify_amenable_theorem(r, amenable_maxdeg, theory, amenable_file,
                                                     settings.cochain_caps());
            report = envelope("amenable-check", amenable_file);
            report["size"] = r.size();
            report["theory"] = theory_name(theory);
            report["max_degree"] = amenable_maxdeg;
            report["betti"] = br.betti;
            report["expected"] = br.expected;
            report["invariant_betti"] = br.invariant_betti;
            report["complement_betti"] = br.complement_betti;
            report["match_by_degree"] = br.match_by_degree;
            bool decomposition_ok = br.invariant_betti == br.betti;
            for (size_t v : br.complement_betti) decomposition_ok = decomposition_ok && v == 0;
            report["match"] = br.match;
            report["decomposition_ok"] = decomposition_ok;
            report["verified"] = br.match && decomposition_ok;
        } else if (app.got_subcommand("joyce")) {
            FiniteRack r = parse_rack(slurp(joyce_file, in));
            JoyceRepresentation j = joyce_representation(r, settings.group_cap());
            report = envelope("joyce", joyce_file);
            report["size"] = r.size();
            report["inn_order"] = j.realized.group.order();
            report["pairs"] = j.spec.pairs.size();
            report["to_rack"] = j.to_rack;
            report["verified"] = j.verified;
        } else if (app.got_subcommand("defect")) {
            FiniteRack r = parse_rack(slurp(defect_file, in));
            Rat d = delta_f_defect(r);
            report = envelope("defect", defect_file);
            report["size"] = r.size();
            report["components"] = components(r).count;
            report["max_defect"] = rat_string(d);
            report["bounded_by_one"] = d <= 1;
        } else if (fq->got_subcommand("distance")) {
            if (fq_radius < 0 || fq_conjlen < 0)
                throw ParseError("--radius and --conjlen must be non-negative");
            FQElement target = parse_fq_element(fq_target);
            FQElement source =
                fq_source.empty() ? fq_basepoint(target.generator) : parse_fq_element(fq_source);
            FqDistanceCaps caps;
            caps.radius = fq_radius;
            caps.mover_len_cap = fq_conjlen;
            caps.max_nodes = settings.node_cap();
            FqDistance d = fq_distance(source, target, 2, caps);
            report = envelope("fq distance", "");
            report["source"] = emit_fq_element(source);
            report["target"] = emit_fq_element(target);
            report["radius"] = caps.radius;
            report["conjlen"] = caps.mover_len_cap;
            report["lower"] = d.lower;
            if (d.upper)
                report["upper"] = *d.upper;
            else
                report["upper"] = nullptr;
            report["exact"] = d.exact();
        } else if (fq->got_subcommand("ball")) {
            if (ball_radius < 0 || ball_conjlen < 0)
                throw ParseError("--radius and --conjlen must be non-negative");
            BallResult ball = fq_ball(2, ball_radius, ball_conjlen, settings.node_cap());
            report = envelope("fq ball", "");
            report["radius"] = ball_radius;
            report["conjlen"] = ball_conjlen;
            report["total"] = ball.elements.size();
            report["level_sizes"] = ball.level_sizes;
            int filled = 0;
            for (size_t d = 0; d < ball.level_sizes.size(); ++d)
                if (ball.level_sizes[d] > 0) filled = static_cast<int>(d);
            report["levels_filled"] = filled;
            if (ball_list) {
                std::vector<std::string> names;
                names.reserve(ball.elements.size());
                for (const FQElement& e : ball.elements) names.push_back(emit_fq_element(e));
                report["elements"] = names;
            }
        } else if (fq->got_subcommand("quasimorphism")) {
            if (qm_radius < 0 || qm_conjlen < 0)
                throw ParseError("--radius and --conjlen must be non-negative");
            long (*qm)(const FQElement&) = nullptr;
            if (qm_name == "phi") qm = hat_phi;
            else if (qm_name == "brooks") qm = hat_brooks;
            else throw ParseError("--qm must be phi or brooks, got '" + qm_name + "'");
            BallResult sample = fq_ball(2, qm_radius, qm_conjlen, settings.node_cap());
            std::vector<FQElement> movers = fq_movers(2, qm_conjlen);
            DefectReport dr = quasimorphism_defect(
                [&](const FQElement& e) { return std::optional<Rat>(Rat(qm(e))); },
                sample.elements, movers);
            report = envelope("fq quasimorphism", "");
            report["qm"] = qm_name;
            report["sample_radius"] = qm_radius;
            report["conjlen"] = qm_conjlen;
            report["sample_size"] = sample.elements.size();
            report["movers"] = movers.size();
            report["pairs_checked"] = dr.pairs_checked;
            report["pairs_skipped"] = dr.pairs_skipped;
            report["max_defect"] = rat_string(dr.max_defect);
            if (dr.pairs_checked > 0) {
                report["argmax_element"] = emit_fq_element(dr.argmax_element);
                report["argmax_mover"] = emit_fq_element(dr.argmax_mover);
            }
        } else {
            throw ParseError("no subcommand given");
        }

        if (raw_rack_output) {
            write_text(raw_output, settings, out);
            return 0;
        }
        if (settings.timings) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
            report["timings"] = ordered_json{{"total_ms", ms}};
        }
        write_text(report.dump(2) + "\n", settings, out);
        return 0;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return 4;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 5;
    }
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cin, std::cout, std::cerr);
}

} // namespace rackq::cli
