/*
   Copyright 2026 The forma authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FORMA_CLI_HPP
#define FORMA_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forma/campaign.hpp"
#include "forma/family.hpp"
#include "forma/report.hpp"
#include "forma/slice.hpp"
#include "forma/witness.hpp"

namespace forma::cli {

inline int default_workers() {
    if (const char* env = std::getenv("FORMA_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

namespace detail {

struct InputArgs {
    std::string ring_text;
    std::string ring_file;
    std::string poly_text;
    std::string poly_positional;
    std::string poly_file;
    std::string builtin;
    std::string field_text = "GF(2)";
};

struct LoadedInput {
    RingPtr ring;
    Poly poly;
    std::string source;  // canonical text of the polynomial
    std::string builtin;
    std::optional<Scalar> t0;  // for the deformation member builtin
};

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void add_input_options(CLI::App* cmd, InputArgs& args, bool with_poly = true) {
    cmd->add_option("--ring", args.ring_text, "ring declaration, e.g. \"GF(2)[x:1, y:1]\"");
    cmd->add_option("--ring-file", args.ring_file, "file holding a ring declaration");
    if (with_poly) {
        cmd->add_option("--poly", args.poly_text, "polynomial expression");
        cmd->add_option("expr", args.poly_positional, "polynomial expression (positional)");
        cmd->add_option("--poly-file", args.poly_file, "file holding a polynomial expression");
        cmd->add_option("--builtin", args.builtin,
                        "builtin input: paper-h | paper-h-t | paper-h-t:t0=<scalar> | "
                        "lemma10:m=<int>");
    }
    cmd->add_option("--field", args.field_text,
                    "coefficient field for builtin inputs (GF(p) or Q)");
}

inline LoadedInput load_builtin(const std::string& name, const FieldSpec& field) {
    LoadedInput in;
    in.builtin = name;
    if (name == "paper-h") {
        in.ring = quartic_family_ring(field);
        in.poly = build_h(in.ring);
    } else if (name == "paper-h-t") {
        in.ring = quartic_family_ring(field, true);
        in.poly = build_h_t(in.ring).H;
    } else if (name.rfind("paper-h-t:t0=", 0) == 0) {
        in.ring = quartic_family_ring(field);
        std::string val = name.substr(std::string("paper-h-t:t0=").size());
        Poly c = parse_poly(in.ring, val);
        if (!c.is_constant())
            throw Error(ErrorKind::InvalidInput, "t0 must be a scalar literal");
        Scalar t0 = c.is_zero() ? Scalar::zero(field) : c.terms()[0].second;
        in.t0 = t0;
        in.poly = h_at(in.ring, t0);
    } else if (name.rfind("lemma10:m=", 0) == 0) {
        int m = std::atoi(name.substr(std::string("lemma10:m=").size()).c_str());
        if (m < 1) throw Error(ErrorKind::InvalidInput, "lemma10 builtin needs m >= 1");
        InstantiationPlan plan{m, field};
        in.ring = instantiation_ring(plan);
        in.poly = instantiate(plan);
    } else {
        throw Error(ErrorKind::InvalidInput, "unknown builtin '" + name + "'");
    }
    in.source = print_poly(in.poly);
    return in;
}

inline LoadedInput load_input(const InputArgs& args, bool need_poly = true) {
    int sources = !args.poly_text.empty() + !args.poly_positional.empty() +
                  !args.poly_file.empty() + !args.builtin.empty();
    if (need_poly && sources != 1)
        throw Error(ErrorKind::InvalidInput,
                    "exactly one polynomial input (--poly, positional, --poly-file or "
                    "--builtin) is required");
    if (!args.builtin.empty()) return load_builtin(args.builtin, parse_field(args.field_text));

    LoadedInput in;
    std::string ring_text = args.ring_text;
    if (!args.ring_file.empty()) ring_text = slurp(args.ring_file);
    if (ring_text.empty())
        throw Error(ErrorKind::InvalidInput, "--ring (or --ring-file) is required");
    in.ring = parse_ring(ring_text);
    if (need_poly) {
        std::string poly_text = args.poly_text.empty() ? args.poly_positional : args.poly_text;
        if (!args.poly_file.empty()) poly_text = slurp(args.poly_file);
        in.poly = parse_poly(in.ring, poly_text);
        in.source = print_poly(in.poly);
    }
    return in;
}

inline Report input_report(const LoadedInput& in) {
    Report r;
    r["ring"] = print_ring(in.ring);
    if (!in.builtin.empty()) r["builtin"] = in.builtin;
    r["poly"] = in.source;
    r["digest"] = fnv1a_hex(print_ring(in.ring) + "|" + in.source);
    return r;
}

inline Report dim_report_body(const DimReport& d) {
    Report r;
    r["unit_ideal"] = d.unit_ideal;
    r["dimension"] = d.dimension;
    r["codimension"] = d.codimension;
    if (!d.unit_ideal) r["independent_set"] = d.independent_set;
    return r;
}

inline void emit(const Report& rep, std::ostream& out, const std::string& output_path) {
    std::string text = render_report(rep);
    out << text;
    if (!output_path.empty()) {
        std::ofstream f(output_path);
        if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + output_path);
        f << text;
    }
}

inline std::vector<Poly> parse_generators(const RingPtr& ring,
                                          const std::vector<std::string>& texts) {
    if (texts.empty()) throw Error(ErrorKind::InvalidInput, "at least one generator is required");
    std::vector<Poly> gens;
    for (const auto& t : texts) gens.push_back(parse_poly(ring, t));
    return gens;
}

inline TermOrder order_from(const std::string& name) {
    if (name == "grevlex") return TermOrder::grevlex();
    if (name == "lex") return TermOrder::lex();
    throw Error(ErrorKind::InvalidInput, "unknown order '" + name + "'");
}

}  // namespace detail

/// Full command-line surface. Deterministic reports for deterministic
/// inputs; the worker count can change which certificate is found, never a
/// value. Exit codes: 0 success, 2 parse/usage error, 3 a verification
/// command found a violated claim.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact strength computations for forms in weighted graded rings"};
    app.require_subcommand(1);

    detail::InputArgs in_args;
    std::string output_path;
    int workers = default_workers();
    // global options, accepted both before and after the subcommand name
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--output", output_path, "also write the report to this file");
        cmd->add_option("--workers", workers, "worker threads for searches");
    };
    add_common(&app);

    // ---- parse ----
    auto* cmd_parse = app.add_subcommand("parse", "parse and reprint a polynomial");
    add_common(cmd_parse);
    detail::add_input_options(cmd_parse, in_args);

    // ---- strength ----
    auto* cmd_strength = app.add_subcommand("strength", "strength of a form");
    add_common(cmd_strength);
    detail::add_input_options(cmd_strength, in_args);
    bool exact_mode = false, upper_mode = false;
    long max_r = 4;
    cmd_strength->add_flag("--exact", exact_mode, "exhaustive exact search (finite fields)");
    cmd_strength->add_flag("--upper", upper_mode, "certified upper bound only");
    cmd_strength->add_option("--max-r", max_r, "exact search bound on the length");

    // ---- slice-rank ----
    auto* cmd_slice = app.add_subcommand("slice-rank", "slice rank of a form");
    add_common(cmd_slice);
    detail::add_input_options(cmd_slice, in_args);

    // ---- gb / member / dim ----
    std::vector<std::string> generator_texts;
    std::string order_name = "grevlex";
    std::string member_f;
    auto* cmd_gb = app.add_subcommand("gb", "reduced Groebner basis of an ideal");
    add_common(cmd_gb);
    detail::add_input_options(cmd_gb, in_args, false);
    cmd_gb->add_option("--order", order_name, "term order: grevlex | lex");
    cmd_gb->add_option("generators", generator_texts, "ideal generators");

    auto* cmd_member = app.add_subcommand("member", "ideal membership test");
    add_common(cmd_member);
    detail::add_input_options(cmd_member, in_args, false);
    cmd_member->add_option("--order", order_name, "term order: grevlex | lex");
    cmd_member->add_option("--f", member_f, "polynomial to test")->required();
    cmd_member->add_option("generators", generator_texts, "ideal generators");

    auto* cmd_dim = app.add_subcommand("dim", "affine dimension of an ideal");
    add_common(cmd_dim);
    detail::add_input_options(cmd_dim, in_args, false);
    cmd_dim->add_option("--order", order_name, "term order: grevlex | lex");
    cmd_dim->add_option("generators", generator_texts, "ideal generators");

    // ---- sing-codim / ah-bound ----
    auto* cmd_sing = app.add_subcommand("sing-codim", "codimension of the singular locus");
    add_common(cmd_sing);
    detail::add_input_options(cmd_sing, in_args);
    auto* cmd_ah = app.add_subcommand("ah-bound", "singular-locus strength lower bound");
    add_common(cmd_ah);
    detail::add_input_options(cmd_ah, in_args);

    // ---- verify-paper ----
    auto* cmd_verify = app.add_subcommand(
        "verify-paper", "run the bundled verification battery for the quartic family");
    add_common(cmd_verify);
    int samples = 1000;
    uint64_t seed = 20260809;
    cmd_verify->add_option("--field", in_args.field_text, "coefficient field (finite)");
    cmd_verify->add_option("--samples", samples, "sample count for randomized witnesses");
    cmd_verify->add_option("--seed", seed, "seed for randomized witnesses");

    // ---- campaign ----
    auto* cmd_campaign =
        app.add_subcommand("campaign", "exhaustive length-3 search for the four-term quartic");
    add_common(cmd_campaign);
    CampaignConfig camp;
    std::string resume_path;
    cmd_campaign->add_option("--field", in_args.field_text, "coefficient field (finite)");
    cmd_campaign->add_option("--checkpoint", camp.checkpoint_path, "checkpoint file path");
    cmd_campaign->add_option("--resume", resume_path, "resume from this checkpoint");
    cmd_campaign->add_option("--budget-seconds", camp.budget_seconds,
                             "stop and report an ETA beyond this wall time");
    cmd_campaign->add_option("--cases", camp.only_cases, "restrict the r=3 shapes (subset of abcd)");
    cmd_campaign->add_flag("--skip-low-r", camp.skip_low_r, "skip the r=1,2 exhaustion phases");
    cmd_campaign->add_option("--chunk", camp.chunk_size, "first-factor indices per chunk");
    cmd_campaign->add_flag("--confirm", camp.confirmed, "confirm campaigns beyond GF(2)");

    std::vector<const char*> argv;
    argv.push_back("forma");
    for (auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        Report rep;
        int exit_code = 0;

        if (app.got_subcommand(cmd_parse)) {
            auto in = detail::load_input(in_args);
            rep["command"] = "parse";
            rep["input"] = detail::input_report(in);
            Report result;
            result["canonical"] = print_poly(in.poly);
            result["terms"] = in.poly.term_count();
            if (!in.poly.is_zero()) {
                auto d = weighted_degree(in.poly);
                result["degree"] = d.degree;
                result["homogeneous"] = d.homogeneous;
            }
            rep["result"] = result;
        } else if (app.got_subcommand(cmd_strength)) {
            auto in = detail::load_input(in_args);
            if (exact_mode && upper_mode)
                throw Error(ErrorKind::InvalidInput, "--exact and --upper are exclusive");
            rep["command"] = upper_mode ? "strength --upper" : "strength --exact";
            rep["input"] = detail::input_report(in);
            SearchReport sr;
            if (upper_mode) {
                UpperOptions opt;
                if (in.t0) opt.hints.push_back(decomposition_at(in.ring, *in.t0));
                sr = strength_upper(in.poly, opt);
            } else {
                sr = strength_exact(in.poly, SearchOptions{.r_max = max_r, .workers = workers});
            }
            rep["result"] = search_report_body(sr);
            rep["stats"] = search_report_stats(sr);
        } else if (app.got_subcommand(cmd_slice)) {
            auto in = detail::load_input(in_args);
            rep["command"] = "slice-rank";
            rep["input"] = detail::input_report(in);
            auto sr = slice_rank_exact(in.poly);
            rep["result"] = search_report_body(sr);
            rep["stats"] = search_report_stats(sr);
        } else if (app.got_subcommand(cmd_gb) || app.got_subcommand(cmd_dim) ||
                   app.got_subcommand(cmd_member)) {
            auto in = detail::load_input(in_args, false);
            auto gens = detail::parse_generators(in.ring, generator_texts);
            auto G = buchberger(gens, detail::order_from(order_name));
            Report input;
            input["ring"] = print_ring(in.ring);
            Report gtexts = Report::array();
            for (const auto& g : gens) gtexts.push_back(print_poly(g));
            input["generators"] = gtexts;
            std::string digest_src = print_ring(in.ring);
            for (const auto& g : gens) digest_src += "|" + print_poly(g);
            input["digest"] = fnv1a_hex(digest_src);
            rep["input"] = input;
            if (app.got_subcommand(cmd_gb)) {
                rep["command"] = "gb";
                Report basis = Report::array();
                for (const auto& g : G.generators) basis.push_back(print_poly(g));
                Report result;
                result["order"] = G.order.name();
                result["size"] = G.generators.size();
                result["basis"] = basis;
                rep["result"] = result;
            } else if (app.got_subcommand(cmd_member)) {
                rep["command"] = "member";
                Poly f = parse_poly(in.ring, member_f);
                Report result;
                result["f"] = print_poly(f);
                result["member"] = ideal_member(f, G);
                result["normal_form"] = print_poly(normal_form(f, G));
                rep["result"] = result;
            } else {
                rep["command"] = "dim";
                rep["result"] = detail::dim_report_body(ideal_dimension(G));
            }
            // json object ordering: move command first for readability
            Report ordered;
            ordered["command"] = rep["command"];
            ordered["input"] = rep["input"];
            ordered["result"] = rep["result"];
            rep = ordered;
        } else if (app.got_subcommand(cmd_sing)) {
            auto in = detail::load_input(in_args);
            rep["command"] = "sing-codim";
            rep["input"] = detail::input_report(in);
            rep["result"] = detail::dim_report_body(singular_locus_codim(in.poly));
        } else if (app.got_subcommand(cmd_ah)) {
            auto in = detail::load_input(in_args);
            rep["command"] = "ah-bound";
            rep["input"] = detail::input_report(in);
            auto b = ah_lower_bound(in.poly);
            Report result;
            result["sing_codim"] = b.codim;
            result["strength_lower_bound"] = b.bound;
            rep["result"] = result;
        } else if (app.got_subcommand(cmd_verify)) {
            FieldSpec field = parse_field(in_args.field_text);
            if (!field.is_finite())
                throw Error(ErrorKind::InvalidInput,
                            "verify-paper requires a finite field (exhaustive checks)");
            rep["command"] = "verify-paper";
            Report input;
            input["field"] = field.to_string();
            input["samples"] = samples;
            input["seed"] = seed;
            rep["input"] = input;

            Report checks = Report::array();
            bool all_ok = true;
            auto add_check = [&](const std::string& name, bool ok, Report detail = {}) {
                Report c;
                c["name"] = name;
                c["status"] = ok ? "pass" : "FAIL";
                if (!detail.is_null() && !detail.empty()) c["detail"] = detail;
                checks.push_back(c);
                all_ok = all_ok && ok;
            };

            {
                auto ring_t = quartic_family_ring(field, true);
                auto def = build_h_t(ring_t);
                bool coeff_ok = parameter_coefficient(def.H, "t", 1) == build_h(ring_t);
                add_check("deformation-identity", def.identity_holds && coeff_ok);
            }
            {
                auto ring = quartic_family_ring(field);
                bool ok = true;
                long tested = 0;
                for (uint32_t t0 = 1; t0 < std::min<uint32_t>(field.characteristic(), 32); ++t0) {
                    Scalar t = Scalar::of_int(field, t0);
                    ok = ok && verify_decomposition(h_at(ring, t), decomposition_at(ring, t));
                    ++tested;
                }
                Report d;
                d["parameter_values"] = tested;
                add_check("border-certificates", ok, d);
            }
            for (int k = 1; k <= 3; ++k) {
                // exhaustion size grows like (p^dim)^k; anything projected
                // beyond the threshold is campaign-scale, not a quick check
                auto ring = truncated_family_ring(field, k);
                double projected = 0;
                for (long r = 1; r <= k; ++r)
                    for (const auto& shape : enumerate_shapes(4, r))
                        projected += forma::detail::phase_tuple_estimate(ring, shape);
                std::string name = "analog-strength-k" + std::to_string(k);
                if (projected > 5e7) {
                    Report d;
                    d["projected_tuples"] = projected;
                    Report c;
                    c["name"] = name;
                    c["status"] = "skipped (campaign-scale on this field)";
                    c["detail"] = d;
                    checks.push_back(c);
                    continue;
                }
                auto sr = analog_strength(k, field, AnalogOptions{.workers = workers});
                Report d;
                d["value"] = sr.value;
                d["nodes"] = sr.nodes;
                add_check(name, sr.mode == SearchReport::Mode::Exact && sr.value == k, d);
            }
            {
                auto ws = case_witness_checks(
                    field, WitnessConfig{.samples = samples, .seed = seed});
                for (const auto& w : ws) {
                    Report d;
                    for (const auto& [k, v] : w.evidence) d[k] = v;
                    add_check(std::string("case-witness-") + w.tag, w.passed, d);
                }
            }
            {
                Poly inst = instantiate(InstantiationPlan{1, field});
                auto b = ah_lower_bound(inst);
                Report d;
                d["sing_codim"] = b.codim;
                d["strength_lower_bound"] = b.bound;
                add_check("lemma10-ah-bound-m1", b.codim <= 4 && b.bound <= 2, d);
            }
            Report result;
            result["checks"] = checks;
            result["all_passed"] = all_ok;
            rep["result"] = result;
            if (!all_ok) exit_code = 3;
        } else if (app.got_subcommand(cmd_campaign)) {
            FieldSpec field = parse_field(in_args.field_text);
            camp.workers = workers;
            if (!resume_path.empty()) {
                camp.checkpoint_path = resume_path;
                camp.resume = true;
            }
            auto crep = campaign_full(field, camp);
            rep["command"] = "campaign";
            Report input;
            input["field"] = field.to_string();
            input["cases"] = camp.only_cases.empty() ? "abcd" : camp.only_cases;
            input["skip_low_r"] = camp.skip_low_r;
            rep["input"] = input;
            Report result;
            result["verdict"] = crep.verdict;
            result["completed"] = crep.completed;
            result["found"] = crep.found;
            if (crep.needs_confirmation) result["needs_confirmation"] = true;
            if (!crep.note.empty()) result["note"] = crep.note;
            Report phases = Report::array();
            for (const auto& ph : crep.phases) {
                Report p;
                p["label"] = ph.label;
                p["completed"] = ph.completed;
                p["tuples"] = ph.tuples;
                p["next_index"] = ph.next_index;
                p["first_factor_count"] = ph.first_factor_count;
                phases.push_back(p);
            }
            result["phases"] = phases;
            if (crep.certificate) result["certificate"] = decomposition_report(*crep.certificate);
            rep["result"] = result;
            Report stats;
            stats["tuples"] = crep.tuples;
            stats["elapsed_ms"] = crep.elapsed_ms;
            stats["workers"] = camp.workers;
            rep["stats"] = stats;
            if (crep.found) exit_code = 3;
        }

        detail::emit(rep, out, output_path);
        return exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

inline int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(std::move(args), std::cout, std::cerr);
}

}  // namespace forma::cli

#endif
