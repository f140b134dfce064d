#pragma once

// Command-line front end. dispatch() runs one command against the given
// streams and returns the process exit code:
//   0  success
//   1  a checked property failed (a finding, e.g. negative slack)
//   2  usage or input error

#include "achain/achain.hpp"
#include "achain/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace achain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFinding = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

/// Family to `output` (stdout when empty).
inline void emit_family(Streams io, const SetFamily& family, const std::string& output) {
    if (output.empty()) write_family(io.out, family);
    else save_family(output, family);
}

inline void emit_json(Streams io, const Json& j) { io.out << j.dump(2) << '\n'; }

inline std::string csv_comment_header(const Json& header) { return "# " + header.dump() + "\n"; }

}  // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    detail::Streams io{out, err};
    CLI::App app{"achain: exact combinatorics for antichain codes in the hypercube"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    // shadow / upshadow
    std::string input, output;
    int order = 1;
    auto* shadow_cmd = app.add_subcommand("shadow", "r-fold lower shadow of a family file");
    auto* upshadow_cmd = app.add_subcommand("upshadow", "r-fold upper shadow of a family file");
    for (auto* c : {shadow_cmd, upshadow_cmd}) {
        c->add_option("--input", input, "family file")->required();
        c->add_option("--r", order, "shadow order")->check(CLI::NonNegativeNumber);
        c->add_option("--output", output, "output family file (default stdout)");
    }

    // check
    bool want_antichain = false, want_distance = false;
    std::optional<int> want_code, want_lym;
    auto* check_cmd = app.add_subcommand("check", "verify antichain / distance / local-LYM properties");
    check_cmd->add_option("--input", input, "family file")->required();
    check_cmd->add_flag("--antichain", want_antichain, "is the family an antichain");
    check_cmd->add_flag("--distance", want_distance, "minimum pairwise distance");
    check_cmd->add_option("--code", want_code, "is the family a distance-D code");
    check_cmd->add_option("--lym", want_lym, "local-LYM densities for a family inside layer K");

    // construct
    int n = 0, m = 0, d = 1;
    std::uint64_t seed = 0;
    std::uint64_t samples = std::uint64_t{1} << 20;
    std::string sidecar;
    auto* construct_cmd = app.add_subcommand("construct", "build an explicit family");
    construct_cmd->require_subcommand(1);
    auto* c_middle = construct_cmd->add_subcommand("middle", "middle layer");
    c_middle->add_option("--n", n)->required();
    auto* c_hamming = construct_cmd->add_subcommand("hamming", "binary Hamming code of length 2^m - 1");
    c_hamming->add_option("--m", m)->required();
    auto* c_greedy = construct_cmd->add_subcommand("greedy", "lexicographic greedy distance-d code");
    c_greedy->add_option("--n", n)->required();
    c_greedy->add_option("--d", d)->required();
    auto* c_center = construct_cmd->add_subcommand("center", "best translate of a family into the middle layer");
    c_center->add_option("--input", input, "family file")->required();
    c_center->add_option("--seed", seed, "seed for sampled translates (n > 28)");
    c_center->add_option("--samples", samples, "sampled translates (n > 28)");
    for (auto* c : {c_middle, c_hamming, c_greedy, c_center}) {
        c->add_option("--output", output, "output family file (default stdout)");
        c->add_option("--sidecar", sidecar, "provenance JSON path (default <output>.json)");
    }

    // search / table
    std::uint64_t budget = 0;
    bool require_certified = false;
    auto* search_cmd = app.add_subcommand("search", "largest antichain distance-d code (n <= 10)");
    search_cmd->add_option("--n", n)->required();
    search_cmd->add_option("--d", d)->required();
    search_cmd->add_option("--budget", budget, "node budget (0 = unlimited)");
    search_cmd->add_flag("--require-certified", require_certified, "fail unless the optimum is certified");

    int r = 1, n_min = 1, n_max = 1;
    std::string mode = "certified", format;
    auto* table_cmd = app.add_subcommand("table", "size * n^(r+1/2) / 2^n across n");
    table_cmd->add_option("--r", r)->required();
    table_cmd->add_option("--n-min", n_min)->required();
    table_cmd->add_option("--n-max", n_max)->required();
    table_cmd->add_option("--mode", mode)->check(CLI::IsMember({"certified", "construct"}));
    table_cmd->add_option("--budget", budget, "node budget per search (0 = unlimited)");
    table_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // Littlewood-Offord
    std::string weights, alpha_text, method = "auto";
    auto* rho_cmd = app.add_subcommand("rho", "exact concentration probability rho(a)");
    rho_cmd->add_option("--weights", weights, "comma-separated exact weights")->required();
    rho_cmd->add_option("--alpha", alpha_text, "also count the level set at this value");
    rho_cmd->add_option("--method", method)->check(CLI::IsMember({"auto", "direct", "mitm", "dense"}));

    auto* halasz_cmd = app.add_subcommand("halasz", "small-subset sum coincidence check");
    halasz_cmd->add_option("--weights", weights)->required();
    halasz_cmd->add_option("--r", r)->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "level set as an antichain distance-(2r+1) code");
    reduce_cmd->add_option("--weights", weights)->required();
    reduce_cmd->add_option("--r", r)->required();
    reduce_cmd->add_option("--alpha", alpha_text)->required();

    std::string generator;
    std::uint64_t trials = 1;
    auto* scan_cmd = app.add_subcommand("scan", "rho(a) * n^(r+1/2) for generated weight vectors");
    scan_cmd->add_option("--gen", generator, "distinct | random-int:BOUND")->required();
    scan_cmd->add_option("--r", r)->required();
    scan_cmd->add_option("--n-min", n_min)->required();
    scan_cmd->add_option("--n-max", n_max)->required();
    scan_cmd->add_option("--trials", trials);
    scan_cmd->add_option("--seed", seed);
    scan_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

    // lemma
    int k = 0;
    std::string density_text = "1/2", counterexample = "lemma_counterexample.json";
    auto* lemma_cmd = app.add_subcommand("lemma", "shadow expansion inequality for antichain codes");
    lemma_cmd->require_subcommand(1);
    auto* l_check = lemma_cmd->add_subcommand("check", "evaluate one instance file");
    l_check->add_option("--input", input, "instance JSON")->required();
    auto* l_random = lemma_cmd->add_subcommand("random", "seeded random instances");
    auto* l_adv = lemma_cmd->add_subcommand("adversarial", "local search for small slack");
    for (auto* c : {l_random, l_adv}) {
        c->add_option("--n", n)->required();
        c->add_option("--k", k)->required();
        c->add_option("--r", r)->required();
        c->add_option("--seed", seed);
        c->add_option("--counterexample", counterexample, "where a negative-slack instance is written");
    }
    l_random->add_option("--density", density_text);
    l_random->add_option("--trials", trials);
    l_adv->add_option("--budget", budget)->required();
    auto* l_chain = lemma_cmd->add_subcommand("chain", "layer chain bounds for an antichain code");
    l_chain->add_option("--input", input, "family file")->required();
    l_chain->add_option("--r", r)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*shadow_cmd || *upshadow_cmd) {
            SetFamily f = load_family(input);
            detail::emit_family(io, *shadow_cmd ? shadow(f, order) : upper_shadow(f, order), output);
            return kExitOk;
        }

        if (*check_cmd) {
            SetFamily f = load_family(input);
            Json params{{"input", input}};
            Json j{{"header", report_header("check", params)}, {"n", f.ground()}, {"size", f.size()}};
            bool ok = true;
            if (!want_antichain && !want_distance && !want_code && !want_lym) want_antichain = want_distance = true;
            if (want_antichain) {
                auto rep = is_antichain(f);
                j["antichain"] = rep.antichain;
                j["antichain_witness"] = pair_json(rep.witness);
                ok = ok && rep.antichain;
            }
            if (want_distance || want_code) {
                auto rep = min_distance(f);
                j["min_distance"] = distance_json(rep.min_distance, f.ground());
                j["distance_witness"] = pair_json(rep.witness);
                if (want_code) {
                    bool code = rep.min_distance >= *want_code;
                    j["code"] = Json{{"d", *want_code}, {"holds", code}};
                    ok = ok && code;
                }
            }
            if (want_lym) {
                auto rep = check_local_lym(f, *want_lym);
                j["local_lym"] = to_json(rep);
                ok = ok && rep.holds;
            }
            detail::emit_json(io, j);
            return ok ? kExitOk : kExitFinding;
        }

        if (*construct_cmd) {
            ConstructionResult res;
            Json params;
            if (*c_middle) {
                res = middle_layer(n);
                params = {{"n", n}};
            } else if (*c_hamming) {
                res = hamming_code(m);
                params = {{"m", m}};
            } else if (*c_greedy) {
                res = greedy_code(n, d);
                params = {{"n", n}, {"d", d}};
            } else {
                SetFamily f = load_family(input);
                res = best_translate_to_middle(f, TranslateOptions{28, samples, seed});
                params = {{"input", input}, {"samples", samples}};
            }
            const bool seeded = c_center->parsed();
            Json provenance{{"header", report_header("construct " + res.name, params,
                                                     seeded ? std::optional<std::uint64_t>(seed) : std::nullopt)},
                            {"provenance", to_json(res)}};
            std::string sidecar_path = !sidecar.empty() ? sidecar : (output.empty() ? "" : output + ".json");
            if (output.empty() && sidecar_path.empty()) {
                out << "# " << provenance.dump() << '\n';
                write_family(out, res.family);
            } else {
                detail::emit_family(io, res.family, output);
                detail::write_text_file(sidecar_path, provenance.dump(2) + "\n");
            }
            return kExitOk;
        }

        if (*search_cmd) {
            auto res = max_antichain_code(n, d, SearchBudget{budget}, require_certified);
            Json j{{"header", report_header("search", {{"n", n}, {"d", d}, {"budget", budget},
                                                       {"require_certified", require_certified}})}};
            j.update(to_json(res));
            j["verified"] = verify_result(res);
            detail::emit_json(io, j);
            return j["verified"].get<bool>() ? kExitOk : kExitFinding;
        }

        if (*table_cmd) {
            TableMode tm = mode == "construct" ? TableMode::construction : TableMode::certified;
            auto rows = theorem1_ratio_table(n_min, n_max, r, tm, SearchBudget{budget});
            Json header = report_header(
                "table", {{"r", r}, {"n_min", n_min}, {"n_max", n_max}, {"mode", mode}, {"budget", budget}});
            if (format == "json") {
                Json arr = Json::array();
                for (const auto& row : rows) arr.push_back(to_json(row));
                detail::emit_json(io, Json{{"header", header}, {"rows", arr}});
            } else {
                out << detail::csv_comment_header(header) << "n,size,certified,source,scaled,ratio\n";
                for (const auto& row : rows)
                    out << row.n << ',' << row.size << ',' << (row.certified ? "true" : "false") << ',' << row.source
                        << ',' << to_string(row.scaled) << ',' << row.ratio << '\n';
            }
            return kExitOk;
        }

        if (*rho_cmd) {
            WeightVector a = WeightVector::parse(weights);
            RhoMethod rm = method == "direct" ? RhoMethod::direct
                           : method == "mitm" ? RhoMethod::meet_in_middle
                           : method == "dense" ? RhoMethod::dense
                                              : RhoMethod::automatic;
            auto rep = rho(a, rm);
            Json j{{"header", report_header("rho", {{"weights", a.str()}, {"method", method}})}};
            j.update(to_json(rep));
            if (!alpha_text.empty()) {
                Rational alpha = parse_rational(alpha_text);
                std::uint64_t c = level_count(a, alpha);
                j["alpha"] = to_string(alpha);
                j["level_count_at_alpha"] = c;
                j["probability_at_alpha"] = to_string(Rational(BigInt(c), BigInt(1) << a.size()));
            }
            detail::emit_json(io, j);
            return kExitOk;
        }

        if (*halasz_cmd) {
            WeightVector a = WeightVector::parse(weights);
            auto rep = check_halasz_condition(a, r);
            Json j{{"header", report_header("halasz", {{"weights", a.str()}, {"r", r}})}};
            j.update(to_json(rep));
            detail::emit_json(io, j);
            return rep.holds ? kExitOk : kExitFinding;
        }

        if (*reduce_cmd) {
            WeightVector a = WeightVector::parse(weights);
            Rational alpha = parse_rational(alpha_text);
            auto rep = verify_reduction(a, r, alpha);
            Json j{{"header", report_header("reduce", {{"weights", a.str()}, {"r", r}, {"alpha", to_string(alpha)}})}};
            j.update(to_json(rep, a.size()));
            detail::emit_json(io, j);
            return rep.antichain && rep.distance_ok ? kExitOk : kExitFinding;
        }

        if (*scan_cmd) {
            auto gen = WeightGenerator::parse(generator);
            auto res = halasz_ratio_scan(gen, r, n_min, n_max, trials, seed);
            Json header = report_header(
                "scan", {{"gen", gen.str()}, {"r", r}, {"n_min", n_min}, {"n_max", n_max}, {"trials", trials}}, seed);
            if (format == "json") {
                Json arr = Json::array();
                for (const auto& row : res.rows)
                    arr.push_back(Json{{"n", row.n},
                                       {"trial", row.trial},
                                       {"status", row.skipped ? "skipped" : "ok"},
                                       {"weights", row.weights},
                                       {"level_count", row.level_count},
                                       {"rho", to_string(row.rho)},
                                       {"scaled", to_string(row.scaled)},
                                       {"ratio", row.ratio}});
                detail::emit_json(io, Json{{"header", header}, {"rows", arr}, {"skipped", res.skipped}});
            } else {
                out << detail::csv_comment_header(header) << "n,trial,status,weights,level_count,rho,scaled,ratio\n";
                for (const auto& row : res.rows) {
                    out << row.n << ',' << row.trial << ',' << (row.skipped ? "skipped" : "ok") << ",\""
                        << row.weights << "\",";
                    if (!row.skipped)
                        out << row.level_count << ',' << to_string(row.rho) << ',' << to_string(row.scaled) << ','
                            << row.ratio;
                    else
                        out << ",,,";
                    out << '\n';
                }
                out << "# skipped=" << res.skipped << '\n';
            }
            return kExitOk;
        }

        if (*lemma_cmd) {
            if (*l_check) {
                LemmaInstance inst = instance_from_json(nlohmann::json::parse(detail::read_text_file(input)));
                auto rep = lemma1_check(inst);
                Json j{{"header", report_header("lemma check", {{"input", input}})},
                       {"n", inst.n},
                       {"k", inst.k},
                       {"r", inst.r},
                       {"S_size", inst.S.size()},
                       {"A_size", inst.A.size()}};
                j.update(to_json(rep));
                detail::emit_json(io, j);
                return rep.holds ? kExitOk : kExitFinding;
            }
            if (*l_random) {
                Rational density = parse_rational(density_text);
                Json params{{"n", n}, {"k", k}, {"r", r}, {"density", to_string(density)}, {"trials", trials}};
                Json rows = Json::array();
                bool all_hold = true;
                std::optional<Rational> min_slack;
                for (std::uint64_t t = 0; t < trials; ++t) {
                    auto inst = random_instance(n, k, r, density, seed + t);
                    auto rep = lemma1_check(inst);
                    if (!rep.holds && all_hold)
                        detail::write_text_file(counterexample, instance_to_json(inst).dump(2) + "\n");
                    all_hold = all_hold && rep.holds;
                    if (!min_slack || rep.slack < *min_slack) min_slack = rep.slack;
                    Json row{{"seed", seed + t}, {"S_size", inst.S.size()}, {"A_size", inst.A.size()}};
                    row.update(to_json(rep));
                    rows.push_back(row);
                }
                Json j{{"header", report_header("lemma random", params, seed)},
                       {"trials", rows},
                       {"min_slack", min_slack ? Json(to_string(*min_slack)) : Json(nullptr)},
                       {"all_hold", all_hold}};
                detail::emit_json(io, j);
                return all_hold ? kExitOk : kExitFinding;
            }
            if (*l_adv) {
                Json params{{"n", n}, {"k", k}, {"r", r}, {"budget", budget}};
                try {
                    auto res = adversarial_min_slack(n, k, r, budget, seed);
                    Json j{{"header", report_header("lemma adversarial", params, seed)},
                           {"moves", res.moves},
                           {"accepted", res.accepted},
                           {"S_size", res.instance.S.size()},
                           {"A_size", res.instance.A.size()},
                           {"instance", instance_to_json(res.instance)}};
                    j.update(to_json(res.report));
                    detail::emit_json(io, j);
                    return kExitOk;
                } catch (const LemmaCounterexample& ce) {
                    detail::write_text_file(counterexample, ce.serialized() + "\n");
                    err << "COUNTEREXAMPLE: " << ce.what() << "; instance written to " << counterexample << '\n';
                    Json j{{"header", report_header("lemma adversarial", params, seed)},
                           {"counterexample", counterexample}};
                    j.update(to_json(ce.report()));
                    detail::emit_json(io, j);
                    return kExitFinding;
                }
            }
            if (*l_chain) {
                SetFamily f = load_family(input);
                auto rep = inductive_chain_check(f, r);
                Json j{{"header", report_header("lemma chain", {{"input", input}, {"r", r}})}};
                j.update(to_json(rep));
                detail::emit_json(io, j);
                return rep.holds ? kExitOk : kExitFinding;
            }
        }
    } catch (const FormatError& e) {
        err << "error: malformed family file, " << e.what() << '\n';
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "error: no command\n";
    return kExitUsage;
}

}  // namespace achain::cli
