// Command-line frontend for the expansion calculus engine.
//
// Exit codes: 0 success, 1 domain error, 2 usage error, 3 gating-suite
// failure in `verify`. Results go to stdout, diagnostics to stderr.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "expd/analysis.hpp"
#include "expd/io.hpp"
#include "expd/measure.hpp"
#include "expd/parse.hpp"
#include "expd/verify.hpp"

using nlohmann::json;

namespace {

struct CommonArgs {
    std::string tuple_file;
    std::string dir;
    std::string path;
    bool as_json = false;
};

void emit(const json& j, bool as_json, const std::string& human) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << human;
}

std::string tuple_human(const expd::PolyTuple& t, const std::vector<std::string>& vars) {
    std::string out = "(";
    for (int i = 0; i < t.size(); ++i) {
        if (i) out += ", ";
        out += t[i].format(vars);
    }
    return out + ")";
}

json tuple_block(const expd::PolyTuple& t, const std::vector<std::string>& vars) {
    json j = expd::tuple_to_json(t, vars);
    return j;
}

int run(CLI::App& app, int argc, char** argv) {
    using namespace expd;

    CommonArgs a;
    unsigned times = 1;
    bool explain = false;
    std::string spot_file, z_file, box_text, spots_text, what = "integral";
    double tol = 1e-9;

    auto add_tuple_opt = [&](CLI::App* cmd) {
        cmd->add_option("--tuple", a.tuple_file, "tuple file (JSON)")->required();
    };
    auto add_json_flag = [&](CLI::App* cmd) {
        cmd->add_flag("--json", a.as_json, "machine-readable output");
    };
    auto add_dir_opt = [&](CLI::App* cmd) {
        cmd->add_option("--dir", a.dir, "direction (variable name or index)")->required();
    };
    auto add_path_opt = [&](CLI::App* cmd, bool required = true) {
        auto* o = cmd->add_option("--path", a.path, "direction path, e.g. x,y");
        if (required) o->required();
    };

    auto* c_expand = app.add_subcommand("expand", "apply the expansion operator");
    add_tuple_opt(c_expand);
    c_expand->add_option("--dir", a.dir, "direction or comma-separated path")->required();
    c_expand->add_option("--times", times, "number of applications of the whole path");
    add_json_flag(c_expand);

    auto* c_totient = app.add_subcommand("totient", "iterations to the null tuple");
    add_tuple_opt(c_totient);
    add_dir_opt(c_totient);
    c_totient->add_flag("--explain", explain, "show iterative and formula values");
    add_json_flag(c_totient);

    auto* c_residue = app.add_subcommand("residue", "last nonzero iterate");
    add_tuple_opt(c_residue);
    add_dir_opt(c_residue);
    add_json_flag(c_residue);

    auto* c_contract = app.add_subcommand("contract", "recovery operator");
    add_tuple_opt(c_contract);
    add_dir_opt(c_contract);
    add_json_flag(c_contract);

    auto* c_dropler = app.add_subcommand("dropler", "dropler intensity from a mixed source");
    add_tuple_opt(c_dropler);
    c_dropler->add_option("--source-path", a.path, "mixed path of the source")->required();
    add_dir_opt(c_dropler);
    add_json_flag(c_dropler);

    auto* c_destab = app.add_subcommand("destab", "destabilization stage");
    add_tuple_opt(c_destab);
    add_dir_opt(c_destab);
    add_json_flag(c_destab);

    auto* c_diag = app.add_subcommand("diagonalize", "mixed expansion as a single-direction power");
    add_tuple_opt(c_diag);
    add_path_opt(c_diag);
    add_dir_opt(c_diag);
    add_json_flag(c_diag);

    auto* c_exact = app.add_subcommand("exactness", "degree of exactness against a mixed target");
    add_tuple_opt(c_exact);
    add_dir_opt(c_exact);
    c_exact->add_option("--spot", spot_file, "spot tuple file")->required();
    add_path_opt(c_exact);
    add_json_flag(c_exact);

    auto* c_index = app.add_subcommand("index", "index of one expansion in another");
    add_tuple_opt(c_index);
    c_index->add_option("--z", z_file, "sub-expansion tuple file")->required();
    add_dir_opt(c_index);
    add_json_flag(c_index);

    auto* c_dominate = app.add_subcommand("dominate", "dominating number");
    add_tuple_opt(c_dominate);
    c_dominate->add_option("--z", z_file, "target tuple file")->required();
    add_dir_opt(c_dominate);
    add_json_flag(c_dominate);

    auto* c_normalize = app.add_subcommand("normalize", "normalization stage and fibre");
    add_tuple_opt(c_normalize);
    add_dir_opt(c_normalize);
    add_json_flag(c_normalize);

    auto* c_unionize = app.add_subcommand("unionize", "unionization stage");
    add_tuple_opt(c_unionize);
    add_dir_opt(c_unionize);
    add_json_flag(c_unionize);

    auto* c_area = app.add_subcommand("area", "exact area of the mixed expansion over a box");
    add_tuple_opt(c_area);
    add_path_opt(c_area);
    c_area->add_option("--box", box_text, "box, e.g. x:0:1,y:0:1")->required();
    add_json_flag(c_area);

    auto* c_volume = app.add_subcommand("volume", "volume at a spot family");
    add_tuple_opt(c_volume);
    add_path_opt(c_volume);
    c_volume->add_option("--spots", spots_text, "spots, e.g. (1,0);(0,1)")->required();
    add_json_flag(c_volume);

    auto* c_check = app.add_subcommand("check", "inequality checkers");
    add_tuple_opt(c_check);
    add_path_opt(c_check);
    c_check->add_option("--what", what, "integral | mingap | average");
    c_check->add_option("--box", box_text, "box for integral/mingap");
    c_check->add_option("--spots", spots_text, "spots for average");
    c_check->add_option("--tol", tol, "numeric tolerance");
    add_json_flag(c_check);

    auto* c_profile = app.add_subcommand("profile", "single-variable profile");
    add_tuple_opt(c_profile);
    add_json_flag(c_profile);

    GenConfig cfg;
    std::string suite = "all", report_file;
    auto* c_verify = app.add_subcommand("verify", "randomized property suites");
    c_verify->add_option("--suite", suite, "suite name or 'all'");
    c_verify->add_option("--seed", cfg.seed, "generator seed");
    c_verify->add_option("--cases", cfg.cases, "cases per suite");
    c_verify->add_option("--arity", cfg.arity, "max arity (1..4)");
    c_verify->add_option("--tuple-len", cfg.tuple_len, "max tuple length (2..5)");
    c_verify->add_option("--max-degree", cfg.max_degree, "max per-term degree (0..8)");
    c_verify->add_option("--terms", cfg.terms_per_entry, "max terms per entry (1..8)");
    c_verify->add_option("--coeff-bound", cfg.coeff_bound, "coefficient magnitude bound");
    c_verify->add_option("--report", report_file, "write the JSON report here");
    add_json_flag(c_verify);

    app.require_subcommand(1);
    app.parse(argc, argv);

    auto load = [&](const std::string& path) { return read_tuple_file(path); };

    if (*c_expand) {
        auto nt = load(a.tuple_file);
        MixedDirection m = parse_path(a.dir, nt.vars);
        PolyTuple out = nt.tuple;
        for (unsigned i = 0; i < times; ++i) out = expand_mixed(out, m);
        json meta = {{"op", "expand"}, {"path", path_to_string(m, nt.vars)}, {"times", times}};
        emit(tuple_to_json(out, nt.vars, meta), a.as_json, tuple_human(out, nt.vars) + "\n");
    } else if (*c_totient) {
        auto nt = load(a.tuple_file);
        Direction d = parse_direction(a.dir, nt.vars);
        unsigned iter = totient(nt.tuple, d);
        if (a.as_json) {
            json j = {{"totient", iter}, {"direction", nt.vars[d.var]}};
            if (explain) {
                j["iterative"] = iter;
                j["formula"] = totient_formula(nt.tuple, d);
            }
            emit(j, true, "");
        } else if (explain) {
            std::cout << "iterative: " << iter << "\n"
                      << "formula:   " << totient_formula(nt.tuple, d) << "\n";
        } else {
            std::cout << iter << "\n";
        }
    } else if (*c_residue) {
        auto nt = load(a.tuple_file);
        Direction d = parse_direction(a.dir, nt.vars);
        unsigned phi = totient(nt.tuple, d);
        PolyTuple out = residue(nt.tuple, d);
        json meta = {{"op", "residue"}, {"path", nt.vars[d.var]}, {"times", phi - 1}};
        emit(tuple_to_json(out, nt.vars, meta), a.as_json, tuple_human(out, nt.vars) + "\n");
    } else if (*c_contract) {
        auto nt = load(a.tuple_file);
        Direction d = parse_direction(a.dir, nt.vars);
        PolyTuple out = contract(nt.tuple, d);
        json meta = {{"op", "contract"}, {"path", nt.vars[d.var]}, {"times", 1}};
        emit(tuple_to_json(out, nt.vars, meta), a.as_json, tuple_human(out, nt.vars) + "\n");
    } else if (*c_dropler) {
        auto nt = load(a.tuple_file);
        MixedDirection m = parse_path(a.path, nt.vars);
        Direction d = parse_direction(a.dir, nt.vars);
        auto source = ExpansionExpr::make(nt.tuple, m, 1);
        auto r = dropler_intensity(source, nt.tuple, d);
        json j = {{"intensity", r.intensity},
                  {"admits", r.admits},
                  {"energy", r.energy},
                  {"direction", nt.vars[d.var]},
                  {"source_path", path_to_string(m, nt.vars)}};
        emit(j, a.as_json,
             "intensity: " + std::to_string(r.intensity) +
                 "\nadmits:    " + (r.admits ? "yes" : "no") +
                 "\nenergy:    " + std::to_string(r.energy) + "\n");
    } else if (*c_destab) {
        auto nt = load(a.tuple_file);
        Direction d = parse_direction(a.dir, nt.vars);
        auto r = destabilization(nt.tuple, d);
        json j = {{"natural", r.natural},
                  {"stage", r.stage},
                  {"strong", r.strong},
                  {"direction", nt.vars[d.var]}};
        emit(j, a.as_json,
             std::string("natural: ") + (r.natural ? "yes" : "no") +
                 "\nstage:   " + std::to_string(r.stage) +
                 "\nstrong:  " + (r.strong ? "yes" : "no") + "\n");
    } else if (*c_diag) {
        auto nt = load(a.tuple_file);
        MixedDirection m = parse_path(a.path, nt.vars);
        Direction d = parse_direction(a.dir, nt.vars);
        auto r = diagonalize(nt.tuple, m, d);
        json j = {{"spot", tuple_block(r.spot, nt.vars)},
                  {"order", r.order},
                  {"direction", nt.vars[d.var]}};
        emit(j, a.as_json,
             "spot:  " + tuple_human(r.spot, nt.vars) +
                 "\norder: " + std::to_string(r.order) + "\n");
    } else if (*c_exact) {
        auto nt = load(a.tuple_file);
        auto spot = load(spot_file);
        MixedDirection m = parse_path(a.path, spot.vars);
        Direction d = parse_direction(a.dir, nt.vars);
        auto r = exactness_degree(nt.tuple, d, spot.tuple, m);
        json j;
        j["exists"] = bool(r);
        if (r) j["degree"] = *r;
        emit(j, a.as_json, r ? "degree: " + std::to_string(*r) + "\n" : "absent\n");
    } else if (*c_index) {
        auto nt = load(a.tuple_file);
        auto z = load(z_file);
        Direction d = parse_direction(a.dir, nt.vars);
        auto t_expr = ExpansionExpr::make(nt.tuple, {d}, 0);
        auto z_expr = ExpansionExpr::make(z.tuple, {d}, 1);
        auto r = expansion_index(t_expr, z_expr);
        json j;
        j["finite"] = bool(r);
        if (r) j["index"] = *r;
        emit(j, a.as_json, r ? "index: " + std::to_string(*r) + "\n" : "infinite\n");
    } else if (*c_dominate) {
        auto nt = load(a.tuple_file);
        auto z = load(z_file);
        Direction d = parse_direction(a.dir, nt.vars);
        auto t_expr = ExpansionExpr::make(nt.tuple, {d}, 0);
        auto z_expr = ExpansionExpr::make(z.tuple, {d}, 1);
        auto r = dominating_number(z_expr, t_expr);
        json j;
        j["exists"] = bool(r);
        if (r) j["dominating"] = *r;
        emit(j, a.as_json, r ? "dominating: " + std::to_string(*r) + "\n" : "absent\n");
    } else if (*c_normalize) {
        auto nt = load(a.tuple_file);
        Direction d = parse_direction(a.dir, nt.vars);
        auto [stage, fibre] = normalization_stage(nt.tuple, d);
        json j = {{"stage", stage},
                  {"fibre", tuple_block(fibre, nt.vars)},
                  {"direction", nt.vars[d.var]}};
        emit(j, a.as_json,
             "stage: " + std::to_string(stage) + "\nfibre: " + tuple_human(fibre, nt.vars) + "\n");
    } else if (*c_unionize) {
        auto nt = load(a.tuple_file);
        Direction d = parse_direction(a.dir, nt.vars);
        unsigned stage = unionization_stage(nt.tuple, d);
        json j = {{"stage", stage}, {"direction", nt.vars[d.var]}};
        emit(j, a.as_json, std::to_string(stage) + "\n");
    } else if (*c_area) {
        auto nt = load(a.tuple_file);
        MixedDirection m = parse_path(a.path, nt.vars);
        BoxDomain box = parse_box(box_text, nt.vars);
        Polynomial r = area(nt.tuple, m, box);
        json j = {{"area", r.format(nt.vars)},
                  {"path", path_to_string(m, nt.vars)},
                  {"box", box_text}};
        emit(j, a.as_json, r.format(nt.vars) + "\n");
    } else if (*c_volume) {
        auto nt = load(a.tuple_file);
        MixedDirection m = parse_path(a.path, nt.vars);
        auto spots = parse_spots(spots_text);
        double v = volume(nt.tuple, m, spots);
        json j = {{"volume", v},
                  {"path", path_to_string(m, nt.vars)},
                  {"spots", spots_text}};
        emit(j, a.as_json, std::to_string(v) + "\n");
    } else if (*c_check) {
        auto nt = load(a.tuple_file);
        MixedDirection m = parse_path(a.path, nt.vars);
        InequalityReport rep;
        if (what == "integral") {
            rep = check_integral_inequality(nt.tuple, m, parse_box(box_text, nt.vars), tol);
        } else if (what == "mingap") {
            rep = check_min_gap(nt.tuple, m, parse_box(box_text, nt.vars));
        } else if (what == "average") {
            rep = check_average_inequality(nt.tuple, m, parse_spots(spots_text), tol);
        } else {
            throw std::invalid_argument("unknown checker '" + what + "'");
        }
        json j = inequality_report_to_json(rep);
        j["what"] = what;
        emit(j, a.as_json,
             std::string(rep.applicable ? (rep.holds ? "holds" : "VIOLATED") : "inapplicable") +
                 "  lhs=" + std::to_string(rep.lhs) + " rhs=" + std::to_string(rep.rhs) + "\n");
    } else if (*c_profile) {
        auto nt = load(a.tuple_file);
        auto prof = single_var_profile(nt.tuple);
        json j = {{"degree", prof.degree},
                  {"rank", tuple_block(prof.rank, nt.vars)},
                  {"local_number", prof.local_number},
                  {"dimension", prof.dimension}};
        emit(j, a.as_json,
             "degree:       " + std::to_string(prof.degree) +
                 "\nrank:         " + tuple_human(prof.rank, nt.vars) +
                 "\nlocal number: " + std::to_string(prof.local_number) +
                 "\ndimension:    " + std::to_string(prof.dimension) + "\n");
    } else if (*c_verify) {
        std::vector<VerificationReport> reports;
        if (suite == "all") {
            reports = run_all_suites(cfg);
        } else {
            reports.push_back(run_suite(suite, cfg));
        }
        json j = reports_to_json(reports, cfg);
        if (!report_file.empty()) {
            std::ofstream out(report_file);
            if (!out) throw std::invalid_argument("cannot write report file: " + report_file);
            out << j.dump(2) << "\n";
        }
        if (a.as_json) {
            std::cout << j.dump(2) << "\n";
        } else {
            for (const auto& r : reports) {
                std::cout << (r.failures == 0 ? "PASS " : (r.classification == "gating"
                                                               ? "FAIL "
                                                               : "NOTE "))
                          << r.suite << " [" << r.classification << "] " << r.cases
                          << " cases, " << r.failures << " failures\n";
            }
        }
        return aggregate_exit_code(reports);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact expansion calculus on polynomial tuples"};
    try {
        return run(app, argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
