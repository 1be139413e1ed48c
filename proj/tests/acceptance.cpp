// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "expd/analysis.hpp"
#include "expd/io.hpp"
#include "expd/measure.hpp"
#include "expd/parse.hpp"
#include "expd/verify.hpp"

using namespace expd;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const std::vector<std::string> XY = {"x", "y"};

PolyTuple T(std::initializer_list<std::string> entries,
            const std::vector<std::string>& vars = XY) {
    std::vector<Polynomial> ps;
    for (const auto& e : entries) ps.push_back(parse_poly(e, vars));
    return PolyTuple(std::move(ps));
}

const Direction DX{0};
const Direction DY{1};

std::string run_cmd(const std::string& cmd, int* exit_code) {
    std::string full = cmd + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    std::string out;
    if (pipe) {
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
        int status = pclose(pipe);
        if (exit_code) *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    } else if (exit_code) {
        *exit_code = -1;
    }
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    GenConfig cfg;
    cfg.arity = 3;
    cfg.tuple_len = 4;
    cfg.max_degree = 6;
    cfg.terms_per_entry = 5;
    cfg.seed = 20250801;
    int agree = 0;
    const int cases = 500;
    for (int i = 0; i < cases; ++i) {
        PolyTuple t = gen_random_tuple(cfg, i);
        Direction d{i % t.arity()};
        if (totient(t, d) == totient_formula(t, d)) ++agree;
    }
    double secs = seconds_since(start);
    std::ostringstream detail;
    detail << agree << "/" << cases << " agree in " << secs << " s";
    report(1, "totient equivalence", agree == cases && secs < 5.0, detail.str());
}

void criterion_2() {
    auto start = std::chrono::steady_clock::now();
    GenConfig cfg;
    cfg.seed = 42;
    cfg.cases = 500;
    const std::vector<std::string> suites = {"linearity", "commutativity",
                                             "specialization_commutes",
                                             "recovery_roundtrip", "area_linearity"};
    int bad = 0;
    for (const auto& s : suites) bad += run_suite(s, cfg).failures;
    double secs = seconds_since(start);
    std::ostringstream detail;
    detail << bad << " failures over " << suites.size() << "x" << cfg.cases << " cases in "
           << secs << " s";
    report(2, "algebraic identities", bad == 0 && secs < 10.0, detail.str());
}

void criterion_3() {
    PolyTuple t = T({"x^2*y", "x*y^2"});
    bool ok = true;
    std::string first_bad;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_bad = what;
        }
    };
    expect(expand(t, DX) == T({"y^2", "2*x*y"}), "first expansion");
    expect(expand_pow(t, DX, 2) == T({"2*y", "0"}), "second expansion");
    expect(totient(t, DX) == 3, "totient");
    expect(residue(t, DX) == T({"2*y", "0"}), "residue");
    expect(expand_mixed(t, {DX, DY}) == T({"2*x", "2*y"}), "mixed value");
    auto diag = diagonalize(t, {DX, DY}, DX);
    expect(diag.spot == T({"2*x*y", "x^2"}) && diag.order == 1, "diagonal spot");
    auto dr = dropler_intensity(ExpansionExpr::make(t, {DX, DY}, 1), t, DX);
    expect(dr.intensity == 2 && dr.admits && dr.energy == 1, "dropler");
    auto ds = destabilization(t, DX);
    expect(!ds.natural && ds.stage == 1 && !ds.strong, "destabilization");
    expect(normalization_stage(t, DX).first == 2, "normalization stage");
    expect(unionization_stage(t, DX) == 3, "unionization stage");
    BoxDomain unit{{{0, 0, 1}, {1, 0, 1}}};
    expect(area(t, {DX, DY}, unit).constant_value() == 2, "area");
    report(3, "worked instance fidelity", ok,
           ok ? "12 hand-derived values reproduced exactly" : "mismatch at " + first_bad);
}

void criterion_4() {
    GenConfig cfg;
    cfg.seed = 77;
    cfg.cases = 200;
    auto suite = run_suite("integral_inequality", cfg);

    PolyTuple t = T({"x^2*y", "x*y^2"});
    BoxDomain unit{{{0, 0, 1}, {1, 0, 1}}};
    auto rep = check_integral_inequality(t, {DX, DY}, unit, 1e-9);
    double closed = 2.0 * (std::sqrt(2.0) + std::asinh(1.0)) / 3.0;
    bool lhs_ok = std::abs(rep.lhs - closed) <= 1e-6;
    bool rhs_ok = std::abs(rep.rhs - std::sqrt(2.0)) <= 1e-9;

    std::ostringstream detail;
    detail.precision(10);
    detail << suite.failures << "/200 random failures; worked lhs=" << rep.lhs
           << " (closed form " << closed << "), rhs=" << rep.rhs;
    report(4, "integral inequality", suite.failures == 0 && rep.holds && lhs_ok && rhs_ok,
           detail.str());
}

void criterion_5() {
    GenConfig cfg;
    cfg.seed = 505;
    cfg.cases = 100;
    cfg.max_degree = 8;
    auto rep = run_suite("chain_identity", cfg);
    report(5, "chain identity", rep.failures == 0,
           std::to_string(rep.cases) + " constructed chains, " +
               std::to_string(rep.failures) + " failures");
}

void criterion_6() {
    GenConfig cfg;
    cfg.seed = 606;
    cfg.cases = 100;
    auto rep = run_suite("dominating_vs_index", cfg);

    // Theorem: the partial index sums stay below dominating + (n - k).
    int bound_failures = 0;
    Rng rng(909);
    for (int i = 0; i < 100; ++i) {
        int arity = int(rng.range(1, 3));
        Direction d{0};
        unsigned n = unsigned(rng.range(3, 5));
        unsigned forced = unsigned(rng.range(n, 8));
        std::vector<Polynomial> entries;
        int len = int(rng.range(2, 4));
        for (int e = 0; e < len; ++e)
            entries.push_back(Polynomial::monomial(
                arity, d.var, e == 0 ? forced : unsigned(rng.range(0, 3)),
                Rational(rng.range(1, 5))));
        PolyTuple mother(entries);
        unsigned phi = totient(mother, d); // forced + 1 >= n + 1

        // n distinct exponents, descending, ending at 0: the chain S_i = E^{c_i}(M)
        // with S_1 the deepest iterate and S_n the mother.
        std::vector<unsigned> pool(phi - 1);
        for (unsigned j = 0; j < phi - 1; ++j) pool[j] = j + 1;
        for (unsigned j = phi - 2; j > 0; --j)
            std::swap(pool[j], pool[rng.range(0, j)]);
        std::vector<unsigned> c(pool.begin(), pool.begin() + (n - 1));
        std::sort(c.begin(), c.end(), std::greater<>());
        c.push_back(0);

        auto index_of = [&](const PolyTuple& upper, const PolyTuple& lower) {
            return expansion_index(ExpansionExpr::make(upper, {d}, 0),
                                   ExpansionExpr::make(lower, {d}, 1));
        };
        unsigned k = unsigned(rng.range(1, n - 1)); // 1-based position in the chain
        unsigned sum = 0;
        bool fine = true;
        for (unsigned j = k - 1; j + 1 < n; ++j) { // pairs (S_j, S_{j+1}), 0-based
            auto r = index_of(expand_pow(mother, d, c[j + 1]), expand_pow(mother, d, c[j]));
            if (!r) {
                fine = false;
                break;
            }
            sum += *r;
        }
        auto dom = dominating_number(
            ExpansionExpr::make(expand_pow(mother, d, c[k - 1]), {d}, 1),
            ExpansionExpr::make(mother, {d}, 0));
        if (!fine || !dom || !(sum < *dom + (n - k))) ++bound_failures;
    }

    report(6, "dominating vs index", rep.failures == 0 && bound_failures == 0,
           std::to_string(rep.failures) + " order failures, " +
               std::to_string(bound_failures) + " chain-bound failures");
}

void criterion_7() {
    GenConfig cfg;
    cfg.seed = 707;
    cfg.cases = 200;
    auto main_rep = run_suite("mixed_specific_inequality", cfg);
    auto coro_rep = run_suite("actual_inequality_corollary", cfg);
    report(7, "mixed-totient inequality", main_rep.failures == 0 && coro_rep.failures == 0,
           std::to_string(main_rep.failures) + " theorem failures, " +
               std::to_string(coro_rep.failures) + " corollary failures over 200 cases each");
}

void criterion_8() {
    GenConfig cfg;
    cfg.seed = 42;
    cfg.cases = 50;
    auto sd = run_suite("strong_destab", cfg);
    auto rho = run_suite("rho_bound", cfg);
    bool planted = sd.failures >= 1 && rho.failures >= 1 &&
                   !sd.counterexamples.empty() && !rho.counterexamples.empty();
    bool diag_exit = aggregate_exit_code({sd, rho}) == 0;

    int code = -1;
    run_cmd(std::string(EXPD_CLI_BIN) + " verify --suite rho_bound --seed 42 --cases 10",
            &code);
    report(8, "diagnostics detect planted counterexamples",
           planted && diag_exit && code == 0,
           "strong_destab " + std::to_string(sd.failures) + "/" + std::to_string(sd.cases) +
               ", rho_bound " + std::to_string(rho.failures) + "/" +
               std::to_string(rho.cases) + ", cli exit " + std::to_string(code));
}

void criterion_9() {
    auto dir = std::filesystem::temp_directory_path() / "expd_acceptance";
    std::filesystem::create_directories(dir);
    std::string r1 = (dir / "report1.json").string();
    std::string r2 = (dir / "report2.json").string();

    auto start = std::chrono::steady_clock::now();
    int c1 = -1, c2 = -1;
    run_cmd(std::string(EXPD_CLI_BIN) + " verify --suite all --seed 42 --cases 200 --report " +
                r1,
            &c1);
    run_cmd(std::string(EXPD_CLI_BIN) + " verify --suite all --seed 42 --cases 200 --report " +
                r2,
            &c2);
    double secs = seconds_since(start);

    std::string a = slurp(r1), b = slurp(r2);
    bool identical = !a.empty() && a == b;
    std::ostringstream detail;
    detail << "reports " << (identical ? "byte-identical" : "DIFFER") << ", two runs in "
           << secs << " s (exits " << c1 << "," << c2 << ")";
    report(9, "determinism", identical && secs < 60.0 && c1 == 0 && c2 == 0, detail.str());
}

void criterion_10() {
    int code = -1;
    std::string bin_dir =
        std::filesystem::path(EXPD_CLI_BIN).parent_path().parent_path().string();
    std::string cmd = bin_dir + "/tests/test_cli";
    run_cmd(cmd, &code);
    report(10, "cli golden files", code == 0,
           code == 0 ? "all verb outputs bit-exact" : "test_cli exited " +
                                                          std::to_string(code));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0) {
        std::printf("acceptance: all 10 criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
}
