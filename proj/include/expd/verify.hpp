#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "expd/tuple.hpp"

namespace expd {

// Generator bounds. Identical configs produce identical instance streams.
struct GenConfig {
    int arity = 3;            // 1..4
    int tuple_len = 4;        // 2..5
    int max_degree = 6;       // 0..8
    int terms_per_entry = 4;  // 1..8
    long coeff_bound = 9;
    std::uint64_t seed = 42;
    int cases = 200;
    int counterexample_cap = 10;
};

struct Counterexample {
    int case_index = 0;
    nlohmann::json instance;
    std::string expected;
    std::string actual;
};

struct VerificationReport {
    std::string suite;
    std::string classification; // "gating" | "diagnostic"
    int cases = 0;
    int failures = 0; // total count; the counterexample list is capped
    std::vector<Counterexample> counterexamples;
};

struct SuiteInfo {
    std::string name;
    bool gating = true;
};

// Deterministic splitmix64 stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform integer in [lo, hi], inclusive.
    long range(long lo, long hi);
    bool coin() { return next() & 1; }

private:
    std::uint64_t state_;
};

/// Deterministic function of (cfg.seed, case_index).
PolyTuple gen_random_tuple(const GenConfig& cfg, int case_index);

const std::vector<SuiteInfo>& suite_roster();

/// Runs one suite; throws std::invalid_argument for an unknown name.
VerificationReport run_suite(const std::string& name, const GenConfig& cfg);

/// Every suite in roster order.
std::vector<VerificationReport> run_all_suites(const GenConfig& cfg);

nlohmann::json report_to_json(const VerificationReport& rep, const GenConfig& cfg);
nlohmann::json reports_to_json(const std::vector<VerificationReport>& reps, const GenConfig& cfg);

/// 0 when every gating suite is clean; 3 otherwise. Diagnostics never gate.
int aggregate_exit_code(const std::vector<VerificationReport>& reps);

/// Variable names used for serialized instances ("x", "y", "z", "w").
std::vector<std::string> canonical_vars(int arity);

} // namespace expd
