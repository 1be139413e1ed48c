#include "expd/verify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "expd/analysis.hpp"
#include "expd/io.hpp"
#include "expd/measure.hpp"

namespace expd {

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

long Rng::range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<std::string> canonical_vars(int arity) {
    static const std::vector<std::string> names = {"x", "y", "z", "w"};
    if (arity < 1 || arity > static_cast<int>(names.size()))
        throw std::invalid_argument("arity outside the generator range");
    return {names.begin(), names.begin() + arity};
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

Rng case_rng(const GenConfig& cfg, std::string_view suite, int case_index) {
    std::uint64_t mix = cfg.seed;
    mix ^= fnv1a(suite) + 0x9E3779B97F4A7C15ull + (mix << 6) + (mix >> 2);
    mix ^= static_cast<std::uint64_t>(case_index) * 0xD1342543DE82EF95ull;
    return Rng(mix);
}

Rational random_coeff(Rng& rng, long bound) {
    long c = rng.range(1, bound);
    return Rational(rng.coin() ? c : -c);
}

Polynomial gen_entry(Rng& rng, int arity, int max_degree, int max_terms, long bound) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        Polynomial p(arity);
        int terms = static_cast<int>(rng.range(1, max_terms));
        for (int t = 0; t < terms; ++t) {
            Monomial m{std::vector<std::uint32_t>(arity, 0)};
            int deg = static_cast<int>(rng.range(0, max_degree));
            for (int s = 0; s < deg; ++s) m.exps[rng.range(0, arity - 1)] += 1;
            p.add_term(m, random_coeff(rng, bound));
        }
        if (!p.is_zero()) return p;
    }
    return Polynomial::zero(arity);
}

PolyTuple gen_tuple_shaped(Rng& rng, int arity, int len, int max_degree, int max_terms,
                           long bound) {
    std::vector<Polynomial> entries;
    entries.reserve(len);
    for (int i = 0; i < len; ++i)
        entries.push_back(gen_entry(rng, arity, max_degree, max_terms, bound));
    return PolyTuple(std::move(entries));
}

// min_arity must stay within cfg.arity; suites that need two directions
// skip when the configuration cannot supply them.
PolyTuple gen_tuple(Rng& rng, const GenConfig& cfg, int min_arity = 1) {
    int arity = static_cast<int>(rng.range(min_arity, std::max(min_arity, cfg.arity)));
    int len = static_cast<int>(rng.range(2, cfg.tuple_len));
    return gen_tuple_shaped(rng, arity, len, cfg.max_degree, cfg.terms_per_entry,
                            cfg.coeff_bound);
}

Rational small_rational(Rng& rng) {
    long num = rng.range(-6, 6);
    long den = rng.range(1, 3);
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Distinct directions for a path of length l over the tuple's arity.
MixedDirection distinct_path(Rng& rng, int arity, int l) {
    std::vector<int> all(arity);
    for (int i = 0; i < arity; ++i) all[i] = i;
    for (int i = arity - 1; i > 0; --i)
        std::swap(all[i], all[rng.range(0, i)]);
    MixedDirection m;
    for (int i = 0; i < l; ++i) m.push_back(Direction{all[i]});
    return m;
}

std::string tuple_str(const PolyTuple& t) {
    auto vars = canonical_vars(t.arity());
    std::string out = "(";
    for (int i = 0; i < t.size(); ++i) {
        if (i) out += ", ";
        out += t[i].format(vars);
    }
    return out + ")";
}

struct CaseRecorder {
    VerificationReport* rep;
    const GenConfig* cfg;
    int case_index;

    void fail(const nlohmann::json& instance, const std::string& expected,
              const std::string& actual) {
        rep->failures += 1;
        if (static_cast<int>(rep->counterexamples.size()) < cfg->counterexample_cap)
            rep->counterexamples.push_back({case_index, instance, expected, actual});
    }
};

nlohmann::json instance_json(const PolyTuple& t, const std::string& extra = "") {
    nlohmann::json j = tuple_to_json(t, canonical_vars(t.arity()));
    j.erase("meta");
    if (!extra.empty()) j["detail"] = extra;
    return j;
}

using SuiteFn = std::function<void(const GenConfig&, int, CaseRecorder&)>;

// ---------------------------------------------------------------------------
// Suite predicates. Each runs one case; failures go through the recorder.
// ---------------------------------------------------------------------------

void suite_linearity(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "linearity", idx);
    PolyTuple a = gen_tuple(rng, cfg);
    PolyTuple b = gen_tuple_shaped(rng, a.arity(), a.size(), cfg.max_degree,
                                   cfg.terms_per_entry, cfg.coeff_bound);
    Rational lam = small_rational(rng), mu = small_rational(rng);
    Direction d{static_cast<int>(rng.range(0, a.arity() - 1))};
    PolyTuple lhs = expand(lam * a + mu * b, d);
    PolyTuple rhs = lam * expand(a, d) + mu * expand(b, d);
    if (!(lhs == rhs))
        rec.fail(instance_json(a, "second tuple " + tuple_str(b)), tuple_str(rhs), tuple_str(lhs));
}

void suite_commutativity(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "commutativity", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    auto m = distinct_path(rng, t.arity(), 2);
    PolyTuple ab = expand_mixed(t, m);
    PolyTuple ba = expand_mixed(t, {m[1], m[0]});
    if (!(ab == ba)) rec.fail(instance_json(t), tuple_str(ab), tuple_str(ba));
}

void suite_totient_formula(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "totient_formula", idx);
    PolyTuple t = gen_tuple(rng, cfg);
    Direction d{static_cast<int>(rng.range(0, t.arity() - 1))};
    unsigned iter = totient(t, d), form = totient_formula(t, d);
    if (iter != form)
        rec.fail(instance_json(t), "totient " + std::to_string(form),
                 "totient " + std::to_string(iter));
}

void suite_totient_sum_upper(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "totient_sum_upper", idx);
    PolyTuple a = gen_tuple(rng, cfg);
    PolyTuple b = gen_tuple_shaped(rng, a.arity(), a.size(), cfg.max_degree,
                                   cfg.terms_per_entry, cfg.coeff_bound);
    Direction d{static_cast<int>(rng.range(0, a.arity() - 1))};
    unsigned bound = std::max(totient(a, d), totient(b, d));
    unsigned got = totient(a + b, d);
    if (got > bound)
        rec.fail(instance_json(a, "second tuple " + tuple_str(b)),
                 "totient <= " + std::to_string(bound), std::to_string(got));
}

void suite_totient_sum_eq(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "totient_sum_eq", idx);
    PolyTuple a = gen_tuple(rng, cfg);
    Direction d{static_cast<int>(rng.range(0, a.arity() - 1))};
    PolyTuple b = a;
    if (idx == 0) {
        // Planted cancellation: B = -A + unit tuple, with A forced nonconstant.
        a = PolyTuple({Polynomial::monomial(1, 0, 2), Polynomial::monomial(1, 0, 1)});
        d = Direction{0};
        b = Rational(-1) * a + PolyTuple(std::vector<Polynomial>(
                                  a.size(), Polynomial::constant(a.arity(), 1)));
    } else if (idx % 2 == 1) {
        // Disjoint leading x_d exponents: cancellation cannot lower the max.
        for (int attempt = 0; attempt < 20; ++attempt) {
            b = gen_tuple_shaped(rng, a.arity(), a.size(), cfg.max_degree,
                                 cfg.terms_per_entry, cfg.coeff_bound);
            if (totient_formula(a, d) != totient_formula(b, d)) break;
        }
    } else {
        b = gen_tuple_shaped(rng, a.arity(), a.size(), cfg.max_degree,
                             cfg.terms_per_entry, cfg.coeff_bound);
    }
    unsigned expected = std::max(totient(a, d), totient(b, d));
    unsigned got = totient(a + b, d);
    if (got != expected)
        rec.fail(instance_json(a, "second tuple " + tuple_str(b)),
                 "totient " + std::to_string(expected), "totient " + std::to_string(got));
}

void suite_recovery_roundtrip(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "recovery_roundtrip", idx);
    PolyTuple t = gen_tuple(rng, cfg);
    Direction d{static_cast<int>(rng.range(0, t.arity() - 1))};
    PolyTuple back = expand(contract(t, d), d);
    if (!(back == t)) {
        rec.fail(instance_json(t), tuple_str(t), tuple_str(back));
        return;
    }
    PolyTuple other = contract(expand(t, d), d);
    PolyTuple want = t - free_part(t, d);
    if (!(other == want)) rec.fail(instance_json(t), tuple_str(want), tuple_str(other));
}

void suite_specialization_commutes(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "specialization_commutes", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    Direction keep{static_cast<int>(rng.range(0, t.arity() - 1))};
    std::map<Direction, Rational> asg;
    for (int v = 0; v < t.arity(); ++v)
        if (v != keep.var) asg[Direction{v}] = small_rational(rng);
    PolyTuple lhs = specialize(expand(t, keep), asg, keep);
    PolyTuple rhs = expand(specialize(t, asg, keep), keep);
    if (!(lhs == rhs)) rec.fail(instance_json(t), tuple_str(rhs), tuple_str(lhs));
}

void suite_destab_range(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "destab_range", idx);
    PolyTuple t = gen_tuple(rng, cfg);
    if (t.is_null()) return;
    Direction d{static_cast<int>(rng.range(0, t.arity() - 1))};
    auto r = destabilization(t, d);
    unsigned phi = totient(t, d);
    if (r.stage >= phi || (r.natural && r.stage != 0))
        rec.fail(instance_json(t), "stage < " + std::to_string(phi),
                 "stage " + std::to_string(r.stage));
}

void suite_strong_destab(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "strong_destab", idx);
    PolyTuple t = idx == 0
                      ? PolyTuple({Polynomial::monomial(1, 0, 1),
                                   Polynomial::monomial(1, 0, 2)})
                      : gen_tuple(rng, cfg);
    if (t.is_null()) return;
    Direction d{idx == 0 ? 0 : static_cast<int>(rng.range(0, t.arity() - 1))};
    PolyTuple res = residue(t, d);
    PolyTuple at_zero = value_at(res, {{d, Rational(0)}});
    bool strong = true;
    for (int i = 0; i < at_zero.size(); ++i)
        if (at_zero[i].is_zero()) strong = false;
    if (!strong)
        rec.fail(instance_json(t), "residue at 0 with no zero entry", tuple_str(at_zero));
}

void suite_dropler_energy_eq(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "dropler_energy_eq", idx);
    PolyTuple t = gen_tuple(rng, cfg);
    int l = static_cast<int>(rng.range(1, std::min(t.arity(), 3)));
    auto m = distinct_path(rng, t.arity(), l);
    Direction d{static_cast<int>(rng.range(0, t.arity() - 1))};
    auto source = ExpansionExpr::make(t, m, 1);
    auto r = dropler_intensity(source, t, d);
    unsigned phi = totient(t, d);
    unsigned want = r.admits ? phi - r.intensity : 0;
    if (r.energy != want || (r.admits != (r.intensity < phi)))
        rec.fail(instance_json(t), "energy " + std::to_string(want),
                 "energy " + std::to_string(r.energy));
}

// Sum of the two direction expansions, applied as one operator.
PolyTuple sum_operator(const PolyTuple& v, Direction a, Direction b) {
    return expand(v, a) + expand(v, b);
}

void suite_dropler_max_upper(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "dropler_max_upper", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    auto pair = distinct_path(rng, t.arity(), 2);
    int l = static_cast<int>(rng.range(1, std::min(t.arity(), 3)));
    PolyTuple source = expand_mixed(t, distinct_path(rng, t.arity(), l));
    unsigned k1 = totient(source, pair[0]);
    unsigned k2 = totient(source, pair[1]);
    // Guaranteed annihilation step of the summed operator: k1 + k2 - 1.
    PolyTuple acc = source;
    for (unsigned i = 0; i < k1 + k2 - 1; ++i) acc = sum_operator(acc, pair[0], pair[1]);
    if (!acc.is_null())
        rec.fail(instance_json(t, "source " + tuple_str(source)),
                 "null after " + std::to_string(k1 + k2 - 1) + " summed steps", tuple_str(acc));
}

void suite_dropler_max_eq(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "dropler_max_eq", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    auto pair = distinct_path(rng, t.arity(), 2);
    int l = static_cast<int>(rng.range(1, std::min(t.arity(), 3)));
    PolyTuple source = expand_mixed(t, distinct_path(rng, t.arity(), l));
    unsigned k1 = totient(source, pair[0]);
    unsigned k2 = totient(source, pair[1]);
    unsigned expected = std::max(k1, k2);
    PolyTuple acc = source;
    unsigned got = 0;
    for (unsigned j = 1; j <= k1 + k2 - 1; ++j) {
        acc = sum_operator(acc, pair[0], pair[1]);
        if (acc.is_null()) {
            got = j;
            break;
        }
    }
    if (got != expected)
        rec.fail(instance_json(t, "source " + tuple_str(source)),
                 "annihilation at " + std::to_string(expected), "at " + std::to_string(got));
}

void suite_dropler_min_upper(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "dropler_min_upper", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    auto pair = distinct_path(rng, t.arity(), 2);
    int l = static_cast<int>(rng.range(1, std::min(t.arity(), 3)));
    PolyTuple source = expand_mixed(t, distinct_path(rng, t.arity(), l));
    unsigned k1 = totient(source, pair[0]);
    unsigned k2 = totient(source, pair[1]);
    PolyTuple acc = source;
    for (unsigned i = 0; i < std::min(k1, k2); ++i) acc = expand_mixed(acc, pair);
    if (!acc.is_null())
        rec.fail(instance_json(t, "source " + tuple_str(source)),
                 "null after " + std::to_string(std::min(k1, k2)) + " mixed steps",
                 tuple_str(acc));
}

void suite_dropler_min_eq(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "dropler_min_eq", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    auto pair = distinct_path(rng, t.arity(), 2);
    int l = static_cast<int>(rng.range(1, std::min(t.arity(), 3)));
    PolyTuple source = expand_mixed(t, distinct_path(rng, t.arity(), l));
    if (source.is_null()) return;
    unsigned k1 = totient(source, pair[0]);
    unsigned k2 = totient(source, pair[1]);
    unsigned expected = std::min(k1, k2);
    unsigned got = mixed_totient(source, pair);
    if (got != expected)
        rec.fail(instance_json(t, "source " + tuple_str(source)),
                 "mixed annihilation at " + std::to_string(expected),
                 "at " + std::to_string(got));
}

void suite_mixed_totient_upper(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "mixed_totient_upper", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    int l = static_cast<int>(rng.range(2, std::min(t.arity(), 3)));
    auto m = distinct_path(rng, t.arity(), l);
    unsigned bound = totient(t, m[0]);
    for (Direction d : m) bound = std::min(bound, totient(t, d));
    unsigned got = mixed_totient(t, m);
    if (got > bound)
        rec.fail(instance_json(t), "mixed totient <= " + std::to_string(bound),
                 std::to_string(got));
}

void suite_mixed_totient_eq(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "mixed_totient_eq", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    int l = static_cast<int>(rng.range(2, std::min(t.arity(), 3)));
    auto m = distinct_path(rng, t.arity(), l);
    unsigned bound = totient(t, m[0]);
    for (Direction d : m) bound = std::min(bound, totient(t, d));
    unsigned got = mixed_totient(t, m);
    if (got != bound)
        rec.fail(instance_json(t), "mixed totient " + std::to_string(bound),
                 std::to_string(got));
}

void suite_connection(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "connection", idx);
    for (int attempt = 0; attempt < 50; ++attempt) {
        PolyTuple t = gen_tuple(rng, cfg, 2);
        int l = static_cast<int>(rng.range(2, std::min(t.arity(), 3)));
        auto m = distinct_path(rng, t.arity(), l);
        Direction d = m[rng.range(0, l - 1)];
        PolyTuple source_value = expand_mixed(t, m);
        if (source_value.is_null()) continue;
        auto source = ExpansionExpr::make(t, m, 1);
        auto dr = dropler_intensity(source, t, d);
        if (!dr.admits) continue;
        auto diag = diagonalize(t, m, d);
        unsigned got = totient(diag.spot, d);
        unsigned want = dr.intensity + diag.order;
        if (got != want)
            rec.fail(instance_json(t, "spot " + tuple_str(diag.spot)),
                     "spot totient " + std::to_string(want), std::to_string(got));
        return;
    }
}

// Paths for the mixed-totient inequality: distinct directions, optionally
// with one direction doubled so the diagonal order exceeds 1.
MixedDirection inequality_path(Rng& rng, int arity, bool allow_multiplicity) {
    int l = static_cast<int>(rng.range(2, std::min(arity, 3)));
    MixedDirection m = distinct_path(rng, arity, l);
    if (allow_multiplicity && rng.coin()) m.push_back(m[rng.range(0, l - 1)]);
    return m;
}

bool path_fully_active(const PolyTuple& t, const MixedDirection& m) {
    for (Direction d : distinct_directions(m))
        if (totient_formula(t, d) < 2) return false;
    return true;
}

void suite_mixed_specific_inequality(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "mixed_specific_inequality", idx);
    for (int attempt = 0; attempt < 100; ++attempt) {
        PolyTuple t = gen_tuple(rng, cfg, 2);
        auto m = inequality_path(rng, t.arity(), true);
        if (!path_fully_active(t, m)) continue;
        auto dirs = distinct_directions(m);
        unsigned l = static_cast<unsigned>(dirs.size());
        unsigned phi_mixed = mixed_totient(t, m);
        unsigned phi_sum = 0, order_sum = 0;
        for (Direction d : dirs) {
            phi_sum += totient(t, d);
            order_sum += diagonalize(t, m, d).order;
        }
        if (!(l * phi_mixed < phi_sum + order_sum))
            rec.fail(instance_json(t),
                     std::to_string(l) + "*mixed < " + std::to_string(phi_sum + order_sum),
                     std::to_string(l * phi_mixed));
        return;
    }
}

void suite_actual_inequality_corollary(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "actual_inequality_corollary", idx);
    for (int attempt = 0; attempt < 100; ++attempt) {
        PolyTuple t = gen_tuple(rng, cfg, 2);
        auto m = inequality_path(rng, t.arity(), false);
        if (!path_fully_active(t, m)) continue;
        unsigned l = static_cast<unsigned>(m.size());
        unsigned phi_mixed = mixed_totient(t, m);
        unsigned phi_sum = 0;
        bool orders_one = true;
        for (Direction d : m) {
            phi_sum += totient(t, d);
            if (diagonalize(t, m, d).order != 1) orders_one = false;
        }
        if (!orders_one || !(l * phi_mixed < phi_sum + l))
            rec.fail(instance_json(t),
                     std::to_string(l) + "*mixed < " + std::to_string(phi_sum + l),
                     std::to_string(l * phi_mixed));
        return;
    }
}

void suite_min_index_inequality(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "min_index_inequality", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    int l = static_cast<int>(rng.range(2, std::min(t.arity(), 3)));
    auto m = distinct_path(rng, t.arity(), l);
    unsigned min_phi = totient(t, m[0]);
    unsigned phi_sum = 0;
    for (Direction d : m) {
        unsigned p = totient(t, d);
        min_phi = std::min(min_phi, p);
        phi_sum += p;
    }
    // With J = 0: l * min < sum(Ind) + 2l, i.e. l*min < (phi_sum - l) + 2l.
    if (!(static_cast<unsigned>(l) * min_phi < phi_sum + static_cast<unsigned>(l)))
        rec.fail(instance_json(t),
                 std::to_string(l) + "*min < " + std::to_string(phi_sum + l),
                 std::to_string(l * min_phi));
}

// Mother tuple with a forced x_d exponent so the chain fits.
PolyTuple gen_mother(Rng& rng, const GenConfig& cfg, Direction d, int forced_index) {
    PolyTuple t = gen_tuple(rng, cfg);
    std::vector<Polynomial> entries = t.entries();
    // Cap everything at the forced index, then plant it in entry 0.
    for (auto& p : entries) {
        Polynomial capped(p.arity());
        for (const auto& [mono, c] : p.terms())
            if (mono.exps[d.var] <= static_cast<std::uint32_t>(forced_index))
                capped.add_term(mono, c);
        p = capped;
        if (p.is_zero()) p = Polynomial::constant(p.arity(), 1);
    }
    Polynomial plant = Polynomial::monomial(entries[0].arity(), d.var, forced_index, 1);
    if (x_index(entries[0] + plant, d.var) == static_cast<std::uint32_t>(forced_index))
        entries[0] = entries[0] + plant;
    else
        entries[0] = plant;
    return PolyTuple(std::move(entries));
}

std::vector<unsigned> descending_exponents(Rng& rng, unsigned n, unsigned hi) {
    // n distinct values from [1, hi] sorted descending, then a trailing 0.
    std::vector<unsigned> pool(hi);
    for (unsigned i = 0; i < hi; ++i) pool[i] = i + 1;
    for (unsigned i = hi - 1; i > 0; --i)
        std::swap(pool[i], pool[rng.range(0, i)]);
    std::vector<unsigned> c(pool.begin(), pool.begin() + n);
    std::sort(c.begin(), c.end(), std::greater<>());
    c.push_back(0);
    return c;
}

void suite_chain_identity(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "chain_identity", idx);
    unsigned n = static_cast<unsigned>(rng.range(3, 5));
    Direction d{0};
    PolyTuple mother = gen_mother(rng, cfg, d, static_cast<int>(rng.range(n, 8)));
    unsigned phi = totient(mother, d);
    auto c = descending_exponents(rng, n - 1, phi - 1);
    std::vector<PolyTuple> chain;
    for (unsigned e : c) chain.push_back(expand_pow(mother, d, e));
    auto rep = chain_identity_check(chain, d);
    if (!rep.identity_holds || !rep.strict_corollary_holds)
        rec.fail(instance_json(mother),
                 "identity total " + std::to_string(rep.identity_rhs),
                 "total " + std::to_string(rep.total_index));
}

void suite_index_transitivity(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "index_transitivity", idx);
    Direction d{0};
    PolyTuple mother = gen_mother(rng, cfg, d, static_cast<int>(rng.range(3, 8)));
    unsigned phi = totient(mother, d);
    unsigned u = static_cast<unsigned>(rng.range(1, phi - 2));
    unsigned v = static_cast<unsigned>(rng.range(1, phi - 1 - u));
    PolyTuple b = expand_pow(mother, d, u);
    PolyTuple a = expand_pow(mother, d, u + v);

    auto index_of = [&](const PolyTuple& upper, const PolyTuple& lower) {
        return expansion_index(ExpansionExpr::make(upper, {d}, 0),
                               ExpansionExpr::make(lower, {d}, 1));
    };
    auto r1 = index_of(mother, b), r2 = index_of(b, a), r3 = index_of(mother, a);
    if (!r1 || !r2 || !r3 || *r3 != *r1 + *r2 - 1)
        rec.fail(instance_json(mother),
                 "r3 == r1 + r2 - 1",
                 "r1=" + (r1 ? std::to_string(*r1) : "inf") +
                     " r2=" + (r2 ? std::to_string(*r2) : "inf") +
                     " r3=" + (r3 ? std::to_string(*r3) : "inf"));
}

void suite_dominating_vs_index(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "dominating_vs_index", idx);
    Direction d{0};
    PolyTuple mother = gen_mother(rng, cfg, d, static_cast<int>(rng.range(2, 8)));
    unsigned phi = totient(mother, d);
    unsigned w = static_cast<unsigned>(rng.range(0, phi - 2));
    auto t_expr = ExpansionExpr::make(mother, {d}, 0);
    auto z_expr = ExpansionExpr::make(expand_pow(mother, d, w), {d}, 1);
    auto index = expansion_index(t_expr, z_expr);
    auto dom = dominating_number(z_expr, t_expr);
    if (!index || !dom || *index > *dom)
        rec.fail(instance_json(mother), "index <= dominating",
                 "index=" + (index ? std::to_string(*index) : "inf") +
                     " dominating=" + (dom ? std::to_string(*dom) : "inf"));
}

void suite_dominating_chain_bound(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "dominating_chain_bound", idx);
    Direction d{0};
    unsigned n = static_cast<unsigned>(rng.range(3, 5));
    // Stay inside the bound's envelope: exponents at most totient - 3.
    PolyTuple mother = gen_mother(rng, cfg, d, static_cast<int>(rng.range(n + 1, 8)));
    unsigned phi = totient(mother, d);
    auto c = descending_exponents(rng, n - 1, phi - 3);
    auto t_expr = ExpansionExpr::make(mother, {d}, 0);
    unsigned long sum = 0;
    bool all_finite = true;
    for (unsigned e : c) {
        auto z_expr = ExpansionExpr::make(expand_pow(mother, d, e), {d}, 1);
        auto dom = dominating_number(z_expr, t_expr);
        if (!dom) {
            all_finite = false;
            break;
        }
        sum += *dom;
    }
    unsigned long bound = static_cast<unsigned long>(phi - 1) * (phi - 2) / 2;
    if (!all_finite || sum > bound)
        rec.fail(instance_json(mother), "sum of dominating numbers <= " + std::to_string(bound),
                 std::to_string(sum));
}

void suite_area_linearity(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "area_linearity", idx);
    PolyTuple a = gen_tuple(rng, cfg);
    PolyTuple b = gen_tuple_shaped(rng, a.arity(), a.size(), cfg.max_degree,
                                   cfg.terms_per_entry, cfg.coeff_bound);
    int l = static_cast<int>(rng.range(1, std::min(a.arity(), 3)));
    auto m = distinct_path(rng, a.arity(), l);
    BoxDomain box;
    for (Direction d : distinct_directions(m)) {
        long lo = rng.range(-2, 1);
        box.limits.push_back({d.var, Rational(lo), Rational(lo + rng.range(1, 2))});
    }
    Rational om = small_rational(rng), mu = small_rational(rng);
    Polynomial lhs = area(om * a + mu * b, m, box);
    Polynomial rhs = area(a, m, box) * om + area(b, m, box) * mu;
    if (!(lhs == rhs))
        rec.fail(instance_json(a, "second tuple " + tuple_str(b)),
                 rhs.format(canonical_vars(a.arity())), lhs.format(canonical_vars(a.arity())));
}

void suite_integral_inequality(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "integral_inequality", idx);
    // Quadrature stays cheap in at most two dimensions.
    GenConfig local = cfg;
    local.arity = std::min(cfg.arity, 2);
    local.max_degree = std::min(cfg.max_degree, 4);
    PolyTuple t = gen_tuple(rng, local);
    // Path over every variable, so the box covers everything the mixed
    // value can depend on.
    auto m = distinct_path(rng, t.arity(), t.arity());
    BoxDomain box;
    for (Direction d : distinct_directions(m)) {
        long lo = rng.range(-2, 0);
        box.limits.push_back({d.var, Rational(lo), Rational(lo + rng.range(1, 2))});
    }
    auto rep = check_integral_inequality(t, m, box, 1e-9);
    if (!rep.holds)
        rec.fail(instance_json(t), "lhs >= rhs - 1e-9",
                 "lhs=" + std::to_string(rep.lhs) + " rhs=" + std::to_string(rep.rhs));
}

void suite_rho_bound(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "rho_bound", idx);
    PolyTuple t = idx == 0
                      ? PolyTuple({Polynomial::monomial(1, 0, 3),
                                   Polynomial::monomial(1, 0, 1)})
                      : gen_tuple(rng, cfg);
    if (t.is_null()) return;
    Direction d{idx == 0 ? 0 : static_cast<int>(rng.range(0, t.arity() - 1))};
    unsigned rho = normalization_stage(t, d).first;
    if (rho > 2)
        rec.fail(instance_json(t), "normalization stage <= 2", std::to_string(rho));
}

void suite_unionization_bound(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "unionization_bound", idx);
    PolyTuple t = gen_tuple(rng, cfg);
    if (t.is_null()) return;
    Direction d{static_cast<int>(rng.range(0, t.arity() - 1))};
    unsigned rho = normalization_stage(t, d).first;
    if (rho == 0) return;
    unsigned j = unionization_stage(t, d);
    unsigned lower = totient(t, d) / rho;
    if (j < lower)
        rec.fail(instance_json(t), "unionization >= " + std::to_string(lower),
                 std::to_string(j));
}

void suite_analytic_range(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    Rng rng = case_rng(cfg, "analytic_range", idx);
    PolyTuple t = gen_tuple(rng, cfg);
    Direction d{static_cast<int>(rng.range(0, t.arity() - 1))};
    unsigned phi = totient(t, d);
    unsigned bound = analytic_range_bound(t, d);
    if (bound != phi / 2 || bound > phi)
        rec.fail(instance_json(t), "bound " + std::to_string(phi / 2), std::to_string(bound));
}

void suite_hybrid_diagonal_transfer(const GenConfig& cfg, int idx, CaseRecorder& rec) {
    if (cfg.arity < 2) return;
    Rng rng = case_rng(cfg, "hybrid_diagonal_transfer", idx);
    PolyTuple t = gen_tuple(rng, cfg, 2);
    auto m = distinct_path(rng, t.arity(), 2);
    auto da = diagonalize(t, m, m[0]);
    auto db = diagonalize(t, m, m[1]);
    auto e1 = ExpansionExpr::make(da.spot, {m[0]}, da.order);
    auto e2 = ExpansionExpr::make(db.spot, {m[1]}, db.order);
    PolyTuple mixed = expand_mixed(t, m);
    if (!is_hybrid(e1, e2) || !(e2.value == mixed))
        rec.fail(instance_json(t), tuple_str(mixed), tuple_str(e2.value));
}

struct SuiteEntry {
    SuiteInfo info;
    SuiteFn fn;
};

const std::vector<SuiteEntry>& suite_table() {
    static const std::vector<SuiteEntry> table = {
        {{"linearity", true}, suite_linearity},
        {{"commutativity", true}, suite_commutativity},
        {{"totient_formula", true}, suite_totient_formula},
        {{"totient_sum_upper", true}, suite_totient_sum_upper},
        {{"totient_sum_eq", false}, suite_totient_sum_eq},
        {{"recovery_roundtrip", true}, suite_recovery_roundtrip},
        {{"specialization_commutes", true}, suite_specialization_commutes},
        {{"destab_range", true}, suite_destab_range},
        {{"strong_destab", false}, suite_strong_destab},
        {{"dropler_energy_eq", true}, suite_dropler_energy_eq},
        {{"dropler_max_upper", true}, suite_dropler_max_upper},
        {{"dropler_max_eq", false}, suite_dropler_max_eq},
        {{"dropler_min_upper", true}, suite_dropler_min_upper},
        {{"dropler_min_eq", false}, suite_dropler_min_eq},
        {{"mixed_totient_upper", true}, suite_mixed_totient_upper},
        {{"mixed_totient_eq", false}, suite_mixed_totient_eq},
        {{"connection", true}, suite_connection},
        {{"mixed_specific_inequality", true}, suite_mixed_specific_inequality},
        {{"actual_inequality_corollary", true}, suite_actual_inequality_corollary},
        {{"min_index_inequality", true}, suite_min_index_inequality},
        {{"chain_identity", true}, suite_chain_identity},
        {{"index_transitivity", true}, suite_index_transitivity},
        {{"dominating_vs_index", true}, suite_dominating_vs_index},
        {{"dominating_chain_bound", true}, suite_dominating_chain_bound},
        {{"area_linearity", true}, suite_area_linearity},
        {{"integral_inequality", true}, suite_integral_inequality},
        {{"rho_bound", false}, suite_rho_bound},
        {{"unionization_bound", false}, suite_unionization_bound},
        {{"analytic_range", true}, suite_analytic_range},
        {{"hybrid_diagonal_transfer", true}, suite_hybrid_diagonal_transfer},
    };
    return table;
}

} // namespace

PolyTuple gen_random_tuple(const GenConfig& cfg, int case_index) {
    Rng rng = case_rng(cfg, "gen", case_index);
    return gen_tuple(rng, cfg);
}

const std::vector<SuiteInfo>& suite_roster() {
    static const std::vector<SuiteInfo> roster = [] {
        std::vector<SuiteInfo> r;
        for (const auto& e : suite_table()) r.push_back(e.info);
        return r;
    }();
    return roster;
}

VerificationReport run_suite(const std::string& name, const GenConfig& cfg) {
    for (const auto& entry : suite_table()) {
        if (entry.info.name != name) continue;
        VerificationReport rep;
        rep.suite = name;
        rep.classification = entry.info.gating ? "gating" : "diagnostic";
        rep.cases = cfg.cases;
        for (int i = 0; i < cfg.cases; ++i) {
            CaseRecorder rec{&rep, &cfg, i};
            entry.fn(cfg, i, rec);
        }
        return rep;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<VerificationReport> run_all_suites(const GenConfig& cfg) {
    std::vector<VerificationReport> out;
    for (const auto& entry : suite_table()) out.push_back(run_suite(entry.info.name, cfg));
    return out;
}

nlohmann::json report_to_json(const VerificationReport& rep, const GenConfig& cfg) {
    nlohmann::json j;
    j["suite"] = rep.suite;
    j["classification"] = rep.classification;
    j["cases"] = rep.cases;
    j["failures"] = rep.failures;
    auto arr = nlohmann::json::array();
    for (const auto& ce : rep.counterexamples) {
        nlohmann::json c;
        c["case"] = ce.case_index;
        c["instance"] = ce.instance;
        c["expected"] = ce.expected;
        c["actual"] = ce.actual;
        arr.push_back(std::move(c));
    }
    j["counterexamples"] = arr;
    j["engine_version"] = kEngineVersion;
    j["config"] = {{"arity", cfg.arity},
                   {"tuple_len", cfg.tuple_len},
                   {"max_degree", cfg.max_degree},
                   {"terms_per_entry", cfg.terms_per_entry},
                   {"coeff_bound", cfg.coeff_bound},
                   {"seed", cfg.seed},
                   {"cases", cfg.cases}};
    return j;
}

nlohmann::json reports_to_json(const std::vector<VerificationReport>& reps,
                               const GenConfig& cfg) {
    auto arr = nlohmann::json::array();
    for (const auto& r : reps) arr.push_back(report_to_json(r, cfg));
    return arr;
}

int aggregate_exit_code(const std::vector<VerificationReport>& reps) {
    for (const auto& r : reps)
        if (r.classification == "gating" && r.failures > 0) return 3;
    return 0;
}

} // namespace expd
