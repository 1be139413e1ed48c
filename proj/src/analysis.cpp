#include "expd/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace expd {

ExpansionExpr ExpansionExpr::make(PolyTuple spot, MixedDirection path, unsigned power) {
    PolyTuple value = spot;
    for (unsigned i = 0; i < power; ++i) value = expand_mixed(value, path);
    return ExpansionExpr{std::move(spot), std::move(path), power, std::move(value)};
}

DroplerResult dropler_intensity(const ExpansionExpr& source, const PolyTuple& t, Direction d) {
    if (source.value.size() != t.size() || source.value.arity() != t.arity())
        throw std::invalid_argument("source and affected tuple shapes differ");
    DroplerResult r;
    r.intensity = totient(source.value, d);
    unsigned phi = totient(t, d);
    r.admits = r.intensity < phi;
    r.energy = r.admits ? phi - r.intensity : 0;
    return r;
}

DestabilizationResult destabilization(const PolyTuple& t, Direction d) {
    std::map<Direction, Rational> at_zero{{d, Rational(0)}};
    auto no_zero_entry = [](const PolyTuple& v) {
        for (int i = 0; i < v.size(); ++i)
            if (v[i].is_zero()) return false;
        return true;
    };

    DestabilizationResult r;
    PolyTuple probe = value_at(t, at_zero);
    if (!probe.is_null()) {
        r.natural = true;
        r.stage = 0;
        r.strong = no_zero_entry(probe);
        return r;
    }
    unsigned bound = totient(t, d);
    PolyTuple acc = t;
    for (unsigned k = 1; k < bound; ++k) {
        acc = expand(acc, d);
        probe = value_at(acc, at_zero);
        if (!probe.is_null()) {
            r.stage = k;
            r.strong = no_zero_entry(probe);
            return r;
        }
    }
    // Only the null tuple reaches this point: every iterate vanishes.
    return r;
}

DiagonalizationResult diagonalize(const PolyTuple& t, const MixedDirection& m, Direction d) {
    unsigned order = static_cast<unsigned>(std::count(m.begin(), m.end(), d));
    if (order == 0)
        throw std::invalid_argument("diagonalization direction must occur in the mixed path");
    PolyTuple spot = expand_mixed(t, m);
    for (unsigned i = 0; i < order; ++i) spot = contract(spot, d);
    return DiagonalizationResult{std::move(spot), order, d};
}

bool is_hybrid(const ExpansionExpr& e1, const ExpansionExpr& e2) {
    if (e1.path.size() != 1 || e2.path.size() != 1)
        throw std::invalid_argument("hybrid comparison needs singleton direction paths");
    if (e1.path.front() == e2.path.front())
        throw std::invalid_argument("hybrid comparison needs distinct directions");
    return e1.value == e2.value;
}

std::optional<unsigned> exactness_degree(const PolyTuple& t, Direction d,
                                         const PolyTuple& spot, const MixedDirection& m) {
    if (t.size() != spot.size() || t.arity() != spot.arity())
        throw std::invalid_argument("tuple shapes differ");
    PolyTuple target = expand_mixed(spot, m);
    unsigned bound = iteration_cap_or(totient_formula(t, d));
    PolyTuple acc = t;
    for (unsigned s = 1; s <= bound; ++s) {
        acc = expand(acc, d);
        if (acc == target) return s;
    }
    return std::nullopt;
}

std::optional<unsigned> sub_expansion_offset(const PolyTuple& u, const PolyTuple& v, Direction d) {
    if (u.size() != v.size() || u.arity() != v.arity())
        throw std::invalid_argument("tuple shapes differ");
    unsigned bound = iteration_cap_or(totient_formula(v, d));
    PolyTuple acc = v;
    for (unsigned m = 0; m <= bound; ++m) {
        if (acc == u) return m;
        if (m < bound) acc = expand(acc, d);
    }
    return std::nullopt;
}

static Direction singleton_direction(const ExpansionExpr& a, const ExpansionExpr& b) {
    if (a.path.size() != 1 || b.path.size() != 1 || a.path.front() != b.path.front())
        throw std::invalid_argument("expressions must share one singleton direction");
    return a.path.front();
}

std::optional<unsigned> expansion_index(const ExpansionExpr& t_expr, const ExpansionExpr& z_expr) {
    Direction d = singleton_direction(t_expr, z_expr);
    unsigned bound = iteration_cap_or(totient_formula(t_expr.spot, d));
    PolyTuple acc = t_expr.spot;
    for (unsigned r = 1; r <= bound; ++r) {
        acc = expand(acc, d);
        if (acc == z_expr.value) return r;
    }
    return std::nullopt;
}

std::optional<unsigned> dominating_number(const ExpansionExpr& z_expr, const ExpansionExpr& t_expr) {
    Direction d = singleton_direction(z_expr, t_expr);
    unsigned bound = iteration_cap_or(totient_formula(t_expr.spot, d));
    PolyTuple acc = t_expr.spot;
    for (unsigned s = 1; s <= bound; ++s) {
        acc = expand(acc, d);
        if (sub_expansion_offset(acc, z_expr.value, d)) return s;
    }
    return std::nullopt;
}

ChainIdentityReport chain_identity_check(const std::vector<PolyTuple>& chain, Direction d) {
    if (chain.size() < 2) throw std::invalid_argument("a chain needs at least two tuples");
    ChainIdentityReport rep;
    unsigned n = static_cast<unsigned>(chain.size());

    auto index_of = [&](const PolyTuple& upper, const PolyTuple& lower) {
        ExpansionExpr upper_e = ExpansionExpr::make(upper, {d}, 0);
        ExpansionExpr lower_e = ExpansionExpr::make(lower, {d}, 1);
        auto r = expansion_index(upper_e, lower_e);
        if (!r) throw std::invalid_argument("broken chain: an index is absent");
        return *r;
    };

    unsigned sum = 0;
    for (unsigned i = 0; i + 1 < n; ++i) {
        unsigned r = index_of(chain[i + 1], chain[i]);
        rep.step_indices.push_back(r);
        sum += r;
    }
    rep.total_index = index_of(chain.back(), chain.front());
    rep.identity_rhs = sum - (n - 2);
    rep.identity_holds = rep.total_index == rep.identity_rhs;
    rep.strict_corollary_holds = n < 3 || rep.total_index < sum;
    return rep;
}

std::pair<unsigned, PolyTuple> normalization_stage(const PolyTuple& t, Direction d) {
    auto indices_equal = [&](const PolyTuple& v) {
        std::uint32_t first = x_index(v[0], d.var);
        for (int i = 1; i < v.size(); ++i)
            if (x_index(v[i], d.var) != first) return false;
        return true;
    };
    unsigned bound = iteration_cap_or(totient_formula(t, d));
    PolyTuple acc = t;
    for (unsigned k = 0;; ++k) {
        if (indices_equal(acc)) return {k, acc};
        if (k == bound) throw std::logic_error("normalization stage exceeded the totient");
        acc = expand(acc, d);
    }
}

unsigned unionization_stage(const PolyTuple& t, Direction d) {
    std::map<Direction, Rational> at_zero{{d, Rational(0)}};
    unsigned bound = iteration_cap_or(totient_formula(t, d));
    PolyTuple acc = t;
    for (unsigned j = 1; j <= bound; ++j) {
        acc = expand(acc, d);
        if (value_at(acc, at_zero).is_null()) return j;
    }
    throw std::logic_error("unionization stage exceeded the totient");
}

unsigned analytic_range_bound(const PolyTuple& t, Direction d) {
    return totient(t, d) / 2;
}

SingleVarProfile single_var_profile(const PolyTuple& t) {
    if (t.arity() != 1) throw std::invalid_argument("profile requires an arity-1 tuple");
    Direction d{0};
    SingleVarProfile prof{0, t, 0, 0};
    prof.degree = totient(t, d) - 1;
    prof.rank = residue(t, d);
    prof.local_number = normalization_stage(t, d).first;
    prof.dimension = prof.degree - prof.local_number;
    return prof;
}

} // namespace expd
