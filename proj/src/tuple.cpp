#include "expd/tuple.hpp"

#include <cstdlib>
#include <stdexcept>

namespace expd {

PolyTuple::PolyTuple(std::vector<Polynomial> entries) : entries_(std::move(entries)) {
    if (entries_.size() < 2) throw std::invalid_argument("a tuple needs at least two entries");
    int n = entries_.front().arity();
    for (const auto& p : entries_)
        if (p.arity() != n) throw std::invalid_argument("tuple entries must share one arity");
}

bool PolyTuple::is_null() const {
    for (const auto& p : entries_)
        if (!p.is_zero()) return false;
    return true;
}

bool PolyTuple::is_constant() const {
    for (const auto& p : entries_)
        if (!p.is_constant()) return false;
    return true;
}

PolyTuple PolyTuple::null(int size, int arity) {
    return PolyTuple(std::vector<Polynomial>(size, Polynomial::zero(arity)));
}

static void check_same_shape(const PolyTuple& a, const PolyTuple& b) {
    if (a.size() != b.size() || a.arity() != b.arity())
        throw std::invalid_argument("tuple shape mismatch");
}

PolyTuple operator+(const PolyTuple& a, const PolyTuple& b) {
    check_same_shape(a, b);
    std::vector<Polynomial> out;
    out.reserve(a.size());
    for (int i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return PolyTuple(std::move(out));
}

PolyTuple operator-(const PolyTuple& a, const PolyTuple& b) {
    check_same_shape(a, b);
    std::vector<Polynomial> out;
    out.reserve(a.size());
    for (int i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
    return PolyTuple(std::move(out));
}

PolyTuple operator*(const Rational& c, const PolyTuple& t) {
    std::vector<Polynomial> out;
    out.reserve(t.size());
    for (int i = 0; i < t.size(); ++i) out.push_back(t[i] * c);
    return PolyTuple(std::move(out));
}

PolyTuple beta_apply(const PolyTuple& t) {
    Polynomial total = Polynomial::zero(t.arity());
    for (int i = 0; i < t.size(); ++i) total = total + t[i];
    std::vector<Polynomial> out;
    out.reserve(t.size());
    for (int i = 0; i < t.size(); ++i) out.push_back(total - t[i]);
    return PolyTuple(std::move(out));
}

PolyTuple beta_inverse_apply(const PolyTuple& t) {
    Polynomial total = Polynomial::zero(t.arity());
    for (int i = 0; i < t.size(); ++i) total = total + t[i];
    Rational scale(1, static_cast<unsigned long>(t.size() - 1));
    std::vector<Polynomial> out;
    out.reserve(t.size());
    for (int i = 0; i < t.size(); ++i) out.push_back(total * scale - t[i]);
    return PolyTuple(std::move(out));
}

static void check_direction(const PolyTuple& t, Direction d) {
    if (d.var < 0 || d.var >= t.arity()) throw std::out_of_range("direction out of range");
}

PolyTuple expand(const PolyTuple& t, Direction d) {
    check_direction(t, d);
    std::vector<Polynomial> grad;
    grad.reserve(t.size());
    for (int i = 0; i < t.size(); ++i) grad.push_back(partial_derivative(t[i], d.var));
    return beta_apply(PolyTuple(std::move(grad)));
}

PolyTuple expand_pow(const PolyTuple& t, Direction d, unsigned k) {
    PolyTuple acc = t;
    for (unsigned i = 0; i < k; ++i) acc = expand(acc, d);
    return acc;
}

PolyTuple expand_mixed(const PolyTuple& t, const MixedDirection& m) {
    if (m.empty()) throw std::invalid_argument("mixed direction path must be non-empty");
    PolyTuple acc = t;
    for (Direction d : m) acc = expand(acc, d);
    return acc;
}

PolyTuple value_at(const PolyTuple& t, const std::map<Direction, Rational>& assignments) {
    std::vector<Polynomial> out;
    out.reserve(t.size());
    for (int i = 0; i < t.size(); ++i) {
        Polynomial p = t[i];
        for (const auto& [d, v] : assignments) {
            if (d.var < 0 || d.var >= t.arity()) throw std::out_of_range("direction out of range");
            p = substitute(p, d.var, v);
        }
        out.push_back(std::move(p));
    }
    return PolyTuple(std::move(out));
}

unsigned iteration_cap_or(unsigned derived_bound) {
    static const char* env = std::getenv("EXPD_MAX_ITER");
    if (!env) return derived_bound;
    unsigned long cap = std::strtoul(env, nullptr, 10);
    if (cap > 0 && cap < derived_bound)
        throw std::runtime_error("EXPD_MAX_ITER below the derived iteration bound");
    return derived_bound;
}

unsigned totient(const PolyTuple& t, Direction d) {
    check_direction(t, d);
    unsigned bound = iteration_cap_or(totient_formula(t, d));
    PolyTuple acc = t;
    for (unsigned k = 1; k <= bound; ++k) {
        acc = expand(acc, d);
        if (acc.is_null()) return k;
    }
    // Unreachable: each step lowers the tuple's maximal x_d exponent.
    throw std::logic_error("totient iteration exceeded its bound");
}

unsigned totient_formula(const PolyTuple& t, Direction d) {
    check_direction(t, d);
    std::uint32_t best = 0;
    for (int i = 0; i < t.size(); ++i) best = std::max(best, x_index(t[i], d.var));
    return best + 1;
}

unsigned mixed_totient(const PolyTuple& t, const MixedDirection& m) {
    if (m.empty()) throw std::invalid_argument("mixed direction path must be non-empty");
    unsigned bound = totient_formula(t, m.front());
    for (Direction d : m) bound = std::min(bound, totient_formula(t, d));
    bound = iteration_cap_or(bound);
    PolyTuple acc = t;
    for (unsigned k = 1; k <= bound; ++k) {
        acc = expand_mixed(acc, m);
        if (acc.is_null()) return k;
    }
    throw std::logic_error("mixed totient iteration exceeded its bound");
}

PolyTuple residue(const PolyTuple& t, Direction d) {
    return expand_pow(t, d, totient(t, d) - 1);
}

PolyTuple contract(const PolyTuple& t, Direction d) {
    check_direction(t, d);
    PolyTuple swapped = beta_inverse_apply(t);
    std::vector<Polynomial> out;
    out.reserve(t.size());
    for (int i = 0; i < t.size(); ++i) out.push_back(antiderivative(swapped[i], d.var));
    return PolyTuple(std::move(out));
}

PolyTuple specialize(const PolyTuple& t, const std::map<Direction, Rational>& assignments,
                     Direction keep) {
    check_direction(t, keep);
    if (assignments.count(keep))
        throw std::invalid_argument("specialization must not assign the kept direction");
    for (int v = 0; v < t.arity(); ++v) {
        if (v == keep.var) continue;
        if (!assignments.count(Direction{v}))
            throw std::invalid_argument("specialization must cover every other variable");
    }
    return value_at(t, assignments);
}

PolyTuple free_part(const PolyTuple& t, Direction d) {
    check_direction(t, d);
    std::vector<Polynomial> out;
    out.reserve(t.size());
    for (int i = 0; i < t.size(); ++i) {
        Polynomial p(t.arity());
        for (const auto& [m, c] : t[i].terms())
            if (m.exps[d.var] == 0) p.add_term(m, c);
        out.push_back(std::move(p));
    }
    return PolyTuple(std::move(out));
}

} // namespace expd
