#pragma once

#include <map>
#include <optional>
#include <vector>

#include "expd/polynomial.hpp"

namespace expd {

// Expansion direction [x_i].
struct Direction {
    int var = 0;
    bool operator==(const Direction&) const = default;
    auto operator<=>(const Direction&) const = default;
};

// Ordered direction path; multiplicities allowed. The single-direction
// expansions composed along the path commute, which the harness checks
// rather than assumes.
using MixedDirection = std::vector<Direction>;

// Ordered tuple of s >= 2 polynomials sharing one arity. The object every
// operator acts on.
class PolyTuple {
public:
    explicit PolyTuple(std::vector<Polynomial> entries);

    int size() const { return static_cast<int>(entries_.size()); }
    int arity() const { return entries_.front().arity(); }
    const Polynomial& operator[](int i) const { return entries_[i]; }
    const std::vector<Polynomial>& entries() const { return entries_; }

    bool is_null() const;
    bool is_constant() const;

    static PolyTuple null(int size, int arity);

    bool operator==(const PolyTuple&) const = default;

private:
    std::vector<Polynomial> entries_;
};

PolyTuple operator+(const PolyTuple& a, const PolyTuple& b);
PolyTuple operator-(const PolyTuple& a, const PolyTuple& b);
PolyTuple operator*(const Rational& c, const PolyTuple& t);

/// The zero-diagonal all-ones matrix applied to the tuple:
/// entry j of the result is the sum of all other entries.
PolyTuple beta_apply(const PolyTuple& t);

/// Inverse of beta_apply, J/(s-1) - I; exact.
PolyTuple beta_inverse_apply(const PolyTuple& t);

/// One expansion step in direction d: beta applied to the entrywise
/// partial derivative.
PolyTuple expand(const PolyTuple& t, Direction d);

/// k-fold expansion; k = 0 is the identity.
PolyTuple expand_pow(const PolyTuple& t, Direction d, unsigned k);

/// Left-to-right composition of expand along the path.
PolyTuple expand_mixed(const PolyTuple& t, const MixedDirection& m);

/// Entrywise substitution of every assignment; arity preserved.
PolyTuple value_at(const PolyTuple& t, const std::map<Direction, Rational>& assignments);

/// Smallest k >= 1 with expand_pow(t, d, k) null. Terminates because each
/// step lowers the maximal x_d exponent of the tuple by exactly one.
unsigned totient(const PolyTuple& t, Direction d);

/// max over entries of x_index in direction d, plus 1. Must agree with the
/// iterative totient on every instance.
unsigned totient_formula(const PolyTuple& t, Direction d);

/// Smallest k >= 1 with the k-fold mixed expansion null. Bounded above by
/// the smallest single-direction totient along the path.
unsigned mixed_totient(const PolyTuple& t, const MixedDirection& m);

/// The last nonzero iterate, expand_pow(t, d, totient - 1).
PolyTuple residue(const PolyTuple& t, Direction d);

/// Recovery operator: entrywise antiderivative in direction d of the
/// beta-inverse image. expand(contract(t, d), d) == t.
PolyTuple contract(const PolyTuple& t, Direction d);

/// Substitutes every variable except `keep`; the result is effectively
/// univariate in `keep` (arity unchanged). The assignments must cover
/// exactly the other variables.
PolyTuple specialize(const PolyTuple& t, const std::map<Direction, Rational>& assignments,
                     Direction keep);

/// Tuple of the entries' x_d-exponent-zero parts (terms free of x_d).
PolyTuple free_part(const PolyTuple& t, Direction d);

/// Optional iteration cap from the EXPD_MAX_ITER environment variable.
/// Searches beyond the cap throw std::runtime_error.
unsigned iteration_cap_or(unsigned derived_bound);

} // namespace expd
