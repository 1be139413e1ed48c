#pragma once

#include <optional>
#include <vector>

#include "expd/tuple.hpp"

namespace expd {

// An expansion expression: a spot tuple, a direction path, and the number
// of times the whole path has been applied. `value` caches the evaluation;
// two expressions are compared through their values.
struct ExpansionExpr {
    PolyTuple spot;
    MixedDirection path;
    unsigned power = 1;
    PolyTuple value;

    static ExpansionExpr make(PolyTuple spot, MixedDirection path, unsigned power = 1);
};

struct DroplerResult {
    unsigned intensity = 0; // smallest k >= 1 annihilating the source value
    bool admits = false;    // intensity < totient of the affected expansion
    unsigned energy = 0;    // totient - intensity when admitted, else 0
};

struct DestabilizationResult {
    bool natural = false;   // the tuple itself is nonzero at x_d = 0
    unsigned stage = 0;     // first iterate nonzero at x_d = 0
    bool strong = false;    // that evaluation has no zero entry
};

struct DiagonalizationResult {
    PolyTuple spot;
    unsigned order = 1;
    Direction direction;
};

struct ChainIdentityReport {
    std::vector<unsigned> step_indices; // [S_{i+1} : S_i] along the chain
    unsigned total_index = 0;           // [S_n : S_1]
    unsigned identity_rhs = 0;          // sum of steps - (n - 2)
    bool identity_holds = false;
    bool strict_corollary_holds = false; // total < sum of steps (n >= 3)
};

struct SingleVarProfile {
    unsigned degree = 0;
    PolyTuple rank;
    unsigned local_number = 0;
    unsigned dimension = 0;
};

/// Annihilation step of the source value under direction-d expansion,
/// admitted when it undercuts the totient of t's expansion in d.
DroplerResult dropler_intensity(const ExpansionExpr& source, const PolyTuple& t, Direction d);

/// Stage at which the iterates of t stop vanishing at x_d = 0. The stage is
/// always below the totient; the null tuple never destabilizes and reports
/// stage 0, not natural.
DestabilizationResult destabilization(const PolyTuple& t, Direction d);

/// Rewrites the mixed expansion of t along m as a pure power of direction d
/// at a constructed spot: order = multiplicity of d in m, spot = that many
/// contractions of the mixed value. Refuses when d does not occur in m.
DiagonalizationResult diagonalize(const PolyTuple& t, const MixedDirection& m, Direction d);

/// Two single-direction expansion expressions in distinct directions with
/// equal values.
bool is_hybrid(const ExpansionExpr& e1, const ExpansionExpr& e2);

/// Smallest s in [1, totient(t, d)] with expand_pow(t, d, s) equal to the
/// mixed expansion of spot along m, if any.
std::optional<unsigned> exactness_degree(const PolyTuple& t, Direction d,
                                         const PolyTuple& spot, const MixedDirection& m);

/// Smallest m >= 0 with u == expand_pow(v, d, m), searched up to the
/// totient of v; absence is definitive.
std::optional<unsigned> sub_expansion_offset(const PolyTuple& u, const PolyTuple& v, Direction d);

/// Index of z_expr in t_expr: smallest r >= 1 with z_expr.value equal to
/// expand_pow(t_expr.spot, d, r). Finite exactly when z_expr's value is a
/// sub-expansion of the iterates of t_expr.spot.
std::optional<unsigned> expansion_index(const ExpansionExpr& t_expr, const ExpansionExpr& z_expr);

/// Smallest s >= 1 such that expand_pow(t_expr.spot, d, s) is a
/// sub-expansion of z_expr.value; bounded by the totient of t_expr.spot.
std::optional<unsigned> dominating_number(const ExpansionExpr& z_expr, const ExpansionExpr& t_expr);

/// Both sides of the chain identity for a sub-expansion chain
/// chain[0] <= chain[1] <= ... <= chain.back() in direction d.
/// Throws when some consecutive index is absent.
ChainIdentityReport chain_identity_check(const std::vector<PolyTuple>& chain, Direction d);

/// Smallest k with all entries of the k-th iterate sharing one x_d-index,
/// together with that iterate (the fibre).
std::pair<unsigned, PolyTuple> normalization_stage(const PolyTuple& t, Direction d);

/// Least j >= 1 whose iterate vanishes identically at x_d = 0; always at
/// most the totient.
unsigned unionization_stage(const PolyTuple& t, Direction d);

/// floor(totient / 2).
unsigned analytic_range_bound(const PolyTuple& t, Direction d);

/// Arity-1 profile: degree, rank, local number, dimension. The principal
/// equation degree = local_number + dimension holds by construction.
SingleVarProfile single_var_profile(const PolyTuple& t);

} // namespace expd
