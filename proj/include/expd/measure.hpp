#pragma once

#include <string>
#include <vector>

#include "expd/tuple.hpp"

namespace expd {

// Integration limits; the listed order is the integration order.
struct BoxDomain {
    std::vector<IntegrationLimit> limits;
};

// A point in R^l. Coordinate i belongs to the i-th distinct direction of
// the mixed path under consideration, in first-occurrence order.
struct Spot {
    std::vector<Rational> coords;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    int levels = 0;
};

struct InequalityReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;   // lhs - rhs for lower bounds, rhs - lhs for upper bounds
    bool holds = false;    // margin >= -tolerance
    double quadrature_error_estimate = 0.0;
    bool applicable = true;
    bool approximate = false;
    std::string note;
};

/// Exact sum over entries of the box integral of the mixed expansion.
/// The box must list exactly the distinct directions of the path.
Polynomial area(const PolyTuple& t, const MixedDirection& m, const BoxDomain& box);

/// Numerical integral of sqrt(sum of squared entries) over the box via
/// order-16 tensor Gauss-Legendre with dyadic subdivision (max 6 levels)
/// until successive estimates agree to the relative tolerance.
/// Non-convergence is reported, never silent.
QuadratureResult norm2_integral(const PolyTuple& g, const BoxDomain& box, double tol);

/// Integral of the euclidean norm of the mixed expansion against the exact
/// norm of the entrywise integrals, with constant 1.
InequalityReport check_integral_inequality(const PolyTuple& t, const MixedDirection& m,
                                           const BoxDomain& box, double tol);

/// Product of the box gaps against the exact norm of the entrywise
/// integrals, applicable when the squared entries sum to at most 1 on a
/// sample grid (sampled, not certified).
InequalityReport check_min_gap(const PolyTuple& t, const MixedDirection& m, const BoxDomain& box);

/// Generalized cross product of l-1 vectors in R^l by cofactor expansion;
/// exact rationals.
Spot cross_product(const std::vector<Spot>& vs);

double spot_norm(const Spot& s);

/// Sum over spot pairs of the exact pair-box area times the norms of the
/// cross products of the remaining spots. Requires as many spots as the
/// path has distinct directions.
double volume(const PolyTuple& t, const MixedDirection& m, const std::vector<Spot>& spots);

/// Average-form inequality over coordinatewise-ordered spot pairs. The
/// right side estimates per-entry maxima by grid sampling with one
/// refinement; the report is marked approximate.
InequalityReport check_average_inequality(const PolyTuple& t, const MixedDirection& m,
                                          const std::vector<Spot>& spots, double tol);

/// Distinct directions of a path in first-occurrence order.
std::vector<Direction> distinct_directions(const MixedDirection& m);

} // namespace expd
