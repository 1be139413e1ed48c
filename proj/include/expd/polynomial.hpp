#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "expd/rational.hpp"

namespace expd {

// Exponent vector of fixed length (the ring arity). Entries are the powers
// of x_0, ..., x_{n-1}.
struct Monomial {
    std::vector<std::uint32_t> exps;

    std::uint32_t total_degree() const;
    bool operator==(const Monomial&) const = default;
};

// Graded lexicographic order: first by total degree, ties broken
// lexicographically on the exponent vector. This is the canonical term
// order for storage, equality and serialization.
struct GradedLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

// Sparse multivariate polynomial over exact rationals. Invariants:
// no stored coefficient is zero, every key has length == arity.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexLess>;

    explicit Polynomial(int arity);
    Polynomial(int arity, TermMap terms);

    static Polynomial zero(int arity) { return Polynomial(arity); }
    static Polynomial constant(int arity, const Rational& c);
    /// c * x_var^power
    static Polynomial monomial(int arity, int var, std::uint32_t power,
                               const Rational& c = 1);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    /// Value as a rational when the polynomial is constant; throws otherwise.
    Rational constant_value() const;

    Rational eval(const std::vector<Rational>& point) const;
    double eval_double(const std::vector<double>& point) const;

    std::string format(const std::vector<std::string>& vars) const;

private:
    int arity_;
    TermMap terms_;

    void check_same_arity(const Polynomial& o) const;
};

/// Exact c1*p1 + c2*p2 with zero terms pruned.
Polynomial linear_combine(const Rational& c1, const Polynomial& p1,
                          const Rational& c2, const Polynomial& p2);

/// Exact partial derivative with respect to x_var.
Polynomial partial_derivative(const Polynomial& p, int var);

/// Antiderivative in x_var with integration constant 0, so that
/// partial_derivative(antiderivative(p, var), var) == p.
Polynomial antiderivative(const Polynomial& p, int var);

/// Evaluates x_var := v. The arity is preserved; the substituted variable
/// simply no longer occurs.
Polynomial substitute(const Polynomial& p, int var, const Rational& v);

/// Largest power of x_var over the stored terms; 0 for the zero polynomial.
std::uint32_t x_index(const Polynomial& p, int var);

struct IntegrationLimit {
    int var;
    Rational lo;
    Rational hi;
};

/// Exact iterated definite integral in the listed order. The result is a
/// polynomial in the remaining variables (constant once every variable has
/// been integrated out).
Polynomial integrate_box(const Polynomial& p,
                         const std::vector<IntegrationLimit>& limits);

} // namespace expd
