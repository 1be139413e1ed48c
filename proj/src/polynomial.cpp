#include "expd/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace expd {

Rational rational_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            mpz_class n(text);
            return Rational(n);
        }
        mpz_class num(text.substr(0, slash));
        mpz_class den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in rational literal: " + text);
        if (den < 0) throw std::invalid_argument("denominator must be positive: " + text);
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

std::string to_string(const Rational& q) {
    return q.get_str();
}

std::uint32_t Monomial::total_degree() const {
    std::uint32_t d = 0;
    for (auto e : exps) d += e;
    return d;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return a.exps < b.exps;
}

Polynomial::Polynomial(int arity) : arity_(arity) {
    if (arity < 1) throw std::invalid_argument("polynomial arity must be positive");
}

Polynomial::Polynomial(int arity, TermMap terms) : arity_(arity), terms_(std::move(terms)) {
    if (arity < 1) throw std::invalid_argument("polynomial arity must be positive");
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (static_cast<int>(it->first.exps.size()) != arity_)
            throw std::invalid_argument("monomial length does not match arity");
        if (it->second == 0) it = terms_.erase(it);
        else ++it;
    }
}

Polynomial Polynomial::constant(int arity, const Rational& c) {
    Polynomial p(arity);
    if (c != 0) p.terms_.emplace(Monomial{std::vector<std::uint32_t>(arity, 0)}, c);
    return p;
}

Polynomial Polynomial::monomial(int arity, int var, std::uint32_t power, const Rational& c) {
    if (var < 0 || var >= arity) throw std::out_of_range("variable index out of range");
    Polynomial p(arity);
    if (c != 0) {
        Monomial m{std::vector<std::uint32_t>(arity, 0)};
        m.exps[var] = power;
        p.terms_.emplace(std::move(m), c);
    }
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.total_degree() == 0;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.exps.size()) != arity_)
        throw std::invalid_argument("monomial length does not match arity");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::check_same_arity(const Polynomial& o) const {
    if (arity_ != o.arity_) throw std::invalid_argument("polynomial arity mismatch");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_arity(o);
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_same_arity(o);
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(arity_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_arity(o);
    Polynomial r(arity_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m{std::vector<std::uint32_t>(arity_)};
            for (int i = 0; i < arity_; ++i) m.exps[i] = ma.exps[i] + mb.exps[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(arity_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::invalid_argument("polynomial is not constant");
    return terms_.begin()->second;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != arity_)
        throw std::invalid_argument("evaluation point has wrong dimension");
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < arity_; ++i) {
            for (std::uint32_t e = 0; e < m.exps[i]; ++e) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

double Polynomial::eval_double(const std::vector<double>& point) const {
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = c.get_d();
        for (int i = 0; i < arity_; ++i) {
            double b = point[i];
            std::uint32_t e = m.exps[i];
            while (e-- > 0) t *= b;
        }
        acc += t;
    }
    return acc;
}

namespace {

// Emits one monomial body ("x^2*y") or empty for the constant monomial.
std::string format_monomial(const Monomial& m, const std::vector<std::string>& vars) {
    std::string out;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[i];
        if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
    }
    return out;
}

} // namespace

std::string Polynomial::format(const std::vector<std::string>& vars) const {
    if (static_cast<int>(vars.size()) != arity_)
        throw std::invalid_argument("variable list length does not match arity");
    if (terms_.empty()) return "0";

    std::string out;
    // Graded-lex descending: iterate the canonical map in reverse.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational mag = c < 0 ? Rational(-c) : c;
        bool negative = c < 0;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        std::string body = format_monomial(m, vars);
        if (body.empty()) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + "*";
            out += body;
        }
    }
    return out;
}

Polynomial linear_combine(const Rational& c1, const Polynomial& p1,
                          const Rational& c2, const Polynomial& p2) {
    if (p1.arity() != p2.arity()) throw std::invalid_argument("polynomial arity mismatch");
    return p1 * c1 + p2 * c2;
}

Polynomial partial_derivative(const Polynomial& p, int var) {
    if (var < 0 || var >= p.arity()) throw std::out_of_range("variable index out of range");
    Polynomial r(p.arity());
    for (const auto& [m, c] : p.terms()) {
        if (m.exps[var] == 0) continue;
        Monomial d = m;
        d.exps[var] -= 1;
        r.add_term(d, c * Rational(m.exps[var]));
    }
    return r;
}

Polynomial antiderivative(const Polynomial& p, int var) {
    if (var < 0 || var >= p.arity()) throw std::out_of_range("variable index out of range");
    Polynomial r(p.arity());
    for (const auto& [m, c] : p.terms()) {
        Monomial a = m;
        a.exps[var] += 1;
        r.add_term(a, c / Rational(a.exps[var]));
    }
    return r;
}

Polynomial substitute(const Polynomial& p, int var, const Rational& v) {
    if (var < 0 || var >= p.arity()) throw std::out_of_range("variable index out of range");
    Polynomial r(p.arity());
    for (const auto& [m, c] : p.terms()) {
        Rational k = c;
        for (std::uint32_t e = 0; e < m.exps[var]; ++e) k *= v;
        if (k == 0) continue;
        Monomial s = m;
        s.exps[var] = 0;
        r.add_term(s, k);
    }
    return r;
}

std::uint32_t x_index(const Polynomial& p, int var) {
    if (var < 0 || var >= p.arity()) throw std::out_of_range("variable index out of range");
    std::uint32_t best = 0;
    for (const auto& [m, c] : p.terms()) best = std::max(best, m.exps[var]);
    return best;
}

Polynomial integrate_box(const Polynomial& p,
                         const std::vector<IntegrationLimit>& limits) {
    std::vector<bool> seen(p.arity(), false);
    for (const auto& lim : limits) {
        if (lim.var < 0 || lim.var >= p.arity())
            throw std::out_of_range("integration variable out of range");
        if (seen[lim.var]) throw std::invalid_argument("duplicate integration variable");
        seen[lim.var] = true;
    }
    Polynomial acc = p;
    for (const auto& lim : limits) {
        Polynomial f = antiderivative(acc, lim.var);
        acc = substitute(f, lim.var, lim.hi) - substitute(f, lim.var, lim.lo);
    }
    return acc;
}

} // namespace expd
