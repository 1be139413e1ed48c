#include "expd/parse.hpp"

#include <cctype>

namespace expd {

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    Polynomial run() {
        int arity = static_cast<int>(vars_.size());
        Polynomial acc(arity);
        skip_ws();
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            if (get() == '-') sign = -1;
        }
        acc = acc + parse_term(arity, sign);
        skip_ws();
        while (pos_ < text_.size()) {
            char op = get();
            if (op != '+' && op != '-')
                throw ParseError("expected '+' or '-'", pos_ - 1);
            acc = acc + parse_term(arity, op == '-' ? -1 : 1);
            skip_ws();
        }
        return acc;
    }

private:
    const std::string& text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    char get() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        return text_[pos_++];
    }

    bool at_digit() {
        return std::isdigit(static_cast<unsigned char>(peek()));
    }

    bool at_ident() {
        return std::isalpha(static_cast<unsigned char>(peek()));
    }

    std::string read_digits() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("expected a number", pos_);
        return text_.substr(start, pos_ - start);
    }

    Rational parse_coeff() {
        std::size_t start = pos_;
        std::string num = read_digits();
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::string den = read_digits();
            try {
                return rational_from_string(num + "/" + den);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), start);
            }
        }
        return rational_from_string(num);
    }

    int parse_ident() {
        skip_ws();
        std::size_t start = pos_;
        if (!at_ident()) throw ParseError("expected an identifier", pos_);
        ++pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return static_cast<int>(i);
        throw ParseError("unknown variable '" + name + "'", start);
    }

    // factor := ident ('^' uint)?
    void parse_factor(Monomial& m) {
        int var = parse_ident();
        std::uint32_t e = 1;
        if (peek() == '^') {
            get();
            std::string digits = read_digits();
            e = static_cast<std::uint32_t>(std::stoul(digits));
        }
        m.exps[var] += e;
    }

    Polynomial parse_term(int arity, int sign) {
        Monomial m{std::vector<std::uint32_t>(arity, 0)};
        Rational coeff(sign);
        if (at_digit()) {
            coeff *= parse_coeff();
        } else if (at_ident()) {
            parse_factor(m);
        } else {
            throw ParseError("expected a coefficient or variable", pos_);
        }
        while (peek() == '*') {
            get();
            parse_factor(m);
        }
        Polynomial p(arity);
        p.add_term(m, coeff);
        return p;
    }
};

} // namespace

Polynomial parse_poly(const std::string& text, const std::vector<std::string>& vars) {
    if (vars.empty()) throw std::invalid_argument("variable list must not be empty");
    return Parser(text, vars).run();
}

} // namespace expd
