#include "ordeuc/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace ordeuc {

Ordinal::Ordinal(unsigned long n) : Ordinal(mpz_class(n)) {}

Ordinal::Ordinal(const mpz_class& n) {
    if (n < 0) throw DomainError("ordinal-negative", "ordinals cannot be negative");
    if (n > 0) terms_.push_back(Term{Ordinal(), n});
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& a, const Term& b) { return a.exponent > b.exponent; });
    Ordinal out;
    for (auto& t : terms) {
        if (t.coeff == 0) continue;
        if (t.coeff < 0) throw DomainError("ordinal-coeff", "CNF coefficients must be positive");
        if (!out.terms_.empty() && out.terms_.back().exponent == t.exponent)
            out.terms_.back().coeff += t.coeff;
        else
            out.terms_.push_back(std::move(t));
    }
    return out;
}

bool Ordinal::is_finite() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

const mpz_class& Ordinal::finite_value() const {
    static const mpz_class zero = 0;
    if (terms_.empty()) return zero;
    if (!is_finite()) throw DomainError("ordinal-infinite", "ordinal is not finite");
    return terms_[0].coeff;
}

std::strong_ordering Ordinal::operator<=>(const Ordinal& other) const {
    const auto& a = terms_;
    const auto& b = other.terms_;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto ec = a[i].exponent <=> b[i].exponent;
        if (ec != std::strong_ordering::equal) return ec;
        int cc = ::cmp(a[i].coeff, b[i].coeff);
        if (cc != 0) return cc < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
}

bool Ordinal::operator==(const Ordinal& other) const {
    return (*this <=> other) == std::strong_ordering::equal;
}

Ordering cmp(const Ordinal& a, const Ordinal& b) {
    auto c = a <=> b;
    if (c == std::strong_ordering::less) return Ordering::less;
    if (c == std::strong_ordering::greater) return Ordering::greater;
    return Ordering::equal;
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    const Ordinal& lead = b.terms().front().exponent;
    std::vector<Ordinal::Term> out;
    for (const auto& t : a.terms()) {
        if (t.exponent > lead) out.push_back(t);
        // terms with exponent <= lead(b) are absorbed; an equal exponent
        // merges into b's leading coefficient below
    }
    bool merged = false;
    for (const auto& t : b.terms()) {
        out.push_back(t);
        if (!merged) {
            merged = true;
            for (const auto& ta : a.terms())
                if (ta.exponent == lead) out.back().coeff += ta.coeff;
        }
    }
    return Ordinal::from_terms(std::move(out));
}

Ordinal nat_sum(const Ordinal& a, const Ordinal& b) {
    std::vector<Ordinal::Term> out;
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    while (ia != ea && ib != eb) {
        if (ia->exponent == ib->exponent) {
            out.push_back(Ordinal::Term{ia->exponent, ia->coeff + ib->coeff});
            ++ia;
            ++ib;
        } else if (ia->exponent > ib->exponent) {
            out.push_back(*ia++);
        } else {
            out.push_back(*ib++);
        }
    }
    out.insert(out.end(), ia, ea);
    out.insert(out.end(), ib, eb);
    return Ordinal::from_terms(std::move(out));
}

Ordinal omega_pow(const Ordinal& a) {
    return Ordinal::from_terms({Ordinal::Term{a, 1}});
}

bool is_indecomposable(const Ordinal& a) {
    return a.terms().size() == 1 && a.terms()[0].coeff == 1;
}

namespace {

class OrdinalParser {
public:
    explicit OrdinalParser(const std::string& text) : s_(text) {}

    Ordinal parse() {
        Ordinal value = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return value;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek_digit() const {
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }

    mpz_class parse_nat() {
        if (!peek_digit()) fail("expected a number");
        std::size_t start = pos_;
        while (peek_digit()) ++pos_;
        return mpz_class(s_.substr(start, pos_ - start));
    }

    // term := 'w' ('^' exp)? ('*' nat)? | nat
    Ordinal parse_term() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected a term");
        if (s_[pos_] == 'w') {
            ++pos_;
            Ordinal exponent = 1ul;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                skip_ws();
                exponent = parse_exponent();
                skip_ws();
            }
            mpz_class coeff = 1;
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                skip_ws();
                coeff = parse_nat();
            }
            if (coeff == 0) return Ordinal();
            return Ordinal::from_terms({Ordinal::Term{exponent, coeff}});
        }
        return Ordinal(parse_nat());
    }

    // sum := term ('+' term)*, combined left to right with ordinal addition
    Ordinal parse_sum() {
        skip_ws();
        Ordinal value = parse_term();
        skip_ws();
        while (pos_ < s_.size() && s_[pos_] == '+') {
            ++pos_;
            skip_ws();
            value = ord_add(value, parse_term());
            skip_ws();
        }
        return value;
    }

    // exp := nat | 'w' | '(' ordinal ')'
    Ordinal parse_exponent() {
        if (pos_ >= s_.size()) fail("expected an exponent");
        if (s_[pos_] == '(') {
            ++pos_;
            Ordinal inner = parse_sum();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (s_[pos_] == 'w') {
            ++pos_;
            return omega_pow(1ul);
        }
        return Ordinal(parse_nat());
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(const std::string& text) { return OrdinalParser(text).parse(); }

std::string Ordinal::to_string(bool compact) const { return format_ordinal(*this, compact); }

std::string format_ordinal(const Ordinal& a, bool compact) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    const char* plus = compact ? "+" : " + ";
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) os << plus;
        first = false;
        if (t.exponent.is_zero()) {
            os << t.coeff.get_str();
            continue;
        }
        os << 'w';
        if (!(t.exponent == Ordinal(1ul))) {
            if (t.exponent.is_finite())
                os << '^' << t.exponent.finite_value().get_str();
            else
                os << "^(" << format_ordinal(t.exponent, compact) << ')';
        }
        if (t.coeff != 1) os << '*' << t.coeff.get_str();
    }
    return os.str();
}

}  // namespace ordeuc
