// elem_parse.hpp: recursive-descent parser for ring element expressions.
// Grammar: scalars (integers, `a/b` rationals), variables `x[<ordinal>,<stage>]`,
// `z`, `y<id>`, operators + - * ^ and parentheses.  Generators materialize on
// demand; y-handles must already exist in the registry.
#pragma once

#include <cctype>
#include <string>

#include "ordeuc/ring.hpp"

namespace ordeuc {

namespace detail {

template <FieldScalar S>
class ElementParser {
public:
    ElementParser(Ring<S>& ring, const std::string& text) : ring_(ring), s_(text) {}

    RElement<S> parse() {
        Poly<S> p = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return ring_.from_poly(p);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    mpz_class parse_nat() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected a number");
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return mpz_class(s_.substr(start, pos_ - start));
    }

    Poly<S> parse_expr() {
        bool negate = eat('-');
        Poly<S> acc = parse_term();
        if (negate) acc = -acc;
        while (true) {
            if (eat('+'))
                acc = acc + parse_term();
            else if (eat('-'))
                acc = acc - parse_term();
            else
                return acc;
        }
    }

    Poly<S> parse_term() {
        Poly<S> acc = parse_factor();
        while (eat('*')) acc = acc * parse_factor();
        return acc;
    }

    Poly<S> parse_factor() {
        Poly<S> base = parse_atom();
        if (eat('^')) {
            mpz_class e = parse_nat();
            if (!e.fits_uint_p()) fail("exponent too large");
            base = base.pow(static_cast<std::uint32_t>(e.get_ui()));
        }
        return base;
    }

    Poly<S> parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Poly<S> inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpz_class num = parse_nat();
            if (eat('/')) {
                mpz_class den = parse_nat();
                return Poly<S>::constant(S::from_rational(num, den, ring_.config().field));
            }
            return Poly<S>::constant(ring_.scalar_from_int(num));
        }
        if (c == 'x') {
            ++pos_;
            if (!eat('[')) fail("expected '[' after x");
            // the ordinal subscript runs to the comma at bracket depth zero
            std::size_t start = pos_;
            int depth = 0;
            while (pos_ < s_.size()) {
                char ch = s_[pos_];
                if (ch == '(')
                    ++depth;
                else if (ch == ')')
                    --depth;
                else if (ch == ',' && depth == 0)
                    break;
                ++pos_;
            }
            if (pos_ >= s_.size()) fail("expected ',' in generator subscript");
            Ordinal beta;
            try {
                beta = parse_ordinal(s_.substr(start, pos_ - start));
            } catch (const ParseError& e) {
                throw ParseError("bad ordinal subscript: " + std::string(e.what()), start);
            }
            ++pos_;  // consume ','
            mpz_class stage = parse_nat();
            if (!eat(']')) fail("expected ']'");
            if (!stage.fits_uint_p()) fail("stage too large");
            RElement<S> g = ring_.gen(beta, static_cast<std::uint32_t>(stage.get_ui()));
            return g.num;
        }
        if (c == 'z') {
            ++pos_;
            return ring_.gen_z().num;
        }
        if (c == 'y') {
            ++pos_;
            mpz_class id = parse_nat();
            if (!id.fits_uint_p() || id.get_ui() >= ring_.registry().size())
                fail("unknown y-variable handle");
            VarId v = static_cast<VarId>(id.get_ui());
            if (ring_.registry().info(v).kind != VarKind::y_special)
                fail("variable handle does not name a quotient variable");
            return ring_.var_poly(v);
        }
        fail("expected a scalar, variable, or '('");
    }

    Ring<S>& ring_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

template <FieldScalar S>
RElement<S> parse_element(Ring<S>& ring, const std::string& text) {
    return detail::ElementParser<S>(ring, text).parse();
}

}  // namespace ordeuc
