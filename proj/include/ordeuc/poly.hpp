// poly.hpp: sparse multivariate polynomials over a FieldScalar coefficient
// type.  Terms live in a map ordered by descending grlex, so begin() is the
// leading term.  The zero polynomial is the empty map; no zero coefficients
// are ever stored.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ordeuc/field.hpp"
#include "ordeuc/monomial.hpp"

namespace ordeuc {

template <FieldScalar S>
class Poly {
public:
    using TermMap = std::map<Monomial, S, GrlexGreater>;

    Poly() = default;
    static Poly constant(const S& c) {
        Poly p;
        if (!c.is_zero()) p.terms_.emplace(Monomial(), c);
        return p;
    }
    static Poly term(const Monomial& m, const S& c) {
        Poly p;
        if (!c.is_zero()) p.terms_.emplace(m, c);
        return p;
    }
    static Poly var(VarId v, const S& one) { return term(Monomial::var(v), one); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }
    std::size_t term_count() const noexcept { return terms_.size(); }
    const TermMap& terms() const noexcept { return terms_; }

    const Monomial& leading_monomial() const { return nonzero().terms_.begin()->first; }
    const S& leading_coeff() const { return nonzero().terms_.begin()->second; }
    const Monomial& trailing_monomial() const { return nonzero().terms_.rbegin()->first; }
    const S& trailing_coeff() const { return nonzero().terms_.rbegin()->second; }

    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    std::uint32_t degree_in(VarId v) const {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(v));
        return d;
    }

    std::set<VarId> variables() const {
        std::set<VarId> vs;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.entries()) vs.insert(v);
        return vs;
    }

    void add_term(const Monomial& m, const S& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        Poly out = *this;
        for (const auto& [m, c] : o.terms_) out.add_term(m, c);
        return out;
    }
    Poly operator-() const {
        Poly out;
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        Poly out;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
        return out;
    }

    Poly scaled(const S& c) const {
        Poly out;
        if (c.is_zero()) return out;
        for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
        return out;
    }

    Poly mul_term(const Monomial& m, const S& c) const {
        Poly out;
        if (c.is_zero()) return out;
        for (const auto& [mm, k] : terms_) out.terms_.emplace(mm * m, k * c);
        return out;
    }

    Poly pow(std::uint32_t e) const {
        if (is_zero() && e == 0)
            throw DomainError("poly-pow", "0^0 is undefined");
        Poly out;
        bool started = false;
        Poly base = *this;
        while (e > 0) {
            if (e & 1u) {
                out = started ? out * base : base;
                started = true;
            }
            e >>= 1;
            if (e) base = base * base;
        }
        if (!started) {
            // exponent was zero: the empty product needs a scalar; derive it
            // from this polynomial's coefficients
            out.terms_.emplace(Monomial(), one_scalar());
        }
        return out;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    // Canonical total order on polynomials: compare term sequences
    // lexicographically (monomials by grlex descending, then coefficients).
    std::strong_ordering operator<=>(const Poly& o) const {
        auto ia = terms_.begin(), ib = o.terms_.begin();
        while (ia != terms_.end() && ib != o.terms_.end()) {
            auto mc = ia->first.grlex(ib->first);
            if (mc != std::strong_ordering::equal) return mc;
            auto cc = ia->second <=> ib->second;
            if (cc != std::strong_ordering::equal) return cc;
            ++ia;
            ++ib;
        }
        if (ia != terms_.end()) return std::strong_ordering::greater;
        if (ib != o.terms_.end()) return std::strong_ordering::less;
        return std::strong_ordering::equal;
    }

    // A usable 1 of the coefficient field, derived from any stored
    // coefficient; valid only on nonzero polynomials.
    S one_scalar() const { return nonzero().terms_.begin()->second.one_like(); }

private:
    const Poly& nonzero() const {
        if (terms_.empty()) throw DomainError("poly-zero", "operation undefined on the zero polynomial");
        return *this;
    }

    TermMap terms_;
};

// Splits a != 0 as (unit, monic) with a == monic.scaled(unit) and the monic
// part having leading coefficient 1 under grlex.
template <FieldScalar S>
std::pair<S, Poly<S>> normalize_unit(const Poly<S>& a) {
    if (a.is_zero()) throw DomainError("poly-zero", "cannot unit-normalize zero");
    S lc = a.leading_coeff();
    return {lc, a.scaled(lc.inverse())};
}

// Exact division: returns c with b*c == a, or nullopt when b does not divide
// a.  Fails fast at the first leading term that b's leading term misses.
template <FieldScalar S>
std::optional<Poly<S>> exact_div(const Poly<S>& a, const Poly<S>& b) {
    if (b.is_zero()) throw DomainError("poly-div", "division by the zero polynomial");
    Poly<S> quotient;
    Poly<S> rest = a;
    const Monomial& lmb = b.leading_monomial();
    const S& lcb = b.leading_coeff();
    while (!rest.is_zero()) {
        const Monomial& lmr = rest.leading_monomial();
        if (!lmb.divides(lmr)) return std::nullopt;
        Monomial qm = lmr / lmb;
        S qc = rest.leading_coeff() / lcb;
        quotient.add_term(qm, qc);
        rest = rest - b.mul_term(qm, qc);
    }
    return quotient;
}

template <FieldScalar S>
bool divides_poly(const Poly<S>& b, const Poly<S>& a) {
    return exact_div(a, b).has_value();
}

// Renders with a caller-supplied variable namer; terms in descending grlex.
template <FieldScalar S, class Namer>
std::string poly_to_string(const Poly<S>& p, Namer&& name) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        std::string cs = c.to_string();
        bool neg = !cs.empty() && cs[0] == '-';
        if (first) {
            if (neg) {
                os << '-';
                cs = cs.substr(1);
            }
        } else {
            os << (neg ? " - " : " + ");
            if (neg) cs = cs.substr(1);
        }
        first = false;
        bool unit_coeff = (cs == "1");
        if (m.is_one()) {
            os << cs;
        } else {
            if (!unit_coeff) os << cs << '*';
            bool fv = true;
            for (const auto& [v, e] : m.entries()) {
                if (!fv) os << '*';
                fv = false;
                os << name(v);
                if (e > 1) os << '^' << e;
            }
        }
    }
    return os.str();
}

}  // namespace ordeuc
