// ordinal.hpp: exact arithmetic on ordinals below epsilon_0 in Cantor normal
// form.  An ordinal is a strictly-decreasing list of (exponent, coefficient)
// terms, exponents being ordinals themselves and coefficients positive
// arbitrary-precision integers.  Values are immutable and always canonical.
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ordeuc/errors.hpp"

namespace ordeuc {

struct OrdinalTerm;

class Ordinal {
public:
    using Term = OrdinalTerm;

    // Zero.
    Ordinal();
    Ordinal(const Ordinal&);
    Ordinal(Ordinal&&) noexcept;
    Ordinal& operator=(const Ordinal&);
    Ordinal& operator=(Ordinal&&) noexcept;
    ~Ordinal();

    // Finite ordinal n (empty term list for n == 0).
    Ordinal(unsigned long n);     // NOLINT: implicit by design
    Ordinal(const mpz_class& n);  // NOLINT

    // Builds a canonical ordinal from arbitrary terms: terms are merged by
    // exponent and sorted decreasing; zero coefficients are dropped.
    static Ordinal from_terms(std::vector<Term> terms);

    bool is_zero() const noexcept;
    bool is_finite() const noexcept;
    // Value of a finite ordinal; throws DomainError on infinite input.
    const mpz_class& finite_value() const;

    const std::vector<Term>& terms() const noexcept { return terms_; }

    std::strong_ordering operator<=>(const Ordinal& other) const;
    bool operator==(const Ordinal& other) const;

    std::string to_string(bool compact = false) const;

private:
    std::vector<Term> terms_;
};

struct OrdinalTerm {
    Ordinal exponent;
    mpz_class coeff;  // >= 1
};

inline Ordinal::Ordinal() = default;
inline Ordinal::Ordinal(const Ordinal&) = default;
inline Ordinal::Ordinal(Ordinal&&) noexcept = default;
inline Ordinal& Ordinal::operator=(const Ordinal&) = default;
inline Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
inline Ordinal::~Ordinal() = default;

inline bool Ordinal::is_zero() const noexcept { return terms_.empty(); }

enum class Ordering { less, equal, greater };

Ordering cmp(const Ordinal& a, const Ordinal& b);

// Standard (left-to-right, non-commutative) ordinal sum.
Ordinal ord_add(const Ordinal& a, const Ordinal& b);

// Hessenberg sum: coefficient-wise addition of aligned CNF terms.
Ordinal nat_sum(const Ordinal& a, const Ordinal& b);

// The indecomposable ordinal with the given exponent; omega_pow(0) == 1.
Ordinal omega_pow(const Ordinal& a);

// True iff a is nonzero and cannot be split as a sum of two smaller ordinals,
// i.e. its CNF is a single term with coefficient 1.
bool is_indecomposable(const Ordinal& a);

// Text grammar: `0`, decimal naturals, `w`, `w^<nat>`, `w^(<ordinal>)`,
// optional `*<nat>` coefficient, `+`-separated terms; whitespace ignored.
// Terms are combined left to right with ordinal addition, so non-canonical
// input is normalized rather than rejected.
Ordinal parse_ordinal(const std::string& text);

std::string format_ordinal(const Ordinal& a, bool compact = false);

}  // namespace ordeuc
