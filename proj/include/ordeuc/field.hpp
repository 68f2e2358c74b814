// field.hpp: coefficient fields for the polynomial engine.  Two scalar types
// share one interface: Fq (prime field with runtime modulus, value carries its
// modulus) and Rat (exact rationals on GMP).  Scalars are immutable values.
#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "ordeuc/errors.hpp"

namespace ordeuc {

struct FieldConfig {
    enum class Kind { finite, rationals };
    Kind kind = Kind::finite;
    std::uint32_t q = 2;  // prime modulus, meaningful only for finite

    static FieldConfig finite(std::uint32_t q);
    static FieldConfig rationals() { return FieldConfig{Kind::rationals, 0}; }

    bool operator==(const FieldConfig&) const = default;
    std::string to_string() const;
};

inline bool is_small_prime(std::uint32_t q) {
    if (q < 2) return false;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

inline FieldConfig FieldConfig::finite(std::uint32_t q) {
    if (!is_small_prime(q)) throw DomainError("field-config", "finite field order must be prime");
    return FieldConfig{Kind::finite, q};
}

inline std::string FieldConfig::to_string() const {
    return kind == Kind::rationals ? "Q" : "F" + std::to_string(q);
}

// Element of the prime field Z/q.  Mixing moduli is a hard error.
class Fq {
public:
    Fq() = default;
    Fq(std::int64_t v, std::uint32_t q) : q_(q) {
        std::int64_t m = v % static_cast<std::int64_t>(q);
        v_ = static_cast<std::uint32_t>(m < 0 ? m + q : m);
    }

    std::uint32_t value() const noexcept { return v_; }
    std::uint32_t modulus() const noexcept { return q_; }
    bool is_zero() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return v_ == 1; }

    Fq operator-() const { return raw(v_ == 0 ? 0 : q_ - v_, q_); }
    Fq operator+(const Fq& o) const { return raw((u64() + o.v_) % q(o), q(o)); }
    Fq operator-(const Fq& o) const { return raw((u64() + q(o) - o.v_) % q(o), q(o)); }
    Fq operator*(const Fq& o) const { return raw((u64() * o.v_) % q(o), q(o)); }
    Fq operator/(const Fq& o) const { return *this * o.inverse(); }

    Fq inverse() const {
        if (v_ == 0) throw DomainError("field-div", "division by zero in F" + std::to_string(q_));
        // extended Euclid on (v, q)
        std::int64_t t = 0, nt = 1, r = q_, nr = v_;
        while (nr != 0) {
            std::int64_t quot = r / nr;
            std::int64_t tmp = t - quot * nt;
            t = nt;
            nt = tmp;
            tmp = r - quot * nr;
            r = nr;
            nr = tmp;
        }
        return Fq(t, q_);
    }

    bool operator==(const Fq& o) const {
        q(o);
        return v_ == o.v_;
    }
    std::strong_ordering operator<=>(const Fq& o) const {
        q(o);
        return v_ <=> o.v_;
    }

    Fq one_like() const { return raw(1 % q_, q_); }
    Fq zero_like() const { return raw(0, q_); }
    static Fq from_int(const mpz_class& n, const FieldConfig& fc) {
        mpz_class m = n % fc.q;
        if (m < 0) m += fc.q;
        return raw(static_cast<std::uint32_t>(m.get_ui()), fc.q);
    }
    static Fq from_rational(const mpz_class& num, const mpz_class& den, const FieldConfig& fc) {
        Fq d = from_int(den, fc);
        if (d.is_zero()) throw DomainError("field-div", "denominator is zero mod q");
        return from_int(num, fc) / d;
    }

    std::string to_string() const { return std::to_string(v_); }
    static FieldConfig config_of(const Fq& a) { return FieldConfig{FieldConfig::Kind::finite, a.q_}; }

private:
    static Fq raw(std::uint32_t v, std::uint32_t q) {
        Fq x;
        x.v_ = v;
        x.q_ = q;
        return x;
    }
    std::uint64_t u64() const noexcept { return v_; }
    std::uint32_t q(const Fq& o) const {
        if (q_ != o.q_) throw DomainError("field-mismatch", "operands from different prime fields");
        return q_;
    }

    std::uint32_t v_ = 0;
    std::uint32_t q_ = 2;
};

// Exact rational scalar.
class Rat {
public:
    Rat() = default;
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    Rat(std::int64_t num, std::int64_t den) : v_(mpq_class(num, den)) {
        if (den == 0) throw DomainError("field-div", "zero denominator");
        v_.canonicalize();
    }

    const mpq_class& value() const noexcept { return v_; }
    bool is_zero() const noexcept { return v_ == 0; }
    bool is_one() const noexcept { return v_ == 1; }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw DomainError("field-div", "division by zero rational");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat inverse() const {
        if (is_zero()) throw DomainError("field-div", "division by zero rational");
        return Rat(mpq_class(1 / v_));
    }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    std::strong_ordering operator<=>(const Rat& o) const {
        int c = ::cmp(v_, o.v_);
        return c < 0   ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    Rat one_like() const { return Rat(mpq_class(1)); }
    Rat zero_like() const { return Rat(); }
    static Rat from_int(const mpz_class& n, const FieldConfig&) { return Rat(mpq_class(n)); }
    static Rat from_rational(const mpz_class& num, const mpz_class& den, const FieldConfig&) {
        if (den == 0) throw DomainError("field-div", "zero denominator");
        return Rat(mpq_class(mpq_class(num) / mpq_class(den)));
    }

    std::string to_string() const { return v_.get_str(); }
    static FieldConfig config_of(const Rat&) { return FieldConfig::rationals(); }

private:
    mpq_class v_;
};

template <class S>
concept FieldScalar = requires(const S a, const S b) {
    { a + b } -> std::same_as<S>;
    { a - b } -> std::same_as<S>;
    { a * b } -> std::same_as<S>;
    { a / b } -> std::same_as<S>;
    { -a } -> std::same_as<S>;
    { a.inverse() } -> std::same_as<S>;
    { a.is_zero() } -> std::same_as<bool>;
    { a.is_one() } -> std::same_as<bool>;
    { a.one_like() } -> std::same_as<S>;
    { a.zero_like() } -> std::same_as<S>;
    { a.to_string() } -> std::same_as<std::string>;
    { a == b } -> std::same_as<bool>;
};

}  // namespace ordeuc
