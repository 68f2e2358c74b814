// ring.hpp: the recursively constructed Euclidean domain R = U^{-1} R_inf.
//
// Variables materialize lazily: x-generators on demand, quotient variables y
// when a division needs one.  Each adjoined y comes with its special prime
// n - y*d; the primes with norm 0 generate the unit set U together with the
// field scalars, and denominators are restricted to U.  norm() evaluates the
// ordinal-valued Euclidean norm from cached factor multisets; divide()
// realizes the effective division with remainder and records which variable
// it adjoined.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ordeuc/factor.hpp"
#include "ordeuc/ordinal.hpp"
#include "ordeuc/registry.hpp"

namespace ordeuc {

enum class RingVariant { base, z_variant };

struct RingConfig {
    FieldConfig field = FieldConfig::finite(2);
    Ordinal alpha = Ordinal(1ul);  // target order type omega^alpha
    RingVariant variant = RingVariant::base;
    // The z-variant's minimality property is proven only in characteristic 0;
    // finite fields are allowed for experimentation behind this flag.
    bool allow_unverified_minimality = false;
    std::uint64_t factor_budget = 8'000'000;
    std::uint32_t factor_degree = 4;
    mpz_class factor_height = 10;
};

template <FieldScalar S>
struct RElement {
    Poly<S> num;
    Poly<S> den;  // product of norm-zero special primes, monic; scalar folded into num
    std::optional<Factorization<S>> num_fac;
    std::optional<Factorization<S>> den_fac;
    std::uint64_t ring_id = 0;

    bool is_zero() const noexcept { return num.is_zero(); }

    // Value equality in the localized ring (cross multiplication).
    bool operator==(const RElement& o) const { return num * o.den == o.num * den; }
};

template <FieldScalar S>
struct DivisionResult {
    RElement<S> quotient;
    RElement<S> remainder;
    Ordinal divisor_norm;
    std::optional<Ordinal> remainder_norm;  // absent iff remainder == 0
    std::optional<VarId> adjoined_var;      // quotient variable used on the general path
};

template <FieldScalar S>
struct DescentTrace {
    std::vector<DivisionResult<S>> steps;
    RElement<S> final_gcd;
};

struct SpecialInfo {
    VarId var;
};

// Hessenberg multiple: a (+) a (+) ... (m copies) = coefficient-wise scaling.
inline Ordinal nat_scale(const Ordinal& a, const mpz_class& m) {
    if (m < 0) throw DomainError("ordinal-scale", "negative multiplicity");
    std::vector<Ordinal::Term> terms;
    for (const auto& t : a.terms()) terms.push_back({t.exponent, t.coeff * m});
    return Ordinal::from_terms(std::move(terms));
}

// The pair (k^{k+1}, (k+1)^{k+1}) witnessing that no multiplicative
// integer-valued norm can assign value k to z.
inline std::pair<mpz_class, mpz_class> nonmult_witness(const mpz_class& k) {
    if (k < 1) throw DomainError("witness-range", "z is not a unit, so k must be at least 1");
    const unsigned long e = mpz_class(k + 1).get_ui();
    mpz_class lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), k.get_mpz_t(), e);
    mpz_class k1 = k + 1;
    mpz_pow_ui(rhs.get_mpz_t(), k1.get_mpz_t(), e);
    return {lhs, rhs};
}

template <FieldScalar S>
class Ring {
public:
    explicit Ring(RingConfig cfg) : cfg_(std::move(cfg)), id_(next_id()) {
        if (cfg_.alpha.is_zero())
            throw DomainError("ring-config", "alpha must be at least 1");
        if (cfg_.variant == RingVariant::z_variant) {
            if (!(cfg_.alpha == Ordinal(1ul)))
                throw DomainError("ring-config", "the z-variant fixes alpha = 1");
            if (cfg_.field.kind == FieldConfig::Kind::finite &&
                !cfg_.allow_unverified_minimality)
                throw DomainError("ring-config",
                                  "z-variant over a finite field: minimality is unverified; "
                                  "set allow_unverified_minimality to proceed");
            VarInfo<S> zi;
            zi.kind = VarKind::z_var;
            zi.subs = {Ordinal(1ul)};
            zi.stage = 0;
            z_id_ = reg_.add(std::move(zi));
            register_prime(var_poly(*z_id_));
        }
        norm_bound_ = omega_pow(cfg_.alpha);
    }

    Ring(const Ring&) = delete;
    Ring& operator=(const Ring&) = delete;

    const RingConfig& config() const noexcept { return cfg_; }
    const VarRegistry<S>& registry() const noexcept { return reg_; }
    bool is_variant() const noexcept { return cfg_.variant == RingVariant::z_variant; }
    const Ordinal& norm_bound() const noexcept { return norm_bound_; }

    // ---- scalars and element constructors --------------------------------

    S scalar_from_int(const mpz_class& n) const { return S::from_int(n, cfg_.field); }
    S scalar_one() const { return scalar_from_int(1); }

    RElement<S> zero() const {
        Factorization<S> f;
        f.unit = scalar_from_int(0);
        return finish(Poly<S>(), one_poly(), std::move(f), unit_fac());
    }
    RElement<S> one() const { return from_scalar(scalar_one()); }

    RElement<S> from_scalar(const S& c) const {
        if (c.is_zero()) return zero();
        Factorization<S> f;
        f.unit = c;
        return finish(Poly<S>::constant(c), one_poly(), std::move(f), unit_fac());
    }

    RElement<S> from_int(const mpz_class& n) const { return from_scalar(scalar_from_int(n)); }

    RElement<S> from_poly(const Poly<S>& p) const {
        RElement<S> raw;
        raw.num = p;
        raw.den = one_poly();
        raw.ring_id = id_;
        return canonicalize(raw);
    }

    RElement<S> gen(const Ordinal& beta, std::uint32_t stage) {
        if (beta.is_zero() || !(beta < norm_bound_))
            throw DomainError("gen-range",
                              "generator subscript must satisfy 0 < beta < omega^alpha");
        auto key = std::make_pair(beta, stage);
        auto it = gen_memo_.find(key);
        VarId id;
        if (it != gen_memo_.end()) {
            id = it->second;
        } else {
            VarInfo<S> vi;
            vi.kind = VarKind::x_generator;
            vi.subs = {beta};
            vi.stage = stage;
            id = reg_.add(std::move(vi));
            gen_memo_.emplace(key, id);
            register_prime(var_poly(id));
        }
        return element_for_var(id);
    }

    RElement<S> gen_z() {
        if (!z_id_) throw DomainError("variant-only", "z exists only in the z-variant ring");
        return element_for_var(*z_id_);
    }

    std::optional<VarId> z_id() const noexcept { return z_id_; }

    // ---- arithmetic -------------------------------------------------------

    RElement<S> mul(const RElement<S>& a, const RElement<S>& b) const {
        check(a);
        check(b);
        if (a.is_zero() || b.is_zero()) return zero();
        const RElement<S> ca = a.num_fac ? a : canonicalize(a);
        const RElement<S> cb = b.num_fac ? b : canonicalize(b);
        Factorization<S> nf = *ca.num_fac;
        nf.unit = nf.unit * cb.num_fac->unit;
        for (const auto& [f, m] : cb.num_fac->factors) nf.add_factor(f, m);
        Factorization<S> df = den_fac_of(ca);
        Factorization<S> dfb = den_fac_of(cb);
        df.unit = df.unit * dfb.unit;
        for (const auto& [f, m] : dfb.factors) df.add_factor(f, m);
        return reduce(std::move(nf), std::move(df));
    }

    RElement<S> neg(const RElement<S>& a) const {
        check(a);
        if (a.is_zero()) return a;
        RElement<S> out = a;
        out.num = -out.num;
        if (out.num_fac) out.num_fac->unit = -out.num_fac->unit;
        return out;
    }

    RElement<S> add(const RElement<S>& a, const RElement<S>& b) const {
        check(a);
        check(b);
        RElement<S> raw;
        raw.num = a.num * b.den + b.num * a.den;
        raw.den = a.den * b.den;
        raw.ring_id = id_;
        return canonicalize(raw);
    }

    RElement<S> sub(const RElement<S>& a, const RElement<S>& b) const { return add(a, neg(b)); }

    RElement<S> pow(const RElement<S>& a, std::uint32_t e) const {
        check(a);
        if (a.is_zero()) {
            if (e == 0) throw DomainError("pow-zero", "0^0 is undefined");
            return zero();
        }
        const RElement<S> ca = a.num_fac ? a : canonicalize(a);
        Factorization<S> nf = *ca.num_fac;
        Factorization<S> df = den_fac_of(ca);
        Factorization<S> nf2, df2;
        nf2.unit = pow_scalar(nf.unit, e);
        for (const auto& [f, m] : nf.factors) nf2.add_factor(f, m * e);
        df2.unit = pow_scalar(df.unit, e);
        for (const auto& [f, m] : df.factors) df2.add_factor(f, m * e);
        return reduce(std::move(nf2), std::move(df2));
    }

    // ---- the norm ----------------------------------------------------------

    std::set<Ordinal> sub_of(const RElement<S>& r) const {
        check(r);
        if (r.num.is_constant() && r.den.is_constant())
            throw DomainError("sub-scalar", "Sub is undefined on field scalars");
        std::set<Ordinal> out = reg_.sub_of(r.num);
        auto dsubs = reg_.sub_of(r.den);
        out.insert(dsubs.begin(), dsubs.end());
        return out;
    }

    Ordinal norm(const RElement<S>& r) const {
        check(r);
        if (r.is_zero()) throw DomainError("norm-zero", "the norm of 0 is undefined");
        if (r.num_fac) return norm_factors(*r.num_fac);
        return norm_factors(fac_of(canonicalize(r)));
    }

    Ordinal norm_poly(const Poly<S>& p) const {
        if (p.is_zero()) throw DomainError("norm-zero", "the norm of 0 is undefined");
        return norm_factors(factor_poly(p));
    }

    // psi agrees with the norm except psi(z^k) = omega*k; a Hessenberg
    // monoid homomorphism on the variant ring.
    Ordinal psi_monoid(const RElement<S>& r) const {
        if (!is_variant())
            throw DomainError("variant-only", "psi is defined on the z-variant ring only");
        check(r);
        if (r.is_zero()) throw DomainError("norm-zero", "psi(0) is undefined");
        const Factorization<S> fac = r.num_fac ? *r.num_fac : fac_of(canonicalize(r));
        Ordinal acc;
        for (const auto& [f, m] : fac.factors) {
            if (is_z_poly(f))
                acc = nat_sum(acc, Ordinal::from_terms({{Ordinal(1ul), mpz_class(m)}}));
            else
                acc = nat_sum(acc, nat_scale(norm_of_prime(f), m));
        }
        return acc;
    }

    // ---- special primes and quotient adjunction ---------------------------

    const Poly<S>& special_prime(VarId y) const {
        const auto it = special_prime_.find(y);
        if (it == special_prime_.end())
            throw DomainError("registry", "not a special variable");
        return it->second;
    }

    Ordinal special_norm(VarId y) const {
        const auto it = special_norm_.find(y);
        if (it == special_norm_.end())
            throw DomainError("registry", "not a special variable");
        return it->second;
    }

    // Identifies an irreducible as a unit multiple of a registered special
    // prime.  Reducible input is a contract violation and is reported.
    std::optional<SpecialInfo> special_info(const Poly<S>& p) const {
        if (p.is_zero() || p.is_constant())
            throw DomainError("special-info", "input must be a non-unit irreducible");
        auto monic = normalize_unit(p).second;
        auto it = special_index_.find(monic);
        if (it != special_index_.end()) return SpecialInfo{it->second};
        if (!is_irreducible(p, factor_options()))
            throw DomainError("special-info", "input is reducible");
        return std::nullopt;
    }

    VarId adjoin_quotient(const RElement<S>& n, const RElement<S>& d) {
        check(n);
        check(d);
        if (n.is_zero() || d.is_zero())
            throw DomainError("adjoin-eligibility", "pair elements must be nonzero");
        RElement<S> cn = n.num_fac ? n : canonicalize(n);
        RElement<S> cd = d.num_fac ? d : canonicalize(d);
        return adjoin_pair(fac_of(cn), fac_of(cd));
    }

    // ---- divisibility and division -----------------------------------------

    bool divides(const RElement<S>& d, const RElement<S>& n) const {
        check(d);
        check(n);
        if (d.is_zero()) throw DomainError("divide-zero", "zero divisor");
        if (n.is_zero()) return true;
        const RElement<S> cd = d.num_fac ? d : canonicalize(d);
        const RElement<S> cn = n.num_fac ? n : canonicalize(n);
        auto dc = core_factors(*cd.num_fac);
        auto nc = core_factors(*cn.num_fac);
        for (const auto& [f, m] : dc) {
            unsigned have = 0;
            for (const auto& [g, k] : nc)
                if (f == g) {
                    have = k;
                    break;
                }
            if (have < m) return false;
        }
        return true;
    }

    DivisionResult<S> divide(const RElement<S>& n_in, const RElement<S>& d_in) {
        check(n_in);
        check(d_in);
        if (d_in.is_zero()) throw DomainError("divide-zero", "division by zero");
        RElement<S> n = n_in.num_fac ? n_in : canonicalize(n_in);
        RElement<S> d = d_in.num_fac ? d_in : canonicalize(d_in);
        const Ordinal phi_d = norm(d);

        DivisionResult<S> out;
        out.divisor_norm = phi_d;

        if (divides(d, n)) {
            out.quotient = div_exact(n, d);
            out.remainder = zero();
            return out;
        }
        const Ordinal phi_n = norm(n);
        if (phi_n < phi_d) {
            out.quotient = zero();
            out.remainder = n;
            out.remainder_norm = phi_n;
            return out;
        }

        // general path: strip units, cancel the gcd, adjoin the quotient
        auto [nu, ncore] = unit_split(fac_of(n));
        auto [du, dcore] = unit_split(fac_of(d));
        auto common = multiset_intersect(ncore.factors, dcore.factors);
        Factorization<S> gfac;
        gfac.unit = unit_scalar();
        for (auto& [f, m] : common) gfac.add_factor(f, m);
        Factorization<S> nprime = subtract_multiset(ncore, gfac);
        Factorization<S> dprime = subtract_multiset(dcore, gfac);

        const VarId y = adjoin_pair(nprime, dprime);

        // n' - y*d' rebuilt from the stored canonical pair differs from the
        // registered monic special prime by a scalar; track both scalars so
        // the remainder is exact.  dprime.product() is monic with unit 1, so
        // the stored pair equals (n', d') and only the monic normalization
        // scalar of the prime itself remains.
        const auto& stored = *reg_.info(y).defining_pair;
        const Poly<S> prime_raw = stored.first - var_poly(y) * stored.second;
        const S lambda = prime_raw.leading_coeff();

        // quotient element: y scaled by the unit parts of n and d
        Factorization<S> qnum;
        qnum.unit = nu.unit;
        qnum.add_factor(normalize_unit(var_poly(y)).second, 1);
        for (const auto& [f, m] : nu.factors) qnum.add_factor(f, m);
        Factorization<S> qden = du;
        // fold the divisor's denominator into the quotient numerator and
        // the dividend's denominator into the quotient denominator
        Factorization<S> dden = den_fac_of(d);
        qnum.unit = qnum.unit * dden.unit;
        for (const auto& [f, m] : dden.factors) qnum.add_factor(f, m);
        Factorization<S> nden = den_fac_of(n);
        qden.unit = qden.unit * nden.unit;
        for (const auto& [f, m] : nden.factors) qden.add_factor(f, m);
        out.quotient = reduce(std::move(qnum), std::move(qden));
        out.adjoined_var = y;

        // remainder: (unit part of n) * lambda * special_prime(y) * g over den(n)
        Factorization<S> rfac;
        rfac.unit = nu.unit * lambda;
        rfac.add_factor(special_prime(y), 1);
        for (const auto& [f, m] : gfac.factors) rfac.add_factor(f, m);
        for (const auto& [f, m] : nu.factors) rfac.add_factor(f, m);
        out.remainder = reduce(std::move(rfac), den_fac_of(n));
        out.remainder_norm = norm(out.remainder);
        return out;
    }

    DescentTrace<S> euclid_gcd(const RElement<S>& a_in, const RElement<S>& b_in) {
        check(a_in);
        check(b_in);
        if (a_in.is_zero() && b_in.is_zero())
            throw DomainError("gcd-zero", "gcd(0, 0) is undefined");
        DescentTrace<S> trace;
        RElement<S> a = a_in.num_fac ? a_in : canonicalize(a_in);
        RElement<S> b = b_in.num_fac ? b_in : canonicalize(b_in);
        while (!b.is_zero()) {
            DivisionResult<S> step = divide(a, b);
            a = b;
            b = step.remainder;
            trace.steps.push_back(std::move(step));
        }
        trace.final_gcd = a;
        return trace;
    }

    // ---- canonicalization ---------------------------------------------------

    // Cancels common irreducible factors of num and den, checks that the
    // denominator stays inside U, and folds all scalars into the numerator.
    RElement<S> canonicalize(const RElement<S>& r) const {
        check(r);
        if (r.num.is_zero()) return zero();
        Factorization<S> nf = r.num_fac ? *r.num_fac : factor_poly(r.num);
        Factorization<S> df = r.den_fac ? *r.den_fac : factor_poly(r.den);
        return reduce(std::move(nf), std::move(df));
    }

    // ---- helpers shared with tests and the CLI -----------------------------

    Poly<S> var_poly(VarId id) const { return Poly<S>::var(id, scalar_one()); }

    RElement<S> element_for_var(VarId id) const {
        Factorization<S> f;
        f.unit = scalar_one();
        f.add_factor(var_poly(id), 1);
        return finish(var_poly(id), one_poly(), std::move(f), unit_fac());
    }

    FactorOptions<S> factor_options() const {
        FactorOptions<S> o;
        o.max_candidates = cfg_.factor_budget;
        o.max_degree = cfg_.factor_degree;
        o.coeff_height = cfg_.factor_height;
        o.hints = &hint_primes_;
        return o;
    }

    Factorization<S> factor_poly(const Poly<S>& p) const {
        return factor(p, factor_options());
    }

    // Norm of a monic irreducible: the special-prime rule when registered,
    // otherwise max(Sub); z follows the k^k rule at multiset level.
    Ordinal norm_of_prime(const Poly<S>& monic) const {
        auto it = special_index_.find(monic);
        if (it != special_index_.end()) return special_norm_.at(it->second);
        auto subs = reg_.sub_of(monic);
        if (subs.empty())
            throw DomainError("norm-internal", "irreducible factor without variables");
        return *subs.rbegin();
    }

    Ordinal norm_factors(const Factorization<S>& fac) const {
        Ordinal acc;
        for (const auto& [f, m] : fac.factors) {
            if (is_variant() && is_z_poly(f)) {
                mpz_class kk;
                mpz_class k(m);
                mpz_pow_ui(kk.get_mpz_t(), k.get_mpz_t(), m);
                acc = nat_sum(acc, Ordinal(kk));
            } else {
                acc = nat_sum(acc, nat_scale(norm_of_prime(f), m));
            }
        }
        return acc;
    }

    std::string var_name(VarId id) const { return reg_.name(id); }
    std::string poly_string(const Poly<S>& p) const {
        return poly_to_string(p, [this](VarId v) { return var_name(v); });
    }
    std::string element_string(const RElement<S>& r) const {
        if (r.den.is_constant() && !r.den.is_zero() && r.den.leading_coeff().is_one())
            return poly_string(r.num);
        return "(" + poly_string(r.num) + ") / (" + poly_string(r.den) + ")";
    }

    std::uint64_t ring_id() const noexcept { return id_; }

private:
    static std::uint64_t next_id() {
        static std::uint64_t counter = 0;
        return ++counter;
    }

    void check(const RElement<S>& r) const {
        if (r.ring_id != id_)
            throw DomainError("ring-mismatch", "element belongs to a different ring instance");
    }

    Poly<S> one_poly() const { return Poly<S>::constant(scalar_one()); }

    Factorization<S> unit_fac() const {
        Factorization<S> f;
        f.unit = scalar_one();
        return f;
    }

    S unit_scalar() const { return scalar_one(); }

    static S pow_scalar(S base, std::uint32_t e) {
        S out = base.one_like();
        while (e) {
            if (e & 1u) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    bool is_z_poly(const Poly<S>& f) const {
        if (!z_id_) return false;
        return f == var_poly(*z_id_);
    }

    void register_prime(const Poly<S>& p) { hint_primes_.push_back(normalize_unit(p).second); }

    // Splits a factorization into its U-part (scalar and norm-zero special
    // primes) and its core (everything with positive norm).
    std::pair<Factorization<S>, Factorization<S>> unit_split(const Factorization<S>& fac) const {
        Factorization<S> units, core;
        units.unit = fac.unit;
        core.unit = unit_scalar();
        for (const auto& [f, m] : fac.factors) {
            if (norm_of_prime_or_z(f, m).is_zero())
                units.add_factor(f, m);
            else
                core.add_factor(f, m);
        }
        return {std::move(units), std::move(core)};
    }

    Ordinal norm_of_prime_or_z(const Poly<S>& f, unsigned m) const {
        if (is_variant() && is_z_poly(f)) {
            mpz_class kk;
            mpz_class k(m);
            mpz_pow_ui(kk.get_mpz_t(), k.get_mpz_t(), m);
            return Ordinal(kk);
        }
        return norm_of_prime(f);
    }

    std::vector<std::pair<Poly<S>, unsigned>> core_factors(const Factorization<S>& fac) const {
        std::vector<std::pair<Poly<S>, unsigned>> out;
        for (const auto& [f, m] : fac.factors)
            if (!norm_of_prime_or_z(f, 1).is_zero()) out.emplace_back(f, m);
        return out;
    }

    static Factorization<S> subtract_multiset(const Factorization<S>& a,
                                              const Factorization<S>& b) {
        Factorization<S> out;
        out.unit = a.unit;
        for (const auto& [f, m] : a.factors) {
            unsigned sub = b.multiplicity_of(f);
            if (sub > m) throw DomainError("multiset", "subtrahend exceeds multiplicity");
            if (m > sub) out.add_factor(f, m - sub);
        }
        return out;
    }

    const Factorization<S>& fac_of(const RElement<S>& r) const {
        if (!r.num_fac) throw DomainError("internal", "missing cached factorization");
        return *r.num_fac;
    }

    Factorization<S> den_fac_of(const RElement<S>& r) const {
        if (r.den_fac) return *r.den_fac;
        return factor_poly(r.den);
    }

    // Builds the canonical element from explicit factor multisets.
    RElement<S> reduce(Factorization<S> nf, Factorization<S> df) const {
        if (df.unit.is_zero())
            throw DomainError("denominator", "denominator must be nonzero");
        if (nf.unit.is_zero()) return zero();
        // cancel common irreducibles
        auto common = multiset_intersect(nf.factors, df.factors);
        for (const auto& [f, m] : common) {
            nf = subtract_multiset(nf, single(f, m));
            df = subtract_multiset(df, single(f, m));
        }
        // denominator must lie in U
        for (const auto& [f, m] : df.factors)
            if (!norm_of_prime_or_z(f, 1).is_zero())
                throw DomainError("denominator",
                                  "denominator factor with positive norm is not invertible");
        // fold scalars into the numerator
        nf.unit = nf.unit / df.unit;
        df.unit = unit_scalar();
        nf.sort_canonical();
        df.sort_canonical();
        Poly<S> num = nf.product();
        Poly<S> den = df.product();
        return finish(std::move(num), std::move(den), std::move(nf), std::move(df));
    }

    Factorization<S> single(const Poly<S>& f, unsigned m) const {
        Factorization<S> out;
        out.unit = unit_scalar();
        out.add_factor(f, m);
        return out;
    }

    RElement<S> finish(Poly<S> num, Poly<S> den, Factorization<S> nf, Factorization<S> df) const {
        RElement<S> out;
        out.num = std::move(num);
        out.den = std::move(den);
        out.num_fac = std::move(nf);
        out.den_fac = std::move(df);
        out.ring_id = id_;
        return out;
    }

    RElement<S> div_exact(const RElement<S>& n, const RElement<S>& d) const {
        if (n.is_zero()) return zero();
        Factorization<S> nf = fac_of(n);
        Factorization<S> df = fac_of(d);
        Factorization<S> nden = den_fac_of(n);
        Factorization<S> dden = den_fac_of(d);
        // (n.num * d.den) / (n.den * d.num)
        Factorization<S> top = std::move(nf);
        top.unit = top.unit * dden.unit;
        for (const auto& [f, m] : dden.factors) top.add_factor(f, m);
        Factorization<S> bottom = std::move(df);
        bottom.unit = bottom.unit * nden.unit;
        for (const auto& [f, m] : nden.factors) bottom.add_factor(f, m);
        return reduce(std::move(top), std::move(bottom));
    }

    VarId adjoin_pair(const Factorization<S>& nfac, const Factorization<S>& dfac) {
        // eligibility: coprime, norm(d) >= 1, and norm(n) >= norm(d) unless
        // the variant's extension applies (z divides n)
        if (nfac.factors.empty() && nfac.unit.is_zero())
            throw DomainError("adjoin-eligibility", "numerator must be nonzero");
        if (!multiset_intersect(nfac.factors, dfac.factors).empty())
            throw DomainError("adjoin-eligibility", "pair must be coprime");
        Ordinal phi_n = norm_factors(nfac);
        Ordinal phi_d = norm_factors(dfac);
        if (phi_d.is_zero())
            throw DomainError("adjoin-eligibility", "denominator norm must be at least 1");
        bool z_in_n = false;
        if (z_id_)
            for (const auto& [f, m] : nfac.factors)
                if (is_z_poly(f)) z_in_n = true;
        if (phi_n < phi_d && !(is_variant() && z_in_n))
            throw DomainError("adjoin-eligibility",
                              "pair is not in any S_i: norm(n) < norm(d) and the variant "
                              "extension does not apply");

        // canonical key: monic denominator, scalar folded into the numerator
        Poly<S> dp = dfac.product();
        auto [dc, dmonic] = normalize_unit(dp);
        Poly<S> np = nfac.product().scaled(dc.inverse());
        auto key = std::make_pair(np, dmonic);
        auto it = quotient_memo_.find(key);
        if (it != quotient_memo_.end()) return it->second;

        VarInfo<S> vi;
        vi.kind = VarKind::y_special;
        vi.subs = reg_.sub_of(np);
        auto ds = reg_.sub_of(dmonic);
        vi.subs.insert(ds.begin(), ds.end());
        vi.subs.insert(Ordinal());
        vi.stage = 1 + std::max(stage_of(np), stage_of(dmonic));
        vi.defining_pair = std::make_pair(np, dmonic);
        const Ordinal phi_dm = phi_d;  // scaling does not change the norm

        VarId id = reg_.add(std::move(vi));
        quotient_memo_.emplace(std::move(key), id);

        Poly<S> prime = reg_.info(id).defining_pair->first -
                        var_poly(id) * reg_.info(id).defining_pair->second;
        Poly<S> prime_monic = normalize_unit(prime).second;
        special_prime_.emplace(id, prime_monic);
        special_index_.emplace(prime_monic, id);
        hint_primes_.push_back(prime_monic);

        // norm of the new special prime: max{beta in T : beta < phi(d)}
        Ordinal best;
        for (const Ordinal& beta : reg_.info(id).subs)
            if (beta < phi_dm && best <= beta) best = beta;
        special_norm_.emplace(id, best);
        return id;
    }

    std::uint32_t stage_of(const Poly<S>& p) const {
        std::uint32_t s = 0;
        for (VarId v : p.variables()) s = std::max(s, reg_.info(v).stage);
        return s;
    }

    RingConfig cfg_;
    std::uint64_t id_;
    VarRegistry<S> reg_;
    Ordinal norm_bound_;
    std::optional<VarId> z_id_;
    std::vector<Poly<S>> hint_primes_;
    std::map<Poly<S>, VarId> special_index_;
    std::map<VarId, Poly<S>> special_prime_;
    std::map<VarId, Ordinal> special_norm_;
    std::map<std::pair<Ordinal, std::uint32_t>, VarId> gen_memo_;
    std::map<std::pair<Poly<S>, Poly<S>>, VarId> quotient_memo_;
};

}  // namespace ordeuc
