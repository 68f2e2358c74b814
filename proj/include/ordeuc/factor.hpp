// factor.hpp: complete irreducible factorization for Poly<Fq> and Poly<Rat>.
//
// Finite fields: exhaustive scan of monic candidate divisors by increasing
// total degree, restricted to candidates whose leading/trailing monomials
// divide those of the target, with a point-evaluation prefilter.  A factor
// found at the minimal degree is necessarily irreducible, so the scan also
// certifies irreducibility.
//
// Rationals: trial division by caller-supplied known irreducibles, content
// extraction, then bounded enumeration of primitive integer candidates whose
// coefficients stay under a divisor-height bound (Mahler/Mignotte style).
// When certification would need candidates beyond the configured budget the
// engine raises FactorizationIncomplete instead of guessing.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "ordeuc/poly.hpp"

namespace ordeuc {

template <FieldScalar S>
struct Factorization {
    S unit;
    // canonical monic irreducibles with multiplicities, sorted ascending
    std::vector<std::pair<Poly<S>, unsigned>> factors;

    void add_factor(const Poly<S>& p, unsigned mult) {
        for (auto& [f, m] : factors)
            if (f == p) {
                m += mult;
                return;
            }
        factors.emplace_back(p, mult);
    }

    void sort_canonical() {
        std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
            return a.first < b.first;
        });
    }

    Poly<S> product() const {
        Poly<S> out = Poly<S>::constant(unit);
        for (const auto& [f, m] : factors)
            for (unsigned i = 0; i < m; ++i) out = out * f;
        return out;
    }

    unsigned multiplicity_of(const Poly<S>& p) const {
        for (const auto& [f, m] : factors)
            if (f == p) return m;
        return 0;
    }

    std::size_t total_multiplicity() const {
        std::size_t n = 0;
        for (const auto& [f, m] : factors) n += m;
        return n;
    }

    bool same_multiset(const Factorization& o) const {
        if (factors.size() != o.factors.size()) return false;
        for (const auto& [f, m] : factors)
            if (o.multiplicity_of(f) != m) return false;
        return true;
    }
};

// Multiset intersection / difference / containment on sorted factor lists.
template <FieldScalar S>
std::vector<std::pair<Poly<S>, unsigned>> multiset_intersect(
    const std::vector<std::pair<Poly<S>, unsigned>>& a,
    const std::vector<std::pair<Poly<S>, unsigned>>& b) {
    std::vector<std::pair<Poly<S>, unsigned>> out;
    for (const auto& [f, m] : a)
        for (const auto& [g, n] : b)
            if (f == g) {
                out.emplace_back(f, std::min(m, n));
                break;
            }
    return out;
}

template <FieldScalar S>
struct FactorOptions {
    std::uint64_t max_candidates = 8'000'000;  // hard cap on enumerated candidates
    std::uint32_t max_degree = 4;              // rationals: candidate degree cap
    mpz_class coeff_height = 10;               // rationals: candidate |coefficient| cap
    bool reverse = false;                      // flip within-level enumeration order
    const std::vector<Poly<S>>* hints = nullptr;  // known monic irreducibles
};

namespace detail {

// All monomials over `vars` with total degree <= k, ascending grlex.
inline void collect_monomials(const std::vector<VarId>& vars, std::uint32_t k,
                              std::size_t idx, std::vector<Monomial::Entry>& stack,
                              std::uint32_t used, std::vector<Monomial>& out) {
    if (idx == vars.size()) {
        out.push_back(Monomial::from_entries(stack));
        return;
    }
    for (std::uint32_t e = 0; e + used <= k; ++e) {
        if (e > 0) stack.push_back({vars[idx], e});
        collect_monomials(vars, k, idx + 1, stack, used + e, out);
        if (e > 0) stack.pop_back();
    }
}

inline std::vector<Monomial> monomials_up_to(const std::vector<VarId>& vars, std::uint32_t k) {
    std::vector<Monomial> out;
    std::vector<Monomial::Entry> stack;
    collect_monomials(vars, k, 0, stack, 0, out);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return a.grlex(b) == std::strong_ordering::less;
    });
    return out;
}

// Divisor monomials of lm with total degree exactly k, ascending grlex.
inline std::vector<Monomial> divisor_monomials(const Monomial& lm, std::uint32_t k) {
    std::vector<Monomial> out;
    std::vector<Monomial::Entry> stack;
    const auto& entries = lm.entries();
    // depth-first over per-variable exponent choices bounded by lm
    auto rec = [&](auto&& self, std::size_t idx, std::uint32_t used) -> void {
        if (used > k) return;
        if (idx == entries.size()) {
            if (used == k) out.push_back(Monomial::from_entries(stack));
            return;
        }
        for (std::uint32_t e = 0; e <= entries[idx].second; ++e) {
            if (e > 0) stack.push_back({entries[idx].first, e});
            self(self, idx + 1, used + e);
            if (e > 0) stack.pop_back();
        }
    };
    rec(rec, 0, 0);
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return a.grlex(b) == std::strong_ordering::less;
    });
    return out;
}

// Shared state for one factor() call.
template <FieldScalar S>
class FactorEngine {
public:
    FactorEngine(const FactorOptions<S>& opts) : opts_(opts), budget_(opts.max_candidates) {}

    Factorization<S> run(const Poly<S>& a) {
        if (a.is_zero()) throw DomainError("factor-zero", "cannot factor the zero polynomial");
        auto [unit, monic] = normalize_unit(a);
        Factorization<S> out;
        out.unit = unit;
        Poly<S> c = monic;
        // trial division by known irreducibles first
        if (opts_.hints) {
            for (const Poly<S>& h : *opts_.hints) {
                if (c.is_constant()) break;
                if (h.is_constant() || h.total_degree() > c.total_degree()) continue;
                unsigned mult = 0;
                while (true) {
                    auto q = exact_div(c, h);
                    if (!q) break;
                    c = *q;
                    ++mult;
                }
                if (mult) out.add_factor(h, mult);
            }
        }
        std::uint32_t kmin = 1;
        while (!c.is_constant()) {
            auto found = search_factor(c, kmin);
            if (!found) {
                out.add_factor(c, 1);  // certified irreducible by the completed scan
                break;
            }
            kmin = static_cast<std::uint32_t>(found->total_degree());
            unsigned mult = 0;
            while (true) {
                auto q = exact_div(c, *found);
                if (!q) break;
                c = *q;
                ++mult;
            }
            out.add_factor(*found, mult);
        }
        out.sort_canonical();
        return out;
    }

private:
    void spend() {
        if (budget_ == 0)
            throw FactorizationIncomplete("factorization candidate budget exhausted");
        --budget_;
    }

    std::optional<Poly<S>> search_factor(const Poly<S>& c, std::uint32_t kmin) {
        if constexpr (std::is_same_v<S, Fq>) {
            return search_fq(c, kmin);
        } else {
            static_assert(std::is_same_v<S, Rat>, "unsupported coefficient field");
            return search_rat(c, kmin);
        }
    }

    // ---- finite field backend -------------------------------------------

    std::optional<Poly<S>> search_fq(const Poly<S>& c, std::uint32_t kmin)
        requires std::is_same_v<S, Fq>
    {
        const std::uint32_t q = c.leading_coeff().modulus();
        const auto varset = c.variables();
        const std::vector<VarId> vars(varset.begin(), varset.end());
        const std::uint32_t kmax = static_cast<std::uint32_t>(c.total_degree() / 2);

        // point-evaluation prefilter: wherever c is nonzero, a divisor must be too
        std::vector<std::vector<std::uint8_t>> points;
        std::vector<bool> need;
        bool use_filter = prepare_points(c, vars, q, points, need);

        for (std::uint32_t k = kmin; k <= kmax; ++k) {
            auto leads = divisor_monomials(c.leading_monomial(), k);
            if (opts_.reverse) std::reverse(leads.begin(), leads.end());
            auto all_lower = monomials_up_to(vars, k);
            for (const Monomial& mu : leads) {
                std::vector<Monomial> lower;
                for (const Monomial& m : all_lower)
                    if (m.grlex(mu) == std::strong_ordering::less) lower.push_back(m);
                auto hit = scan_level_fq(c, mu, lower, q, points, need, use_filter);
                if (hit) return hit;
            }
        }
        return std::nullopt;
    }

    bool prepare_points(const Poly<Fq>& c, const std::vector<VarId>& vars, std::uint32_t q,
                        std::vector<std::vector<std::uint8_t>>& points, std::vector<bool>& need) {
        double space = 1;
        for (std::size_t i = 0; i < vars.size(); ++i) space *= q;
        if (space > 256) return false;
        const std::size_t npoints = static_cast<std::size_t>(space);
        points.assign(npoints, std::vector<std::uint8_t>(vars.size(), 0));
        for (std::size_t p = 0; p < npoints; ++p) {
            std::size_t t = p;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                points[p][i] = static_cast<std::uint8_t>(t % q);
                t /= q;
            }
        }
        need.assign(npoints, false);
        for (std::size_t p = 0; p < npoints; ++p)
            need[p] = eval_at(c, vars, points[p], q) != 0;
        return true;
    }

    static std::uint32_t eval_monomial(const Monomial& m, const std::vector<VarId>& vars,
                                       const std::vector<std::uint8_t>& pt, std::uint32_t q) {
        std::uint64_t acc = 1;
        for (const auto& [v, e] : m.entries()) {
            const std::size_t i = static_cast<std::size_t>(
                std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
            std::uint64_t base = pt[i] % q;
            for (std::uint32_t j = 0; j < e; ++j) acc = acc * base % q;
        }
        return static_cast<std::uint32_t>(acc);
    }

    static std::uint32_t eval_at(const Poly<Fq>& c, const std::vector<VarId>& vars,
                                 const std::vector<std::uint8_t>& pt, std::uint32_t q) {
        std::uint64_t acc = 0;
        for (const auto& [m, coef] : c.terms())
            acc = (acc + static_cast<std::uint64_t>(coef.value()) * eval_monomial(m, vars, pt, q)) % q;
        return static_cast<std::uint32_t>(acc);
    }

    std::optional<Poly<Fq>> scan_level_fq(const Poly<Fq>& c, const Monomial& mu,
                                          const std::vector<Monomial>& lower, std::uint32_t q,
                                          const std::vector<std::vector<std::uint8_t>>& points,
                                          const std::vector<bool>& need, bool use_filter) {
        const auto varset = c.variables();
        const std::vector<VarId> vars(varset.begin(), varset.end());
        const std::size_t npoints = use_filter ? points.size() : 0;

        // per-monomial evaluation tables for incremental candidate values
        std::vector<std::uint32_t> mono_vals(lower.size() * npoints);
        std::vector<std::uint32_t> cand_vals(npoints);
        if (use_filter) {
            for (std::size_t i = 0; i < lower.size(); ++i)
                for (std::size_t p = 0; p < npoints; ++p)
                    mono_vals[i * npoints + p] = eval_monomial(lower[i], vars, points[p], q);
            for (std::size_t p = 0; p < npoints; ++p)
                cand_vals[p] = eval_monomial(mu, vars, points[p], q);
        }

        std::vector<std::uint32_t> digits(lower.size(), 0);
        const std::uint32_t dmax = q - 1;
        if (opts_.reverse) {
            for (std::size_t i = 0; i < digits.size(); ++i) digits[i] = dmax;
            if (use_filter)
                for (std::size_t i = 0; i < lower.size(); ++i)
                    for (std::size_t p = 0; p < npoints; ++p)
                        cand_vals[p] = (cand_vals[p] + dmax * mono_vals[i * npoints + p]) % q;
        }
        const Fq one = c.leading_coeff().one_like();
        const Monomial tm_c = c.trailing_monomial();

        while (true) {
            spend();
            bool pass = true;
            if (use_filter) {
                for (std::size_t p = 0; p < npoints; ++p)
                    if (need[p] && cand_vals[p] == 0) {
                        pass = false;
                        break;
                    }
            }
            if (pass) {
                // trailing monomial of the candidate must divide c's
                std::size_t first_nz = lower.size();
                for (std::size_t i = 0; i < lower.size(); ++i)
                    if (digits[i] != 0) {
                        first_nz = i;
                        break;
                    }
                const Monomial& tail = first_nz < lower.size() ? lower[first_nz] : mu;
                if (tail.divides(tm_c)) {
                    Poly<Fq> cand = Poly<Fq>::term(mu, one);
                    for (std::size_t i = 0; i < lower.size(); ++i)
                        if (digits[i] != 0)
                            cand.add_term(lower[i], Fq(static_cast<std::int64_t>(digits[i]), q));
                    if (auto quo = exact_div(c, cand); quo.has_value()) return cand;
                }
            }
            // odometer step (reverse mode counts down)
            std::size_t pos = 0;
            while (pos < digits.size()) {
                bool wraps = opts_.reverse ? digits[pos] == 0 : digits[pos] == dmax;
                if (!wraps) {
                    std::int64_t delta = opts_.reverse ? -1 : 1;
                    digits[pos] = static_cast<std::uint32_t>(digits[pos] + delta);
                    if (use_filter) bump(cand_vals, mono_vals, pos, delta, q, npoints);
                    break;
                }
                std::int64_t delta = opts_.reverse ? dmax : -static_cast<std::int64_t>(dmax);
                digits[pos] = opts_.reverse ? dmax : 0;
                if (use_filter) bump(cand_vals, mono_vals, pos, delta, q, npoints);
                ++pos;
            }
            if (pos == digits.size()) return std::nullopt;
        }
    }

    static void bump(std::vector<std::uint32_t>& cand_vals,
                     const std::vector<std::uint32_t>& mono_vals, std::size_t idx,
                     std::int64_t delta, std::uint32_t q, std::size_t npoints) {
        const std::int64_t d = ((delta % q) + q) % q;
        for (std::size_t p = 0; p < npoints; ++p)
            cand_vals[p] =
                static_cast<std::uint32_t>((cand_vals[p] + d * mono_vals[idx * npoints + p]) % q);
    }

    // ---- rationals backend ----------------------------------------------

    // Primitive integer form of a nonzero rational polynomial with positive
    // leading coefficient; returns the per-monomial integer coefficients.
    static std::map<Monomial, mpz_class, GrlexGreater> primitive_form(const Poly<Rat>& c) {
        mpz_class den_lcm = 1;
        for (const auto& [m, coef] : c.terms())
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                    coef.value().get_den().get_mpz_t());
        mpz_class content = 0;
        std::map<Monomial, mpz_class, GrlexGreater> ints;
        for (const auto& [m, coef] : c.terms()) {
            mpz_class v = coef.value().get_num() * (den_lcm / coef.value().get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
            ints.emplace(m, v);
        }
        for (auto& [m, v] : ints) v /= content;
        if (ints.begin()->second < 0)
            for (auto& [m, v] : ints) v = -v;
        return ints;
    }

    std::optional<Poly<Rat>> search_rat(const Poly<Rat>& c, std::uint32_t kmin)
        requires std::is_same_v<S, Rat>
    {
        const auto prim = primitive_form(c);
        const auto varset = c.variables();
        const std::vector<VarId> vars(varset.begin(), varset.end());
        const std::uint32_t half = static_cast<std::uint32_t>(c.total_degree() / 2);
        const std::uint32_t kmax = std::min(half, opts_.max_degree);

        // rigorous height bound for integer divisors: 2^(sum of per-variable
        // degrees) * ceil of the 2-norm (Mahler measure <= 2-norm)
        mpz_class norm2_sq = 0;
        for (const auto& [m, v] : prim) norm2_sq += v * v;
        mpz_class norm2 = sqrt(norm2_sq);
        if (norm2 * norm2 < norm2_sq) norm2 += 1;

        const mpz_class lc = prim.begin()->second;
        const Monomial lm = prim.begin()->first;
        const Monomial tm = prim.rbegin()->first;
        const mpz_class tc = abs(prim.rbegin()->second);

        for (std::uint32_t k = kmin; k <= kmax; ++k) {
            std::uint64_t nu = 0;  // sum over variables of min(deg_v, k)
            for (VarId v : vars) nu += std::min<std::uint64_t>(c.degree_in(v), k);
            mpz_class bound_k = norm2;
            mpz_mul_2exp(bound_k.get_mpz_t(), bound_k.get_mpz_t(), nu);
            if (bound_k > opts_.coeff_height || !bound_k.fits_slong_p())
                throw FactorizationIncomplete(
                    "required candidate coefficient height " + bound_k.get_str() +
                    " exceeds the configured budget " + opts_.coeff_height.get_str());
            auto hit = scan_level_rat(c, prim, vars, k, bound_k, lc, lm, tm, tc);
            if (hit) return hit;
        }
        if (kmax < half)
            throw FactorizationIncomplete("candidate degree budget " +
                                          std::to_string(opts_.max_degree) +
                                          " is below the certification degree " +
                                          std::to_string(half));
        return std::nullopt;
    }

    std::optional<Poly<Rat>> scan_level_rat(const Poly<Rat>& c,
                                            const std::map<Monomial, mpz_class, GrlexGreater>& prim,
                                            const std::vector<VarId>& vars, std::uint32_t k,
                                            const mpz_class& bound, const mpz_class& lc,
                                            const Monomial& lm, const Monomial& tm,
                                            const mpz_class& tc)
        requires std::is_same_v<S, Rat>
    {
        std::vector<mpz_class> lc_divisors;
        for (mpz_class d = 1; d <= abs(lc); ++d)
            if (lc % d == 0) lc_divisors.push_back(d);
        auto leads = divisor_monomials(lm, k);
        auto all_lower = monomials_up_to(vars, k);
        if (opts_.reverse) std::reverse(leads.begin(), leads.end());

        const long b = static_cast<long>(bound.get_si());
        const long width = 2 * b + 1;

        for (const Monomial& mu : leads) {
            std::vector<Monomial> lower;
            for (const Monomial& m : all_lower)
                if (m.grlex(mu) == std::strong_ordering::less) lower.push_back(m);
            for (const mpz_class& lcd : lc_divisors) {
                std::vector<long> digits(lower.size(), opts_.reverse ? width - 1 : 0);
                while (true) {
                    spend();
                    // assemble, check primitivity and the trailing constraints
                    std::size_t first_nz = lower.size();
                    mpz_class content = lcd;
                    for (std::size_t i = 0; i < lower.size(); ++i) {
                        long coef = digits[i] - b;
                        if (coef != 0 && first_nz == lower.size()) first_nz = i;
                        if (coef != 0)
                            mpz_gcd_ui(content.get_mpz_t(), content.get_mpz_t(),
                                       static_cast<unsigned long>(coef < 0 ? -coef : coef));
                    }
                    bool pass = content == 1;
                    if (pass) {
                        const Monomial& tail = first_nz < lower.size() ? lower[first_nz] : mu;
                        if (!tail.divides(tm)) pass = false;
                        if (pass) {
                            mpz_class cand_tc =
                                first_nz < lower.size() ? mpz_class(digits[first_nz] - b) : lcd;
                            mpz_class cand_tc_abs = abs(cand_tc);
                            if (!mpz_divisible_p(tc.get_mpz_t(), cand_tc_abs.get_mpz_t()))
                                pass = false;
                        }
                    }
                    if (pass) {
                        Poly<Rat> cand = Poly<Rat>::term(mu, Rat(mpq_class(lcd)));
                        for (std::size_t i = 0; i < lower.size(); ++i)
                            if (digits[i] != b)
                                cand.add_term(lower[i], Rat(mpq_class(digits[i] - b)));
                        if (auto quo = exact_div(c, cand); quo.has_value()) {
                            // hand back the monic form; the caller works monic
                            return normalize_unit(cand).second;
                        }
                    }
                    std::size_t pos = 0;
                    while (pos < digits.size()) {
                        bool wraps = opts_.reverse ? digits[pos] == 0 : digits[pos] == width - 1;
                        if (!wraps) {
                            digits[pos] += opts_.reverse ? -1 : 1;
                            break;
                        }
                        digits[pos] = opts_.reverse ? width - 1 : 0;
                        ++pos;
                    }
                    if (pos == digits.size()) break;
                }
            }
        }
        return std::nullopt;
    }

    const FactorOptions<S>& opts_;
    std::uint64_t budget_;
};

}  // namespace detail

template <FieldScalar S>
Factorization<S> factor(const Poly<S>& a, const FactorOptions<S>& opts = {}) {
    detail::FactorEngine<S> engine(opts);
    return engine.run(a);
}

template <FieldScalar S>
bool is_irreducible(const Poly<S>& a, const FactorOptions<S>& opts = {}) {
    if (a.is_zero()) throw DomainError("factor-zero", "irreducibility undefined for zero");
    if (a.is_constant()) throw DomainError("factor-unit", "irreducibility undefined for units");
    auto f = factor(a, opts);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

// Unit-normalized gcd via factor multiset intersection; gcd(a, 0) is the
// monic form of a.
template <FieldScalar S>
Poly<S> poly_gcd(const Poly<S>& a, const Poly<S>& b, const FactorOptions<S>& opts = {}) {
    if (a.is_zero() && b.is_zero())
        throw DomainError("gcd-zero", "gcd(0, 0) is undefined");
    if (a.is_zero()) return normalize_unit(b).second;
    if (b.is_zero()) return normalize_unit(a).second;
    auto fa = factor(a, opts);
    auto fb = factor(b, opts);
    auto common = multiset_intersect(fa.factors, fb.factors);
    Poly<S> out = Poly<S>::constant(a.leading_coeff().one_like());
    for (const auto& [f, m] : common)
        for (unsigned i = 0; i < m; ++i) out = out * f;
    return out;
}

}  // namespace ordeuc
