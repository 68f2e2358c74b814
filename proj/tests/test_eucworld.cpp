#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ordeuc/elem_parse.hpp"
#include "ordeuc/ring.hpp"

using namespace ordeuc;

namespace {

Ordinal W() { return omega_pow(1ul); }

RingConfig base_f2(unsigned long alpha = 1) {
    RingConfig cfg;
    cfg.field = FieldConfig::finite(2);
    cfg.alpha = Ordinal(alpha);
    return cfg;
}

RingConfig variant_q() {
    RingConfig cfg;
    cfg.field = FieldConfig::rationals();
    cfg.alpha = Ordinal(1ul);
    cfg.variant = RingVariant::z_variant;
    return cfg;
}

// n == q*d + r, checked by raw cross multiplication (no factoring).
template <FieldScalar S>
bool division_identity(Ring<S>& ring, const RElement<S>& n, const RElement<S>& d,
                       const DivisionResult<S>& res) {
    RElement<S> qd = ring.mul(res.quotient, d);
    Poly<S> sum_num = qd.num * res.remainder.den + res.remainder.num * qd.den;
    Poly<S> sum_den = qd.den * res.remainder.den;
    return n.num * sum_den == sum_num * n.den;
}

}  // namespace

TEST_CASE("ring construction validates its configuration") {
    CHECK_NOTHROW(Ring<Fq>{base_f2(1)});
    CHECK_NOTHROW(Ring<Fq>{base_f2(2)});
    CHECK_NOTHROW(Ring<Rat>{variant_q()});
    RingConfig bad = variant_q();
    bad.alpha = Ordinal(2ul);
    CHECK_THROWS_AS(Ring<Rat>{bad}, DomainError);
    RingConfig zero_alpha = base_f2();
    zero_alpha.alpha = Ordinal();
    CHECK_THROWS_AS(Ring<Fq>{zero_alpha}, DomainError);
    RingConfig vf = base_f2(1);
    vf.variant = RingVariant::z_variant;
    CHECK_THROWS_AS(Ring<Fq>{vf}, DomainError);
    vf.allow_unverified_minimality = true;
    CHECK_NOTHROW(Ring<Fq>{vf});
}

TEST_CASE("generators and their norms") {
    Ring<Fq> ring(base_f2(2));
    auto x5 = ring.gen(Ordinal(5ul), 0);
    CHECK(ring.norm(x5) == Ordinal(5ul));
    auto xw = ring.gen(W(), 0);
    CHECK(ring.norm(xw) == W());
    auto xw32 = ring.gen(parse_ordinal("w*3+2"), 0);
    CHECK(ring.norm(xw32) == parse_ordinal("w*3+2"));
    // idempotent materialization
    CHECK(ring.gen(Ordinal(5ul), 0) == x5);
    CHECK_THROWS_AS(ring.gen(Ordinal(), 0), DomainError);
    CHECK_THROWS_AS(ring.gen(omega_pow(2ul), 0), DomainError);      // beta = w^2
    CHECK_THROWS_AS(ring.gen(parse_ordinal("w^2*4"), 1), DomainError);
    Ring<Fq> small(base_f2(1));
    CHECK_THROWS_AS(small.gen(W(), 0), DomainError);
    CHECK_THROWS_AS(small.gen_z(), DomainError);
}

TEST_CASE("Sub of the worked example") {
    Ring<Fq> ring(base_f2(1));
    auto r = parse_element(ring, "x[5,0]*x[1,0] - x[3,0]^2");
    auto subs = ring.sub_of(r);
    CHECK(subs == std::set<Ordinal>{Ordinal(1ul), Ordinal(3ul), Ordinal(5ul)});
    auto g = parse_element(ring, "x[7,2]");
    CHECK(ring.sub_of(g) == std::set<Ordinal>{Ordinal(7ul)});
    CHECK_THROWS_AS(ring.sub_of(ring.one()), DomainError);
}

TEST_CASE("norm of the worked example and of products") {
    Ring<Fq> ring(base_f2(1));
    auto r = parse_element(ring, "x[5,0]*x[1,0] - x[3,0]^2");
    CHECK(ring.norm(r) == Ordinal(5ul));
    CHECK(ring.norm(ring.one()) == Ordinal());
    auto p = parse_element(ring, "x[2,0]*x[3,0]");
    CHECK(ring.norm(p) == Ordinal(5ul));  // 2 (+) 3
    CHECK_THROWS_AS(ring.norm(ring.zero()), DomainError);
}

TEST_CASE("norm is multiplicative over the Hessenberg sum in the base ring") {
    Ring<Fq> ring(base_f2(2));
    auto a = ring.mul(ring.gen(W(), 0), ring.gen(Ordinal(3ul), 1));
    auto b = ring.mul(ring.gen(Ordinal(2ul), 0), ring.gen(W(), 0));
    CHECK(ring.norm(ring.mul(a, b)) == nat_sum(ring.norm(a), ring.norm(b)));
    CHECK(ring.norm(a) == parse_ordinal("w + 3"));
    CHECK(ring.norm(b) == parse_ordinal("w + 2"));
    CHECK(ring.norm(ring.mul(a, b)) == parse_ordinal("w*2 + 5"));
}

TEST_CASE("adjoin_quotient: T, stage, memoization") {
    Ring<Fq> ring(base_f2(1));
    auto n = ring.gen(Ordinal(2ul), 1);
    auto d = ring.gen(Ordinal(1ul), 0);
    VarId y = ring.adjoin_quotient(n, d);
    const auto& info = ring.registry().info(y);
    CHECK(info.kind == VarKind::y_special);
    CHECK(info.subs == std::set<Ordinal>{Ordinal(), Ordinal(1ul), Ordinal(2ul)});
    CHECK(info.stage == 2);
    CHECK(ring.adjoin_quotient(n, d) == y);  // memoized
    // special prime norm: max{beta in {0,1,2} : beta < 1} = 0
    CHECK(ring.special_norm(y) == Ordinal());

    // the paper's pair: n = x[7,0]^2 * x[5,0], d = x[3,0]^5 - x[4,0]
    auto n2 = parse_element(ring, "x[7,0]^2 * x[5,0]");
    auto d2 = parse_element(ring, "x[3,0]^5 - x[4,0]");
    VarId y2 = ring.adjoin_quotient(n2, d2);
    const auto& info2 = ring.registry().info(y2);
    CHECK(info2.subs == std::set<Ordinal>{Ordinal(), Ordinal(3ul), Ordinal(4ul), Ordinal(5ul),
                                          Ordinal(7ul)});
    CHECK(info2.stage == 1);
    CHECK(ring.special_norm(y2) == Ordinal(3ul));  // max{b in T : b < 4}

    // ineligible pairs are rejected
    CHECK_THROWS_AS(ring.adjoin_quotient(d, n), DomainError);             // norm(n) < norm(d)
    CHECK_THROWS_AS(ring.adjoin_quotient(ring.mul(n, d), d), DomainError);  // not coprime
    CHECK_THROWS_AS(ring.adjoin_quotient(n, ring.one()), DomainError);    // norm(d) = 0
}

TEST_CASE("special_info identifies special primes up to units") {
    Ring<Fq> ring2(base_f2(1));
    auto n = ring2.gen(Ordinal(2ul), 0);
    auto d = ring2.gen(Ordinal(1ul), 0);
    VarId y = ring2.adjoin_quotient(n, d);
    const Poly<Fq>& p = ring2.special_prime(y);
    auto si = ring2.special_info(p);
    REQUIRE(si.has_value());
    CHECK(si->var == y);
    CHECK_FALSE(ring2.special_info(ring2.gen(Ordinal(3ul), 0).num).has_value());
    CHECK_THROWS_AS(ring2.special_info(p * p), DomainError);  // reducible input

    // unit multiples over F3
    RingConfig cfg3 = base_f2(1);
    cfg3.field = FieldConfig::finite(3);
    Ring<Fq> ring3(cfg3);
    auto n3 = ring3.gen(Ordinal(2ul), 0);
    auto d3 = ring3.gen(Ordinal(1ul), 0);
    VarId y3 = ring3.adjoin_quotient(n3, d3);
    Poly<Fq> scaled = ring3.special_prime(y3).scaled(Fq(2, 3));
    auto si3 = ring3.special_info(scaled);
    REQUIRE(si3.has_value());
    CHECK(si3->var == y3);
}

TEST_CASE("divides uses factor multisets and ignores units") {
    Ring<Fq> ring(base_f2(1));
    auto x1 = ring.gen(Ordinal(1ul), 0);
    auto x2 = ring.gen(Ordinal(2ul), 0);
    CHECK(ring.divides(x1, ring.mul(ring.mul(x1, x1), x2)));
    CHECK_FALSE(ring.divides(x2, x1));
    CHECK_THROWS_AS(ring.divides(ring.zero(), x1), DomainError);

    // a norm-zero special prime is a unit and divides everything
    auto res = ring.divide(x2, x1);
    REQUIRE(res.remainder_norm.has_value());
    CHECK(*res.remainder_norm == Ordinal());
    CHECK(ring.divides(res.remainder, ring.one()));
}

TEST_CASE("divide: exact, small-norm, and general branches") {
    Ring<Fq> ring(base_f2(1));
    auto x1 = ring.gen(Ordinal(1ul), 0);
    auto x2 = ring.gen(Ordinal(2ul), 0);

    SUBCASE("exact divisibility") {
        auto res = ring.divide(ring.mul(x1, x1), x1);
        CHECK(res.remainder.is_zero());
        CHECK_FALSE(res.remainder_norm.has_value());
        CHECK(res.quotient == x1);
        CHECK(division_identity(ring, ring.mul(x1, x1), x1, res));
    }

    SUBCASE("small norm keeps the dividend") {
        auto res = ring.divide(x1, x2);
        CHECK(res.quotient.is_zero());
        CHECK(res.remainder == x1);
        REQUIRE(res.remainder_norm.has_value());
        CHECK(*res.remainder_norm == Ordinal(1ul));
        CHECK(res.divisor_norm == Ordinal(2ul));
        CHECK(division_identity(ring, x1, x2, res));
    }

    SUBCASE("general path adjoins a quotient and descends") {
        auto res = ring.divide(x2, x1);
        REQUIRE(res.adjoined_var.has_value());
        REQUIRE(res.remainder_norm.has_value());
        CHECK(*res.remainder_norm == Ordinal());
        CHECK(res.divisor_norm == Ordinal(1ul));
        CHECK(*res.remainder_norm < res.divisor_norm);
        CHECK(division_identity(ring, x2, x1, res));
        // the quotient is the adjoined special variable itself
        CHECK(res.quotient.num == ring.var_poly(*res.adjoined_var));
    }

    SUBCASE("general path with a shared factor satisfies the norm identity") {
        auto g = ring.gen(Ordinal(3ul), 0);
        auto n = ring.mul(ring.mul(x2, x2), g);
        auto d = ring.mul(x1, g);
        auto res = ring.divide(n, d);
        REQUIRE(res.adjoined_var.has_value());
        CHECK(division_identity(ring, n, d, res));
        REQUIRE(res.remainder_norm.has_value());
        CHECK(*res.remainder_norm < res.divisor_norm);
        // remainder norm = norm(special prime) (+) norm(gcd)
        CHECK(*res.remainder_norm ==
              nat_sum(ring.special_norm(*res.adjoined_var), ring.norm(g)));
    }

    CHECK_THROWS_AS(ring.divide(x1, ring.zero()), DomainError);
}

TEST_CASE("variant: extended eligibility when z divides the cofactor") {
    Ring<Rat> ring(variant_q());
    auto z = ring.gen_z();
    auto x2 = ring.gen(Ordinal(2ul), 0);
    auto n = ring.pow(z, 2);
    auto d = ring.mul(z, x2);
    // norm(n) = 4 >= norm(d) = 1 (+) 2 = 3, d does not divide n,
    // after cancelling g = z the pair (z, x2) has norm 1 < 2 but z | z
    auto res = ring.divide(n, d);
    REQUIRE(res.adjoined_var.has_value());
    CHECK(division_identity(ring, n, d, res));
    REQUIRE(res.remainder_norm.has_value());
    CHECK(*res.remainder_norm < res.divisor_norm);
    CHECK(res.divisor_norm == Ordinal(3ul));
    // special prime norm: max{b in {0,1,2} : b < 2} = 1; remainder = prime*z
    CHECK(*res.remainder_norm == Ordinal(2ul));

    // direct small-norm branch still applies when norm(n) < norm(d) outright
    auto res2 = ring.divide(ring.mul(z, ring.one()), ring.mul(x2, x2));
    CHECK(res2.quotient.is_zero());
    CHECK(res2.remainder == z);
}

TEST_CASE("euclid_gcd traces") {
    Ring<Fq> ring(base_f2(1));
    auto x1 = ring.gen(Ordinal(1ul), 0);
    auto x2 = ring.gen(Ordinal(2ul), 0);
    auto x3 = ring.gen(Ordinal(3ul), 0);

    SUBCASE("gcd(p, p) is one step") {
        auto t = ring.euclid_gcd(x2, x2);
        CHECK(t.steps.size() == 1);
        CHECK(t.final_gcd == x2);
    }

    SUBCASE("gcd with a planted common factor") {
        auto t = ring.euclid_gcd(ring.mul(x1, x2), x1);
        CHECK(t.final_gcd == x1);
    }

    SUBCASE("coprime generators terminate with a unit gcd") {
        auto t = ring.euclid_gcd(x3, x2);
        REQUIRE(!t.steps.empty());
        CHECK(t.steps[0].divisor_norm == Ordinal(2ul));
        // strictly decreasing remainder norms
        Ordinal prev = t.steps[0].divisor_norm;
        for (const auto& s : t.steps) {
            if (!s.remainder_norm) continue;
            CHECK(*s.remainder_norm < prev);
            prev = *s.remainder_norm;
        }
        // final gcd is a unit: norm 0
        CHECK(ring.norm(t.final_gcd) == Ordinal());
    }

    CHECK_THROWS_AS(ring.euclid_gcd(ring.zero(), ring.zero()), DomainError);
}

TEST_CASE("psi monoid norm in the variant") {
    Ring<Rat> ring(variant_q());
    auto z = ring.gen_z();
    CHECK(ring.psi_monoid(ring.pow(z, 2)) == parse_ordinal("w*2"));
    CHECK(ring.psi_monoid(ring.from_int(7)) == Ordinal());
    auto x1 = ring.gen(Ordinal(1ul), 0);
    CHECK(ring.psi_monoid(ring.mul(z, x1)) == parse_ordinal("w + 1"));
    CHECK_THROWS_AS(ring.psi_monoid(ring.zero()), DomainError);

    Ring<Fq> base(base_f2(1));
    CHECK_THROWS_AS(base.psi_monoid(base.one()), DomainError);
}

TEST_CASE("variant norms: phi(z^k) = k^k") {
    Ring<Rat> ring(variant_q());
    auto z = ring.gen_z();
    CHECK(ring.norm(z) == Ordinal(1ul));
    CHECK(ring.norm(ring.pow(z, 3)) == Ordinal(27ul));
    CHECK(ring.norm(ring.pow(z, 8)) == Ordinal(mpz_class(16777216)));
    // superadditivity with a non-z cofactor: phi(z^2 * x1) = 4 (+) 1
    auto x1 = ring.gen(Ordinal(1ul), 0);
    CHECK(ring.norm(ring.mul(ring.pow(z, 2), x1)) == Ordinal(5ul));
}

TEST_CASE("nonmultiplicativity witnesses") {
    CHECK(nonmult_witness(2) == std::pair<mpz_class, mpz_class>{8, 27});
    CHECK(nonmult_witness(1) == std::pair<mpz_class, mpz_class>{1, 4});
    CHECK(nonmult_witness(5) == std::pair<mpz_class, mpz_class>{15625, 46656});
    CHECK_THROWS_AS(nonmult_witness(0), DomainError);
}

TEST_CASE("canonicalize cancels units and is idempotent") {
    Ring<Fq> ring(base_f2(1));
    auto x1 = ring.gen(Ordinal(1ul), 0);
    auto x2 = ring.gen(Ordinal(2ul), 0);
    auto res = ring.divide(x2, x1);
    const RElement<Fq>& s = res.remainder;  // norm-zero special prime
    REQUIRE(ring.norm(s) == Ordinal());

    auto x3 = ring.gen(Ordinal(3ul), 0);
    RElement<Fq> raw;
    raw.num = s.num * x3.num;
    raw.den = s.num;
    raw.ring_id = ring.ring_id();
    auto canon = ring.canonicalize(raw);
    CHECK(canon == x3);
    CHECK(canon.num == x3.num);
    CHECK(canon.den.is_constant());
    // idempotence
    auto again = ring.canonicalize(canon);
    CHECK(again.num == canon.num);
    CHECK(again.den == canon.den);

    // scalar cancellation over Q
    Ring<Rat> rq(variant_q());
    auto zp = rq.gen_z();
    RElement<Rat> raw2;
    raw2.num = zp.num.scaled(Rat(mpq_class(2)));
    raw2.den = Poly<Rat>::constant(Rat(mpq_class(2)));
    raw2.ring_id = rq.ring_id();
    auto c2 = rq.canonicalize(raw2);
    CHECK(c2 == zp);

    // denominators with positive norm are rejected
    RElement<Fq> bad;
    bad.num = x3.num;
    bad.den = x1.num;
    bad.ring_id = ring.ring_id();
    CHECK_THROWS_AS(ring.canonicalize(bad), DomainError);
}

TEST_CASE("element arithmetic keeps cached factorizations consistent") {
    Ring<Fq> ring(base_f2(1));
    auto x1 = ring.gen(Ordinal(1ul), 0);
    auto x2 = ring.gen(Ordinal(2ul), 0);
    auto sum = ring.add(ring.mul(x1, x2), x1);  // x1*(x2+1)
    REQUIRE(sum.num_fac.has_value());
    CHECK(sum.num_fac->total_multiplicity() == 2);
    CHECK(ring.norm(sum) == Ordinal(3ul));  // 1 (+) 2
    auto diff = ring.sub(sum, sum);
    CHECK(diff.is_zero());
}

TEST_CASE("order type bound and indecomposability") {
    Ring<Fq> ring(base_f2(2));
    CHECK(is_indecomposable(ring.norm_bound()));
    CHECK(ring.norm_bound() == parse_ordinal("w^2"));
    for (const char* s : {"1", "5", "w", "w*3+2", "w*7"}) {
        Ordinal beta = parse_ordinal(s);
        CHECK(ring.norm(ring.gen(beta, 0)) == beta);
        CHECK(beta < ring.norm_bound());
    }
}

TEST_CASE("cross-ring elements are rejected") {
    Ring<Fq> r1(base_f2(1));
    Ring<Fq> r2(base_f2(1));
    auto a = r1.gen(Ordinal(1ul), 0);
    CHECK_THROWS_AS(r2.norm(a), DomainError);
}

TEST_CASE("element parser grammar") {
    Ring<Fq> ring(base_f2(2));
    // a single irreducible: norm is max(Sub), not a factor sum
    auto p = parse_element(ring, "x[w*2+1,0] * x[3,1] + 1");
    CHECK(ring.norm(p) == parse_ordinal("w*2 + 1"));
    auto q = parse_element(ring, "x[w*2+1,0] * x[3,1]");
    CHECK(ring.norm(q) == parse_ordinal("w*2 + 4"));
    CHECK_THROWS_AS(parse_element(ring, "x[0,0]"), DomainError);
    CHECK_THROWS_AS(parse_element(ring, "x[1"), ParseError);
    CHECK_THROWS_AS(parse_element(ring, "q + 1"), ParseError);
    CHECK_THROWS_AS(parse_element(ring, "z"), DomainError);  // base ring has no z
    CHECK_THROWS_AS(parse_element(ring, "y0"), ParseError);  // id 0 is a generator, not a quotient

    Ring<Rat> rq(variant_q());
    auto e = parse_element(rq, "1/2 * z - 3");  // (z - 6)/2, linear hence irreducible
    CHECK(!e.is_zero());
    CHECK(rq.norm(e) == Ordinal(1ul));
}
