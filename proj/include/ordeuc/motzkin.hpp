// motzkin.hpp: transfinite stratification of denominators for classical rings
// at desk scale.  S_0 holds the units; an element enters S_alpha once every
// nonzero residue class modulo it already contains an element of smaller
// rank.  Models: integers truncated to |x| <= N, and univariate polynomials
// over a prime field truncated by degree.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordeuc/ordinal.hpp"

namespace ordeuc {

struct RingModel {
    enum class Kind { integers, polynomials };
    Kind kind = Kind::integers;
    std::int64_t bound = 16;     // integers: nonzero x with |x| <= bound
    std::uint32_t q = 2;         // polynomials: field order (prime)
    std::uint32_t max_degree = 4;  // polynomials: degree cap

    static RingModel integers(std::int64_t n);
    static RingModel polynomials(std::uint32_t q, std::uint32_t d);
    // "int:N" or "poly:q:D"
    static RingModel parse(const std::string& text);

    std::string to_string() const;
    std::uint64_t element_count() const;
};

// Polynomials are coded as base-q digit strings: code = sum coeff_i * q^i.
std::string poly_code_to_string(std::uint64_t code, std::uint32_t q);
std::uint32_t poly_code_degree(std::uint64_t code, std::uint32_t q);
std::uint64_t poly_code_mul(std::uint64_t a, std::uint64_t b, std::uint32_t q);
// remainder of a modulo b (b != 0)
std::uint64_t poly_code_mod(std::uint64_t a, std::uint64_t b, std::uint32_t q);

struct StrataResult {
    RingModel model;
    // integers: index x + bound (index bound is the excluded 0)
    // polynomials: index = code, index 0 is the excluded 0
    std::vector<int> ranks;
    int max_rank = 0;
    Ordinal rho;  // sup of attained ranks + 1, as observed in the truncation

    int rank_of_int(std::int64_t x) const;
    int rank_of_code(std::uint64_t code) const;
};

// Fixed-point computation of the rank map; round alpha admits exactly the
// elements whose residue classes are all witnessed by ranks below alpha.
StrataResult stratify(const RingModel& model);

// Closed form for the integers: floor(log2 |x|).
int tau_int(std::int64_t x);

struct LenstraViolation {
    std::string x, y;
    int rank_x = 0, rank_y = 0, rank_xy = 0;
};

struct LenstraReport {
    std::uint64_t checked = 0;
    std::uint64_t skipped = 0;  // products that left the truncation
    std::vector<LenstraViolation> violations;
};

// Samples pairs and verifies rank(xy) >= rank(x) + rank(y).
LenstraReport lenstra_check(const StrataResult& strata, std::uint64_t samples,
                            std::uint64_t seed);

// True iff the attained ranks form an initial segment {0, ..., max}.
bool type_check(const StrataResult& strata);

}  // namespace ordeuc
