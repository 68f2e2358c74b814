#include "ordeuc/motzkin.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "ordeuc/field.hpp"

namespace ordeuc {

RingModel RingModel::integers(std::int64_t n) {
    if (n < 2) throw DomainError("model", "integer bound must be at least 2");
    RingModel m;
    m.kind = Kind::integers;
    m.bound = n;
    return m;
}

RingModel RingModel::polynomials(std::uint32_t q, std::uint32_t d) {
    if (!is_small_prime(q)) throw DomainError("model", "field order must be prime");
    if (d < 1) throw DomainError("model", "degree bound must be at least 1");
    RingModel m;
    m.kind = Kind::polynomials;
    m.q = q;
    m.max_degree = d;
    return m;
}

RingModel RingModel::parse(const std::string& text) {
    auto bad = [&]() -> DomainError {
        return DomainError("model", "expected int:<N> or poly:<q>:<D>, got '" + text + "'");
    };
    auto num = [&](const std::string& s) -> std::int64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw bad();
        return std::stoll(s);
    };
    if (text.rfind("int:", 0) == 0) return integers(num(text.substr(4)));
    if (text.rfind("poly:", 0) == 0) {
        std::string rest = text.substr(5);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw bad();
        return polynomials(static_cast<std::uint32_t>(num(rest.substr(0, colon))),
                           static_cast<std::uint32_t>(num(rest.substr(colon + 1))));
    }
    throw bad();
}

std::string RingModel::to_string() const {
    if (kind == Kind::integers) return "int:" + std::to_string(bound);
    return "poly:" + std::to_string(q) + ":" + std::to_string(max_degree);
}

std::uint64_t RingModel::element_count() const {
    if (kind == Kind::integers) return static_cast<std::uint64_t>(2 * bound);
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i <= max_degree; ++i) n *= q;
    return n - 1;
}

std::uint32_t poly_code_degree(std::uint64_t code, std::uint32_t q) {
    if (code == 0) throw DomainError("poly-code", "degree of 0 is undefined");
    std::uint32_t deg = 0;
    for (std::uint64_t c = code / q; c != 0; c /= q) ++deg;
    return deg;
}

std::string poly_code_to_string(std::uint64_t code, std::uint32_t q) {
    if (code == 0) return "0";
    std::vector<std::uint32_t> digits;
    for (std::uint64_t c = code; c != 0; c /= q)
        digits.push_back(static_cast<std::uint32_t>(c % q));
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << digits[i];
        } else {
            if (digits[i] != 1) os << digits[i] << '*';
            os << 't';
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

namespace {

std::vector<std::uint32_t> code_digits(std::uint64_t code, std::uint32_t q) {
    std::vector<std::uint32_t> d;
    for (std::uint64_t c = code; c != 0; c /= q) d.push_back(static_cast<std::uint32_t>(c % q));
    return d;
}

std::uint64_t digits_code(const std::vector<std::uint32_t>& d, std::uint32_t q) {
    std::uint64_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * q + d[i];
    return code;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) { return Fq(a, q).inverse().value(); }

}  // namespace

std::uint64_t poly_code_mul(std::uint64_t a, std::uint64_t b, std::uint32_t q) {
    if (a == 0 || b == 0) return 0;
    auto da = code_digits(a, q), db = code_digits(b, q);
    std::vector<std::uint32_t> out(da.size() + db.size() - 1, 0);
    for (std::size_t i = 0; i < da.size(); ++i)
        for (std::size_t j = 0; j < db.size(); ++j)
            out[i + j] = (out[i + j] + da[i] * db[j]) % q;
    return digits_code(out, q);
}

std::uint64_t poly_code_mod(std::uint64_t a, std::uint64_t b, std::uint32_t q) {
    if (b == 0) throw DomainError("poly-code", "modulo zero polynomial");
    auto ra = code_digits(a, q);
    const auto rb = code_digits(b, q);
    const std::uint32_t lead_inv = inv_mod(rb.back(), q);
    while (ra.size() >= rb.size()) {
        while (!ra.empty() && ra.back() == 0) ra.pop_back();
        if (ra.size() < rb.size()) break;
        const std::uint32_t factor = ra.back() * lead_inv % q;
        const std::size_t shift = ra.size() - rb.size();
        for (std::size_t i = 0; i < rb.size(); ++i)
            ra[shift + i] = (ra[shift + i] + q * q - factor * rb[i] % q) % q;
    }
    while (!ra.empty() && ra.back() == 0) ra.pop_back();
    return digits_code(ra, q);
}

int StrataResult::rank_of_int(std::int64_t x) const {
    if (x == 0 || x < -model.bound || x > model.bound)
        throw DomainError("rank-domain", "element outside the truncation");
    return ranks[static_cast<std::size_t>(x + model.bound)];
}

int StrataResult::rank_of_code(std::uint64_t code) const {
    if (code == 0 || code >= ranks.size())
        throw DomainError("rank-domain", "element outside the truncation");
    return ranks[static_cast<std::size_t>(code)];
}

namespace {

StrataResult stratify_integers(const RingModel& model) {
    const std::int64_t n = model.bound;
    StrataResult out;
    out.model = model;
    out.ranks.assign(static_cast<std::size_t>(2 * n + 1), -1);
    auto rank = [&](std::int64_t x) -> int& {
        return out.ranks[static_cast<std::size_t>(x + n)];
    };
    rank(1) = 0;
    rank(-1) = 0;

    for (int alpha = 1;; ++alpha) {
        bool changed = false;
        std::size_t unranked = 0;
        for (std::int64_t d = -n; d <= n; ++d) {
            if (d == 0 || rank(d) >= 0) continue;
            const std::int64_t m = d < 0 ? -d : d;
            bool ok = true;
            for (std::int64_t r = 1; r < m && ok; ++r) {
                // minimum rank over the in-bound members of the class r mod m
                int best = -1;
                for (std::int64_t x = r - ((r + n) / m) * m; x <= n; x += m) {
                    if (x == 0 || x < -n) continue;
                    int rx = rank(x);
                    if (rx >= 0 && (best < 0 || rx < best)) best = rx;
                }
                if (best < 0 || best >= alpha) ok = false;
            }
            if (ok) {
                rank(d) = alpha;
                changed = true;
            } else {
                ++unranked;
            }
        }
        if (!changed) {
            if (unranked > 0)
                throw DomainError("stratify", "fixed point stabilized before covering the model");
            break;
        }
    }
    out.max_rank = *std::max_element(out.ranks.begin(), out.ranks.end());
    out.rho = Ordinal(static_cast<unsigned long>(out.max_rank + 1));
    return out;
}

StrataResult stratify_polynomials(const RingModel& model) {
    const std::uint32_t q = model.q;
    const std::uint64_t count = model.element_count();  // codes 1 .. count
    if (count > (1u << 22))
        throw DomainError("model", "polynomial model too large for the configured budget");
    StrataResult out;
    out.model = model;
    out.ranks.assign(static_cast<std::size_t>(count + 1), -1);
    // units: nonzero constants
    for (std::uint32_t c = 1; c < q; ++c) out.ranks[c] = 0;

    // codes below q^m have degree < m; precompute the power boundaries
    std::vector<std::uint64_t> qpow(model.max_degree + 2, 1);
    for (std::size_t i = 1; i < qpow.size(); ++i) qpow[i] = qpow[i - 1] * q;

    for (int alpha = 1;; ++alpha) {
        bool changed = false;
        std::size_t unranked = 0;
        for (std::uint64_t d = q; d <= count; ++d) {
            if (out.ranks[d] >= 0) continue;
            const std::uint32_t deg = poly_code_degree(d, q);
            // the class of n modulo d holds its canonical remainder, of
            // degree < deg; that remainder is the class's minimal member
            bool ok = true;
            for (std::uint64_t r = 1; r < qpow[deg] && ok; ++r) {
                int rr = out.ranks[r];
                if (rr < 0 || rr >= alpha) ok = false;
            }
            if (ok) {
                out.ranks[d] = alpha;
                changed = true;
            } else {
                ++unranked;
            }
        }
        if (!changed) {
            if (unranked > 0)
                throw DomainError("stratify", "fixed point stabilized before covering the model");
            break;
        }
    }
    out.max_rank = *std::max_element(out.ranks.begin(), out.ranks.end());
    out.rho = Ordinal(static_cast<unsigned long>(out.max_rank + 1));
    return out;
}

}  // namespace

StrataResult stratify(const RingModel& model) {
    if (model.kind == RingModel::Kind::integers) {
        if (model.bound > (1 << 16))
            throw DomainError("model", "integer model too large for the configured budget");
        return stratify_integers(model);
    }
    return stratify_polynomials(model);
}

int tau_int(std::int64_t x) {
    if (x == 0) throw DomainError("tau-zero", "tau(0) is undefined");
    std::uint64_t a = x < 0 ? static_cast<std::uint64_t>(-x) : static_cast<std::uint64_t>(x);
    int r = -1;
    while (a) {
        a >>= 1;
        ++r;
    }
    return r;
}

LenstraReport lenstra_check(const StrataResult& strata, std::uint64_t samples,
                            std::uint64_t seed) {
    LenstraReport report;
    std::mt19937_64 rng(seed);
    const RingModel& model = strata.model;
    if (model.kind == RingModel::Kind::integers) {
        std::uniform_int_distribution<std::int64_t> dist(-model.bound, model.bound);
        for (std::uint64_t i = 0; i < samples; ++i) {
            std::int64_t x = dist(rng), y = dist(rng);
            if (x == 0 || y == 0) {
                ++report.skipped;
                continue;
            }
            __int128 p = static_cast<__int128>(x) * y;
            if (p > model.bound || p < -model.bound) {
                ++report.skipped;
                continue;
            }
            ++report.checked;
            int rx = strata.rank_of_int(x), ry = strata.rank_of_int(y),
                rp = strata.rank_of_int(static_cast<std::int64_t>(p));
            if (rp < rx + ry)
                report.violations.push_back({std::to_string(x), std::to_string(y), rx, ry, rp});
        }
    } else {
        std::uniform_int_distribution<std::uint64_t> dist(1, strata.ranks.size() - 1);
        for (std::uint64_t i = 0; i < samples; ++i) {
            std::uint64_t x = dist(rng), y = dist(rng);
            std::uint64_t p = poly_code_mul(x, y, model.q);
            if (p >= strata.ranks.size()) {
                ++report.skipped;
                continue;
            }
            ++report.checked;
            int rx = strata.rank_of_code(x), ry = strata.rank_of_code(y),
                rp = strata.rank_of_code(p);
            if (rp < rx + ry)
                report.violations.push_back({poly_code_to_string(x, model.q),
                                             poly_code_to_string(y, model.q), rx, ry, rp});
        }
    }
    return report;
}

bool type_check(const StrataResult& strata) {
    std::set<int> attained;
    for (int r : strata.ranks)
        if (r >= 0) attained.insert(r);
    if (attained.empty() || *attained.begin() != 0) return false;
    int expect = 0;
    for (int r : attained)
        if (r != expect++) return false;
    return true;
}

}  // namespace ordeuc
