// monomial.hpp: power products over registry variable ids, ordered by graded
// lexicographic comparison with precedence given by variable creation index
// (lower id compares first).
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <vector>

#include "ordeuc/errors.hpp"

namespace ordeuc {

using VarId = std::uint32_t;

class Monomial {
public:
    using Entry = std::pair<VarId, std::uint32_t>;  // (variable, positive exponent)

    Monomial() = default;
    static Monomial var(VarId v, std::uint32_t exp = 1) {
        Monomial m;
        if (exp > 0) m.exps_.push_back({v, exp});
        return m;
    }
    static Monomial from_entries(std::vector<Entry> entries) {
        std::sort(entries.begin(), entries.end());
        Monomial m;
        for (const auto& [v, e] : entries) {
            if (e == 0) continue;
            if (!m.exps_.empty() && m.exps_.back().first == v)
                m.exps_.back().second += e;
            else
                m.exps_.push_back({v, e});
        }
        return m;
    }

    bool is_one() const noexcept { return exps_.empty(); }
    const std::vector<Entry>& entries() const noexcept { return exps_; }

    std::uint64_t total_degree() const noexcept {
        std::uint64_t d = 0;
        for (const auto& [v, e] : exps_) d += e;
        return d;
    }

    std::uint32_t degree_in(VarId v) const noexcept {
        for (const auto& [u, e] : exps_)
            if (u == v) return e;
        return 0;
    }

    bool divides(const Monomial& other) const noexcept {
        auto it = other.exps_.begin();
        for (const auto& [v, e] : exps_) {
            while (it != other.exps_.end() && it->first < v) ++it;
            if (it == other.exps_.end() || it->first != v || it->second < e) return false;
        }
        return true;
    }

    Monomial operator*(const Monomial& other) const {
        Monomial out;
        auto ia = exps_.begin(), ib = other.exps_.begin();
        while (ia != exps_.end() && ib != other.exps_.end()) {
            if (ia->first == ib->first) {
                out.exps_.push_back({ia->first, ia->second + ib->second});
                ++ia;
                ++ib;
            } else if (ia->first < ib->first) {
                out.exps_.push_back(*ia++);
            } else {
                out.exps_.push_back(*ib++);
            }
        }
        out.exps_.insert(out.exps_.end(), ia, exps_.end());
        out.exps_.insert(out.exps_.end(), ib, other.exps_.end());
        return out;
    }

    // Exact quotient; caller must ensure other.divides(*this).
    Monomial operator/(const Monomial& other) const {
        Monomial out;
        auto ib = other.exps_.begin();
        for (const auto& [v, e] : exps_) {
            std::uint32_t sub = 0;
            while (ib != other.exps_.end() && ib->first < v) ++ib;
            if (ib != other.exps_.end() && ib->first == v) sub = ib->second;
            if (sub > e) throw DomainError("monomial-div", "monomial does not divide");
            if (e > sub) out.exps_.push_back({v, e - sub});
        }
        return out;
    }

    bool operator==(const Monomial&) const = default;

    // Graded lexicographic: higher total degree first; ties broken by the
    // exponent of the earliest-created variable, larger exponent first.
    std::strong_ordering grlex(const Monomial& other) const {
        auto dc = total_degree() <=> other.total_degree();
        if (dc != std::strong_ordering::equal) return dc;
        auto ia = exps_.begin(), ib = other.exps_.begin();
        while (ia != exps_.end() && ib != other.exps_.end()) {
            if (ia->first != ib->first)
                // whichever monomial holds the earlier variable is lex-greater
                return ia->first < ib->first ? std::strong_ordering::greater
                                             : std::strong_ordering::less;
            if (ia->second != ib->second)
                return ia->second <=> ib->second;
            ++ia;
            ++ib;
        }
        if (ia != exps_.end()) return std::strong_ordering::greater;
        if (ib != other.exps_.end()) return std::strong_ordering::less;
        return std::strong_ordering::equal;
    }

private:
    std::vector<Entry> exps_;  // sorted by VarId, exponents >= 1
};

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return a.grlex(b) == std::strong_ordering::greater;
    }
};

}  // namespace ordeuc
