// registry.hpp: the append-only variable table of a ring instance.  Every
// polynomial refers to variables by dense VarId; the registry records what
// each id means: an x-generator with its ordinal subscript and stage, the z
// variable, or a special quotient variable together with its defining pair.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ordeuc/ordinal.hpp"
#include "ordeuc/poly.hpp"

namespace ordeuc {

enum class VarKind { x_generator, y_special, z_var };

template <FieldScalar S>
struct VarInfo {
    VarKind kind = VarKind::x_generator;
    std::set<Ordinal> subs;       // first index: {beta} / T / {1}
    std::uint32_t stage = 0;      // second index
    std::optional<std::pair<Poly<S>, Poly<S>>> defining_pair;  // (n, d) for y-variables

    std::string name(VarId id) const {
        switch (kind) {
            case VarKind::z_var:
                return "z";
            case VarKind::y_special:
                return "y" + std::to_string(id);
            case VarKind::x_generator:
            default:
                return "x[" + subs.begin()->to_string(/*compact=*/true) + "," +
                       std::to_string(stage) + "]";
        }
    }
};

template <FieldScalar S>
class VarRegistry {
public:
    VarId add(VarInfo<S> info) {
        vars_.push_back(std::move(info));
        return static_cast<VarId>(vars_.size() - 1);
    }

    const VarInfo<S>& info(VarId id) const {
        if (id >= vars_.size()) throw DomainError("registry", "unknown variable id");
        return vars_[id];
    }

    std::size_t size() const noexcept { return vars_.size(); }

    std::string name(VarId id) const { return info(id).name(id); }

    // Union of the first indices of all variables occurring in p.
    std::set<Ordinal> sub_of(const Poly<S>& p) const {
        std::set<Ordinal> out;
        for (VarId v : p.variables()) {
            const auto& subs = info(v).subs;
            out.insert(subs.begin(), subs.end());
        }
        return out;
    }

private:
    std::vector<VarInfo<S>> vars_;
};

}  // namespace ordeuc
