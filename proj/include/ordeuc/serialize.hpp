// serialize.hpp: JSON views of polynomials, ring elements, division results,
// and descent traces.  Shapes follow the schema files shipped under schemas/.
#pragma once

#include <json.hpp>

#include "ordeuc/ring.hpp"

namespace ordeuc {

using nlohmann::json;

template <FieldScalar S>
json poly_to_json(const Poly<S>& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json mono = json::array();
        for (const auto& [v, e] : m.entries()) mono.push_back({v, e});
        terms.push_back({{"monomial", mono}, {"coeff", c.to_string()}});
    }
    return terms;
}

template <FieldScalar S>
Poly<S> poly_from_json(const json& j, const FieldConfig& fc) {
    Poly<S> out;
    for (const auto& term : j) {
        std::vector<Monomial::Entry> entries;
        for (const auto& pair : term.at("monomial"))
            entries.push_back({pair.at(0).get<VarId>(), pair.at(1).get<std::uint32_t>()});
        const std::string cs = term.at("coeff").get<std::string>();
        auto slash = cs.find('/');
        S coeff = slash == std::string::npos
                      ? S::from_int(mpz_class(cs), fc)
                      : S::from_rational(mpz_class(cs.substr(0, slash)),
                                         mpz_class(cs.substr(slash + 1)), fc);
        out.add_term(Monomial::from_entries(std::move(entries)), coeff);
    }
    return out;
}

template <FieldScalar S>
json element_to_json(const RElement<S>& r) {
    return {{"num", poly_to_json(r.num)}, {"den", poly_to_json(r.den)}};
}

template <FieldScalar S>
json registry_to_json(const Ring<S>& ring) {
    json vars = json::array();
    const auto& reg = ring.registry();
    for (VarId id = 0; id < reg.size(); ++id) {
        const auto& info = reg.info(id);
        json v;
        v["id"] = id;
        v["name"] = ring.var_name(id);
        v["kind"] = info.kind == VarKind::x_generator ? "x"
                    : info.kind == VarKind::y_special ? "y"
                                                      : "z";
        json subs = json::array();
        for (const Ordinal& s : info.subs) subs.push_back(s.to_string(/*compact=*/true));
        v["subs"] = subs;
        v["stage"] = info.stage;
        if (info.defining_pair) {
            v["pair"] = {{"num", poly_to_json(info.defining_pair->first)},
                         {"den", poly_to_json(info.defining_pair->second)}};
        }
        vars.push_back(std::move(v));
    }
    return {{"snapshot", reg.size()}, {"vars", vars}};
}

template <FieldScalar S>
json division_to_json(const DivisionResult<S>& r) {
    json j;
    j["quotient"] = element_to_json(r.quotient);
    j["remainder"] = element_to_json(r.remainder);
    j["divisor_norm"] = r.divisor_norm.to_string(/*compact=*/true);
    j["remainder_norm"] =
        r.remainder_norm ? json(r.remainder_norm->to_string(/*compact=*/true)) : json(nullptr);
    j["adjoined_var"] = r.adjoined_var ? json(*r.adjoined_var) : json(nullptr);
    return j;
}

template <FieldScalar S>
json trace_to_json(const DescentTrace<S>& t) {
    json steps = json::array();
    for (const auto& s : t.steps) steps.push_back(division_to_json(s));
    return {{"steps", steps}, {"final_gcd", element_to_json(t.final_gcd)}};
}

}  // namespace ordeuc
