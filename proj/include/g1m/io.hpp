#ifndef G1M_IO_HPP
#define G1M_IO_HPP

#include <json.hpp>
#include <sstream>
#include <string>

#include "g1m/ideal.hpp"

namespace g1m {
namespace io {

using json = nlohmann::json;

// header: ring <field> vars name:weight,... order <kind> prec <perm>
// then one: gen <name> = <poly> per line
inline std::string ideal_to_text(const IdealPresentation& I) {
    const Ring& R = I.ring;
    std::string out = "ring " + R->field.str() + " vars ";
    for (int v = 0; v < R->nvars(); ++v) {
        if (v) out += ",";
        out += R->vars[v].name + ":" + std::to_string(R->vars[v].weight);
    }
    out += " order " + order_kind_str(R->order.kind) + " prec ";
    for (size_t i = 0; i < R->order.prec.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(R->order.prec[i]);
    }
    out += "\n";
    for (const auto& [name, g] : I.gens) out += "gen " + name + " = " + g.str() + "\n";
    return out;
}

inline IdealPresentation ideal_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "empty ideal file");
    require(line.rfind("ring ", 0) == 0, "ideal file must start with a ring header");
    auto vars_pos = line.find(" vars ");
    auto order_pos = line.find(" order ");
    auto prec_pos = line.find(" prec ");
    require(vars_pos != std::string::npos && order_pos != std::string::npos && prec_pos != std::string::npos,
            "malformed ring header");
    Field field = Field::parse(line.substr(5, vars_pos - 5));
    std::vector<VarSpec> vars;
    {
        std::istringstream vs(line.substr(vars_pos + 6, order_pos - vars_pos - 6));
        std::string tok;
        while (std::getline(vs, tok, ',')) {
            auto colon = tok.find(':');
            require(colon != std::string::npos, "variable must be name:weight");
            vars.push_back({tok.substr(0, colon), std::stoi(tok.substr(colon + 1))});
        }
    }
    OrderKind kind = order_kind_parse(line.substr(order_pos + 7, prec_pos - order_pos - 7));
    std::vector<int> prec;
    {
        std::istringstream ps(line.substr(prec_pos + 6));
        std::string tok;
        while (std::getline(ps, tok, ',')) prec.push_back(std::stoi(tok));
    }
    Ring R = make_ring(vars, field, kind, prec);
    IdealPresentation I(R, "parsed");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        require(line.rfind("gen ", 0) == 0, "expected a gen line: " + line);
        auto eq = line.find(" = ");
        require(eq != std::string::npos, "malformed gen line: " + line);
        I.add(line.substr(4, eq - 4), parse_poly(R, line.substr(eq + 3)));
    }
    return I;
}

inline json ideal_to_json(const IdealPresentation& I) {
    const Ring& R = I.ring;
    json ring;
    ring["field"] = R->field.str();
    ring["vars"] = json::array();
    for (const auto& v : R->vars) ring["vars"].push_back({{"name", v.name}, {"weight", v.weight}});
    ring["order"] = {{"kind", order_kind_str(R->order.kind)}, {"prec", R->order.prec}};
    json gens = json::array();
    for (const auto& [name, g] : I.gens) {
        json terms = json::array();
        for (const auto& t : g.terms()) {
            json term;
            term["coeff"] = t.c.str();
            term["exps"] = std::vector<int>(t.m.begin(), t.m.end());
            terms.push_back(term);
        }
        gens.push_back({{"name", name}, {"terms", terms}});
    }
    return json{{"ring", ring}, {"gens", gens}};
}

inline IdealPresentation ideal_from_json(const json& j) {
    std::vector<VarSpec> vars;
    for (const auto& v : j.at("ring").at("vars"))
        vars.push_back({v.at("name").get<std::string>(), v.at("weight").get<int>()});
    Field field = Field::parse(j.at("ring").at("field").get<std::string>());
    OrderKind kind = order_kind_parse(j.at("ring").at("order").at("kind").get<std::string>());
    std::vector<int> prec = j.at("ring").at("order").at("prec").get<std::vector<int>>();
    Ring R = make_ring(vars, field, kind, prec);
    IdealPresentation I(R, "parsed");
    for (const auto& g : j.at("gens")) {
        std::vector<Term> terms;
        for (const auto& t : g.at("terms")) {
            auto exps = t.at("exps").get<std::vector<int>>();
            require(static_cast<int>(exps.size()) == R->nvars(), "exps length mismatch");
            Monomial m(exps.begin(), exps.end());
            terms.push_back({m, Scalar::parse_in(field, t.at("coeff").get<std::string>())});
        }
        I.add(g.at("name").get<std::string>(), Polynomial::from_terms(R, terms));
    }
    return I;
}

// CAS-friendly flavor: plain comma-separated polynomial list
inline std::string ideal_to_cas_text(const IdealPresentation& I) {
    std::string out;
    for (const auto& [name, g] : I.gens) {
        if (!out.empty()) out += ",\n";
        out += g.str();
    }
    out += "\n";
    return out;
}

}  // namespace io
}  // namespace g1m

#endif
