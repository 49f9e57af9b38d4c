#include <cmath>
#include <string>

#include "json.hpp"

#include "gruss/bounds.hpp"
#include "gruss/verify.hpp"

namespace gruss {

namespace {

using json = nlohmann::ordered_json;

json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json witness_json(const Witness& w) {
    json j = json::object();
    for (const auto& [k, v] : w.labels) j[k] = v;
    for (const auto& [k, v] : w.values) j[k] = number(v);
    return j;
}

json tally_json(const Tally& t) {
    json j;
    j["name"] = t.name;
    j["passed"] = t.passed();
    j["checks"] = t.checks;
    j["failures"] = t.failures;
    j["worst_margin"] = number(t.worst_margin);
    j["worst_tolerance"] = number(t.worst_tolerance);
    j["witness"] = witness_json(t.witness);
    return j;
}

json config_json(const SuiteConfig& c) {
    json j;
    json fams = json::array();
    for (Family f : c.families) fams.push_back(std::string(family_name(f)));
    j["families"] = fams;
    j["degrees"] = c.degrees;
    j["x_grid"] = c.x_grid;
    j["global_grid"] = c.global_grid;
    j["x_max"] = c.x_max;
    j["functions"] = c.functions;
    j["seed"] = c.seed;
    j["tail_eps"] = c.tail_eps;
    j["quad_n"] = c.quad_n;
    j["conjecture_nmax"] = c.conjecture_nmax;
    j["rivlin_nmax"] = c.rivlin_nmax;
    const auto& t = c.tol;
    j["tolerances"] = {{"relative", t.relative},
                       {"sign", t.sign},
                       {"identity", t.identity},
                       {"equality", t.equality},
                       {"partition", t.partition},
                       {"reproduction", t.reproduction},
                       {"phi_half", t.phi_half},
                       {"legendre", t.legendre},
                       {"symmetry", t.symmetry},
                       {"second_derivative", t.second_derivative},
                       {"second_derivative_step", t.second_derivative_step},
                       {"bonnet", t.bonnet},
                       {"chain_slack", t.chain_slack},
                       {"rivlin", t.rivlin},
                       {"closed_form", t.closed_form},
                       {"bessel_integral", t.bessel_integral},
                       {"tau_min", t.tau_min},
                       {"king_min", t.king_min},
                       {"baskakov_chain", t.baskakov_chain},
                       {"conjecture3", t.conjecture3}};
    return j;
}

}  // namespace

std::string to_json(const BoundResult& r, int indent) {
    json j;
    j["operator"] = r.op.to_string();
    j["n"] = r.op.n;
    j["x"] = number(r.x);
    j["f"] = r.f;
    j["g"] = r.g;
    j["lhs"] = number(r.lhs);
    json rhs = json::object(), margins = json::object();
    for (const auto& b : r.bounds) {
        rhs[std::string(b.name)] = number(b.rhs);
        margins[std::string(b.name)] = number(r.margin(b));
    }
    j["rhs"] = rhs;
    j["margins"] = margins;
    return j.dump(indent);
}

std::string VerificationReport::to_json(int indent) const {
    json j;
    j["schema"] = kSchema;
    j["passed"] = passed();
    j["failures"] = failures();
    j["environment"] = {{"library_version", environment.library_version},
                        {"compiler", environment.compiler},
                        {"cxx_standard", environment.cxx_standard},
                        {"platform", environment.platform}};
    j["config"] = config_json(config);
    json arr = json::array();
    for (const auto& s : suites) {
        json sj;
        sj["name"] = s.name;
        sj["passed"] = s.passed();
        sj["checks"] = s.checks();
        sj["failures"] = s.failures();
        json ts = json::array();
        for (const auto& t : s.tallies) ts.push_back(tally_json(t));
        sj["tallies"] = ts;
        json notes = json::array();
        for (const auto& n : s.notes) {
            json nj;
            nj["name"] = n.name;
            json vals = json::object();
            for (const auto& [k, v] : n.values) vals[k] = number(v);
            nj["values"] = vals;
            if (!n.text.empty()) nj["text"] = n.text;
            notes.push_back(nj);
        }
        sj["notes"] = notes;
        arr.push_back(sj);
    }
    j["suites"] = arr;
    return j.dump(indent);
}

}  // namespace gruss
