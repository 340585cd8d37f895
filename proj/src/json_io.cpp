#include "arakelov/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "arakelov/gram_io.hpp"

namespace arakelov {

Json number(double x) {
    if (!std::isfinite(x)) return nullptr;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double rounded = std::strtod(buf, nullptr);
    if (rounded == std::trunc(rounded) && std::abs(rounded) < 0x1.0p53) return static_cast<long long>(rounded);
    return rounded;
}

namespace {

Json vectors(const std::vector<ModuleVector>& vs) {
    Json out = Json::array();
    for (const auto& v : vs) out.push_back(v);
    return out;
}

Json named_values(const std::vector<std::pair<std::string, double>>& values) {
    Json out = Json::object();
    for (const auto& [k, v] : values) out[k] = number(v);
    return out;
}

}  // namespace

Json to_json(const NumberField& field) {
    Json j;
    j["descriptor"] = field.descriptor();
    j["degree"] = field.degree();
    j["real_places"] = field.real_places();
    j["complex_places"] = field.complex_places();
    j["discriminant"] = field.discriminant();
    j["roots_of_unity"] = field.roots_of_unity();
    Json basis = Json::array();
    basis.push_back("1");
    if (!field.is_rational()) {
        const std::string root = "sqrt(" + std::to_string(field.radicand()) + ")";
        basis.push_back(field.omega_trace() == 0 ? root : "(1+" + root + ")/2");
    }
    j["integral_basis"] = basis;
    Json places = Json::array();
    for (const Place& v : field.infinite_places()) places.push_back(v.label());
    j["infinite_places"] = places;
    if (field.real_places() == 2) j["fundamental_unit"] = number(field.fundamental_unit());
    return j;
}

Json to_json(const SectionReport& report) {
    Json j;
    j["nonzero_sections"] = vectors(report.nonzero_sections);
    j["count"] = report.nonzero_sections.size();
    j["truncated"] = report.truncated;
    j["nodes_visited"] = report.nodes_visited;
    j["certificate"] = number(report.certificate);
    return j;
}

Json to_json(const SubbundleRecord& record) {
    Json j;
    j["rank"] = record.rank;
    j["degree"] = number(record.degree);
    j["slope"] = number(record.degree / record.rank);
    j["basis"] = vectors(record.basis);
    return j;
}

Json to_json(const ZetaPartial& zeta) {
    Json j;
    j["s"] = number(zeta.s);
    j["l"] = zeta.l;
    j["cutoff"] = number(zeta.cutoff);
    j["partial_sum"] = number(zeta.partial_sum);
    j["terms"] = zeta.terms;
    j["tail_bound_estimate"] = zeta.tail_bound_estimate ? number(*zeta.tail_bound_estimate) : Json(nullptr);
    Json shells = Json::array();
    for (const auto& s : zeta.shells) {
        Json sh;
        sh["max_degree"] = number(-static_cast<double>(s.index));
        sh["min_degree"] = number(-static_cast<double>(s.index + 1));
        sh["multiplicity"] = s.multiplicity;
        sh["sum"] = number(s.sum);
        sh["complete"] = s.complete;
        shells.push_back(sh);
    }
    j["shells"] = shells;
    return j;
}

Json to_json(const MonteCarloEstimate& e) {
    Json j;
    j["mean"] = number(e.mean);
    j["std_error"] = number(e.std_error);
    j["trials"] = e.trials;
    j["discarded"] = e.discarded;
    Json config;
    config["n"] = e.n;
    config["l"] = e.l;
    Json radii = Json::array();
    for (double t : e.radii) radii.push_back(number(t));
    config["radii"] = radii;
    config["p"] = e.p;
    config["seed"] = e.seed;
    j["config"] = config;
    return j;
}

Json to_json(const MvtComparison& c, double z_max) {
    Json j;
    j["lhs"] = to_json(c.lhs);
    j["rhs"] = number(c.rhs);
    j["z_score"] = number(c.z_score);
    j["z_max"] = number(z_max);
    j["verdict"] = std::abs(c.z_score) <= z_max ? "consistent" : "inconsistent";
    return j;
}

Json to_json(const BoundReport& report) {
    Json j;
    j["kind"] = report.kind;
    j["inputs"] = named_values(report.inputs);
    j["values"] = named_values(report.values);
    j["verdict"] = report.verdict;
    j["tail_uncertain"] = report.tail_uncertain;
    return j;
}

Json to_json(const SearchOutcome& o) {
    Json j;
    j["status"] = to_string(o.status);
    j["attempts"] = o.attempts;
    j["indeterminate"] = o.indeterminate;
    j["expected_count"] = number(o.expected_count);
    if (o.witness) {
        Json w;
        w["rank"] = o.witness->rank();
        w["degree"] = number(degree(*o.witness));
        w["slope"] = number(slope(*o.witness));
        w["gram"] = format_gram(*o.witness);
        j["witness"] = w;
        j["certificate"] = to_json(o.certificate);
    } else {
        j["witness"] = nullptr;
        j["certificate"] = nullptr;
    }
    j["converse_l"] = o.converse_l ? Json(*o.converse_l) : Json(nullptr);
    j["converse_confirmed"] = o.converse_confirmed ? Json(*o.converse_confirmed) : Json(nullptr);
    return j;
}

Json to_json(const SemistabilityVerdict& verdict) {
    Json j;
    if (std::holds_alternative<Semistable>(verdict)) {
        j["verdict"] = "semistable_up_to_budget";
    } else if (const auto* u = std::get_if<Unstable>(&verdict)) {
        j["verdict"] = "unstable";
        j["witness"] = to_json(u->witness);
    } else {
        j["verdict"] = "inconclusive";
        j["reason"] = std::get<Inconclusive>(verdict).reason;
    }
    return j;
}

}  // namespace arakelov
