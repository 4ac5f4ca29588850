#include "mubkit/serialize.hpp"

#include <fstream>
#include <unordered_set>

#include "mubkit/errors.hpp"

namespace mubkit {

namespace {

nlohmann::json complex_to_json(const std::complex<double> &z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex entries must be [re, im] number pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

const nlohmann::json &field_at(const nlohmann::json &j, const char *key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

}  // namespace

nlohmann::json to_json(const Field &f) {
    return {{"p", f.p()}, {"n", f.n()}, {"modulus", f.modulus()}};
}

Field field_from_json(const nlohmann::json &j) {
    const auto &p = field_at(j, "p");
    const auto &n = field_at(j, "n");
    const auto &modulus = field_at(j, "modulus");
    if (!p.is_number_integer() || !n.is_number_integer() || !modulus.is_array())
        throw ParseError("field must carry integer p, integer n, and a modulus array");
    std::vector<int> coeffs;
    for (const auto &c : modulus) {
        if (!c.is_number_integer()) throw ParseError("modulus coefficients must be integers");
        coeffs.push_back(c.get<int>());
    }
    return Field(p.get<int>(), n.get<int>(), coeffs);
}

nlohmann::json to_json(const StateSet &set) {
    nlohmann::json j;
    j["kind"] = "state_set";
    j["q"] = set.q;
    j["dim"] = set.dim();
    if (set.field) j["field"] = to_json(*set.field);
    nlohmann::json states = nlohmann::json::array();
    for (const auto &psi : set.states) {
        nlohmann::json entries = nlohmann::json::array();
        for (Eigen::Index i = 0; i < psi.size(); ++i) entries.push_back(complex_to_json(psi(i)));
        states.push_back(std::move(entries));
    }
    j["states"] = std::move(states);
    if (!set.groups.empty()) j["groups"] = set.groups;
    if (!set.labels.empty()) j["labels"] = set.labels;
    if (!set.provenance.empty()) j["provenance"] = set.provenance;
    return j;
}

StateSet state_set_from_json(const nlohmann::json &j) {
    StateSet set;
    const auto &q = field_at(j, "q");
    if (!q.is_number_integer()) throw ParseError("q must be an integer");
    set.q = q.get<int>();
    if (j.contains("field")) set.field = field_from_json(j.at("field"));

    const auto &states = field_at(j, "states");
    if (!states.is_array()) throw ParseError("states must be an array");
    Eigen::Index dim = -1;
    for (const auto &entries : states) {
        if (!entries.is_array()) throw ParseError("each state must be an array of [re, im] pairs");
        if (dim < 0) dim = static_cast<Eigen::Index>(entries.size());
        if (static_cast<Eigen::Index>(entries.size()) != dim)
            throw ParseError("states must share one dimension");
        Eigen::VectorXcd psi(dim);
        Eigen::Index i = 0;
        for (const auto &entry : entries) psi(i++) = complex_from_json(entry);
        set.states.push_back(std::move(psi));
    }

    if (j.contains("groups")) {
        const auto &groups = j.at("groups");
        if (!groups.is_array()) throw ParseError("groups must be an array of index arrays");
        for (const auto &group : groups) {
            if (!group.is_array()) throw ParseError("groups must be an array of index arrays");
            std::vector<int> indices;
            for (const auto &idx : group) {
                if (!idx.is_number_integer()) throw ParseError("group entries must be integers");
                const int v = idx.get<int>();
                if (v < 0 || v >= static_cast<int>(set.states.size()))
                    throw ParseError("group index out of range");
                indices.push_back(v);
            }
            set.groups.push_back(std::move(indices));
        }
    }
    if (j.contains("labels")) {
        const auto &labels = j.at("labels");
        if (!labels.is_array()) throw ParseError("labels must be an array of strings");
        for (const auto &label : labels) {
            if (!label.is_string()) throw ParseError("labels must be an array of strings");
            set.labels.push_back(label.get<std::string>());
        }
        if (!set.labels.empty() && set.labels.size() != set.states.size())
            throw ParseError("label count must match state count");
    }
    if (j.contains("provenance")) {
        if (!j.at("provenance").is_string()) throw ParseError("provenance must be a string");
        set.provenance = j.at("provenance").get<std::string>();
    }
    return set;
}

nlohmann::json to_json(const DesignReport &report) {
    return {{"test", report.test},
            {"pass", report.pass},
            {"residual", report.residual},
            {"tolerance", report.tolerance},
            {"details", report.details}};
}

nlohmann::json to_json(const Orbit &o) {
    nlohmann::json seed = nlohmann::json::array();
    for (Eigen::Index i = 0; i < o.seed.size(); ++i) seed.push_back(complex_to_json(o.seed(i)));
    nlohmann::json words = nlohmann::json::array();
    for (const auto &word : o.words) {
        nlohmann::json w = nlohmann::json::array();
        for (std::uint8_t g : word) w.push_back(static_cast<int>(g));
        words.push_back(std::move(w));
    }
    return {{"kind", "orbit"},
            {"group_order", o.group_order},
            {"size", o.states.size()},
            {"seed", std::move(seed)},
            {"states", to_json(o.states)},
            {"words", std::move(words)}};
}

nlohmann::json to_json(const Theorem1Report &report) {
    nlohmann::json orbits = nlohmann::json::array();
    for (const auto &s : report.orbits) {
        orbits.push_back({{"seed_kind", s.seed_kind},
                          {"sample_index", s.sample_index},
                          {"size", s.size},
                          {"divides_group_order", s.divides_group_order},
                          {"counting_stabilizer_order", s.counting_stabilizer_order},
                          {"design2_residual", s.design2_residual},
                          {"design2_pass", s.design2_pass}});
    }
    nlohmann::json j{{"kind", "orbit_experiment"},
                     {"q", report.q},
                     {"group_order", report.group_order},
                     {"mub_orbit_size", report.mub_orbit_size},
                     {"mub_orbit_matches_canonical", report.mub_orbit_matches_canonical},
                     {"samples", report.samples},
                     {"rng", {{"engine", report.rng}, {"seed", report.rng_seed}}},
                     {"orbits", std::move(orbits)},
                     {"all_random_exceed_mub_size", report.all_random_exceed_mub_size},
                     {"all_random_exceed_q_squared", report.all_random_exceed_q_squared},
                     {"all_pass_design2", report.all_pass_design2},
                     {"all_sizes_divide_group_order", report.all_sizes_divide_group_order},
                     {"pass", report.pass}};
    if (report.hesse_orbit_size) j["hesse_orbit_size"] = *report.hesse_orbit_size;
    return j;
}

nlohmann::json group_stats_json(const GroupTable &table) {
    std::unordered_set<std::uint64_t> symplectic_keys;
    for (const auto &el : table.elements) symplectic_keys.insert(el.symplectic.key());
    const std::uint64_t expected = expected_group_order(table.field.q());
    return {{"kind", "group_stats"},
            {"q", table.field.q()},
            {"field", to_json(table.field)},
            {"order", table.order()},
            {"expected_order", expected},
            {"order_matches", table.order() == expected},
            {"distinct_symplectic_labels", symplectic_keys.size()},
            {"generators", table.generator_names}};
}

nlohmann::json load_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
}

}  // namespace mubkit
