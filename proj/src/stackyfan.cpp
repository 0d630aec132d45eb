#include "toricstack/stackyfan.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ts {

using json = nlohmann::json;

IntMatrix StackyFan::Q() const {
    IntMatrix q(d + r(), r());
    for (std::size_t i = 0; i < r(); ++i) q(d + i, i) = torsion_factors[i];
    return q;
}

IntMatrix StackyFan::ray_matrix() const { return IntMatrix::from_cols(rays, d + r()); }

IntMatrix StackyFan::cone_matrix(std::size_t cone) const {
    if (cone >= cones.size()) throw DomainError("not a top cone: " + std::to_string(cone));
    return ray_matrix().select_cols(cones[cone]);
}

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(),
                         [&](const char* a) { return it.key() == a; }) == allowed.end())
            throw ParseError(where + ": unknown field \"" + it.key() + "\"");
    }
}

Int get_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return Int(j.get<long long>());
}

IntVec get_int_vec(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of integers");
    IntVec v;
    for (const auto& e : j) v.push_back(get_int(e, where));
    return v;
}

}  // namespace

StackyFan parse_fan_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("fan: ") + e.what());
    }
    check_keys(j, {"lattice", "rays", "top_cones", "labels", "polarization"}, "fan");
    for (const char* k : {"lattice", "rays", "top_cones"})
        if (!j.contains(k)) throw ParseError(std::string("fan: missing field \"") + k + "\"");

    StackyFan fan;
    const json& lat = j["lattice"];
    check_keys(lat, {"rank", "torsion"}, "lattice");
    if (!lat.contains("rank")) throw ParseError("lattice: missing field \"rank\"");
    Int rank = get_int(lat["rank"], "lattice.rank");
    if (rank < 0) throw ParseError("lattice.rank: negative");
    fan.d = static_cast<std::size_t>(to_ll(rank));
    if (lat.contains("torsion")) fan.torsion_factors = get_int_vec(lat["torsion"], "lattice.torsion");

    if (!j["rays"].is_array()) throw ParseError("rays: expected an array");
    for (const auto& r : j["rays"]) fan.rays.push_back(get_int_vec(r, "rays"));

    if (!j["top_cones"].is_array()) throw ParseError("top_cones: expected an array");
    for (const auto& c : j["top_cones"]) {
        std::vector<std::size_t> idx;
        for (const Int& i : get_int_vec(c, "top_cones")) {
            if (i < 0) throw ParseError("top_cones: negative ray index");
            idx.push_back(static_cast<std::size_t>(to_ll(i)));
        }
        fan.cones.push_back(std::move(idx));
    }

    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw ParseError("labels: expected an array");
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) throw ParseError("labels: expected strings");
            fan.labels.push_back(l.get<std::string>());
        }
    }

    if (j.contains("polarization")) {
        const json& p = j["polarization"];
        check_keys(p, {"H", "Xi"}, "polarization");
        Polarization pol;
        if (p.contains("H")) {
            if (!p["H"].is_array()) throw ParseError("polarization.H: expected an array");
            for (const auto& h : p["H"]) {
                try {
                    if (h.is_number_integer()) pol.H.push_back(Rat(h.get<long long>()));
                    else if (h.is_string()) pol.H.push_back(rat_from_string(h.get<std::string>()));
                    else throw std::invalid_argument("bad entry");
                } catch (const std::invalid_argument&) {
                    throw ParseError("polarization.H: expected \"p/q\" strings");
                }
            }
        }
        if (p.contains("Xi")) {
            if (!p["Xi"].is_array()) throw ParseError("polarization.Xi: expected an array");
            for (const auto& x : p["Xi"]) pol.Xi.push_back(get_int_vec(x, "polarization.Xi"));
        }
        fan.polarization = std::move(pol);
    }
    return fan;
}

StackyFan load_fan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fan_json(ss.str());
}

std::string fan_to_json(const StackyFan& fan) {
    auto ints = [](const IntVec& v) {
        json a = json::array();
        for (const Int& x : v) a.push_back(to_ll(x));
        return a;
    };
    json j;
    j["lattice"] = {{"rank", fan.d}, {"torsion", ints(fan.torsion_factors)}};
    j["rays"] = json::array();
    for (const auto& r : fan.rays) j["rays"].push_back(ints(r));
    j["top_cones"] = fan.cones;
    if (!fan.labels.empty()) j["labels"] = fan.labels;
    if (fan.polarization) {
        json p;
        p["H"] = json::array();
        for (const Rat& h : fan.polarization->H) p["H"].push_back(rat_to_string(h));
        p["Xi"] = json::array();
        for (const auto& x : fan.polarization->Xi) p["Xi"].push_back(ints(x));
        j["polarization"] = p;
    }
    return j.dump();
}

}  // namespace ts
