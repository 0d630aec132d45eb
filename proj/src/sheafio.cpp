#include "toricstack/sheafrep.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace ts {

using json = nlohmann::json;

namespace {

IntVec ints(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array of integers");
    IntVec v;
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw ParseError(where + ": expected integers");
        v.push_back(Int(e.get<long long>()));
    }
    return v;
}

void only_keys(const json& j, std::initializer_list<const char*> keys) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known |= it.key() == k;
        if (!known) throw ParseError("sheaf: unknown field \"" + it.key() + "\"");
    }
    for (const char* k : keys)
        if (!j.contains(k)) throw ParseError(std::string("sheaf: missing field \"") + k + "\"");
}

}  // namespace

SheafData parse_sheaf_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("sheaf: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ParseError("sheaf: missing \"kind\"");
    SheafData s;
    s.kind = j["kind"].get<std::string>();
    if (s.kind == "line_bundle") {
        only_keys(j, {"kind", "B"});
        s.B = ints(j["B"], "B");
    } else if (s.kind == "rank2_reflexive") {
        only_keys(j, {"kind", "A", "lambda", "p"});
        s.rank2.A = ints(j["A"], "A");
        s.rank2.lambda = ints(j["lambda"], "lambda");
        if (!j["p"].is_array()) throw ParseError("p: expected an array");
        long next_generic = 0;
        for (const auto& e : j["p"]) {
            if (e.is_string() && e.get<std::string>() == "generic") {
                s.rank2.p.push_back(generic_point(next_generic++));
                continue;
            }
            IntVec xy = ints(e, "p");
            if (xy.size() != 2) throw ParseError("p: points are pairs [x, y] or \"generic\"");
            try {
                s.rank2.p.push_back(proj_point(xy[0], xy[1]));
            } catch (const DomainError& err) {
                throw ParseError(std::string("p: ") + err.what());
            }
        }
    } else if (s.kind == "rank1_tf") {
        only_keys(j, {"kind", "B", "staircases"});
        s.rank1.B = ints(j["B"], "B");
        if (!j["staircases"].is_array()) throw ParseError("staircases: expected an array");
        for (const auto& st : j["staircases"]) {
            if (!st.is_array()) throw ParseError("staircases: expected arrays of points");
            std::vector<IntVec> pts;
            for (const auto& pt : st) pts.push_back(ints(pt, "staircases"));
            s.rank1.staircases.push_back(std::move(pts));
        }
    } else {
        throw ParseError("sheaf: unknown kind \"" + s.kind + "\"");
    }
    return s;
}

SheafData load_sheaf(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_sheaf_json(ss.str());
}

}  // namespace ts
