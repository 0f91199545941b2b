// JSON serialization for finite joint distributions:
//   {"variables":[{"name":"A","card":2},...],"probs":[...row-major...]}
#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cnhv/logic.hpp"

namespace cnhv::logic {

inline finite_joint joint_from_json(const std::string& text)
{
    const nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::invalid_argument("malformed json");
    if (!j.is_object() || !j.contains("variables") || !j.contains("probs"))
        throw std::invalid_argument("expected an object with \"variables\" and \"probs\"");
    try {
        std::vector<variable_spec> vars;
        for (const nlohmann::json& v : j.at("variables"))
            vars.push_back({v.at("name").get<std::string>(), v.at("card").get<int>()});
        std::vector<double> probs = j.at("probs").get<std::vector<double>>();
        return finite_joint(std::move(vars), std::move(probs));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad joint schema: ") + e.what());
    }
}

inline std::string joint_to_json(const finite_joint& J)
{
    nlohmann::json j;
    j["variables"] = nlohmann::json::array();
    for (const variable_spec& v : J.variables())
        j["variables"].push_back({{"name", v.name}, {"card", v.card}});
    j["probs"] = J.probs();
    return j.dump();
}

inline finite_joint load_joint(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return joint_from_json(text);
}

inline void save_joint(const finite_joint& J, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path);
    out << joint_to_json(J) << '\n';
}

} // namespace cnhv::logic
