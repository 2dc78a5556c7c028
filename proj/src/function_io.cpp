#include "spiderweb/function_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace spiderweb {

namespace {

using nlohmann::json;

ZeroFamily family_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "explicit") {
        std::vector<ZeroEntry> zeros;
        for (const auto& z : j.at("zeros"))
            zeros.push_back({z.at("a").get<double>(), z.at("p").get<int>()});
        return ZeroFamily::explicit_list(std::move(zeros));
    }
    if (kind == "power")
        return ZeroFamily::power_law(j.at("alpha").get<double>(), j.at("q").get<double>());
    if (kind == "cosh_sqrt") return ZeroFamily::cosh_sqrt();
    if (kind == "sinh_sqrt_over_sqrt") return ZeroFamily::sinh_sqrt_over_sqrt();
    throw std::invalid_argument("unknown family kind: " + kind);
}

}  // namespace

EntireProductFunction parse_function(const std::string& json_text) {
    json j = json::parse(json_text);
    double c = j.at("c").get<double>();
    int p0 = j.at("p0").get<int>();
    ZeroFamily family = family_from_json(j.at("family"));
    const auto& t = j.at("truncation");
    return truncate(c, p0, family, t.at("max_log_radius").get<double>(),
                    t.at("tol").get<double>());
}

EntireProductFunction load_function(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open function file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_function(ss.str());
}

std::string function_to_json(double c, int p0, const ZeroFamily& family,
                             double max_log_radius, double tol) {
    json j;
    j["c"] = c;
    j["p0"] = p0;
    json fam;
    switch (family.kind) {
        case FamilyKind::explicit_list: {
            fam["kind"] = "explicit";
            json zeros = json::array();
            for (const auto& z : family.zeros) zeros.push_back({{"a", z.a}, {"p", z.p}});
            fam["zeros"] = zeros;
            break;
        }
        case FamilyKind::power_law:
            fam["kind"] = "power";
            fam["alpha"] = family.alpha;
            fam["q"] = family.q;
            break;
        case FamilyKind::cosh_sqrt:
            fam["kind"] = "cosh_sqrt";
            break;
        case FamilyKind::sinh_sqrt_over_sqrt:
            fam["kind"] = "sinh_sqrt_over_sqrt";
            break;
    }
    j["family"] = fam;
    j["truncation"] = {{"max_log_radius", max_log_radius}, {"tol", tol}};
    return j.dump(2);
}

}  // namespace spiderweb
