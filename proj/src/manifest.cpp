#include "asota/manifest.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "asota/errors.hpp"

namespace asota::report {

using nlohmann::json;

Manifest Manifest::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot open manifest: " + path.string());
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw ManifestError("manifest is not a JSON object: " + path.string());
    }

    Manifest m;
    m.dir_ = std::filesystem::absolute(path).parent_path();

    if (doc.contains("data")) {
        if (!doc["data"].is_object()) throw ManifestError("manifest 'data' must be an object");
        for (const auto& [role, value] : doc["data"].items()) {
            if (!value.is_string()) throw ManifestError("data role '" + role + "' must be a path");
            m.roles_[role] = value.get<std::string>();
        }
    }
    if (doc.contains("units")) {
        for (const auto& [key, value] : doc["units"].items()) {
            if (!value.is_number()) throw ManifestError("unit '" + key + "' must be numeric");
            m.units_[key] = value.get<double>();
        }
    }
    if (doc.contains("proxies")) {
        if (!doc["proxies"].is_object()) throw ManifestError("manifest 'proxies' must be an object");
        for (const auto& [id, spec] : doc["proxies"].items()) {
            ProxySpec p;
            p.id = id;
            if (!spec.contains("path") || !spec["path"].is_string()) {
                throw ManifestError("proxy '" + id + "' needs a path");
            }
            p.path = spec["path"].get<std::string>();
            if (!spec.contains("transform") || !spec["transform"].is_string()) {
                throw ManifestError("proxy '" + id + "' needs a transform");
            }
            try {
                p.transform = production::parse_transform(spec["transform"].get<std::string>());
                if (spec.contains("unit_map")) {
                    p.unit_map = production::parse_unit_map(spec["unit_map"].get<std::string>());
                }
            } catch (const DataError& e) {
                throw ManifestError(std::string("proxy '") + id + "': " + e.what());
            }
            m.proxies_.push_back(std::move(p));
        }
        std::sort(m.proxies_.begin(), m.proxies_.end(),
                  [](const ProxySpec& a, const ProxySpec& b) { return a.id < b.id; });
    }
    if (doc.contains("scenario")) {
        const auto& s = doc["scenario"];
        if (s.contains("phi_ai")) m.scenario_.phi_ai = s["phi_ai"].get<double>();
        if (s.contains("seconds_per_year")) {
            m.scenario_.seconds_per_year = s["seconds_per_year"].get<double>();
        }
    }
    if (!(m.scenario_.phi_ai > 0.0) || m.scenario_.phi_ai > 1.0) {
        throw ManifestError("scenario.phi_ai must lie in (0, 1]");
    }
    if (doc.contains("index")) {
        const auto& idx = doc["index"];
        if (idx.contains("strict_formula")) m.strict_formula_ = idx["strict_formula"].get<bool>();
        if (idx.contains("asota_threshold")) m.asota_threshold_ = idx["asota_threshold"].get<int>();
        if (idx.contains("annotation_dates")) {
            for (const auto& d : idx["annotation_dates"]) {
                auto parsed = Date::parse_iso(d.get<std::string>());
                if (!parsed) {
                    throw ManifestError("bad annotation date '" + d.get<std::string>() + "'");
                }
                m.annotation_dates_.push_back(*parsed);
            }
        }
    }
    if (doc.contains("capital")) {
        const auto& cap = doc["capital"];
        if (cap.contains("seed")) {
            const std::string seed = cap["seed"].get<std::string>();
            if (seed == "net-stock") m.capital_seed_ = CapitalSeed::net_stock;
            else if (seed == "steady-state") m.capital_seed_ = CapitalSeed::steady_state;
            else throw ManifestError("capital.seed must be 'net-stock' or 'steady-state'");
        }
        if (cap.contains("base_year")) m.deflator_base_year_ = cap["base_year"].get<int>();
    }
    if (doc.contains("fit")) {
        const auto& fit = doc["fit"];
        if (fit.contains("alpha_scope")) m.alpha_scope_ = fit["alpha_scope"].get<std::string>();
        if (fit.contains("reference_proxy")) {
            m.reference_proxy_ = fit["reference_proxy"].get<std::string>();
        }
    }
    if (doc.contains("output_dir")) {
        m.out_dir_ = m.dir_ / doc["output_dir"].get<std::string>();
    } else {
        m.out_dir_ = m.dir_ / "out";
    }
    return m;
}

std::filesystem::path Manifest::path_for(const std::string& role) const {
    auto it = roles_.find(role);
    if (it == roles_.end()) throw ManifestError("manifest is missing data role '" + role + "'");
    const std::filesystem::path p = dir_ / it->second;
    if (!std::filesystem::exists(p)) {
        throw ManifestError("data role '" + role + "' points to a missing file: " + p.string());
    }
    note_open(role);
    return p;
}

bool Manifest::has_role(const std::string& role) const { return roles_.count(role) > 0; }

std::filesystem::path Manifest::proxy_path(const ProxySpec& spec) const {
    const std::filesystem::path p = dir_ / spec.path;
    if (!std::filesystem::exists(p)) {
        throw ManifestError("proxy '" + spec.id + "' points to a missing file: " + p.string());
    }
    note_open("proxy:" + spec.id);
    return p;
}

double Manifest::unit(const std::string& key, double fallback) const {
    auto it = units_.find(key);
    return it == units_.end() ? fallback : it->second;
}

void Manifest::override_phi_ai(double phi) {
    if (!(phi > 0.0) || phi > 1.0) throw ManifestError("--phi-ai must lie in (0, 1]");
    scenario_.phi_ai = phi;
}

void Manifest::note_open(const std::string& role) const {
    if (std::find(opened_.begin(), opened_.end(), role) == opened_.end()) opened_.push_back(role);
}

} // namespace asota::report
