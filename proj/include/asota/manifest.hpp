#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asota/dates.hpp"
#include "asota/factor_inputs.hpp"
#include "asota/production_fit.hpp"

namespace asota::report {

struct ProxySpec {
    std::string id;
    std::string path; // relative to the manifest directory
    production::ProxyTransform transform = production::ProxyTransform::natural_log;
    production::UnitMap unit_map = production::UnitMap::identity;
};

enum class CapitalSeed { net_stock, steady_state };

/// Run configuration: data-role file paths, explicit unit multipliers and
/// pipeline knobs. Paths resolve relative to the manifest's directory.
/// Every role access goes through path_for()/note_open(), so tests can
/// assert which inputs a command actually touched.
class Manifest {
public:
    static Manifest load(const std::filesystem::path& path);

    /// Absolute path for a data role; throws ManifestError when the role is
    /// absent or the file does not exist.
    std::filesystem::path path_for(const std::string& role) const;
    bool has_role(const std::string& role) const;

    /// Same contract as path_for, for a declared output proxy.
    std::filesystem::path proxy_path(const ProxySpec& spec) const;

    double unit(const std::string& key, double fallback) const;

    const std::vector<ProxySpec>& proxies() const { return proxies_; }

    const factors::ScenarioConfig& scenario() const { return scenario_; }
    void override_phi_ai(double phi);

    bool strict_formula() const { return strict_formula_; }
    void override_strict_formula(bool v) { strict_formula_ = v; }
    int asota_threshold() const { return asota_threshold_; }
    const std::vector<Date>& annotation_dates() const { return annotation_dates_; }

    CapitalSeed capital_seed() const { return capital_seed_; }
    int deflator_base_year() const { return deflator_base_year_; }

    const std::string& alpha_scope() const { return alpha_scope_; }
    const std::string& reference_proxy() const { return reference_proxy_; }

    std::filesystem::path out_dir() const { return out_dir_; }
    void override_out_dir(const std::filesystem::path& dir) { out_dir_ = dir; }

    /// Roles opened so far, in first-open order.
    const std::vector<std::string>& opened_roles() const { return opened_; }
    void note_open(const std::string& role) const;

private:
    std::filesystem::path dir_;
    std::map<std::string, std::string> roles_;
    std::map<std::string, double> units_;
    std::vector<ProxySpec> proxies_;
    factors::ScenarioConfig scenario_;
    bool strict_formula_ = false;
    int asota_threshold_ = 50;
    std::vector<Date> annotation_dates_;
    CapitalSeed capital_seed_ = CapitalSeed::net_stock;
    int deflator_base_year_ = 2017;
    std::string alpha_scope_ = "rnd";
    std::string reference_proxy_ = "papers";
    std::filesystem::path out_dir_ = "out";
    mutable std::vector<std::string> opened_;
};

} // namespace asota::report
