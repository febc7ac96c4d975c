#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heatlab/consistency.hpp"
#include "heatlab/modal.hpp"
#include "heatlab/pde1d.hpp"

namespace heatlab {

// Flat key = value text. '#' starts a comment; keys are dotted (model.kind, grid.N).
class Config {
public:
    static Config parse(std::istream& in, const std::string& source = "<config>");
    static Config from_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string str(const std::string& key) const;
    std::string str(const std::string& key, const std::string& def) const;
    double num(const std::string& key) const;
    double num(const std::string& key, double def) const;
    int integer(const std::string& key, int def) const;
    bool flag(const std::string& key, bool def) const;

    void set(const std::string& key, const std::string& value);
    const std::map<std::string, std::string>& entries() const { return kv_; }
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

    // Throws ConfigError naming the first key not in the schema.
    void require_known() const;

private:
    std::map<std::string, std::string> kv_;
    std::string source_;
};

ModelParams model_from_config(const Config& c);
MaterialConstants material_from_config(const Config& c);
SimConfig sim_from_config(const Config& c);
SpectralProblem spectral_from_config(const Config& c);
CheckOptions check_options_from_config(const Config& c);
EnergyChoice energy_from_config(const Config& c);

}  // namespace heatlab
