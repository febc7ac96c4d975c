#include "heatlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "heatlab/errors.hpp"

namespace heatlab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    return s;
}

const char* kTensorSuffix[] = {"xx", "yy", "zz", "xy", "xz", "yz"};
const char* kMatrixSuffix[] = {"xx", "xy", "xz", "yx", "yy", "yz", "zx", "zy", "zz"};

const std::set<std::string>& schema() {
    static const std::set<std::string> keys = [] {
        std::set<std::string> k = {
            "model.kind", "model.tau", "model.lambda", "model.mu", "model.nu", "model.ell",
            "model.varkappa", "model.varkappa_exponent", "model.delta",
            "material.rho", "material.cv",
            "grid.L", "grid.N",
            "time.dt", "time.t_end", "time.snapshot_every",
            "bc.kind", "bc.left", "bc.right",
            "ic.shape", "ic.theta_ref", "ic.amplitude", "ic.mode", "ic.width",
            "ic.rate_amplitude", "ic.q_amplitude",
            "source.rho_r",
            "gk.mode", "gk.gradient", "gk.theta_ref",
            "energy.jeffreys_weight", "energy.burgers_case",
            "check.theta_min", "check.theta_max", "check.theta_count",
            "spectral.bc", "spectral.L", "spectral.n_max",
            "sweep.param", "sweep.from", "sweep.to", "sweep.count", "sweep.scale", "sweep.threads",
            "audit.samples", "audit.abort_on_nonpositive", "audit.enabled",
        };
        for (const char* t : {"model.kappa", "model.xi"}) {
            k.insert(t);
            for (const char* s : kTensorSuffix) k.insert(std::string(t) + "." + s);
        }
        k.insert("model.K");
        for (const char* s : kMatrixSuffix) k.insert(std::string("model.K.") + s);
        return k;
    }();
    return keys;
}

SymTensor3 tensor(const Config& c, const std::string& key) {
    const bool comps = !c.keys_with_prefix(key + ".").empty();
    if (c.has(key) && comps)
        throw ConfigError(key + ": give either a scalar or components, not both");
    if (c.has(key)) return SymTensor3::isotropic(c.num(key));
    if (!comps) throw ConfigError(key + ": missing required key");
    return SymTensor3(c.num(key + ".xx", 0), c.num(key + ".yy", 0), c.num(key + ".zz", 0),
                      c.num(key + ".xy", 0), c.num(key + ".xz", 0), c.num(key + ".yz", 0));
}

Mat3 matrix(const Config& c, const std::string& key) {
    const bool comps = !c.keys_with_prefix(key + ".").empty();
    if (c.has(key) && comps)
        throw ConfigError(key + ": give either a scalar or components, not both");
    if (c.has(key)) return c.num(key) * identity3();
    if (!comps) throw ConfigError(key + ": missing required key");
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = c.num(key + "." + kMatrixSuffix[3 * i + j], 0.0);
    return m;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& source) {
    Config c;
    c.source_ = source;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = source + ":" + std::to_string(lineno);
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (value.empty()) throw ConfigError(key + ": empty value (" + where + ")");
        if (c.kv_.count(key)) throw ConfigError(key + ": duplicate key (" + where + ")");
        c.kv_[key] = value;
    }
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse(in, path);
}

Config Config::from_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::str(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) throw ConfigError(key + ": missing required key");
    return it->second;
}

std::string Config::str(const std::string& key, const std::string& def) const {
    return has(key) ? str(key) : def;
}

double Config::num(const std::string& key) const {
    const std::string v = str(key);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError(key + ": not a finite number: '" + v + "'");
    return out;
}

double Config::num(const std::string& key, double def) const { return has(key) ? num(key) : def; }

int Config::integer(const std::string& key, int def) const {
    if (!has(key)) return def;
    const std::string v = str(key);
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(key + ": not an integer: '" + v + "'");
    return out;
}

bool Config::flag(const std::string& key, bool def) const {
    if (!has(key)) return def;
    const std::string v = lower(str(key));
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

std::vector<std::string> Config::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : kv_)
        if (k.rfind(prefix, 0) == 0) out.push_back(k);
    return out;
}

void Config::require_known() const {
    for (const auto& [k, v] : kv_)
        if (!schema().count(k)) throw ConfigError(k + ": unknown key");
}

ModelParams model_from_config(const Config& c) {
    ModelKind kind;
    try {
        kind = parse_kind(lower(c.str("model.kind")));
    } catch (const InvalidKind&) {
        throw ConfigError("model.kind: unknown model '" + c.str("model.kind") + "'");
    }
    auto varkappa = [&] {
        return ThetaFunction::power(c.num("model.varkappa"), c.num("model.varkappa_exponent", 0.0));
    };
    try {
        switch (kind) {
            case ModelKind::Fourier: return FourierParams{tensor(c, "model.kappa")};
            case ModelKind::GN2: return GN2Params{matrix(c, "model.K")};
            case ModelKind::MCV: return MCVParams{c.num("model.tau"), tensor(c, "model.kappa")};
            case ModelKind::Jeffreys:
                return JeffreysParams{c.num("model.tau"), tensor(c, "model.xi"), tensor(c, "model.kappa")};
            case ModelKind::GN3: return GN3Params{tensor(c, "model.xi"), tensor(c, "model.kappa")};
            case ModelKind::Quintanilla:
                return QuintanillaParams{c.num("model.tau"), tensor(c, "model.xi"), tensor(c, "model.kappa")};
            case ModelKind::Burgers:
                return BurgersParams{c.num("model.lambda"), c.num("model.tau"), c.num("model.mu"),
                                     c.num("model.nu")};
            case ModelKind::GK:
                return GKParams{c.num("model.tau", 0.0), c.num("model.ell"), varkappa()};
            case ModelKind::GKNonlinear:
                return GKNonlinearParams{c.num("model.tau", 0.0), c.num("model.ell"), varkappa(),
                                         c.num("model.delta")};
        }
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    throw ConfigError("model.kind: unsupported");
}

MaterialConstants material_from_config(const Config& c) {
    MaterialConstants m{c.num("material.rho", 1.0), c.num("material.cv", 1.0)};
    if (!(m.rho > 0)) throw ConfigError("material.rho: must be positive");
    if (!(m.cv > 0)) throw ConfigError("material.cv: must be positive");
    return m;
}

EnergyChoice energy_from_config(const Config& c) {
    EnergyChoice e;
    e.jeffreys_weight = c.num("energy.jeffreys_weight", 1.0);
    if (e.jeffreys_weight < 0 || e.jeffreys_weight > 1)
        throw ConfigError("energy.jeffreys_weight: must lie in [0, 1]");
    if (c.has("energy.burgers_case")) {
        const std::string v = lower(c.str("energy.burgers_case"));
        if (v == "i") e.burgers_case = BurgersCase::I;
        else if (v == "ii") e.burgers_case = BurgersCase::II;
        else if (v == "iii") e.burgers_case = BurgersCase::III;
        else throw ConfigError("energy.burgers_case: expected i, ii or iii");
    }
    return e;
}

namespace {

BoundaryKind boundary_kind(const Config& c, const std::string& key) {
    const std::string v = lower(c.str(key, "dirichlet"));
    if (v == "dirichlet") return BoundaryKind::Dirichlet;
    if (v == "neumann") return BoundaryKind::Neumann;
    throw ConfigError(key + ": expected dirichlet or neumann");
}

}  // namespace

SimConfig sim_from_config(const Config& c) {
    SimConfig s;
    s.model = model_from_config(c);
    s.material = material_from_config(c);
    s.grid.L = c.num("grid.L", 1.0);
    s.grid.N = c.integer("grid.N", 64);
    if (!(s.grid.L > 0)) throw ConfigError("grid.L: must be positive");
    if (s.grid.N < 8) throw ConfigError("grid.N: must be at least 8");
    s.dt = c.num("time.dt", 1e-3);
    s.t_end = c.num("time.t_end", 1.0);
    s.snapshot_every = c.integer("time.snapshot_every", 1);
    if (!(s.dt > 0)) throw ConfigError("time.dt: must be positive");
    if (s.t_end < 0) throw ConfigError("time.t_end: must be non-negative");
    if (s.snapshot_every < 1) throw ConfigError("time.snapshot_every: must be at least 1");

    const double theta_ref = c.num("ic.theta_ref", 1.0);
    s.bc.kind = boundary_kind(c, "bc.kind");
    const double bdef = s.bc.kind == BoundaryKind::Dirichlet ? theta_ref : 0.0;
    s.bc.left = c.num("bc.left", bdef);
    s.bc.right = c.num("bc.right", bdef);

    const double L = s.grid.L;
    const double amp = c.num("ic.amplitude", 0.0);
    const double rate = c.num("ic.rate_amplitude", 0.0);
    const int mode = c.integer("ic.mode", 1);
    const double width = c.num("ic.width", 0.1 * L);
    const std::string shape = lower(c.str("ic.shape", "sine"));
    Profile f;
    const double k = mode * std::numbers::pi / L;
    if (shape == "sine") f = [k](double x) { return std::sin(k * x); };
    else if (shape == "cosine") f = [k](double x) { return std::cos(k * x); };
    else if (shape == "gaussian") {
        if (!(width > 0)) throw ConfigError("ic.width: must be positive");
        f = [L, width](double x) { return std::exp(-0.5 * std::pow((x - 0.5 * L) / width, 2)); };
    } else {
        throw ConfigError("ic.shape: expected sine, cosine or gaussian");
    }
    s.ic.theta0 = [=](double x) { return theta_ref + amp * f(x); };
    if (rate != 0.0) s.ic.theta_dot0 = [=](double x) { return rate * f(x); };
    if (c.has("ic.q_amplitude")) {
        const double qa = c.num("ic.q_amplitude");
        s.ic.q0 = [=](double x) { return qa * f(x); };
    }

    s.heat_supply = c.num("source.rho_r", 0.0);
    s.energy = energy_from_config(c);
    s.audit = c.flag("audit.enabled", true);
    s.abort_on_nonpositive = c.flag("audit.abort_on_nonpositive", true);

    const std::string gm = lower(c.str("gk.mode", "coupled"));
    if (gm == "coupled") s.gk_mode = GKMode::Coupled;
    else if (gm == "imposed_gradient") s.gk_mode = GKMode::ImposedGradient;
    else throw ConfigError("gk.mode: expected coupled or imposed_gradient");
    s.gk_gradient = c.num("gk.gradient", 0.0);
    s.gk_theta_ref = c.num("gk.theta_ref", theta_ref);
    return s;
}

SpectralProblem spectral_from_config(const Config& c) {
    SpectralProblem p;
    p.bc = boundary_kind(c, "spectral.bc");
    p.L = c.num("spectral.L", c.num("grid.L", 1.0));
    p.n_max = c.integer("spectral.n_max", 10);
    p.rho_c = material_from_config(c).rho_c();
    if (!(p.L > 0)) throw ConfigError("spectral.L: must be positive");
    if (p.n_max < 1) throw ConfigError("spectral.n_max: must be at least 1");
    return p;
}

CheckOptions check_options_from_config(const Config& c) {
    CheckOptions o;
    o.theta_min = c.num("check.theta_min", o.theta_min);
    o.theta_max = c.num("check.theta_max", o.theta_max);
    o.theta_count = c.integer("check.theta_count", o.theta_count);
    if (!(o.theta_min > 0) || !(o.theta_max >= o.theta_min))
        throw ConfigError("check.theta_min: need 0 < theta_min <= theta_max");
    if (o.theta_count < 1) throw ConfigError("check.theta_count: must be at least 1");
    return o;
}

}  // namespace heatlab
