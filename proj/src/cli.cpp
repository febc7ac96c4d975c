#include "heatlab/cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "heatlab/config.hpp"
#include "heatlab/errors.hpp"
#include "heatlab/sampling.hpp"

namespace heatlab {

namespace {

std::string num(double v) { return fmt::format("{:.10g}", v == 0.0 ? 0.0 : v); }

std::string header_line(const RunManifest& r) {
    return fmt::format("# heatlab {} command={} seed={} config={}\n", r.version, r.subcommand, r.seed,
                       r.config_path);
}

std::ofstream open_out(const RunManifest& r, const std::string& name) {
    const auto path = std::filesystem::path(r.out_dir) / name;
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write " + path.string());
    f << header_line(r);
    return f;
}

std::string verdict_text(const ConsistencyVerdict& v) {
    std::string failure = v.failure == FailureKind::Sign ? "sign"
                          : v.failure == FailureKind::Structural ? "structural" : "none";
    return fmt::format("pass={}\nstatus={}\ncase={}\nmargin={}\nfailed_condition={}\nfailure={}\n",
                       v.pass ? "true" : "false", status_name(v.status), v.case_tag, num(v.margin),
                       v.failed_condition, failure);
}

int cmd_check(const RunManifest& r, const Config& c, std::ostream& out) {
    const ModelParams m = model_from_config(c);
    const auto v = check_model(m, check_options_from_config(c));
    auto f = open_out(r, "verdict.txt");
    f << "model=" << kind_name(kind_of(m)) << "\n" << verdict_text(v);
    out << kind_name(kind_of(m)) << ": " << status_name(v.status)
        << (v.failed_condition.empty() ? "" : " (" + v.failed_condition + ")") << "\n";
    return 0;
}

void write_modes(std::ostream& f, const std::vector<ModeReport>& reports) {
    f << "n,Lambda_m^-2,Lambda_tilde_m_K_J^-1";
    for (int i = 1; i <= 3; ++i) f << ",root" << i << "_re_s^-1,root" << i << "_im_s^-1";
    f << ",rh,discriminant,class\n";
    for (const auto& m : reports) {
        f << m.n << "," << num(m.Lambda) << "," << num(m.Lambda_tilde);
        for (std::size_t i = 0; i < 3; ++i) {
            if (i < m.roots.roots.size())
                f << "," << num(m.roots.roots[i].real()) << "," << num(m.roots.roots[i].imag());
            else
                f << ",,";
        }
        f << "," << (m.rh_pass ? "pass" : "fail") << ","
          << (m.discriminant ? num(*m.discriminant) : "") << "," << class_name(m.cls) << "\n";
    }
}

int cmd_modal(const RunManifest& r, const Config& c, std::ostream& out) {
    const ModelParams m = model_from_config(c);
    const auto reports = modal_analysis(m, spectral_from_config(c));
    auto f = open_out(r, "modes.csv");
    write_modes(f, reports);
    const auto unstable = std::count_if(reports.begin(), reports.end(),
                                        [](const ModeReport& x) { return x.cls == ModeClass::Unstable; });
    out << reports.size() << " modes, " << unstable << " unstable\n";
    return 0;
}

int cmd_simulate(const RunManifest& r, const Config& c, std::ostream& out, std::ostream& err) {
    const SimConfig cfg = sim_from_config(c);
    try {
        const auto v = check_model(cfg.model, check_options_from_config(c));
        if (!v.pass)
            err << "warning: model is not thermodynamically consistent (" << v.failed_condition
                << "); simulating anyway\n";
    } catch (const Error& e) {
        err << "warning: consistency check unavailable: " << e.what() << "\n";
    }
    const Trajectory tr = simulate(cfg);

    auto snaps = open_out(r, "snapshots.csv");
    snaps << "t_s,x_m,theta_K\n";
    for (const auto& s : tr.snapshots)
        for (std::size_t i = 0; i < s.theta.size(); ++i)
            snaps << num(s.t) << "," << num(tr.x_theta[i]) << "," << num(s.theta[i]) << "\n";
    if (!tr.x_q.empty()) {
        auto flux = open_out(r, "flux.csv");
        flux << "t_s,x_m,q_W_m^-2\n";
        for (const auto& s : tr.snapshots)
            for (std::size_t i = 0; i < s.q.size(); ++i)
                flux << num(s.t) << "," << num(tr.x_q[i]) << "," << num(s.q[i]) << "\n";
    }
    auto audit = open_out(r, "audit.csv");
    if (!tr.audit_available) audit << "# dissipation audit unavailable: " << tr.audit_note << "\n";
    audit << "t_s,min_sigma_W_m^-3_K^-1,max_sigma_W_m^-3_K^-1,max_residual_rel,theta_min_K,theta_max_K,"
             "max_boundary_k_W_m^-2_K^-1\n";
    for (const auto& a : tr.audits)
        audit << num(a.t) << "," << num(a.min_sigma) << "," << num(a.max_sigma) << ","
              << num(a.max_residual) << "," << num(a.theta_min) << "," << num(a.theta_max) << ","
              << num(a.max_boundary_k) << "\n";
    out << tr.steps << " steps, " << tr.snapshots.size() << " snapshots";
    if (tr.audit_available)
        out << ", min sigma " << num(tr.min_sigma()) << ", max residual " << num(tr.max_residual());
    out << "\n";
    return 0;
}

struct SweepRow {
    double value = 0.0;
    bool ok = false;
    std::string error;
    ConsistencyVerdict verdict;
    double max_re = 0.0;
    int unstable = 0;
    bool rh_all = false;
};

int cmd_sweep(const RunManifest& r, const Config& c, std::ostream& out) {
    const std::string param = c.str("sweep.param");
    if (param.rfind("model.", 0) != 0 || param == "model.kind")
        throw ConfigError("sweep.param: must name a numeric model.* key");
    const double lo = c.num("sweep.from"), hi = c.num("sweep.to");
    const int count = c.integer("sweep.count", 11);
    if (count < 1) throw ConfigError("sweep.count: must be at least 1");
    const std::string scale = c.str("sweep.scale", "linear");
    if (scale != "linear" && scale != "log") throw ConfigError("sweep.scale: expected linear or log");
    if (scale == "log" && !(lo > 0 && hi > 0)) throw ConfigError("sweep.from: log sweep needs positive bounds");

    std::vector<double> values(count);
    for (int i = 0; i < count; ++i) {
        const double s = count == 1 ? 0.0 : double(i) / (count - 1);
        values[i] = scale == "log" ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s;
    }
    // validate the base point and the spectral block before fanning out
    {
        Config probe = c;
        probe.set(param, num(values[0]));
        (void)model_from_config(probe);
    }
    const SpectralProblem sp = spectral_from_config(c);
    const CheckOptions opt = check_options_from_config(c);

    std::vector<SweepRow> rows(count);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            SweepRow& row = rows[i];
            row.value = values[i];
            try {
                Config ci = c;
                ci.set(param, num(values[i]));
                const ModelParams m = model_from_config(ci);
                row.verdict = check_model(m, opt);
                const auto reports = modal_analysis(m, sp);
                row.rh_all = true;
                row.max_re = -std::numeric_limits<double>::infinity();
                for (const auto& mr : reports) {
                    row.max_re = std::max(row.max_re, mr.roots.max_real());
                    row.rh_all = row.rh_all && mr.rh_pass;
                    row.unstable += mr.cls == ModeClass::Unstable;
                }
                row.ok = true;
            } catch (const Error& e) {
                row.error = e.what();
            }
        }
    };
    int threads = c.integer("sweep.threads", static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
    threads = std::clamp(threads, 1, count);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    auto f = open_out(r, "sweep.csv");
    f << "index," << param << ",pass,status,margin,failed_condition,max_re_root_s^-1,rh_all,unstable_modes,error\n";
    int failed = 0;
    for (int i = 0; i < count; ++i) {
        const auto& row = rows[i];
        f << i << "," << num(row.value) << ",";
        if (row.ok) {
            f << (row.verdict.pass ? "true" : "false") << "," << status_name(row.verdict.status) << ","
              << num(row.verdict.margin) << ",\"" << row.verdict.failed_condition << "\","
              << num(row.max_re) << "," << (row.rh_all ? "pass" : "fail") << "," << row.unstable << ",\n";
        } else {
            ++failed;
            f << ",,,,,,,\"" << row.error << "\"\n";
        }
    }
    out << count << " points, " << failed << " rejected\n";
    return 0;
}

int cmd_audit(const RunManifest& r, const Config& c, std::ostream& out) {
    const ModelParams m = model_from_config(c);
    const EnergyChoice e = energy_from_config(c);
    const int samples = c.integer("audit.samples", 10000);
    if (samples < 1) throw ConfigError("audit.samples: must be at least 1");
    Rng rng(r.seed);
    auto f = open_out(r, "audit_report.csv");
    f << "sample,theta_K,psi_J_m^-3,sigma_W_m^-3_K^-1,residual_W_m^-3_K^-1,relative_residual\n";
    double worst = 0.0, min_sigma = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const ThermalState s = drive_rates(m, random_state(rng));
        const EnergyAudit a = dissipation_residual(m, s, e);
        worst = std::max(worst, a.relative_residual());
        min_sigma = std::min(min_sigma, a.sigma);
        f << i << "," << num(s.theta) << "," << num(a.psi) << "," << num(a.sigma) << ","
          << num(a.residual) << "," << num(a.relative_residual()) << "\n";
    }
    auto summary = open_out(r, "audit_summary.txt");
    summary << "model=" << kind_name(kind_of(m)) << "\nsamples=" << samples
            << "\nmax_relative_residual=" << num(worst) << "\nmin_sigma=" << num(min_sigma) << "\n";
    out << samples << " states, max relative residual " << num(worst) << ", min sigma " << num(min_sigma)
        << "\n";
    return 0;
}

}  // namespace

int run_command(const RunManifest& r, std::ostream& out, std::ostream& err) {
    try {
        if (r.subcommand != "check" && r.subcommand != "modal" && r.subcommand != "simulate" &&
            r.subcommand != "sweep" && r.subcommand != "audit")
            throw ConfigError("unknown subcommand '" + r.subcommand + "'");
        const Config c = Config::from_file(r.config_path);
        c.require_known();
        std::error_code ec;
        std::filesystem::create_directories(r.out_dir, ec);
        if (ec) throw InvalidInput("cannot create output directory " + r.out_dir);
        if (r.subcommand == "check") return cmd_check(r, c, out);
        if (r.subcommand == "modal") return cmd_modal(r, c, out);
        if (r.subcommand == "simulate") return cmd_simulate(r, c, out, err);
        if (r.subcommand == "sweep") return cmd_sweep(r, c, out);
        return cmd_audit(r, c, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << " (first divergent step " << e.step() << ")\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace heatlab
