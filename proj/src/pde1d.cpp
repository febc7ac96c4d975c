#include "heatlab/pde1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "heatlab/errors.hpp"

namespace heatlab {

void Grid1D::validate() const {
    if (!(L > 0.0)) throw InvalidInput("grid length must be positive");
    if (N < 8) throw InvalidInput("grid needs at least 8 interior points");
}

void SimConfig::validate() const {
    grid.validate();
    material.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidInput("time step must be positive");
    if (!(t_end >= 0.0)) throw InvalidInput("end time must be non-negative");
    if (snapshot_every < 1) throw InvalidInput("snapshot cadence must be at least 1");
    if (!ic.theta0) throw InvalidInput("initial temperature profile is required");
}

double Trajectory::min_sigma() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& a : audits) m = std::min(m, a.min_sigma);
    return m;
}

double Trajectory::max_sigma() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& a : audits) m = std::max(m, a.max_sigma);
    return m;
}

double Trajectory::max_residual() const {
    double m = 0.0;
    for (const auto& a : audits) m = std::max(m, a.max_residual);
    return m;
}

double Trajectory::max_boundary_k() const {
    double m = 0.0;
    for (const auto& a : audits) m = std::max(m, a.max_boundary_k);
    return m;
}

namespace {

double zero_profile(double) { return 0.0; }

Profile or_zero(const Profile& p) { return p ? p : Profile(zero_profile); }

long step_count(const SimConfig& cfg) {
    return static_cast<long>(std::llround(cfg.t_end / cfg.dt));
}

// rho c (c3 T''' + c2 T'' + c1 T') = a0 D2 T + a1 D2 T' + supply * rho r
struct TemperatureLaw {
    int order = 1;
    double c3 = 0, c2 = 0, c1 = 0, a0 = 0, a1 = 0, supply = 0;
    int aux = 0;  // 0: none, 1: q, 2: q and p = dq/dt
    Scalar1D s;
};

TemperatureLaw temperature_law(const ModelParams& m) {
    TemperatureLaw t;
    t.s = scalar_1d(m);
    const auto& s = t.s;
    switch (s.kind) {
        case ModelKind::Fourier:
            t.order = 1; t.c1 = 1; t.a0 = s.kappa; t.supply = 1;
            break;
        case ModelKind::GN2:
            t.order = 2; t.c2 = 1; t.a0 = s.xi; t.aux = 1;
            break;
        case ModelKind::Jeffreys:
            if (s.tau == 0.0) throw DegenerateModel("Jeffreys temperature equation needs tau != 0");
            t.order = 2; t.c2 = s.tau; t.c1 = 1; t.a0 = s.xi; t.a1 = s.tau * s.kappa;
            t.supply = 1; t.aux = 1;
            break;
        case ModelKind::GN3:
            t.order = 2; t.c2 = 1; t.a0 = s.xi; t.a1 = s.kappa; t.aux = 1;
            break;
        case ModelKind::Quintanilla:
            if (s.tau == 0.0) throw DegenerateModel("MGT equation needs tau != 0; reduce to GN3");
            t.order = 3; t.c3 = s.tau; t.c2 = 1; t.a0 = s.xi; t.a1 = s.kappa; t.aux = 2;
            break;
        case ModelKind::Burgers:
            if (s.lambda == 0.0)
                throw DegenerateModel("Joseph-Preziosi equation needs lambda != 0; reduce to Jeffreys");
            t.order = 3; t.c3 = s.lambda; t.c2 = s.tau; t.c1 = 1; t.a0 = s.xi;
            t.a1 = s.tau * s.kappa; t.supply = 1; t.aux = 2;
            break;
        default:
            throw InvalidKind("no temperature equation for model kind " + kind_name(s.kind));
    }
    return t;
}

// The isotropic 1-D model used for pointwise audits.
ModelParams audit_model(const Scalar1D& s) {
    auto iso = [](double v) { return SymTensor3::isotropic(v); };
    switch (s.kind) {
        case ModelKind::Fourier: return FourierParams{iso(s.kappa)};
        case ModelKind::GN2: return GN2Params{iso(s.xi).mat()};
        case ModelKind::MCV: return MCVParams{s.tau, iso(s.kappa)};
        case ModelKind::Jeffreys: return JeffreysParams{s.tau, iso(s.xi), iso(s.kappa)};
        case ModelKind::GN3: return GN3Params{iso(s.xi), iso(s.kappa)};
        case ModelKind::Quintanilla: return QuintanillaParams{s.tau, iso(s.xi), iso(s.kappa)};
        case ModelKind::Burgers: return BurgersParams{s.lambda, s.tau, s.xi, s.kappa};
        default: break;
    }
    throw InvalidKind("no 1-D audit model");
}

// Integral of f over [0, x] by composite Simpson with a fixed panel count.
double integrate(const Profile& f, double x) {
    if (x == 0.0) return 0.0;
    const int m = 64;
    const double h = x / (2 * m);
    double acc = f(0.0) + f(x);
    for (int i = 1; i < 2 * m; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return acc * h / 3.0;
}

struct NodeLayout {
    int fields, nodes, first;
    bool neumann;
    int idx(int f, int k) const { return k * fields + f; }
};

struct TemperatureProblem {
    SimConfig cfg;
    TemperatureLaw law;
    NodeLayout lay;
    double dx;

    // Value of field f beyond the last unknown node (Dirichlet boundary data).
    double boundary_value(int f, bool left) const {
        if (f != 0) return 0.0;
        return left ? cfg.bc.left : cfg.bc.right;
    }
    double boundary_grad(int f, bool left) const {
        if (f != 0) return 0.0;
        return left ? cfg.bc.left : cfg.bc.right;
    }
};

void add_d2(const TemperatureProblem& p, LinearSystem& s, int row, int f, int k, double coef) {
    const auto& L = p.lay;
    const double h2 = p.dx * p.dx;
    const int last = L.nodes - 1;
    if (L.neumann && (k == 0 || k == last)) {
        const int nb = k == 0 ? 1 : last - 1;
        s.A.add(row, L.idx(f, k), -2.0 * coef / h2);
        s.A.add(row, L.idx(f, nb), 2.0 * coef / h2);
        const double g = p.boundary_grad(f, k == 0);
        s.f[row] += (k == 0 ? -2.0 : 2.0) * coef * g / p.dx;
        return;
    }
    s.A.add(row, L.idx(f, k), -2.0 * coef / h2);
    if (k > 0) s.A.add(row, L.idx(f, k - 1), coef / h2);
    else s.f[row] += coef * p.boundary_value(f, true) / h2;
    if (k < last) s.A.add(row, L.idx(f, k + 1), coef / h2);
    else s.f[row] += coef * p.boundary_value(f, false) / h2;
}

void add_dx(const TemperatureProblem& p, LinearSystem& s, int row, int f, int k, double coef) {
    const auto& L = p.lay;
    const int last = L.nodes - 1;
    if (L.neumann && (k == 0 || k == last)) {
        s.f[row] += coef * p.boundary_grad(f, k == 0);
        return;
    }
    const double c = coef / (2.0 * p.dx);
    if (k > 0) s.A.add(row, L.idx(f, k - 1), -c);
    else s.f[row] -= c * p.boundary_value(f, true);
    if (k < last) s.A.add(row, L.idx(f, k + 1), c);
    else s.f[row] += c * p.boundary_value(f, false);
}

double grad_at(const TemperatureProblem& p, const std::vector<double>& u, int f, int k) {
    const auto& L = p.lay;
    const int last = L.nodes - 1;
    if (L.neumann && (k == 0 || k == last)) return p.boundary_grad(f, k == 0);
    const double l = k > 0 ? u[L.idx(f, k - 1)] : p.boundary_value(f, true);
    const double r = k < last ? u[L.idx(f, k + 1)] : p.boundary_value(f, false);
    return (r - l) / (2.0 * p.dx);
}

TemperatureProblem make_temperature_problem(const SimConfig& cfg) {
    TemperatureProblem p{cfg, temperature_law(cfg.model), {}, cfg.grid.dx()};
    p.lay.neumann = cfg.bc.kind == BoundaryKind::Neumann;
    p.lay.fields = p.law.order + p.law.aux;
    p.lay.nodes = p.lay.neumann ? cfg.grid.N + 2 : cfg.grid.N;
    p.lay.first = p.lay.neumann ? 0 : 1;
    return p;
}

Assembly assemble_temperature(const TemperatureProblem& p) {
    const auto& law = p.law;
    const auto& L = p.lay;
    const double rc = p.cfg.material.rho_c();
    const int n = L.fields * L.nodes;
    const int bw = 2 * L.fields - 1;
    Assembly a;
    a.sys.A = BandMatrix(n, bw, bw);
    a.sys.mass.assign(n, 0.0);
    a.sys.f.assign(n, 0.0);
    a.fields = L.fields;
    a.nodes = L.nodes;
    a.first_node = L.first;
    const char* field_names[] = {"theta", "theta_dot", "theta_ddot"};
    for (int f = 0; f < law.order; ++f) a.names.push_back(field_names[f]);
    if (law.aux >= 1) a.names.push_back("q");
    if (law.aux >= 2) a.names.push_back("q_dot");

    const double top = law.order == 1 ? law.c1 : law.order == 2 ? law.c2 : law.c3;
    if (top == 0.0) throw DegenerateModel("leading time coefficient vanishes");

    for (int k = 0; k < L.nodes; ++k) {
        // chain rows: d/dt of field f is field f+1
        for (int f = 0; f + 1 < law.order; ++f) {
            const int row = L.idx(f, k);
            a.sys.mass[row] = 1.0;
            a.sys.A.add(row, L.idx(f + 1, k), 1.0);
        }
        const int row = L.idx(law.order - 1, k);
        a.sys.mass[row] = rc * top;
        if (law.order == 2) a.sys.A.add(row, L.idx(1, k), -rc * law.c1);
        if (law.order == 3) {
            a.sys.A.add(row, L.idx(2, k), -rc * law.c2);
            a.sys.A.add(row, L.idx(1, k), -rc * law.c1);
        }
        add_d2(p, a.sys, row, 0, k, law.a0);
        if (law.order >= 2 && law.a1 != 0.0) add_d2(p, a.sys, row, 1, k, law.a1);
        a.sys.f[row] += law.supply * p.cfg.heat_supply;

        const auto& s = law.s;
        if (law.aux == 1) {
            const int qr = L.idx(law.order, k);
            switch (s.kind) {
                case ModelKind::Jeffreys:
                    a.sys.mass[qr] = s.tau;
                    a.sys.A.add(qr, qr, -1.0);
                    add_dx(p, a.sys, qr, 0, k, -s.xi);
                    add_dx(p, a.sys, qr, 1, k, -s.tau * s.kappa);
                    break;
                case ModelKind::GN3:
                    a.sys.mass[qr] = 1.0;
                    add_dx(p, a.sys, qr, 0, k, -s.xi);
                    add_dx(p, a.sys, qr, 1, k, -s.kappa);
                    break;
                default:  // GN2
                    a.sys.mass[qr] = 1.0;
                    add_dx(p, a.sys, qr, 0, k, -s.xi);
                    break;
            }
        } else if (law.aux == 2) {
            const int qr = L.idx(law.order, k), pr = L.idx(law.order + 1, k);
            a.sys.mass[qr] = 1.0;
            a.sys.A.add(qr, pr, 1.0);
            if (s.kind == ModelKind::Quintanilla) {
                a.sys.mass[pr] = s.tau;
                a.sys.A.add(pr, pr, -1.0);
                add_dx(p, a.sys, pr, 0, k, -s.xi);
                add_dx(p, a.sys, pr, 1, k, -s.kappa);
            } else {
                a.sys.mass[pr] = s.lambda;
                a.sys.A.add(pr, pr, -s.tau);
                a.sys.A.add(pr, qr, -1.0);
                add_dx(p, a.sys, pr, 0, k, -s.xi);
                add_dx(p, a.sys, pr, 1, k, -s.tau * s.kappa);
            }
        }
    }
    return a;
}

// ---- coupled MCV: theta at nodes, q at cell midpoints ----

struct MCVLayout {
    bool neumann;
    int N;
    int theta(int i) const { return neumann ? 2 * i : 2 * i - 1; }
    int q(int j) const { return neumann ? 2 * j + 1 : 2 * j; }
    int size() const { return neumann ? 2 * N + 3 : 2 * N + 1; }
    bool theta_unknown(int i) const { return neumann || (i >= 1 && i <= N); }
};

Assembly assemble_mcv(const SimConfig& cfg) {
    const auto s = scalar_1d(cfg.model);
    const double dx = cfg.grid.dx();
    const double rc = cfg.material.rho_c();
    const int N = cfg.grid.N;
    MCVLayout L{cfg.bc.kind == BoundaryKind::Neumann, N};
    Assembly a;
    a.sys.A = BandMatrix(L.size(), 1, 1);
    a.sys.mass.assign(L.size(), 0.0);
    a.sys.f.assign(L.size(), 0.0);
    a.fields = 2;
    a.nodes = L.neumann ? N + 2 : N;
    a.first_node = L.neumann ? 0 : 1;
    a.names = {"theta", "q"};

    for (int i = 0; i <= N + 1; ++i) {
        if (!L.theta_unknown(i)) continue;
        const int r = L.theta(i);
        a.sys.f[r] += cfg.heat_supply;
        if (L.neumann && (i == 0 || i == N + 1)) {
            a.sys.mass[r] = rc;
            if (i == 0) {
                a.sys.A.add(r, L.q(0), -2.0 / dx);
                a.sys.f[r] += 2.0 / dx * (-s.kappa * cfg.bc.left);
            } else {
                a.sys.A.add(r, L.q(N), 2.0 / dx);
                a.sys.f[r] -= 2.0 / dx * (-s.kappa * cfg.bc.right);
            }
            continue;
        }
        a.sys.mass[r] = rc;
        a.sys.A.add(r, L.q(i), -1.0 / dx);
        a.sys.A.add(r, L.q(i - 1), 1.0 / dx);
    }
    for (int j = 0; j <= N; ++j) {
        const int r = L.q(j);
        a.sys.mass[r] = s.tau;
        a.sys.A.add(r, r, -1.0);
        const double c = -s.kappa / dx;
        if (L.theta_unknown(j + 1)) a.sys.A.add(r, L.theta(j + 1), c);
        else a.sys.f[r] += c * cfg.bc.right;
        if (L.theta_unknown(j)) a.sys.A.add(r, L.theta(j), -c);
        else a.sys.f[r] -= c * cfg.bc.left;
    }
    return a;
}

void check_finite_positive(const std::vector<double>& theta, long step, const SimConfig& cfg,
                           Trajectory& tr) {
    for (double v : theta) {
        if (!std::isfinite(v))
            throw DivergenceError("non-finite temperature at step " + std::to_string(step), step);
        if (v <= 0.0) {
            tr.theta_positive = false;
            if (cfg.abort_on_nonpositive)
                throw PositivityError(
                    "absolute temperature became non-positive at step " + std::to_string(step), step);
        }
    }
}

// Residuals are measured against the largest term magnitude over the whole grid, so points
// where every term vanishes (symmetry planes) do not report pure round-off as a defect.
struct AuditAccumulator {
    StepAudit a;
    bool any = false;
    double worst = 0.0, scale = 0.0;
    void add(const EnergyAudit& e) {
        if (!any) {
            a.min_sigma = a.max_sigma = e.sigma;
            any = true;
        }
        a.min_sigma = std::min(a.min_sigma, e.sigma);
        a.max_sigma = std::max(a.max_sigma, e.sigma);
        worst = std::max(worst, std::abs(e.residual));
        scale = std::max(scale, e.scale);
        a.max_residual = scale > 0.0 ? worst / scale : worst;
    }
};

void fill_theta_range(StepAudit& a, const std::vector<double>& theta) {
    a.theta_min = *std::min_element(theta.begin(), theta.end());
    a.theta_max = *std::max_element(theta.begin(), theta.end());
}

ThermalState state_1d(double theta, double q, double gt) {
    ThermalState s;
    s.theta = theta;
    s.q = {q, 0, 0};
    s.grad_theta = {gt, 0, 0};
    return s;
}

Vec3 xvec(double v) { return {v, 0, 0}; }

// ---- temperature-equation simulation ----

std::vector<double> temperature_full_theta(const TemperatureProblem& p, const std::vector<double>& u) {
    std::vector<double> th;
    if (!p.lay.neumann) th.push_back(p.cfg.bc.left);
    for (int k = 0; k < p.lay.nodes; ++k) th.push_back(u[p.lay.idx(0, k)]);
    if (!p.lay.neumann) th.push_back(p.cfg.bc.right);
    return th;
}

Trajectory simulate_temperature(const SimConfig& cfg) {
    const TemperatureProblem p = make_temperature_problem(cfg);
    const Assembly a = assemble_temperature(p);
    const auto& L = p.lay;
    const auto& law = p.law;
    const double dx = p.dx;
    const double rc = cfg.material.rho_c();

    const Profile th0 = cfg.ic.theta0, th1 = or_zero(cfg.ic.theta_dot0),
                  th2 = or_zero(cfg.ic.theta_ddot0);
    std::vector<double> u(a.sys.A.n(), 0.0);
    for (int k = 0; k < L.nodes; ++k) {
        const double x = (L.first + k) * dx;
        u[L.idx(0, k)] = th0(x);
        if (law.order >= 2) u[L.idx(1, k)] = th1(x);
        if (law.order >= 3) u[L.idx(2, k)] = th2(x);
        // Flux consistent with the energy balance, anchored at q(0) = 0.
        if (law.aux >= 1) {
            const double rr = cfg.heat_supply;
            u[L.idx(law.order, k)] =
                cfg.ic.q0 ? cfg.ic.q0(x)
                          : -integrate([&](double s) { return rc * th1(s) - rr; }, x);
        }
        if (law.aux >= 2)
            u[L.idx(law.order + 1, k)] = -integrate([&](double s) { return rc * th2(s); }, x);
    }

    Trajectory tr;
    for (int i = 0; i < cfg.grid.N + 2; ++i) tr.x_theta.push_back(i * dx);
    if (law.aux >= 1)
        for (int k = 0; k < L.nodes; ++k) tr.x_q.push_back((L.first + k) * dx);

    auto snapshot = [&](double t) {
        Snapshot s;
        s.t = t;
        s.theta = temperature_full_theta(p, u);
        if (law.aux >= 1)
            for (int k = 0; k < L.nodes; ++k) s.q.push_back(u[L.idx(law.order, k)]);
        tr.snapshots.push_back(std::move(s));
    };

    ModelParams am = audit_model(law.s);
    tr.audit_available = cfg.audit;
    if (cfg.audit) {
        try {
            (void)free_energy(am, [&] {
                ThermalState s = state_1d(1.0, 0.0, 0.0);
                s.qdot = xvec(0.0);
                return s;
            }(), cfg.energy);
        } catch (const Error& e) {
            tr.audit_available = false;
            tr.audit_note = e.what();
        }
    }

    check_finite_positive(temperature_full_theta(p, u), 0, cfg, tr);
    snapshot(0.0);
    const TrapezoidalStepper stepper(a.sys, cfg.dt);
    const long steps = step_count(cfg);
    std::vector<double> prev;
    for (long n = 1; n <= steps; ++n) {
        prev = u;
        stepper.step(u);
        const double t = n * cfg.dt;
        const auto theta = temperature_full_theta(p, u);
        check_finite_positive(theta, n, cfg, tr);

        StepAudit sa;
        if (tr.audit_available) {
            AuditAccumulator acc;
            for (int k = 0; k < L.nodes; ++k) {
                auto mid = [&](int f) { return 0.5 * (u[L.idx(f, k)] + prev[L.idx(f, k)]); };
                const double th = mid(0);
                const double gt = 0.5 * (grad_at(p, u, 0, k) + grad_at(p, prev, 0, k));
                ThermalState s;
                if (law.order == 1) {
                    s = state_1d(th, -law.s.kappa * gt, gt);
                } else {
                    const int qf = law.order;
                    s = state_1d(th, mid(qf), gt);
                    s.grad_theta_dot = xvec(0.5 * (grad_at(p, u, 1, k) + grad_at(p, prev, 1, k)));
                    if (law.aux == 1) {
                        s.qdot = xvec((u[L.idx(qf, k)] - prev[L.idx(qf, k)]) / cfg.dt);
                    } else {
                        s.qdot = xvec(mid(qf + 1));
                        s.qddot = xvec((u[L.idx(qf + 1, k)] - prev[L.idx(qf + 1, k)]) / cfg.dt);
                    }
                }
                const auto e = dissipation_residual(am, s, cfg.energy);
                acc.add(e);
            }
            sa = acc.a;
        }
        sa.t = t;
        fill_theta_range(sa, theta);
        tr.audits.push_back(sa);
        if (n % cfg.snapshot_every == 0 || n == steps) snapshot(t);
    }
    tr.steps = steps;
    return tr;
}

// ---- coupled MCV simulation ----

Trajectory simulate_mcv(const SimConfig& cfg) {
    const Assembly a = assemble_mcv(cfg);
    const auto s1 = scalar_1d(cfg.model);
    const int N = cfg.grid.N;
    const double dx = cfg.grid.dx();
    MCVLayout L{cfg.bc.kind == BoundaryKind::Neumann, N};

    std::vector<double> u(L.size(), 0.0);
    std::vector<double> th_nodes(N + 2);
    for (int i = 0; i <= N + 1; ++i) {
        double v = cfg.ic.theta0(i * dx);
        if (!L.neumann && i == 0) v = cfg.bc.left;
        if (!L.neumann && i == N + 1) v = cfg.bc.right;
        th_nodes[i] = v;
        if (L.theta_unknown(i)) u[L.theta(i)] = v;
    }
    for (int j = 0; j <= N; ++j)
        u[L.q(j)] = cfg.ic.q0 ? cfg.ic.q0((j + 0.5) * dx)
                              : -s1.kappa * (th_nodes[j + 1] - th_nodes[j]) / dx;

    auto full_theta = [&](const std::vector<double>& v) {
        std::vector<double> th(N + 2);
        for (int i = 0; i <= N + 1; ++i)
            th[i] = L.theta_unknown(i) ? v[L.theta(i)] : (i == 0 ? cfg.bc.left : cfg.bc.right);
        return th;
    };

    Trajectory tr;
    for (int i = 0; i <= N + 1; ++i) tr.x_theta.push_back(i * dx);
    for (int j = 0; j <= N; ++j) tr.x_q.push_back((j + 0.5) * dx);
    auto snapshot = [&](double t) {
        Snapshot sn;
        sn.t = t;
        sn.theta = full_theta(u);
        for (int j = 0; j <= N; ++j) sn.q.push_back(u[L.q(j)]);
        tr.snapshots.push_back(std::move(sn));
    };

    const ModelParams am = MCVParams{s1.tau, SymTensor3::isotropic(s1.kappa)};
    tr.audit_available = cfg.audit;
    if (cfg.audit && !(s1.kappa != 0.0)) {
        tr.audit_available = false;
        tr.audit_note = "kappa = 0";
    }

    check_finite_positive(full_theta(u), 0, cfg, tr);
    snapshot(0.0);
    const TrapezoidalStepper stepper(a.sys, cfg.dt);
    const long steps = step_count(cfg);
    for (long n = 1; n <= steps; ++n) {
        const std::vector<double> prev = u;
        stepper.step(u);
        const auto th1 = full_theta(u), th0 = full_theta(prev);
        check_finite_positive(th1, n, cfg, tr);
        StepAudit sa;
        if (tr.audit_available) {
            AuditAccumulator acc;
            for (int j = 0; j <= N; ++j) {
                const double th = 0.25 * (th1[j] + th1[j + 1] + th0[j] + th0[j + 1]);
                const double gt = 0.5 * ((th1[j + 1] - th1[j]) + (th0[j + 1] - th0[j])) / dx;
                ThermalState s = state_1d(th, 0.5 * (u[L.q(j)] + prev[L.q(j)]), gt);
                s.qdot = xvec((u[L.q(j)] - prev[L.q(j)]) / cfg.dt);
                const auto e = dissipation_residual(am, s, cfg.energy);
                acc.add(e);
            }
            sa = acc.a;
        }
        sa.t = n * cfg.dt;
        fill_theta_range(sa, th1);
        tr.audits.push_back(sa);
        if (n % cfg.snapshot_every == 0 || n == steps) snapshot(n * cfg.dt);
    }
    tr.steps = steps;
    return tr;
}

}  // namespace

Assembly assemble_rhs(const SimConfig& cfg) {
    cfg.grid.validate();
    if (kind_of(cfg.model) == ModelKind::MCV) return assemble_mcv(cfg);
    return assemble_temperature(make_temperature_problem(cfg));
}

Trajectory simulate(const SimConfig& cfg) {
    cfg.validate();
    switch (kind_of(cfg.model)) {
        case ModelKind::MCV: return simulate_mcv(cfg);
        case ModelKind::GK:
        case ModelKind::GKNonlinear: return simulate_coupled_gk(cfg);
        default: return simulate_temperature(cfg);
    }
}

// ---- Guyer-Krumhansl: q at nodes 0..N+1 (walls fixed to zero), theta at cell centres ----

Trajectory simulate_coupled_gk(const SimConfig& cfg) {
    cfg.validate();
    GKNonlinearParams gk;
    if (auto p = std::get_if<GKParams>(&cfg.model)) {
        gk = {p->tau, p->ell, p->varkappa, 0.0};
    } else if (auto p = std::get_if<GKNonlinearParams>(&cfg.model)) {
        gk = *p;
    } else {
        throw InvalidKind("simulate_coupled_gk needs a GK model");
    }
    const int N = cfg.grid.N;
    const double dx = cfg.grid.dx();
    const double L = cfg.grid.L;
    const double rc = cfg.material.rho_c();
    const bool imposed = cfg.gk_mode == GKMode::ImposedGradient;
    auto th_idx = [](int c) { return 2 * c; };
    auto q_idx = [](int i) { return 2 * i - 1; };
    const int n = 2 * N + 1;

    NonlinearSystem sys;
    sys.n = n;
    sys.kl = sys.ku = 2;
    sys.mass.assign(n, 0.0);
    for (int c = 0; c <= N; ++c) sys.mass[th_idx(c)] = imposed ? 1.0 : rc;
    for (int i = 1; i <= N; ++i) sys.mass[q_idx(i)] = gk.tau;

    auto qv = [&](const std::vector<double>& u, int i) {
        return (i <= 0 || i >= N + 1) ? 0.0 : u[q_idx(i)];
    };
    sys.rhs = [&](const std::vector<double>& u, std::vector<double>& F) {
        for (int c = 0; c <= N; ++c)
            F[th_idx(c)] = imposed ? 0.0 : -(qv(u, c + 1) - qv(u, c)) / dx + cfg.heat_supply;
        for (int i = 1; i <= N; ++i) {
            const double tl = u[th_idx(i - 1)], trr = u[th_idx(i)];
            const double th = 0.5 * (tl + trr);
            const double gt = (trr - tl) / dx;
            const double q = qv(u, i);
            const double qxx = (qv(u, i + 1) - 2.0 * q + qv(u, i - 1)) / (dx * dx);
            const double qx = (qv(u, i + 1) - qv(u, i - 1)) / (2.0 * dx);
            double r = -q - gk.kappa(th) * gt + 3.0 * gk.lambda2(th) * qxx;
            if (gk.delta != 0.0) r += 3.0 * gk.delta * gk.varkappa(th) * q * qx;
            F[q_idx(i)] = r;
        }
    };

    std::vector<double> u(n, 0.0);
    for (int c = 0; c <= N; ++c) {
        const double x = (c + 0.5) * dx;
        u[th_idx(c)] = imposed ? cfg.gk_theta_ref + cfg.gk_gradient * (x - 0.5 * L) : cfg.ic.theta0(x);
    }
    if (cfg.ic.q0)
        for (int i = 1; i <= N; ++i) u[q_idx(i)] = cfg.ic.q0(i * dx);

    Trajectory tr;
    for (int c = 0; c <= N; ++c) tr.x_theta.push_back((c + 0.5) * dx);
    for (int i = 0; i <= N + 1; ++i) tr.x_q.push_back(i * dx);
    auto theta_of = [&](const std::vector<double>& v) {
        std::vector<double> th(N + 1);
        for (int c = 0; c <= N; ++c) th[c] = v[th_idx(c)];
        return th;
    };
    auto snapshot = [&](double t) {
        Snapshot sn;
        sn.t = t;
        sn.theta = theta_of(u);
        for (int i = 0; i <= N + 1; ++i) sn.q.push_back(qv(u, i));
        tr.snapshots.push_back(std::move(sn));
    };

    const ModelParams am = gk.delta != 0.0 ? ModelParams(gk) : ModelParams(gk.linear());
    tr.audit_available = cfg.audit;

    check_finite_positive(theta_of(u), 0, cfg, tr);
    snapshot(0.0);
    const NewtonTrapezoid stepper(sys, cfg.dt);
    const long steps = step_count(cfg);
    for (long s = 1; s <= steps; ++s) {
        const std::vector<double> prev = u;
        stepper.step(u, s);
        const auto th = theta_of(u);
        check_finite_positive(th, s, cfg, tr);
        StepAudit sa;
        if (tr.audit_available) {
            AuditAccumulator acc;
            // With tau = 0 the flux rows are constraints and the start state need not satisfy
            // them, so the end state is audited instead of the step midpoint.
            const bool algebraic = gk.tau == 0.0;
            auto mid = [&](auto f) { return algebraic ? f(u) : 0.5 * (f(u) + f(prev)); };
            for (int i = 1; i <= N; ++i) {
                const double thn = mid([&](const auto& v) { return 0.5 * (v[th_idx(i - 1)] + v[th_idx(i)]); });
                const double gt = mid([&](const auto& v) { return (v[th_idx(i)] - v[th_idx(i - 1)]) / dx; });
                const double q = mid([&](const auto& v) { return qv(v, i); });
                const double qx = mid([&](const auto& v) { return (qv(v, i + 1) - qv(v, i - 1)) / (2.0 * dx); });
                const double qxx = mid([&](const auto& v) {
                    return (qv(v, i + 1) - 2.0 * qv(v, i) + qv(v, i - 1)) / (dx * dx);
                });
                ThermalState st = state_1d(thn, q, gt);
                st.qdot = xvec((qv(u, i) - qv(prev, i)) / cfg.dt);
                Mat3 g{};
                g[0][0] = qx;
                st.grad_q = g;
                st.lap_q = xvec(qxx);
                st.grad_div_q = xvec(qxx);
                const auto e = dissipation_residual(am, st);
                acc.add(e);
            }
            // Extra entropy flux through the walls, with one-sided q_x.
            for (int side = 0; side < 2; ++side) {
                const int i = side == 0 ? 0 : N + 1;
                const int j = side == 0 ? 1 : N;
                ThermalState st = state_1d(th[side == 0 ? 0 : N], qv(u, i), 0.0);
                Mat3 g{};
                g[0][0] = (side == 0 ? (qv(u, j) - qv(u, i)) : (qv(u, i) - qv(u, j))) / dx;
                st.grad_q = g;
                const Vec3 k = extra_entropy_flux(am, st);
                const Vec3 nrm = side == 0 ? Vec3{-1, 0, 0} : Vec3{1, 0, 0};
                acc.a.max_boundary_k = std::max(acc.a.max_boundary_k, std::abs(dot(k, nrm)));
            }
            sa = acc.a;
        }
        sa.t = s * cfg.dt;
        fill_theta_range(sa, th);
        tr.audits.push_back(sa);
        if (s % cfg.snapshot_every == 0 || s == steps) snapshot(s * cfg.dt);
    }
    tr.steps = steps;
    return tr;
}

double steady_gk_value(double kappa, double lambda2, double G, double L, double x) {
    if (!(lambda2 > 0.0)) throw InvalidInput("lambda^2 must be positive");
    const double ell = std::sqrt(3.0 * lambda2);
    const double a = (x - 0.5 * L) / ell, b = 0.5 * L / ell;
    // cosh(a)/cosh(b) evaluated without overflow for thin boundary layers
    const double ratio = std::exp(std::abs(a) - b) * (1.0 + std::exp(-2.0 * std::abs(a))) /
                         (1.0 + std::exp(-2.0 * b));
    return -kappa * G * (1.0 - ratio);
}

std::vector<double> steady_gk_profile(double kappa, double lambda2, double G, double L,
                                      const std::vector<double>& x) {
    std::vector<double> out;
    out.reserve(x.size());
    for (double v : x) out.push_back(steady_gk_value(kappa, lambda2, G, L, v));
    return out;
}

ModalComparison compare_modal_vs_pde(SimConfig cfg, int n, double theta_ref, double amplitude,
                                     bool discrete_eigenvalue) {
    const double L = cfg.grid.L;
    const double k = n * std::numbers::pi / L;
    cfg.bc = {BoundaryKind::Dirichlet, theta_ref, theta_ref};
    cfg.ic = {};
    cfg.ic.theta0 = [=](double x) { return theta_ref + amplitude * std::sin(k * x); };

    const double lam = discrete_eigenvalue ? discrete_laplacian_eigenvalue(n, L, cfg.grid.dx()) : k * k;
    const double lt = lam / cfg.material.rho_c();
    const Poly poly = characteristic_poly(cfg.model, lt);
    const RootSet roots = solve_poly(poly);
    std::vector<double> init(poly.degree(), 0.0);
    init[0] = amplitude;
    if (kind_of(cfg.model) == ModelKind::MCV && poly.degree() == 2)
        init[1] = -lt * scalar_1d(cfg.model).kappa * amplitude;
    const ModalSolution T(roots, init);

    const Trajectory tr = simulate(cfg);
    ModalComparison out;
    out.roots = roots.roots;
    double err_inf = 0.0, ref_inf = 0.0, err_l2 = 0.0, ref_l2 = 0.0;
    for (const auto& sn : tr.snapshots) {
        const double Tt = T(sn.t);
        double e2 = 0.0, r2 = 0.0;
        for (std::size_t i = 0; i < sn.theta.size(); ++i) {
            const double exact = Tt * std::sin(k * tr.x_theta[i]);
            const double e = sn.theta[i] - theta_ref - exact;
            err_inf = std::max(err_inf, std::abs(e));
            ref_inf = std::max(ref_inf, std::abs(exact));
            e2 += e * e;
            r2 += exact * exact;
        }
        err_l2 = std::max(err_l2, std::sqrt(e2));
        ref_l2 = std::max(ref_l2, std::sqrt(r2));
        ++out.samples;
    }
    out.linf_rel = ref_inf > 0 ? err_inf / ref_inf : err_inf;
    out.l2_rel = ref_l2 > 0 ? err_l2 / ref_l2 : err_l2;
    return out;
}

}  // namespace heatlab
