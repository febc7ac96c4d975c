#include "heatlab/energetics.hpp"

#include <cmath>

#include "heatlab/consistency.hpp"
#include "heatlab/errors.hpp"

namespace heatlab {

namespace {

template <class T>
const T& need(const std::optional<T>& v, const char* field) {
    if (!v) throw ContractError(std::string("state is missing field ") + field);
    return *v;
}

Mat3 inv_or_throw(const SymTensor3& t, const char* what) {
    if (!is_nonsingular(t, 1e-14)) throw SingularParameter(std::string(what) + " is singular");
    return inverse(t.mat());
}

double quad(const Mat3& m, const Vec3& v) { return dot(v, m * v); }

void require_theta(const ThermalState& s) {
    if (!(s.theta > 0.0)) throw InvalidInput("absolute temperature must be positive");
}

void require_coaxial(const QuintanillaParams& p) {
    const Mat3 a = p.xi.mat() * p.kappa.mat();
    const Mat3 b = p.kappa.mat() * p.xi.mat();
    const double scale = std::max(1e-300, p.xi.frobenius() * p.kappa.frobenius());
    if (frobenius(a - b) > 1e-12 * scale)
        throw InvalidInput("Quintanilla free energy needs coaxial (commuting) xi and kappa");
}

// Jeffreys pair for one choice of the inverse: M = (xi + kappa)^-1 or (xi - kappa)^-1.
struct JeffreysTerms {
    double psi, sigma;
    EnergyGradients grad;
};

JeffreysTerms jeffreys_terms(const JeffreysParams& p, const ThermalState& s, bool starred) {
    const double th = s.theta;
    const Mat3 M = starred ? inv_or_throw(p.xi - p.kappa, "xi - kappa")
                           : inv_or_throw(p.xi + p.kappa, "xi + kappa");
    const Vec3 w = s.q + p.kappa * s.grad_theta;
    const Vec3 Q = M * w;
    JeffreysTerms t{};
    t.psi = p.tau / (2.0 * th) * dot(w, Q);
    if (starred) {
        t.sigma = (dot(w, Q) + dot(s.grad_theta, p.kappa * s.grad_theta)) / (th * th);
    } else {
        const Mat3 kmx = p.kappa.mat() * M * p.xi.mat();
        t.sigma = (quad(M, s.q) + quad(kmx, s.grad_theta)) / (th * th);
    }
    t.grad.d_q = (p.tau / th) * Q;
    t.grad.d_grad_theta = (p.tau / th) * (p.kappa * Q);
    return t;
}

struct QuintanillaTerms {
    Vec3 p;
    Mat3 xi_inv, M, gap_inv;
};

QuintanillaTerms quintanilla_terms(const QuintanillaParams& m, const ThermalState& s) {
    require_coaxial(m);
    const Vec3& qd = need(s.qdot, "qdot");
    QuintanillaTerms t;
    t.p = m.tau * qd + m.kappa * s.grad_theta;
    t.xi_inv = inv_or_throw(m.xi, "xi");
    t.gap_inv = inv_or_throw(m.kappa - m.tau * m.xi, "kappa - tau xi");
    t.M = m.kappa.mat() * t.gap_inv * t.xi_inv;
    return t;
}

BurgersCase burgers_case_or_throw(const BurgersParams& p, const EnergyChoice& c) {
    if (c.burgers_case) return *c.burgers_case;
    const auto v = check_burgers(p.lambda, p.tau, p.mu, p.nu);
    if (!v.pass || !v.burgers_case)
        throw InvalidInput("Burgers parameters satisfy none of the consistency cases; " +
                           v.failed_condition);
    return *v.burgers_case;
}

Vec3 gk_div_flux_vec(const Mat3& g, const Vec3& q) { return transpose(g) * q; }

}  // namespace

BurgersCoefficients burgers_coefficients(const BurgersParams& p, double theta, BurgersCase c) {
    const double lam = p.lambda, tau = p.tau, mu = p.mu, nu = p.nu, th = theta;
    if (!(th > 0.0)) throw InvalidInput("absolute temperature must be positive");
    if (lam == 0.0) throw DegenerateModel("Burgers with lambda = 0; reduce to Jeffreys");
    BurgersCoefficients b;
    switch (c) {
        case BurgersCase::I:
            if (mu == 0.0) throw SingularParameter("case i needs mu != 0");
            b.a2 = 0.0;
            b.g1 = lam / (mu * th);
            b.a1 = tau / (mu * th);
            break;
        case BurgersCase::II:
            if (nu * tau == 0.0) throw SingularParameter("case ii needs nu tau != 0");
            b.a2 = lam * lam / (nu * tau * th);
            b.g1 = tau * b.a2 / lam;
            b.a1 = (tau * tau + lam) * b.a2 / (lam * lam);
            b.g2 = nu * tau * tau * b.a2 / (lam * lam);
            b.g3 = tau * nu * b.a2 / lam;
            b.a3 = tau * tau * nu * nu * b.a2 / (lam * lam);
            break;
        case BurgersCase::III: {
            const double D = nu * nu * tau * tau + mu * (nu * tau * tau - mu * lam);
            if (D == 0.0 || nu * tau == 0.0)
                throw SingularParameter("case iii denominator nu^2 tau^2 + mu(nu tau^2 - mu lambda) vanishes");
            b.a2 = nu * tau * lam * lam / (th * D);
            b.g1 = (nu * tau * tau - mu * lam) * b.a2 / (nu * tau * lam);
            b.a1 = (nu * tau * tau + (nu - mu) * lam) * b.a2 / (nu * lam * lam);
            b.g2 = (nu * tau * tau - mu * lam) * b.a2 / (lam * lam);
            b.g3 = tau * nu * b.a2 / lam;
            b.a3 = tau * tau * nu * nu * b.a2 / (lam * lam);
            break;
        }
    }
    return b;
}

bool has_free_energy(ModelKind k) { return k != ModelKind::Fourier; }

double free_energy(const ModelParams& m, const ThermalState& s, const EnergyChoice& c) {
    require_theta(s);
    const double th = s.theta;
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FourierParams>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, GN2Params>) {
                return quad(inv_or_throw(SymTensor3::from_mat(p.K), "K"), s.q) / (2.0 * th);
            } else if constexpr (std::is_same_v<T, MCVParams>) {
                return p.tau / (2.0 * th) * quad(inv_or_throw(p.kappa, "kappa"), s.q);
            } else if constexpr (std::is_same_v<T, JeffreysParams>) {
                double r = 0.0;
                if (c.jeffreys_weight != 0.0) r += c.jeffreys_weight * jeffreys_terms(p, s, false).psi;
                if (c.jeffreys_weight != 1.0)
                    r += (1.0 - c.jeffreys_weight) * jeffreys_terms(p, s, true).psi;
                return r;
            } else if constexpr (std::is_same_v<T, GN3Params>) {
                const Vec3 w = s.q + p.kappa * s.grad_theta;
                return quad(inv_or_throw(p.xi, "xi"), w) / (2.0 * th);
            } else if constexpr (std::is_same_v<T, QuintanillaParams>) {
                const auto t = quintanilla_terms(p, s);
                return (quad(t.M, t.p) + dot(s.q + 2.0 * t.p, t.xi_inv * s.q)) / (2.0 * th);
            } else if constexpr (std::is_same_v<T, BurgersParams>) {
                const auto b = burgers_coefficients(p, th, burgers_case_or_throw(p, c));
                const Vec3& qd = need(s.qdot, "qdot");
                const Vec3& g = s.grad_theta;
                return 0.5 * (b.a1 * dot(s.q, s.q) + b.a2 * dot(qd, qd) + b.a3 * dot(g, g)) +
                       b.g1 * dot(s.q, qd) + b.g2 * dot(s.q, g) + b.g3 * dot(qd, g);
            } else {
                return p.tau * th * dot(s.q, s.q) / (2.0 * p.varkappa(th));
            }
        },
        m);
}

double entropy_production(const ModelParams& m, const ThermalState& s, const EnergyChoice& c) {
    require_theta(s);
    const double th = s.theta, th2 = th * th;
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FourierParams>) {
                return dot(s.grad_theta, p.kappa * s.grad_theta) / th2;
            } else if constexpr (std::is_same_v<T, GN2Params>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, MCVParams>) {
                return quad(inv_or_throw(p.kappa, "kappa"), s.q) / th2;
            } else if constexpr (std::is_same_v<T, JeffreysParams>) {
                double r = 0.0;
                if (c.jeffreys_weight != 0.0)
                    r += c.jeffreys_weight * jeffreys_terms(p, s, false).sigma;
                if (c.jeffreys_weight != 1.0)
                    r += (1.0 - c.jeffreys_weight) * jeffreys_terms(p, s, true).sigma;
                return r;
            } else if constexpr (std::is_same_v<T, GN3Params>) {
                return dot(s.grad_theta, p.kappa * s.grad_theta) / th2;
            } else if constexpr (std::is_same_v<T, QuintanillaParams>) {
                const auto t = quintanilla_terms(p, s);
                return quad(t.gap_inv, t.p) / th2;
            } else if constexpr (std::is_same_v<T, BurgersParams>) {
                const auto A = burgers_A_matrix(p.lambda, p.tau, p.mu, p.nu, th,
                                                burgers_case_or_throw(p, c));
                const Vec3& qd = need(s.qdot, "qdot");
                const std::array<Vec3, 3> z{s.q, qd, s.grad_theta};
                double r = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) r += A.A(i, j) * dot(z[i], z[j]);
                return r / th;
            } else {
                const Mat3& g = need(s.grad_q, "grad_q");
                const double div = trace(g);
                const double l2 = p.ell * p.ell;
                return dot(s.q, s.q) / p.varkappa(th) + l2 * frobenius(g) * frobenius(g) +
                       2.0 * l2 * div * div;
            }
        },
        m);
}

EnergyGradients energy_gradients(const ModelParams& m, const ThermalState& s,
                                 const EnergyChoice& c) {
    require_theta(s);
    const double th = s.theta;
    return std::visit(
        [&](const auto& p) -> EnergyGradients {
            using T = std::decay_t<decltype(p)>;
            EnergyGradients g;
            if constexpr (std::is_same_v<T, FourierParams>) {
                return g;
            } else if constexpr (std::is_same_v<T, GN2Params>) {
                g.d_q = (1.0 / th) * (inv_or_throw(SymTensor3::from_mat(p.K), "K") * s.q);
            } else if constexpr (std::is_same_v<T, MCVParams>) {
                g.d_q = (p.tau / th) * (inv_or_throw(p.kappa, "kappa") * s.q);
            } else if constexpr (std::is_same_v<T, JeffreysParams>) {
                const double w = c.jeffreys_weight;
                if (w != 0.0) {
                    const auto t = jeffreys_terms(p, s, false).grad;
                    g.d_q = g.d_q + w * t.d_q;
                    g.d_grad_theta = g.d_grad_theta + w * t.d_grad_theta;
                }
                if (w != 1.0) {
                    const auto t = jeffreys_terms(p, s, true).grad;
                    g.d_q = g.d_q + (1.0 - w) * t.d_q;
                    g.d_grad_theta = g.d_grad_theta + (1.0 - w) * t.d_grad_theta;
                }
            } else if constexpr (std::is_same_v<T, GN3Params>) {
                g.d_q = (1.0 / th) * (inv_or_throw(p.xi, "xi") * (s.q + p.kappa * s.grad_theta));
                g.d_grad_theta = p.kappa * g.d_q;
            } else if constexpr (std::is_same_v<T, QuintanillaParams>) {
                const auto t = quintanilla_terms(p, s);
                g.d_q = (1.0 / th) * (t.xi_inv * (s.q + t.p));
                const Vec3 dp = (1.0 / th) * (t.M * t.p + t.xi_inv * s.q);
                g.d_qdot = p.tau * dp;
                g.d_grad_theta = p.kappa * dp;
            } else if constexpr (std::is_same_v<T, BurgersParams>) {
                const auto b = burgers_coefficients(p, th, burgers_case_or_throw(p, c));
                const Vec3& qd = need(s.qdot, "qdot");
                const Vec3& gt = s.grad_theta;
                g.d_q = b.a1 * s.q + b.g1 * qd + b.g2 * gt;
                g.d_qdot = b.g1 * s.q + b.a2 * qd + b.g3 * gt;
                g.d_grad_theta = b.g2 * s.q + b.g3 * qd + b.a3 * gt;
            } else {
                g.d_q = (p.tau * th / p.varkappa(th)) * s.q;
            }
            return g;
        },
        m);
}

Vec3 extra_entropy_flux(const ModelParams& m, const ThermalState& s) {
    double l2 = 0.0, delta = 0.0;
    if (auto p = std::get_if<GKParams>(&m)) {
        l2 = p->ell * p->ell;
    } else if (auto p = std::get_if<GKNonlinearParams>(&m)) {
        l2 = p->ell * p->ell;
        delta = p->delta;
    } else {
        throw InvalidKind("extra entropy flux is defined for the GK models only");
    }
    const Mat3& g = need(s.grad_q, "grad_q");
    const Vec3 k = (-l2) * (gk_div_flux_vec(g, s.q) + (2.0 * trace(g)) * s.q);
    return k - (delta * dot(s.q, s.q)) * s.q;
}

double extra_entropy_flux_divergence(const ModelParams& m, const ThermalState& s) {
    double l2 = 0.0, delta = 0.0;
    if (auto p = std::get_if<GKParams>(&m)) {
        l2 = p->ell * p->ell;
    } else if (auto p = std::get_if<GKNonlinearParams>(&m)) {
        l2 = p->ell * p->ell;
        delta = p->delta;
    } else {
        throw InvalidKind("extra entropy flux is defined for the GK models only");
    }
    const Mat3& g = need(s.grad_q, "grad_q");
    const Vec3& lap = need(s.lap_q, "lap_q");
    const Vec3& gdiv = need(s.grad_div_q, "grad_div_q");
    const double div = trace(g);
    const double fg = frobenius(g);
    double r = -l2 * (fg * fg + 2.0 * div * div + dot(s.q, lap + 2.0 * gdiv));
    if (delta != 0.0) r -= delta * (2.0 * dot(s.q, g * s.q) + dot(s.q, s.q) * div);
    return r;
}

bool no_flow(const Vec3& k, const Vec3& n, double tol) { return std::abs(dot(k, n)) <= tol; }

EnergyAudit dissipation_residual(const ModelParams& m, const ThermalState& s,
                                 const EnergyChoice& c) {
    require_theta(s);
    const ModelKind kind = kind_of(m);
    const double th = s.theta;
    EnergyAudit a;
    a.psi = free_energy(m, s, c);
    a.sigma = entropy_production(m, s, c);
    const auto g = energy_gradients(m, s, c);

    double terms[5] = {0, 0, 0, 0, 0};
    const bool nonlocal = kind == ModelKind::GK || kind == ModelKind::GKNonlinear;
    if (kind != ModelKind::Fourier) {
        bool needs_qdot = true;
        if (nonlocal) needs_qdot = std::visit(
            [](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, GKParams> || std::is_same_v<T, GKNonlinearParams>)
                    return p.tau != 0.0;
                return true;
            }, m);
        if (needs_qdot) terms[0] = dot(g.d_q, need(s.qdot, "qdot"));
    }
    if (kind == ModelKind::Quintanilla || kind == ModelKind::Burgers)
        terms[1] = dot(g.d_qdot, need(s.qddot, "qddot"));
    if (kind == ModelKind::Jeffreys || kind == ModelKind::GN3 || kind == ModelKind::Quintanilla ||
        kind == ModelKind::Burgers)
        terms[2] = dot(g.d_grad_theta, need(s.grad_theta_dot, "grad_theta_dot"));
    terms[3] = dot(s.q, s.grad_theta) / th;
    terms[4] = th * a.sigma;
    double extra = 0.0;
    if (nonlocal) {
        a.k_flux = extra_entropy_flux(m, s);
        extra = th * extra_entropy_flux_divergence(m, s);
    }
    a.residual = terms[0] + terms[1] + terms[2] + terms[3] + terms[4] + extra;
    a.scale = std::abs(extra);
    for (double t : terms) a.scale += std::abs(t);
    return a;
}

EnergyChoice convex_energy_family(double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) throw InvalidInput("convex weight must lie in [0, 1]");
    EnergyChoice c;
    c.jeffreys_weight = weight;
    return c;
}

}  // namespace heatlab
