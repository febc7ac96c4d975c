#include "heatlab/models.hpp"

#include <cmath>

#include "heatlab/errors.hpp"

namespace heatlab {

double ThetaFunction::operator()(double theta) const {
    if (exponent == 0.0) return coeff;
    return coeff * std::pow(theta, exponent);
}

double ThetaFunction::derivative(double theta) const {
    if (exponent == 0.0) return 0.0;
    return coeff * exponent * std::pow(theta, exponent - 1.0);
}

void MaterialConstants::validate() const {
    if (!(rho > 0.0) || !(cv > 0.0) || !std::isfinite(rho) || !std::isfinite(cv))
        throw InvalidInput("density and specific heat must be positive");
}

ModelKind kind_of(const ModelParams& m) { return static_cast<ModelKind>(m.index()); }

std::string kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Fourier: return "fourier";
        case ModelKind::GN2: return "gn2";
        case ModelKind::MCV: return "mcv";
        case ModelKind::Jeffreys: return "jeffreys";
        case ModelKind::GN3: return "gn3";
        case ModelKind::Quintanilla: return "quintanilla";
        case ModelKind::Burgers: return "burgers";
        case ModelKind::GK: return "gk";
        case ModelKind::GKNonlinear: return "gk_nonlinear";
    }
    return "?";
}

ModelKind parse_kind(const std::string& s) {
    for (int i = 0; i <= static_cast<int>(ModelKind::GKNonlinear); ++i) {
        auto k = static_cast<ModelKind>(i);
        if (kind_name(k) == s) return k;
    }
    if (s == "mgt") return ModelKind::Quintanilla;
    if (s == "jp" || s == "joseph_preziosi") return ModelKind::Burgers;
    throw InvalidKind("unknown model kind '" + s + "'");
}

namespace {

template <class T>
const T& need(const std::optional<T>& v, const char* field, const char* model) {
    if (!v) throw ContractError(std::string(model) + " rate law needs state field " + field);
    return *v;
}

void require_tau(double tau, const char* model, const char* hint) {
    if (tau == 0.0)
        throw DegenerateModel(std::string(model) + " with zero relaxation time; use reduce_limit(" +
                              hint + ")");
}

Vec3 mat_tvec(const Mat3& g, const Vec3& v) { return transpose(g) * v; }

Vec3 gk_rhs(double kappa, double lambda2, double mu, double nu,
            const ThermalState& s, const char* model) {
    const Vec3& lap = need(s.lap_q, "lap_q", model);
    const Vec3& gdiv = need(s.grad_div_q, "grad_div_q", model);
    Vec3 r = -s.q - kappa * s.grad_theta + lambda2 * (lap + 2.0 * gdiv);
    if (mu != 0.0 || nu != 0.0) {
        const Mat3& g = need(s.grad_q, "grad_q", model);
        r = r + mu * mat_tvec(g, s.q) + (nu * trace(g)) * s.q;
    }
    return r;
}

}  // namespace

RateResult flux_rate(const ModelParams& m, const ThermalState& s) {
    if (!(s.theta > 0.0)) throw InvalidInput("absolute temperature must be positive");
    return std::visit(
        [&](const auto& p) -> RateResult {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FourierParams>) {
                return {0, -(p.kappa * s.grad_theta)};
            } else if constexpr (std::is_same_v<T, GN2Params>) {
                return {1, gn2_rate(p.K, s.grad_theta)};
            } else if constexpr (std::is_same_v<T, MCVParams>) {
                require_tau(p.tau, "MCV", "MCVTauToZero");
                return {1, (1.0 / p.tau) * (-s.q - p.kappa * s.grad_theta)};
            } else if constexpr (std::is_same_v<T, JeffreysParams>) {
                require_tau(p.tau, "Jeffreys", "a Fourier-type reduction");
                const Vec3& gtd = need(s.grad_theta_dot, "grad_theta_dot", "Jeffreys");
                return {1, (1.0 / p.tau) *
                               (-s.q - p.xi * s.grad_theta - p.tau * (p.kappa * gtd))};
            } else if constexpr (std::is_same_v<T, GN3Params>) {
                const Vec3& gtd = need(s.grad_theta_dot, "grad_theta_dot", "GN3");
                return {1, -(p.xi * s.grad_theta) - p.kappa * gtd};
            } else if constexpr (std::is_same_v<T, QuintanillaParams>) {
                require_tau(p.tau, "Quintanilla", "QuintanillaTauToZero");
                const Vec3& qd = need(s.qdot, "qdot", "Quintanilla");
                const Vec3& gtd = need(s.grad_theta_dot, "grad_theta_dot", "Quintanilla");
                return {2, (1.0 / p.tau) * (-qd - p.xi * s.grad_theta - p.kappa * gtd)};
            } else if constexpr (std::is_same_v<T, BurgersParams>) {
                require_tau(p.lambda, "Burgers", "BurgersLambdaToZero");
                const Vec3& qd = need(s.qdot, "qdot", "Burgers");
                const Vec3& gtd = need(s.grad_theta_dot, "grad_theta_dot", "Burgers");
                return {2, (1.0 / p.lambda) * (-(p.tau * qd) - s.q - p.mu * s.grad_theta -
                                               (p.tau * p.nu) * gtd)};
            } else if constexpr (std::is_same_v<T, GKParams>) {
                require_tau(p.tau, "GK", "a nonlocal Fourier evaluation");
                const double th = s.theta;
                return {1, (1.0 / p.tau) *
                               gk_rhs(p.kappa(th), p.lambda2(th), 0.0, 0.0, s, "GK")};
            } else {
                require_tau(p.tau, "nonlinear GK", "a nonlocal Fourier evaluation");
                const double th = s.theta;
                return {1, (1.0 / p.tau) * gk_rhs(p.kappa(th), p.lambda2(th), p.mu(th),
                                                  p.nu(th), s, "nonlinear GK")};
            }
        },
        m);
}

Vec3 gn2_rate(const Mat3& K, const Vec3& grad_theta) { return -(K * grad_theta); }

bool gn2_consistent(const Mat3& K, double tol) {
    if (!is_symmetric(K, tol)) return false;
    return is_nonsingular(SymTensor3::from_mat(K), tol);
}

ModelParams reduce_limit(const ModelParams& m, Limit limit, std::optional<double> theta_ref) {
    auto bad = [&]() -> ModelParams {
        throw InvalidLimit("limit is not defined for model kind " + kind_name(kind_of(m)));
    };
    switch (limit) {
        case Limit::BurgersLambdaToZero:
            if (auto p = std::get_if<BurgersParams>(&m))
                return JeffreysParams{p->tau, SymTensor3::isotropic(p->mu),
                                      SymTensor3::isotropic(p->nu)};
            return bad();
        case Limit::JeffreysKappaToZero:
            if (auto p = std::get_if<JeffreysParams>(&m)) return MCVParams{p->tau, p->xi};
            return bad();
        case Limit::MCVTauToZero:
            if (auto p = std::get_if<MCVParams>(&m)) return FourierParams{p->kappa};
            return bad();
        case Limit::QuintanillaTauToZero:
            if (auto p = std::get_if<QuintanillaParams>(&m)) return GN3Params{p->xi, p->kappa};
            return bad();
        case Limit::GN3KappaToZero:
            if (auto p = std::get_if<GN3Params>(&m)) return GN2Params{p->xi.mat()};
            return bad();
        case Limit::GKNonlinearDeltaToZero:
            if (auto p = std::get_if<GKNonlinearParams>(&m)) return p->linear();
            return bad();
        case Limit::GKLengthToZero: {
            const GKParams* p = std::get_if<GKParams>(&m);
            if (!p) return bad();
            double kappa;
            if (p->varkappa.exponent == 2.0) {
                kappa = p->varkappa.coeff;
            } else if (theta_ref) {
                if (!(*theta_ref > 0.0)) throw InvalidInput("reference temperature must be positive");
                kappa = p->kappa(*theta_ref);
            } else {
                throw InvalidLimit(
                    "GK conductivity depends on temperature; a reference temperature is required");
            }
            return MCVParams{p->tau, SymTensor3::isotropic(kappa)};
        }
    }
    return bad();
}

BurgersParams burgers_from_mixture(double tau1, double tau2, double kappa1, double kappa2) {
    if (!(tau1 > 0.0) || !(tau2 > 0.0))
        throw InvalidInput("mixture relaxation times must be positive");
    const double tau = tau1 + tau2;
    return {tau1 * tau2, tau, kappa1 + kappa2, (tau1 * kappa2 + tau2 * kappa1) / tau};
}

Scalar1D scalar_1d(const ModelParams& m) {
    Scalar1D r;
    r.kind = kind_of(m);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FourierParams>) {
                r.kappa = p.kappa.xx();
            } else if constexpr (std::is_same_v<T, GN2Params>) {
                r.xi = p.K[0][0];
            } else if constexpr (std::is_same_v<T, MCVParams>) {
                r.tau = p.tau;
                r.kappa = p.kappa.xx();
            } else if constexpr (std::is_same_v<T, JeffreysParams> ||
                                 std::is_same_v<T, QuintanillaParams>) {
                r.tau = p.tau;
                r.xi = p.xi.xx();
                r.kappa = p.kappa.xx();
            } else if constexpr (std::is_same_v<T, GN3Params>) {
                r.xi = p.xi.xx();
                r.kappa = p.kappa.xx();
            } else if constexpr (std::is_same_v<T, BurgersParams>) {
                r.lambda = p.lambda;
                r.tau = p.tau;
                r.xi = p.mu;
                r.kappa = p.nu;
            } else {
                r.tau = p.tau;
            }
        },
        m);
    return r;
}

}  // namespace heatlab
