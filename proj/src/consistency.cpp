#include "heatlab/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heatlab/errors.hpp"

namespace heatlab {

namespace {

constexpr double kDeadBand = 1e-12;

ConsistencyVerdict passed(double margin, std::string tag = {}) {
    ConsistencyVerdict v;
    v.pass = true;
    v.status = VerdictStatus::Pass;
    v.margin = margin;
    v.case_tag = std::move(tag);
    return v;
}

ConsistencyVerdict failed(std::string why, double margin, FailureKind kind) {
    ConsistencyVerdict v;
    v.pass = false;
    v.status = VerdictStatus::Fail;
    v.failed_condition = std::move(why);
    v.margin = std::min(margin, 0.0);
    v.failure = kind;
    return v;
}

Vec3 column(const Mat3& m, int j) { return {m[0][j], m[1][j], m[2][j]}; }

// State whose gradient lies along the most negative eigendirection of t.
ThermalState gradient_witness(const SymTensor3& t) {
    ThermalState s;
    s.theta = 1.0;
    s.grad_theta = column(t.eigenvectors(), 0);
    s.q = {0, 0, 0};
    return s;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

std::string status_name(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Pass: return "pass";
        case VerdictStatus::Fail: return "fail";
        case VerdictStatus::Marginal: return "marginal";
        case VerdictStatus::Excluded: return "excluded";
    }
    return "?";
}

ConsistencyVerdict check_fourier(const SymTensor3& kappa) {
    const auto d = psd_test(kappa);
    if (d.verdict) return passed(d.margin);
    auto v = failed("kappa is not positive semidefinite", d.margin, FailureKind::Sign);
    v.witness = gradient_witness(kappa);
    return v;
}

ConsistencyVerdict check_gn2(const Mat3& K) {
    if (!is_symmetric(K, kDefaultTol))
        return failed("K is not symmetric", -frobenius(K - transpose(K)), FailureKind::Structural);
    const auto d = nonsingular_test(SymTensor3::from_mat(K));
    if (!d.verdict) return failed("K is singular", -1.0, FailureKind::Structural);
    return passed(d.margin);
}

ConsistencyVerdict check_mcv(double tau, const SymTensor3& kappa) {
    (void)tau;  // any sign admitted; stability is reported by the modal layer
    const auto d = pd_test(kappa);
    if (d.verdict) return passed(d.margin);
    auto v = failed("kappa is not positive definite", d.margin, FailureKind::Sign);
    ThermalState s;
    s.theta = 1.0;
    s.q = column(kappa.eigenvectors(), 0);
    v.witness = s;
    return v;
}

ConsistencyVerdict check_jeffreys(const SymTensor3& xi, const SymTensor3& kappa) {
    const auto dxi = pd_test(xi);
    if (!dxi.verdict) return failed("xi is not positive definite", dxi.margin, FailureKind::Sign);
    const Mat3 X = xi.mat(), K = kappa.mat();
    const double beta = trace(K * X) / trace(X * X);
    const double resid = (kappa - beta * xi).frobenius();
    const double kn = kappa.frobenius();
    if (resid > kDefaultTol * std::max(kn, 1e-300) && kn > 0.0)
        return failed("kappa is not proportional to xi (residual " + fmt(resid / kn) + ")",
                      -resid / kn, FailureKind::Structural);
    if (beta < -kDefaultTol)
        return failed("kappa = beta xi with beta < 0", beta, FailureKind::Sign);
    auto v = passed(std::min(dxi.margin, std::max(beta, 0.0)), "beta=" + fmt(beta));
    if (std::abs(beta) <= kDeadBand && kn > 0.0) v.status = VerdictStatus::Marginal;
    return v;
}

ConsistencyVerdict check_gn3(const SymTensor3& xi, const SymTensor3& kappa) {
    const auto dxi = nonsingular_test(xi);
    if (!dxi.verdict) return failed("xi is singular", -1.0, FailureKind::Structural);
    const auto dk = pd_test(kappa);
    if (!dk.verdict) {
        auto v = failed("kappa is not positive definite", dk.margin, FailureKind::Sign);
        v.witness = gradient_witness(kappa);
        return v;
    }
    return passed(std::min(dxi.margin, dk.margin));
}

ConsistencyVerdict check_quintanilla(double tau, const SymTensor3& xi, const SymTensor3& kappa) {
    if (tau == 0.0) throw DegenerateModel("Quintanilla check with tau = 0; use check_gn3");
    const SymTensor3 gap = kappa - tau * xi;
    const Vec3 eg = gap.eigenvalues();
    const Vec3 ex = xi.eigenvalues();
    double xmin = std::abs(ex[0]);
    for (double e : ex) xmin = std::min(xmin, std::abs(e));
    const double margin = std::min(eg[0], xmin);
    const double scale = std::max(1.0, gap.frobenius());

    if (!is_nonsingular(xi)) return failed("xi is singular", margin, FailureKind::Structural);
    if (!(eg[0] > kDefaultTol * scale)) {
        auto v = failed("kappa - tau xi is not positive definite", margin, FailureKind::Sign);
        if (std::abs(eg[0]) <= kDeadBand * scale) v.status = VerdictStatus::Marginal;
        ThermalState s;
        s.theta = 1.0;
        s.qdot = (1.0 / tau) * column(gap.eigenvectors(), 0);
        s.grad_theta_dot = Vec3{0, 0, 0};
        v.witness = s;
        return v;
    }
    return passed(margin);
}

ConsistencyVerdict check_quintanilla(double tau, double xi, double kappa) {
    return check_quintanilla(tau, SymTensor3::isotropic(xi), SymTensor3::isotropic(kappa));
}

ConsistencyVerdict check_burgers(double lambda, double tau, double mu, double nu) {
    if (lambda == 0.0) throw DegenerateModel("Burgers check with lambda = 0; reduce to Jeffreys");
    const double s = std::max({1.0, std::abs(lambda), std::abs(tau), std::abs(mu), std::abs(nu)});
    const double tn = tau * nu;
    const bool tn_zero = std::abs(tn) <= kDeadBand * s * s;
    const bool mu_zero = std::abs(mu) <= kDeadBand * s;
    const bool borderline = (tn_zero && tn != 0.0) || (mu_zero && mu != 0.0);
    const double gap = nu * tau * tau - lambda * mu;

    auto tag = [&](ConsistencyVerdict v, BurgersCase c, const char* name) {
        v.burgers_case = c;
        v.case_tag = name;
        if (borderline) v.status = VerdictStatus::Marginal;
        return v;
    };
    if (tn_zero && mu > 0.0 && !mu_zero && lambda < 0.0)
        return tag(passed(std::min(mu, -lambda)), BurgersCase::I, "i");
    if (!tn_zero && mu_zero && nu > 0.0) return tag(passed(nu), BurgersCase::II, "ii");
    if (!tn_zero && mu > 0.0 && !mu_zero && gap >= -kDeadBand * s * s * s) {
        auto v = tag(passed(std::min(mu, std::max(gap, 0.0))), BurgersCase::III, "iii");
        if (std::abs(gap) <= kDeadBand * s * s * s && gap != 0.0) v.status = VerdictStatus::Marginal;
        return v;
    }

    std::string why;
    double margin;
    if (tn_zero) {
        why = "tau nu = 0 requires mu > 0 and lambda < 0";
        margin = std::min(mu, -lambda);
    } else if (mu_zero) {
        why = "mu = 0 requires nu > 0";
        margin = nu;
    } else if (mu < 0.0) {
        why = "mu < 0";
        margin = mu;
    } else {
        why = "nu tau^2 < lambda mu";
        margin = gap;
    }
    auto v = failed(why, margin, FailureKind::Sign);
    if (borderline) v.status = VerdictStatus::Marginal;
    return v;
}

ConsistencyVerdict check_burgers_full(double lambda, double tau, double mu, double nu) {
    const double gap = nu * tau * tau - lambda * mu;
    const double margin = std::min({mu, nu, lambda, tau, gap});
    if (lambda < 0.0 && tau < 0.0 && std::abs(mu) <= kDeadBand && nu > 0.0) {
        ConsistencyVerdict v = failed(
            "excluded branch lambda < 0, tau < 0 (stability would depend on the domain)", margin,
            FailureKind::Structural);
        v.status = VerdictStatus::Excluded;
        return v;
    }
    if (mu < 0.0) return failed("mu < 0", margin, FailureKind::Sign);
    if (!(nu > 0.0)) return failed("nu <= 0", margin, FailureKind::Structural);
    if (!(lambda > 0.0)) return failed("lambda <= 0", margin, FailureKind::Structural);
    if (!(tau > 0.0)) return failed("tau <= 0", margin, FailureKind::Structural);
    if (gap < 0.0) return failed("nu tau^2 < lambda mu", margin, FailureKind::Sign);
    auto v = passed(margin);
    if (mu > 0.0) {
        v.burgers_case = BurgersCase::III;
        v.case_tag = "iii";
    } else {
        v.burgers_case = BurgersCase::II;
        v.case_tag = "ii";
    }
    return v;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi >= lo) || count < 1)
        throw InvalidInput("log-spaced samples need 0 < lo <= hi and count >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
    out.back() = hi;
    return out;
}

ConsistencyVerdict check_gk(double ell, const ThetaFn& varkappa, const ThetaFn& kappa,
                            const ThetaFn& lambda2, const std::vector<double>& theta_samples) {
    if (theta_samples.empty()) throw InvalidInput("GK check needs temperature samples");
    double min_vk = INFINITY, worst = 0.0, scale = 0.0;
    for (double th : theta_samples) {
        if (!(th > 0.0)) throw InvalidInput("temperature samples must be positive");
        if (varkappa) min_vk = std::min(min_vk, varkappa(th));
        const double a = kappa(th) * ell * ell * th * th;
        const double b = lambda2(th);
        worst = std::max(worst, std::abs(a - b));
        scale = std::max({scale, std::abs(a), std::abs(b)});
    }
    if (varkappa && !(min_vk > 0.0))
        return failed("varkappa(theta) is not positive on the samples", min_vk, FailureKind::Sign);
    if (worst > kDefaultTol * std::max(scale, 1e-300))
        return failed("kappa(theta) ell^2 theta^2 != lambda^2(theta) (defect " + fmt(worst) + ")",
                      -worst, FailureKind::Structural);
    return passed(varkappa ? min_vk : 0.0);
}

ConsistencyVerdict check_gk_nonlinear(double ell, const ThetaFn& varkappa, const ThetaFn& kappa,
                                      const ThetaFn& lambda2, const ThetaFn& mu,
                                      const ThetaFn& nu, double delta,
                                      const std::vector<double>& theta_samples) {
    auto v = check_gk(ell, varkappa, kappa, lambda2, theta_samples);
    if (!v.pass) return v;
    for (double th : theta_samples) {
        const double m = mu(th), n = nu(th);
        const double s = std::max({std::abs(m), std::abs(n), 1e-300});
        if (std::abs(m - 2.0 * n) > kDefaultTol * s)
            return failed("mu(theta) != 2 nu(theta)", -std::abs(m - 2.0 * n),
                          FailureKind::Structural);
        if (varkappa) {
            const double target = 2.0 * delta * varkappa(th);
            if (std::abs(m - target) > kDefaultTol * std::max(s, std::abs(target)))
                return failed("mu(theta) != 2 delta varkappa(theta)", -std::abs(m - target),
                              FailureKind::Structural);
        }
    }
    return v;
}

QuadFormMatrix quintanilla_A_matrix(double tau, double xi, double kappa, double theta) {
    if (!(theta > 0.0)) throw InvalidInput("absolute temperature must be positive");
    const double gap = kappa - tau * xi;
    if (gap == 0.0) throw SingularParameter("kappa = tau xi makes the quadratic form singular");
    const double d = theta * gap;
    QuadFormMatrix a;
    a.m = SymTensor3(0.0, tau * tau / d, kappa * kappa / d, 0.0, 0.0, kappa * tau / d);
    a.origin = {"0", "tau^2/(theta(kappa-tau xi))", "kappa^2/(theta(kappa-tau xi))", "0", "0",
                "kappa tau/(theta(kappa-tau xi))"};
    return a;
}

QuadFormMatrix burgers_A_matrix(double lambda, double tau, double mu, double nu, double theta,
                                BurgersCase c) {
    const auto b = burgers_coefficients({lambda, tau, mu, nu}, theta, c);
    const double l = lambda;
    QuadFormMatrix a;
    a.m = SymTensor3(b.g1 / l, tau * b.a2 / l - b.g1, mu * b.g3 / l,
                     0.5 * (tau * b.g1 / l + b.a2 / l - b.a1),
                     0.5 * (-1.0 / theta + b.g3 / l + mu * b.g1 / l),
                     0.5 * (tau * b.g3 / l - b.g2 + mu * b.a2 / l));
    a.origin = {"g1/lambda", "tau a2/lambda - g1", "mu g3/lambda",
                "(tau g1/lambda + a2/lambda - a1)/2", "(-1/theta + g3/lambda + mu g1/lambda)/2",
                "(tau g3/lambda - g2 + mu a2/lambda)/2"};
    return a;
}

ConsistencyVerdict check_model(const ModelParams& m, const CheckOptions& opt) {
    const auto samples = log_spaced(opt.theta_min, opt.theta_max, opt.theta_count);
    return std::visit(
        [&](const auto& p) -> ConsistencyVerdict {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FourierParams>) {
                return check_fourier(p.kappa);
            } else if constexpr (std::is_same_v<T, GN2Params>) {
                return check_gn2(p.K);
            } else if constexpr (std::is_same_v<T, MCVParams>) {
                return check_mcv(p.tau, p.kappa);
            } else if constexpr (std::is_same_v<T, JeffreysParams>) {
                return check_jeffreys(p.xi, p.kappa);
            } else if constexpr (std::is_same_v<T, GN3Params>) {
                return check_gn3(p.xi, p.kappa);
            } else if constexpr (std::is_same_v<T, QuintanillaParams>) {
                if (p.tau == 0.0) return check_gn3(p.xi, p.kappa);
                return check_quintanilla(p.tau, p.xi, p.kappa);
            } else if constexpr (std::is_same_v<T, BurgersParams>) {
                if (p.lambda == 0.0)
                    return check_jeffreys(SymTensor3::isotropic(p.mu), SymTensor3::isotropic(p.nu));
                return check_burgers(p.lambda, p.tau, p.mu, p.nu);
            } else if constexpr (std::is_same_v<T, GKParams>) {
                return check_gk(
                    p.ell, [&](double t) { return p.varkappa(t); },
                    [&](double t) { return p.kappa(t); }, [&](double t) { return p.lambda2(t); },
                    samples);
            } else {
                return check_gk_nonlinear(
                    p.ell, [&](double t) { return p.varkappa(t); },
                    [&](double t) { return p.kappa(t); }, [&](double t) { return p.lambda2(t); },
                    [&](double t) { return p.mu(t); }, [&](double t) { return p.nu(t); }, p.delta,
                    samples);
            }
        },
        m);
}

}  // namespace heatlab
