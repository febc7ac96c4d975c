#include "heatlab/sampling.hpp"

#include <cmath>
#include <numbers>

#include "heatlab/errors.hpp"

namespace heatlab {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Vec3 random_vec(Rng& rng, double scale) {
    return {uniform(rng, -scale, scale), uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

Mat3 random_rotation(Rng& rng) {
    // unit quaternion
    double w, x, y, z, n;
    do {
        w = uniform(rng, -1, 1); x = uniform(rng, -1, 1);
        y = uniform(rng, -1, 1); z = uniform(rng, -1, 1);
        n = std::sqrt(w * w + x * x + y * y + z * z);
    } while (n < 0.1 || n > 1.0);
    w /= n; x /= n; y /= n; z /= n;
    return {{{1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)},
             {2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)},
             {2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)}}};
}

SymTensor3 rotated_diag(const Mat3& R, const Vec3& d) {
    Mat3 D{};
    for (int i = 0; i < 3; ++i) D[i][i] = d[i];
    return SymTensor3::from_mat(R * D * transpose(R));
}

ModelParams random_admissible(ModelKind kind, Rng& rng) {
    auto spd = [&](const Mat3& R, double lo, double hi) {
        return rotated_diag(R, {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)});
    };
    const Mat3 R = random_rotation(rng);
    switch (kind) {
        case ModelKind::Fourier: return FourierParams{spd(R, 0.1, 2.0)};
        case ModelKind::GN2: return GN2Params{spd(R, 0.1, 2.0).mat()};
        case ModelKind::MCV: return MCVParams{uniform(rng, 0.1, 2.0), spd(R, 0.1, 2.0)};
        case ModelKind::Jeffreys: {
            const SymTensor3 xi = spd(R, 0.2, 2.0);
            // kappa proportional to xi, kept below it so xi - kappa stays invertible
            return JeffreysParams{uniform(rng, 0.1, 2.0), xi, uniform(rng, 0.1, 0.8) * xi};
        }
        case ModelKind::GN3: return GN3Params{spd(R, 0.1, 2.0), spd(R, 0.1, 2.0)};
        case ModelKind::Quintanilla: {
            const double tau = uniform(rng, 0.1, 2.0);
            const Vec3 xi{uniform(rng, 0.1, 2.0), uniform(rng, 0.1, 2.0), uniform(rng, 0.1, 2.0)};
            Vec3 ka;
            for (int i = 0; i < 3; ++i) ka[i] = tau * xi[i] + uniform(rng, 0.1, 1.0);
            return QuintanillaParams{tau, rotated_diag(R, xi), rotated_diag(R, ka)};
        }
        case ModelKind::Burgers: {
            const double lambda = uniform(rng, 0.1, 1.0), tau = uniform(rng, 0.5, 2.0);
            const double mu = uniform(rng, 0.1, 1.0);
            return BurgersParams{lambda, tau, mu, mu * lambda / (tau * tau) * uniform(rng, 1.1, 3.0)};
        }
        case ModelKind::GK:
            return GKParams{uniform(rng, 0.1, 1.0), uniform(rng, 0.1, 1.0),
                            ThetaFunction::power(uniform(rng, 0.5, 2.0), uniform(rng, 0.0, 1.0) < 0.5 ? 0.0 : 2.0)};
        case ModelKind::GKNonlinear:
            return GKNonlinearParams{uniform(rng, 0.1, 1.0), uniform(rng, 0.1, 1.0),
                                     ThetaFunction::power(uniform(rng, 0.5, 2.0), 0.0),
                                     uniform(rng, 0.1, 1.0)};
    }
    throw InvalidKind("unknown model kind");
}

ThermalState random_state(Rng& rng) {
    ThermalState s;
    s.theta = uniform(rng, 0.5, 3.0);
    s.q = random_vec(rng);
    s.grad_theta = random_vec(rng);
    s.qdot = random_vec(rng);
    s.qddot = random_vec(rng);
    s.grad_theta_dot = random_vec(rng);
    Mat3 g;
    for (auto& row : g) row = random_vec(rng);
    s.grad_q = g;
    s.lap_q = random_vec(rng);
    s.grad_div_q = random_vec(rng);
    return s;
}

ThermalState drive_rates(const ModelParams& m, ThermalState s) {
    const ModelKind k = kind_of(m);
    if (k == ModelKind::Fourier) {
        s.q = flux_rate(m, s).value;
        return s;
    }
    if (auto p = std::get_if<GKParams>(&m); p && p->tau == 0.0) {
        const double th = s.theta;
        s.q = -p->kappa(th) * s.grad_theta + p->lambda2(th) * (*s.lap_q + 2.0 * *s.grad_div_q);
        return s;
    }
    const RateResult r = flux_rate(m, s);
    if (r.order == 2) s.qddot = r.value;
    else s.qdot = r.value;
    return s;
}

}  // namespace heatlab
