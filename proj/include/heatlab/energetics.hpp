#pragma once

#include <optional>

#include "heatlab/models.hpp"

namespace heatlab {

enum class BurgersCase { I, II, III };

// Selects among the non-unique free energies. For Jeffreys the pair is
// weight * (psi, sigma) + (1 - weight) * (psi*, sigma*); weight = 1 is the default pair.
// For Burgers the proof case fixing the quadratic coefficients; when empty it is
// inferred from the parameters.
struct EnergyChoice {
    double jeffreys_weight = 1.0;
    std::optional<BurgersCase> burgers_case;
};

// Quadratic free energy coefficients for the Burgers conductor:
// rho psi = (a1|q|^2 + a2|qd|^2 + a3|g|^2)/2 + g1 q.qd + g2 q.g + g3 qd.g.
struct BurgersCoefficients {
    double a1 = 0, a2 = 0, a3 = 0, g1 = 0, g2 = 0, g3 = 0;
};
BurgersCoefficients burgers_coefficients(const BurgersParams& p, double theta, BurgersCase c);

struct EnergyGradients {
    Vec3 d_q{};
    Vec3 d_qdot{};
    Vec3 d_grad_theta{};
};

struct EnergyAudit {
    double psi = 0.0;
    double sigma = 0.0;
    Vec3 k_flux{};
    double residual = 0.0;
    double scale = 0.0;  // sum of magnitudes of the identity's terms

    double relative_residual() const { return scale > 0 ? std::abs(residual) / scale : std::abs(residual); }
};

bool has_free_energy(ModelKind k);

// rho * (psi - psi0(theta)).
double free_energy(const ModelParams& m, const ThermalState& s, const EnergyChoice& c = {});
// rho * sigma, or rho * zeta for the nonlocal models.
double entropy_production(const ModelParams& m, const ThermalState& s, const EnergyChoice& c = {});
EnergyGradients energy_gradients(const ModelParams& m, const ThermalState& s,
                                 const EnergyChoice& c = {});

Vec3 extra_entropy_flux(const ModelParams& m, const ThermalState& s);
double extra_entropy_flux_divergence(const ModelParams& m, const ThermalState& s);
bool no_flow(const Vec3& k, const Vec3& n, double tol = 1e-12);

// Defect of the reduced dissipation identity. Local models:
//   d_q.qd + d_qd.qdd + d_g.gd + q.g/theta + theta rho sigma
// nonlocal models:
//   d_q.qd + q.g/theta + theta div k + theta rho zeta
EnergyAudit dissipation_residual(const ModelParams& m, const ThermalState& s,
                                 const EnergyChoice& c = {});

// Convenience for the Jeffreys convex family with weight in [0, 1].
EnergyChoice convex_energy_family(double weight);

}  // namespace heatlab
