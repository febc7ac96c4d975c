#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "heatlab/banded.hpp"
#include "heatlab/energetics.hpp"
#include "heatlab/modal.hpp"
#include "heatlab/models.hpp"

namespace heatlab {

struct Grid1D {
    double L = 1.0;
    int N = 8;  // interior points

    double dx() const { return L / (N + 1); }
    void validate() const;
};

// Dirichlet: prescribed temperatures. Neumann: prescribed d theta / dx at x = 0 and x = L.
struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::Dirichlet;
    double left = 0.0;
    double right = 0.0;
};

using Profile = std::function<double(double)>;

struct InitialData {
    Profile theta0;
    Profile theta_dot0;   // default 0
    Profile theta_ddot0;  // default 0
    Profile q0;           // coupled MCV/GK; empty selects the model default
};

enum class GKMode { Coupled, ImposedGradient };

struct SimConfig {
    ModelParams model = FourierParams{SymTensor3::isotropic(1.0)};
    MaterialConstants material;
    Grid1D grid;
    BoundaryCondition bc;
    InitialData ic;
    double dt = 1e-3;
    double t_end = 1.0;
    double heat_supply = 0.0;  // rho r, uniform and constant in time, W m^-3
    int snapshot_every = 1;
    bool abort_on_nonpositive = true;
    bool audit = true;
    EnergyChoice energy;
    // GK only.
    GKMode gk_mode = GKMode::Coupled;
    double gk_gradient = 0.0;  // imposed d theta / dx
    double gk_theta_ref = 1.0; // temperature at x = L/2 for the imposed mode

    void validate() const;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> theta;
    std::vector<double> q;
};

struct StepAudit {
    double t = 0.0;
    double min_sigma = 0.0;
    double max_sigma = 0.0;
    double max_residual = 0.0;  // relative defect of the dissipation identity
    double theta_min = 0.0;
    double theta_max = 0.0;
    double max_boundary_k = 0.0;  // GK only: max |k.n| at the walls
};

struct Trajectory {
    std::vector<double> x_theta;
    std::vector<double> x_q;  // empty when no flux field is carried
    std::vector<Snapshot> snapshots;
    std::vector<StepAudit> audits;
    bool audit_available = false;
    std::string audit_note;
    bool theta_positive = true;
    long steps = 0;

    double min_sigma() const;
    double max_sigma() const;
    double max_residual() const;
    double max_boundary_k() const;
};

// Semi-discrete operator of a temperature equation (Fourier, Jeffreys, GN2, GN3,
// Quintanilla/MGT, Burgers/JP) or of the coupled MCV system.
struct Assembly {
    LinearSystem sys;
    int fields = 0;      // unknowns per node
    int nodes = 0;       // unknown nodes
    int first_node = 0;  // grid index of the first unknown node
    std::vector<std::string> names;
};

Assembly assemble_rhs(const SimConfig& cfg);

Trajectory simulate(const SimConfig& cfg);
Trajectory simulate_coupled_gk(const SimConfig& cfg);

// Steady solution of 3 l2 q'' - q = kappa G with q(0) = q(L) = 0.
double steady_gk_value(double kappa, double lambda2, double G, double L, double x);
std::vector<double> steady_gk_profile(double kappa, double lambda2, double G, double L,
                                      const std::vector<double>& x);

struct ModalComparison {
    double linf_rel = 0.0;
    double l2_rel = 0.0;
    int samples = 0;
    std::vector<cplx> roots;
};

// Single-mode run theta0 = theta_ref + amplitude sin(n pi x / L) with Dirichlet theta_ref,
// checked against the modal solution built on the three-point Laplacian eigenvalue
// (or on the continuous one when discrete_eigenvalue is false).
ModalComparison compare_modal_vs_pde(SimConfig cfg, int n, double theta_ref = 10.0,
                                     double amplitude = 1.0, bool discrete_eigenvalue = true);

}  // namespace heatlab
