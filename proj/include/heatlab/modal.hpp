#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatlab/models.hpp"
#include "heatlab/poly.hpp"

namespace heatlab {

enum class BoundaryKind { Dirichlet, Neumann };

struct SpectralProblem {
    BoundaryKind bc = BoundaryKind::Dirichlet;
    double L = 1.0;
    int n_max = 1;
    double rho_c = 1.0;

    void validate() const;
    // Mode numbers: 1..n_max (Dirichlet) or 0..n_max-1 (Neumann).
    std::vector<int> indices() const;
};

std::vector<double> laplacian_eigenvalues(const SpectralProblem& p);
// Eigenvalue of the three-point Laplacian for the sampled mode sin or cos(n pi x / L).
double discrete_laplacian_eigenvalue(int n, double L, double dx);

Poly characteristic_poly(const ModelParams& m, double lambda_tilde);

bool routh_hurwitz_quadratic(double a2, double a1, double a0);
bool routh_hurwitz_cubic(double a3, double a2, double a1, double a0);
bool routh_hurwitz(const Poly& p);

// Discriminant of tau w^3 + w^2 + Lk w + Lx, equal to tau^4 prod (w_i - w_j)^2.
double mgt_discriminant(double tau, double kappa, double xi, double lambda_tilde);
double cubic_discriminant(const Poly& p);

enum class ModeClass { Decaying, OscillatoryDecaying, NeutralOscillation, Unstable, Mixed };
std::string class_name(ModeClass c);

// tol < 0 selects the default band 1e-9 * max |root|.
ModeClass classify_mode(const RootSet& roots, double tol = -1.0);

// T(t) = sum C_k exp(w_k t) matching T and its first d-1 derivatives at t = 0.
class ModalSolution {
public:
    ModalSolution(const RootSet& roots, const std::vector<double>& init);

    double operator()(double t) const { return derivative(t, 0); }
    double derivative(double t, int order) const;
    const std::vector<cplx>& coefficients() const { return c_; }

private:
    std::vector<cplx> w_;
    std::vector<cplx> c_;
};

ModalSolution modal_solution(const RootSet& roots, const std::vector<double>& init);

struct ModeReport {
    int n = 0;
    double Lambda = 0.0;
    double Lambda_tilde = 0.0;
    Poly poly;
    RootSet roots;
    bool rh_pass = false;
    std::optional<double> discriminant;
    ModeClass cls = ModeClass::Mixed;
};

ModeReport mode_report(const ModelParams& m, int n, double Lambda, double rho_c);
std::vector<ModeReport> modal_analysis(const ModelParams& m, const SpectralProblem& p);

}  // namespace heatlab
