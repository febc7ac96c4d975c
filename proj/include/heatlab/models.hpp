#pragma once

#include <optional>
#include <string>
#include <variant>

#include "heatlab/tensor.hpp"

namespace heatlab {

// c * theta^p; the "constant" member of the library is p = 0.
struct ThetaFunction {
    double coeff = 1.0;
    double exponent = 0.0;

    static ThetaFunction constant(double c) { return {c, 0.0}; }
    static ThetaFunction power(double c, double p) { return {c, p}; }

    double operator()(double theta) const;
    double derivative(double theta) const;
};

struct FourierParams { SymTensor3 kappa; };
// K is kept as a general matrix so the symmetry requirement can be checked.
struct GN2Params { Mat3 K; };
struct MCVParams { double tau; SymTensor3 kappa; };
struct JeffreysParams { double tau; SymTensor3 xi; SymTensor3 kappa; };
struct GN3Params { SymTensor3 xi; SymTensor3 kappa; };
struct QuintanillaParams { double tau; SymTensor3 xi; SymTensor3 kappa; };
// lambda carries units of s^2.
struct BurgersParams { double lambda; double tau; double mu; double nu; };

struct GKParams {
    double tau = 0.0;
    double ell = 0.0;
    ThetaFunction varkappa;

    double kappa(double theta) const { return varkappa(theta) / (theta * theta); }
    double lambda2(double theta) const { return ell * ell * varkappa(theta); }
};

struct GKNonlinearParams {
    double tau = 0.0;
    double ell = 0.0;
    ThetaFunction varkappa;
    double delta = 0.0;

    GKParams linear() const { return {tau, ell, varkappa}; }
    double kappa(double theta) const { return linear().kappa(theta); }
    double lambda2(double theta) const { return linear().lambda2(theta); }
    double mu(double theta) const { return 2.0 * delta * varkappa(theta); }
    double nu(double theta) const { return delta * varkappa(theta); }
};

using ModelParams = std::variant<FourierParams, GN2Params, MCVParams, JeffreysParams, GN3Params,
                                 QuintanillaParams, BurgersParams, GKParams, GKNonlinearParams>;

enum class ModelKind { Fourier, GN2, MCV, Jeffreys, GN3, Quintanilla, Burgers, GK, GKNonlinear };

ModelKind kind_of(const ModelParams& m);
std::string kind_name(ModelKind k);
ModelKind parse_kind(const std::string& s);  // throws InvalidKind

// Pointwise state; (grad_q)[i][j] = d q_i / d x_j.
struct ThermalState {
    double theta = 1.0;
    Vec3 q{};
    Vec3 grad_theta{};
    std::optional<Vec3> qdot;
    std::optional<Vec3> qddot;
    std::optional<Vec3> grad_theta_dot;
    std::optional<Mat3> grad_q;
    std::optional<Vec3> lap_q;       // nabla^2 q
    std::optional<Vec3> grad_div_q;  // grad (div q)
};

struct MaterialConstants {
    double rho = 1.0;
    double cv = 1.0;

    double rho_c() const { return rho * cv; }
    void validate() const;
};

struct RateResult {
    int order;  // 0: q itself (Fourier), 1: qdot, 2: qddot
    Vec3 value;
};

RateResult flux_rate(const ModelParams& m, const ThermalState& s);

Vec3 gn2_rate(const Mat3& K, const Vec3& grad_theta);
bool gn2_consistent(const Mat3& K, double tol = kDefaultTol);

enum class Limit {
    BurgersLambdaToZero,    // -> Jeffreys
    JeffreysKappaToZero,    // -> MCV
    MCVTauToZero,           // -> Fourier
    QuintanillaTauToZero,   // -> GN3
    GKLengthToZero,         // -> MCV
    GKNonlinearDeltaToZero, // -> GK
    GN3KappaToZero,         // -> GN2
};

// theta_ref is only read by the GK -> MCV reduction when kappa(theta) is not constant.
ModelParams reduce_limit(const ModelParams& m, Limit limit,
                         std::optional<double> theta_ref = std::nullopt);

BurgersParams burgers_from_mixture(double tau1, double tau2, double kappa1, double kappa2);

// 1-D reductions used by the modal and pde layers: the xx components of the tensors.
struct Scalar1D {
    ModelKind kind;
    double tau = 0.0;
    double xi = 0.0;     // mu for Burgers
    double kappa = 0.0;  // nu for Burgers; the conductivity for Fourier and MCV
    double lambda = 0.0; // Burgers lambda
};
Scalar1D scalar_1d(const ModelParams& m);

}  // namespace heatlab
