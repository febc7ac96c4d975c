#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "heatlab/energetics.hpp"
#include "heatlab/models.hpp"

namespace heatlab {

enum class VerdictStatus { Pass, Fail, Marginal, Excluded };
// Sign failures admit a state with negative entropy production; structural ones are
// violations of a functional or class requirement.
enum class FailureKind { None, Sign, Structural };

struct ConsistencyVerdict {
    bool pass = false;
    VerdictStatus status = VerdictStatus::Fail;
    std::string case_tag;
    std::optional<BurgersCase> burgers_case;
    std::string failed_condition;
    double margin = 0.0;
    FailureKind failure = FailureKind::None;
    std::optional<ThermalState> witness;
};

std::string status_name(VerdictStatus s);

struct QuadFormMatrix {
    SymTensor3 m;  // blocks ordered (q, qdot, grad theta)
    std::array<std::string, 6> origin;  // xx yy zz xy xz yz

    double A(int i, int j) const { return m(i, j); }
};

ConsistencyVerdict check_fourier(const SymTensor3& kappa);
ConsistencyVerdict check_gn2(const Mat3& K);
ConsistencyVerdict check_mcv(double tau, const SymTensor3& kappa);
ConsistencyVerdict check_jeffreys(const SymTensor3& xi, const SymTensor3& kappa);
ConsistencyVerdict check_gn3(const SymTensor3& xi, const SymTensor3& kappa);
ConsistencyVerdict check_quintanilla(double tau, const SymTensor3& xi, const SymTensor3& kappa);
ConsistencyVerdict check_quintanilla(double tau, double xi, double kappa);
ConsistencyVerdict check_burgers(double lambda, double tau, double mu, double nu);
ConsistencyVerdict check_burgers_full(double lambda, double tau, double mu, double nu);

using ThetaFn = std::function<double(double)>;

std::vector<double> log_spaced(double lo, double hi, int count = 32);

ConsistencyVerdict check_gk(double ell, const ThetaFn& varkappa, const ThetaFn& kappa,
                            const ThetaFn& lambda2, const std::vector<double>& theta_samples);
ConsistencyVerdict check_gk_nonlinear(double ell, const ThetaFn& varkappa, const ThetaFn& kappa,
                                      const ThetaFn& lambda2, const ThetaFn& mu,
                                      const ThetaFn& nu, double delta,
                                      const std::vector<double>& theta_samples);

QuadFormMatrix quintanilla_A_matrix(double tau, double xi, double kappa, double theta);
QuadFormMatrix burgers_A_matrix(double lambda, double tau, double mu, double nu, double theta,
                                BurgersCase c);

struct CheckOptions {
    double theta_min = 1.0;
    double theta_max = 1000.0;
    int theta_count = 32;
};

// Dispatch on model kind.
ConsistencyVerdict check_model(const ModelParams& m, const CheckOptions& opt = {});

}  // namespace heatlab
