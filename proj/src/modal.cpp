#include "heatlab/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heatlab/errors.hpp"

namespace heatlab {

void SpectralProblem::validate() const {
    if (!(L > 0.0)) throw InvalidInput("domain length must be positive");
    if (n_max < 1) throw InvalidInput("n_max must be at least 1");
    if (!(rho_c > 0.0)) throw InvalidInput("rho c must be positive");
}

std::vector<int> SpectralProblem::indices() const {
    std::vector<int> out;
    const int first = bc == BoundaryKind::Dirichlet ? 1 : 0;
    for (int i = 0; i < n_max; ++i) out.push_back(first + i);
    return out;
}

std::vector<double> laplacian_eigenvalues(const SpectralProblem& p) {
    p.validate();
    std::vector<double> out;
    for (int n : p.indices()) {
        const double k = n * std::numbers::pi / p.L;
        out.push_back(k * k);
    }
    return out;
}

double discrete_laplacian_eigenvalue(int n, double L, double dx) {
    const double s = std::sin(n * std::numbers::pi * dx / (2.0 * L));
    return 4.0 / (dx * dx) * s * s;
}

namespace {

Poly strip(std::vector<double> c) {
    while (c.size() > 1 && c.front() == 0.0) c.erase(c.begin());
    if (c.size() < 2) throw InvalidInput("characteristic polynomial degenerates to a constant");
    return {c};
}

}  // namespace

Poly characteristic_poly(const ModelParams& m, double lt) {
    if (!(lt >= 0.0)) throw InvalidInput("scaled eigenvalue must be non-negative");
    const Scalar1D s = scalar_1d(m);
    switch (s.kind) {
        case ModelKind::Fourier: return strip({1.0, lt * s.kappa});
        case ModelKind::MCV: return strip({s.tau, 1.0, lt * s.kappa});
        case ModelKind::GN2: return strip({1.0, 0.0, lt * s.xi});
        case ModelKind::Jeffreys: return strip({s.tau, 1.0 + lt * s.tau * s.kappa, lt * s.xi});
        case ModelKind::GN3: return strip({1.0, lt * s.kappa, lt * s.xi});
        case ModelKind::Quintanilla: return strip({s.tau, 1.0, lt * s.kappa, lt * s.xi});
        case ModelKind::Burgers:
            return strip({s.lambda, s.tau, 1.0 + lt * s.tau * s.kappa, lt * s.xi});
        default: break;
    }
    throw InvalidKind("no characteristic polynomial for model kind " + kind_name(s.kind));
}

bool routh_hurwitz_quadratic(double a2, double a1, double a0) {
    if (a2 == 0.0) throw InvalidInput("leading coefficient is zero");
    if (a2 < 0) { a2 = -a2; a1 = -a1; a0 = -a0; }
    return a1 > 0.0 && a0 > 0.0;
}

bool routh_hurwitz_cubic(double a3, double a2, double a1, double a0) {
    if (a3 == 0.0) throw InvalidInput("leading coefficient is zero");
    if (a3 < 0) { a3 = -a3; a2 = -a2; a1 = -a1; a0 = -a0; }
    return a2 > 0.0 && a1 > 0.0 && a0 > 0.0 && a2 * a1 > a0 * a3;
}

bool routh_hurwitz(const Poly& p) {
    const auto& c = p.coeffs;
    switch (p.degree()) {
        case 1:
            if (c[0] == 0.0) throw InvalidInput("leading coefficient is zero");
            return c[0] * c[1] > 0.0;
        case 2: return routh_hurwitz_quadratic(c[0], c[1], c[2]);
        case 3: return routh_hurwitz_cubic(c[0], c[1], c[2], c[3]);
        default: throw InvalidInput("Routh-Hurwitz implemented for degree 1..3");
    }
}

double cubic_discriminant(const Poly& p) {
    if (p.degree() != 3) throw InvalidInput("cubic discriminant needs a degree 3 polynomial");
    const double a = p.coeffs[0], b = p.coeffs[1], c = p.coeffs[2], d = p.coeffs[3];
    return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c - 4 * a * c * c * c -
           27 * a * a * d * d;
}

double mgt_discriminant(double tau, double kappa, double xi, double lt) {
    return -lt * (4.0 * kappa * kappa * kappa * tau * lt * lt +
                  9.0 * tau * xi * (3.0 * tau * xi - 2.0 * kappa) * lt + 4.0 * xi) +
           kappa * kappa * lt * lt;
}

std::string class_name(ModeClass c) {
    switch (c) {
        case ModeClass::Decaying: return "decaying";
        case ModeClass::OscillatoryDecaying: return "oscillatory_decaying";
        case ModeClass::NeutralOscillation: return "neutral_oscillation";
        case ModeClass::Unstable: return "unstable";
        case ModeClass::Mixed: return "mixed";
    }
    return "?";
}

ModeClass classify_mode(const RootSet& roots, double tol) {
    if (tol < 0.0) tol = 1e-9 * roots.max_abs();
    bool any_unstable = false, all_neg = true, any_complex = false, neutral_osc = false;
    for (const auto& w : roots.roots) {
        const bool cplx_root = std::abs(w.imag()) > tol;
        if (w.real() > tol) any_unstable = true;
        if (!(w.real() < -tol)) all_neg = false;
        if (cplx_root) any_complex = true;
        if (std::abs(w.real()) <= tol && cplx_root) neutral_osc = true;
    }
    if (any_unstable) return ModeClass::Unstable;
    if (all_neg) return any_complex ? ModeClass::OscillatoryDecaying : ModeClass::Decaying;
    if (neutral_osc) return ModeClass::NeutralOscillation;
    return ModeClass::Mixed;
}

ModalSolution::ModalSolution(const RootSet& roots, const std::vector<double>& init)
    : w_(roots.roots) {
    const std::size_t d = w_.size();
    if (init.size() != d) throw InvalidInput("initial data count must equal the polynomial degree");
    const double scale = std::max(1.0, roots.max_abs());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            if (std::abs(w_[i] - w_[j]) <= 1e-8 * scale)
                throw RepeatedRoot("modal solution needs distinct roots");
    // Vandermonde system V c = init with V[k][j] = w_j^k.
    std::vector<std::vector<cplx>> a(d, std::vector<cplx>(d + 1));
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < d; ++j) a[k][j] = std::pow(w_[j], static_cast<int>(k));
        a[k][d] = init[k];
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const cplx f = a[r][col] / a[col][col];
            for (std::size_t j = col; j <= d; ++j) a[r][j] -= f * a[col][j];
        }
    }
    c_.resize(d);
    for (std::size_t k = 0; k < d; ++k) c_[k] = a[k][d] / a[k][k];
}

double ModalSolution::derivative(double t, int order) const {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < w_.size(); ++k)
        acc += c_[k] * std::pow(w_[k], order) * std::exp(w_[k] * t);
    return acc.real();
}

ModalSolution modal_solution(const RootSet& roots, const std::vector<double>& init) {
    return ModalSolution(roots, init);
}

ModeReport mode_report(const ModelParams& m, int n, double Lambda, double rho_c) {
    ModeReport r;
    r.n = n;
    r.Lambda = Lambda;
    r.Lambda_tilde = Lambda / rho_c;
    r.poly = characteristic_poly(m, r.Lambda_tilde);
    r.roots = solve_poly(r.poly);
    r.rh_pass = routh_hurwitz(r.poly);
    if (r.poly.degree() == 3) r.discriminant = cubic_discriminant(r.poly);
    r.cls = classify_mode(r.roots);
    return r;
}

std::vector<ModeReport> modal_analysis(const ModelParams& m, const SpectralProblem& p) {
    const auto lam = laplacian_eigenvalues(p);
    const auto idx = p.indices();
    std::vector<ModeReport> out;
    out.reserve(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) out.push_back(mode_report(m, idx[i], lam[i], p.rho_c));
    return out;
}

}  // namespace heatlab
