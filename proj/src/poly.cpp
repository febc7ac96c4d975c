#include "heatlab/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "heatlab/errors.hpp"

namespace heatlab {

cplx Poly::operator()(cplx w) const {
    cplx acc = 0.0;
    for (double a : coeffs) acc = acc * w + a;
    return acc;
}

double Poly::residual_scale(cplx w) const {
    double acc = 0.0;
    const double r = std::abs(w);
    for (double a : coeffs) acc = acc * r + std::abs(a);
    return acc;
}

double RootSet::max_abs() const {
    double m = 0.0;
    for (const auto& w : roots) m = std::max(m, std::abs(w));
    return m;
}

double RootSet::max_real() const {
    double m = -INFINITY;
    for (const auto& w : roots) m = std::max(m, w.real());
    return m;
}

namespace {

cplx derivative(const Poly& p, cplx w) {
    cplx acc = 0.0;
    const int d = p.degree();
    for (int k = 0; k < d; ++k) acc = acc * w + p.coeffs[k] * double(d - k);
    return acc;
}

// Newton polish that only accepts steps which reduce the residual.
cplx polish(const Poly& p, cplx w, bool real_root) {
    for (int it = 0; it < 3; ++it) {
        const cplx f = p(w);
        const cplx df = derivative(p, w);
        if (std::abs(df) == 0.0) break;
        cplx next = w - f / df;
        if (real_root) next = next.real();
        if (!(std::abs(p(next)) < std::abs(f))) break;
        w = next;
    }
    return w;
}

}  // namespace

RootSet solve_poly(const Poly& p) {
    const int d = p.degree();
    if (d < 1 || d > 3) throw InvalidInput("polynomial degree must be 1, 2 or 3");
    for (double a : p.coeffs)
        if (!std::isfinite(a)) throw InvalidInput("polynomial coefficient is not finite");
    if (p.coeffs[0] == 0.0) throw InvalidInput("leading coefficient is zero");

    RootSet out;
    const auto& a = p.coeffs;
    if (d == 1) {
        out.roots.push_back(-a[1] / a[0]);
        return out;
    }
    if (d == 2) {
        const double disc = a[1] * a[1] - 4.0 * a[0] * a[2];
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            const double q = -0.5 * (a[1] + (a[1] >= 0 ? s : -s));
            double r1 = q / a[0];
            double r2 = q != 0.0 ? a[2] / q : 0.0;
            if (r1 > r2) std::swap(r1, r2);
            out.roots = {r1, r2};
        } else {
            const double re = -a[1] / (2.0 * a[0]);
            const double im = std::abs(std::sqrt(-disc) / (2.0 * a[0]));
            out.roots = {cplx(re, im), cplx(re, -im)};
        }
        for (auto& w : out.roots) w = polish(p, w, w.imag() == 0.0);
        if (out.roots[0].imag() != 0.0) out.roots[1] = std::conj(out.roots[0]);
        return out;
    }

    Eigen::Matrix3d c = Eigen::Matrix3d::Zero();
    c(0, 0) = -a[1] / a[0];
    c(0, 1) = -a[2] / a[0];
    c(0, 2) = -a[3] / a[0];
    c(1, 0) = 1.0;
    c(2, 1) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix3d> es(c, false);
    if (es.info() != Eigen::Success) throw InvalidInput("companion eigenvalue iteration failed");
    std::vector<cplx> w(3);
    for (int i = 0; i < 3; ++i) w[i] = es.eigenvalues()[i];

    // Real Schur output: either three reals, or one real and an exact pair.
    std::sort(w.begin(), w.end(), [](cplx x, cplx y) {
        if (x.imag() == 0.0 && y.imag() != 0.0) return true;
        if (x.imag() != 0.0 && y.imag() == 0.0) return false;
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() > y.imag();
    });
    if (w[1].imag() != 0.0) {
        w[0] = polish(p, cplx(w[0].real(), 0.0), true);
        cplx z = polish(p, cplx(w[1].real(), std::abs(w[1].imag())), false);
        if (z.imag() < 0) z = std::conj(z);
        w[1] = z;
        w[2] = std::conj(z);
    } else {
        for (auto& x : w) x = polish(p, x, true);
        std::sort(w.begin(), w.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
    }
    out.roots = w;
    return out;
}

}  // namespace heatlab
