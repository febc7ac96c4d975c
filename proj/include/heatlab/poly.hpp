#pragma once

#include <complex>
#include <vector>

namespace heatlab {

using cplx = std::complex<double>;

// Real polynomial, highest degree coefficient first: a_d w^d + ... + a_0.
struct Poly {
    std::vector<double> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx operator()(cplx w) const;
    // Backward-error scale sum |a_k| |w|^k used for residual tests.
    double residual_scale(cplx w) const;
};

struct RootSet {
    std::vector<cplx> roots;

    std::size_t size() const { return roots.size(); }
    double max_abs() const;
    double max_real() const;
};

// Roots of a degree 1..3 polynomial. Cubics go through the eigenvalues of the
// companion matrix followed by one or two Newton polishing steps.
RootSet solve_poly(const Poly& p);

}  // namespace heatlab
