#include "heatlab/banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "heatlab/errors.hpp"

namespace heatlab {

BandMatrix::BandMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ab_(static_cast<std::size_t>(2 * kl + ku + 1) * n, 0.0) {
    if (n < 1 || kl < 0 || ku < 0) throw InvalidInput("bad band matrix shape");
}

double BandMatrix::get(int i, int j) const {
    if (!in_band(i, j)) return 0.0;
    return ab_[static_cast<std::size_t>(kl_ + ku_ + i - j) + static_cast<std::size_t>(j) * ldab()];
}

void BandMatrix::set(int i, int j, double v) {
    if (!in_band(i, j)) throw InvalidInput("entry outside the band");
    ab_[static_cast<std::size_t>(kl_ + ku_ + i - j) + static_cast<std::size_t>(j) * ldab()] = v;
}

void BandMatrix::add(int i, int j, double v) { set(i, j, get(i, j) + v); }

std::vector<double> BandMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        const int lo = std::max(0, i - kl_), hi = std::min(n_ - 1, i + ku_);
        double acc = 0.0;
        for (int j = lo; j <= hi; ++j) acc += get(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<std::vector<double>> BandMatrix::dense() const {
    std::vector<std::vector<double>> d(n_, std::vector<double>(n_, 0.0));
    for (int i = 0; i < n_; ++i)
        for (int j = std::max(0, i - kl_); j <= std::min(n_ - 1, i + ku_); ++j) d[i][j] = get(i, j);
    return d;
}

BandLU::BandLU(BandMatrix a) : lu_(std::move(a)), ipiv_(lu_.n()) {
    const int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, lu_.n(), lu_.n(), lu_.kl(), lu_.ku(),
                                    lu_.data(), lu_.ldab(), ipiv_.data());
    if (info != 0) throw ConfigError("implicit system matrix is singular");
}

void BandLU::solve(std::vector<double>& b) const {
    auto& lu = const_cast<BandMatrix&>(lu_);
    const int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', lu.n(), lu.kl(), lu.ku(), 1, lu.data(),
                                    lu.ldab(), ipiv_.data(), b.data(), lu.n());
    if (info != 0) throw ConfigError("banded back substitution failed");
}

namespace {

BandMatrix trapezoid_lhs(const LinearSystem& s, double dt) {
    const int n = s.A.n();
    BandMatrix m(n, s.A.kl(), s.A.ku());
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - s.A.kl()); j <= std::min(n - 1, i + s.A.ku()); ++j)
            m.set(i, j, -0.5 * dt * s.A.get(i, j));
    for (int i = 0; i < n; ++i) m.add(i, i, s.mass[i]);
    return m;
}

}  // namespace

TrapezoidalStepper::TrapezoidalStepper(const LinearSystem& sys, double dt)
    : sys_(&sys), dt_(dt), lu_(trapezoid_lhs(sys, dt)) {
    if (!(dt > 0.0)) throw InvalidInput("time step must be positive");
}

void TrapezoidalStepper::step(std::vector<double>& u) const {
    const int n = sys_->A.n();
    std::vector<double> au = sys_->A.multiply(u);
    std::vector<double> rhs(n);
    for (int i = 0; i < n; ++i) {
        if (sys_->mass[i] != 0.0)
            rhs[i] = sys_->mass[i] * u[i] + 0.5 * dt_ * au[i] + dt_ * sys_->f[i];
        else
            rhs[i] = 0.5 * dt_ * sys_->f[i];  // 0 = A u + f imposed at the new level
    }
    lu_.solve(rhs);
    u.swap(rhs);
}

int NewtonTrapezoid::step(std::vector<double>& u, long step_index) const {
    const auto& s = *sys_;
    const int n = s.n;
    std::vector<double> f0(n), f(n), g(n), gp(n);
    s.rhs(u, f0);
    const std::vector<double> u0 = u;

    auto residual = [&](const std::vector<double>& v, std::vector<double>& out) {
        std::vector<double> fv(n);
        s.rhs(v, fv);
        for (int i = 0; i < n; ++i) {
            if (s.mass[i] != 0.0)
                out[i] = s.mass[i] * (v[i] - u0[i]) - 0.5 * dt_ * (fv[i] + f0[i]);
            else
                out[i] = -0.5 * dt_ * fv[i];
        }
    };

    const int width = s.kl + s.ku + 1;
    for (int it = 1; it <= 30; ++it) {
        residual(u, g);
        BandMatrix J(n, s.kl, s.ku);
        for (int color = 0; color < width; ++color) {
            std::vector<double> up = u;
            std::vector<double> h(n, 0.0);
            for (int j = color; j < n; j += width) {
                h[j] = 1e-7 * std::max(1.0, std::abs(u[j]));
                up[j] += h[j];
            }
            residual(up, gp);
            for (int j = color; j < n; j += width) {
                for (int i = std::max(0, j - s.ku); i <= std::min(n - 1, j + s.kl); ++i)
                    J.set(i, j, (gp[i] - g[i]) / h[j]);
            }
        }
        BandLU lu(std::move(J));
        std::vector<double> d = g;
        lu.solve(d);
        double dmax = 0.0, umax = 0.0;
        for (int i = 0; i < n; ++i) {
            u[i] -= d[i];
            dmax = std::max(dmax, std::abs(d[i]));
            umax = std::max(umax, std::abs(u[i]));
        }
        if (!std::isfinite(dmax))
            throw DivergenceError("Newton iteration produced non-finite values", step_index);
        if (dmax <= 1e-13 * std::max(1.0, umax)) return it;
    }
    throw DivergenceError("Newton iteration did not converge", step_index);
}

}  // namespace heatlab
