#pragma once

#include <functional>
#include <vector>

namespace heatlab {

// General band matrix in LAPACK dgbtrf storage (column major, ldab = 2 kl + ku + 1).
class BandMatrix {
public:
    BandMatrix() = default;
    BandMatrix(int n, int kl, int ku);

    int n() const { return n_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }

    bool in_band(int i, int j) const { return j - i <= ku_ && i - j <= kl_; }
    double get(int i, int j) const;
    void set(int i, int j, double v);
    void add(int i, int j, double v);

    std::vector<double> multiply(const std::vector<double>& x) const;
    std::vector<std::vector<double>> dense() const;

    double* data() { return ab_.data(); }
    int ldab() const { return 2 * kl_ + ku_ + 1; }

private:
    int n_ = 0, kl_ = 0, ku_ = 0;
    std::vector<double> ab_;
};

class BandLU {
public:
    BandLU() = default;
    explicit BandLU(BandMatrix a);  // throws ConfigError when singular
    void solve(std::vector<double>& b) const;

private:
    BandMatrix lu_;
    std::vector<int> ipiv_;
};

// mass .* du/dt = A u + f. Rows with zero mass are algebraic constraints.
struct LinearSystem {
    BandMatrix A;
    std::vector<double> mass;
    std::vector<double> f;
};

// Fixed-step trapezoidal rule with the implicit matrix factored once.
class TrapezoidalStepper {
public:
    TrapezoidalStepper(const LinearSystem& sys, double dt);
    void step(std::vector<double>& u) const;

private:
    const LinearSystem* sys_;
    double dt_;
    BandLU lu_;
};

// mass .* du/dt = F(u); Newton iterations with a banded finite-difference Jacobian.
struct NonlinearSystem {
    int n = 0, kl = 0, ku = 0;
    std::vector<double> mass;
    std::function<void(const std::vector<double>&, std::vector<double>&)> rhs;
};

class NewtonTrapezoid {
public:
    NewtonTrapezoid(const NonlinearSystem& sys, double dt) : sys_(&sys), dt_(dt) {}
    // Returns the number of Newton iterations used; throws DivergenceError on failure.
    int step(std::vector<double>& u, long step_index) const;

private:
    const NonlinearSystem* sys_;
    double dt_;
};

}  // namespace heatlab
