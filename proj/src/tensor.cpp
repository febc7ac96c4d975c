#include "heatlab/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "heatlab/errors.hpp"

namespace heatlab {

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Mat3 operator+(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) { return a + (-1.0) * b; }

Mat3 operator*(double s, const Mat3& a) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = s * a[i][j];
    return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
    return {dot(a[0], v), dot(a[1], v), dot(a[2], v)};
}

Mat3 transpose(const Mat3& a) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
    return r;
}

Mat3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

double trace(const Mat3& a) { return a[0][0] + a[1][1] + a[2][2]; }

double det(const Mat3& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

double frobenius(const Mat3& a) {
    double s = 0.0;
    for (const auto& row : a)
        for (double v : row) s += v * v;
    return std::sqrt(s);
}

Mat3 inverse(const Mat3& a) {
    const double d = det(a);
    const double scale = std::pow(frobenius(a), 3);
    if (!(std::abs(d) > 1e-14 * scale) || !std::isfinite(d))
        throw SingularParameter("matrix is singular and cannot be inverted");
    Mat3 r{};
    r[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / d;
    r[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / d;
    r[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / d;
    r[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / d;
    r[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / d;
    r[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / d;
    r[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / d;
    r[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / d;
    r[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / d;
    return r;
}

bool is_symmetric(const Mat3& a, double tol) {
    const double scale = std::max(1.0, frobenius(a));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(a[i][j] - a[j][i]) > tol * scale) return false;
    return true;
}

SymTensor3::SymTensor3(double xx, double yy, double zz, double xy, double xz, double yz)
    : c_{xx, yy, zz, xy, xz, yz} {
    for (double v : c_)
        if (!std::isfinite(v)) throw InvalidInput("tensor component is not finite");
}

SymTensor3 SymTensor3::isotropic(double s) { return {s, s, s}; }
SymTensor3 SymTensor3::diag(double a, double b, double c) { return {a, b, c}; }

SymTensor3 SymTensor3::from_mat(const Mat3& m) {
    return {m[0][0], m[1][1], m[2][2], 0.5 * (m[0][1] + m[1][0]), 0.5 * (m[0][2] + m[2][0]),
            0.5 * (m[1][2] + m[2][1])};
}

double SymTensor3::operator()(int i, int j) const {
    if (i == j) return c_[i];
    const int k = i + j;  // 1 -> xy, 2 -> xz, 3 -> yz
    return c_[2 + k];
}

Mat3 SymTensor3::mat() const {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = (*this)(i, j);
    return m;
}

bool SymTensor3::is_isotropic(double tol) const {
    const double s = std::max(1.0, frobenius()) * tol;
    return std::abs(c_[3]) <= s && std::abs(c_[4]) <= s && std::abs(c_[5]) <= s &&
           std::abs(c_[0] - c_[1]) <= s && std::abs(c_[0] - c_[2]) <= s;
}

SymTensor3 SymTensor3::operator+(const SymTensor3& o) const {
    SymTensor3 r;
    for (int i = 0; i < 6; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

SymTensor3 SymTensor3::operator-(const SymTensor3& o) const { return *this + o * -1.0; }

SymTensor3 SymTensor3::operator*(double s) const {
    SymTensor3 r;
    for (int i = 0; i < 6; ++i) r.c_[i] = s * c_[i];
    return r;
}

Vec3 SymTensor3::operator*(const Vec3& v) const { return mat() * v; }

SymTensor3 operator*(double s, const SymTensor3& t) { return t * s; }

double SymTensor3::frobenius() const { return heatlab::frobenius(mat()); }
double SymTensor3::det() const { return heatlab::det(mat()); }

namespace {

void jacobi(const SymTensor3& s, Vec3& evals, Mat3& evecs) {
    Mat3 a = s.mat();
    Mat3 v = identity3();
    const double scale = std::max(s.frobenius(), 1e-300);
    for (int sweep = 0; sweep < 64; ++sweep) {
        const double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off <= 1e-17 * scale) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) <= 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - sn * akq;
                    a[k][q] = sn * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - sn * aqk;
                    a[q][k] = sn * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - sn * vkq;
                    v[k][q] = sn * vkp + c * vkq;
                }
            }
        }
    }
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });
    for (int k = 0; k < 3; ++k) {
        evals[k] = a[idx[k]][idx[k]];
        for (int r = 0; r < 3; ++r) evecs[r][k] = v[r][idx[k]];
    }
}

}  // namespace

Vec3 SymTensor3::eigenvalues() const {
    Vec3 e{};
    Mat3 v{};
    jacobi(*this, e, v);
    return e;
}

Mat3 SymTensor3::eigenvectors() const {
    Vec3 e{};
    Mat3 v{};
    jacobi(*this, e, v);
    return v;
}

namespace {

void require_tol(double tol) {
    if (!(tol >= 0.0)) throw InvalidInput("tolerance must be non-negative");
}

}  // namespace

Definiteness psd_test(const SymTensor3& s, double tol) {
    require_tol(tol);
    const double scale = std::max(1.0, s.frobenius());
    const double lmin = s.eigenvalues()[0];
    return {lmin >= -tol * scale, lmin / scale};
}

Definiteness pd_test(const SymTensor3& s, double tol) {
    require_tol(tol);
    const double scale = std::max(1.0, s.frobenius());
    const double lmin = s.eigenvalues()[0];
    return {lmin > tol * scale, lmin / scale};
}

Definiteness nonsingular_test(const SymTensor3& s, double tol) {
    require_tol(tol);
    const double f = s.frobenius();
    if (f == 0.0) return {false, 0.0};
    const double rel = std::abs(s.det()) / (f * f * f);
    return {rel > tol, rel};
}

bool is_psd(const SymTensor3& s, double tol) { return psd_test(s, tol).verdict; }
bool is_pd(const SymTensor3& s, double tol) { return pd_test(s, tol).verdict; }
bool is_nonsingular(const SymTensor3& s, double tol) { return nonsingular_test(s, tol).verdict; }

Vec3 representation_completion(const Vec3& n_source, double g, const Vec3& G) {
    for (double v : n_source)
        if (!std::isfinite(v)) throw InvalidInput("direction is not finite");
    const double len = norm(n_source);
    if (!(len > 0.0)) throw InvalidInput("direction vector must be non-zero");
    const Vec3 n = (1.0 / len) * n_source;
    const Vec3 tangential = G - dot(n, G) * n;
    return g * n + tangential;
}

}  // namespace heatlab
