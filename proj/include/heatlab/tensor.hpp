#pragma once

#include <array>

namespace heatlab {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  // row major, m[i][j]

Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a);
Vec3 operator*(double s, const Vec3& a);
double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator*(double s, const Mat3& a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Vec3 operator*(const Mat3& a, const Vec3& v);
Mat3 transpose(const Mat3& a);
Mat3 identity3();
double trace(const Mat3& a);
double det(const Mat3& a);
double frobenius(const Mat3& a);
Mat3 inverse(const Mat3& a);  // throws SingularParameter
bool is_symmetric(const Mat3& a, double tol = 1e-12);

// Symmetric tensor with six stored components; symmetry is structural.
class SymTensor3 {
public:
    SymTensor3() = default;
    SymTensor3(double xx, double yy, double zz, double xy = 0.0, double xz = 0.0,
               double yz = 0.0);

    static SymTensor3 isotropic(double s);
    static SymTensor3 diag(double a, double b, double c);
    // Symmetric part of a general matrix.
    static SymTensor3 from_mat(const Mat3& m);

    double operator()(int i, int j) const;
    Mat3 mat() const;

    double xx() const { return c_[0]; }
    bool is_isotropic(double tol = 0.0) const;
    const std::array<double, 6>& components() const { return c_; }

    SymTensor3 operator+(const SymTensor3& o) const;
    SymTensor3 operator-(const SymTensor3& o) const;
    SymTensor3 operator*(double s) const;
    Vec3 operator*(const Vec3& v) const;

    double frobenius() const;
    double det() const;
    // Ascending eigenvalues (cyclic Jacobi).
    Vec3 eigenvalues() const;
    // Eigenvectors as columns of the returned matrix, matching eigenvalues().
    Mat3 eigenvectors() const;

private:
    std::array<double, 6> c_{};  // xx yy zz xy xz yz
};

SymTensor3 operator*(double s, const SymTensor3& t);

struct Definiteness {
    bool verdict = false;
    double margin = 0.0;  // signed slack of the deciding test, scaled
};

inline constexpr double kDefaultTol = 1e-10;

Definiteness psd_test(const SymTensor3& s, double tol = kDefaultTol);
Definiteness pd_test(const SymTensor3& s, double tol = kDefaultTol);
Definiteness nonsingular_test(const SymTensor3& s, double tol = kDefaultTol);

bool is_psd(const SymTensor3& s, double tol = kDefaultTol);
bool is_pd(const SymTensor3& s, double tol = kDefaultTol);
bool is_nonsingular(const SymTensor3& s, double tol = kDefaultTol);

// Z = g N + (1 - N (x) N) G with N the normalised source direction.
Vec3 representation_completion(const Vec3& n_source, double g, const Vec3& G);

}  // namespace heatlab
