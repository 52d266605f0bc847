#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace gsf {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Mat3 {
    // row-major
    std::array<double, 9> a{};

    static Mat3 identity() {
        Mat3 m;
        m.a = {1, 0, 0, 0, 1, 0, 0, 0, 1};
        return m;
    }
    double& operator()(int i, int j) { return a[3 * i + j]; }
    double operator()(int i, int j) const { return a[3 * i + j]; }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
    Vec3 operator*(const Vec3& v) const {
        return {a[0] * v.x + a[1] * v.y + a[2] * v.z,
                a[3] * v.x + a[4] * v.y + a[5] * v.z,
                a[6] * v.x + a[7] * v.y + a[8] * v.z};
    }
    Mat3 operator+(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    Mat3 operator*(double s) const {
        Mat3 r;
        for (int i = 0; i < 9; ++i) r.a[i] = a[i] * s;
        return r;
    }
    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }
};

// Right-handed active rotation by theta about a unit axis (Rodrigues form).
inline Mat3 rotation_matrix(double theta, const Vec3& axis) {
    double c = std::cos(theta), s = std::sin(theta);
    double x = axis.x, y = axis.y, z = axis.z;
    double t = 1.0 - c;
    Mat3 m;
    m.a = {c + x * x * t,     x * y * t - z * s, x * z * t + y * s,
           y * x * t + z * s, c + y * y * t,     y * z * t - x * s,
           z * x * t - y * s, z * y * t + x * s, c + z * z * t};
    return m;
}

// Affine map on the Liouville 4-vector (1, x, y, z).  The first row is fixed
// to (1,0,0,0) so only the 3x3 block and the translation column are stored.
struct Superop {
    Mat3 lin;
    Vec3 off;

    static Superop identity() { return {Mat3::identity(), {}}; }
    static Superop linear(const Mat3& m) { return {m, {}}; }

    Vec3 apply(const Vec3& r) const { return lin * r + off; }
    // composition: this after o
    Superop operator*(const Superop& o) const {
        return {lin * o.lin, lin * o.off + off};
    }
};

using cplx = std::complex<double>;

struct Mat3c {
    std::array<cplx, 9> a{};

    static Mat3c identity() {
        Mat3c m;
        m.a[0] = m.a[4] = m.a[8] = 1.0;
        return m;
    }
    static Mat3c from_real(const Mat3& r) {
        Mat3c m;
        for (int i = 0; i < 9; ++i) m.a[i] = r.a[i];
        return m;
    }
    cplx& operator()(int i, int j) { return a[3 * i + j]; }
    cplx operator()(int i, int j) const { return a[3 * i + j]; }

    Mat3c operator*(const Mat3c& o) const {
        Mat3c r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx s = 0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
    Mat3c operator+(const Mat3c& o) const {
        Mat3c r;
        for (int i = 0; i < 9; ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    Mat3c operator-(const Mat3c& o) const {
        Mat3c r;
        for (int i = 0; i < 9; ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }
    Mat3c operator*(cplx s) const {
        Mat3c r;
        for (int i = 0; i < 9; ++i) r.a[i] = a[i] * s;
        return r;
    }
    Mat3c adjoint() const {
        Mat3c r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }
};

} // namespace gsf
