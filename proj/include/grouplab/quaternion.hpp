#pragma once

#include <cmath>
#include <complex>
#include <ostream>

namespace grouplab {

// Scalar part tags, shared by quaternions (all four) and complex numbers
// (Real/I only).
enum class Part : int { Real = 0, I = 1, J = 2, K = 3 };

struct Quaternion {
    double w = 0.0;  // real part
    double x = 0.0;  // i part
    double y = 0.0;  // j part
    double z = 0.0;  // k part

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
        : w(w_), x(x_), y(y_), z(z_) {}

    double part(Part p) const {
        switch (p) {
            case Part::Real: return w;
            case Part::I: return x;
            case Part::J: return y;
            case Part::K: return z;
        }
        return 0.0;
    }

    Quaternion conj() const { return {w, -x, -y, -z}; }
    double norm_sq() const { return w * w + x * x + y * y + z * z; }
    double abs() const { return std::sqrt(norm_sq()); }

    Quaternion& operator+=(const Quaternion& o) {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        w -= o.w;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Quaternion& operator*=(double s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    Quaternion& operator/=(double s) { return *this *= (1.0 / s); }

    friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend Quaternion operator*(Quaternion a, double s) { return a *= s; }
    friend Quaternion operator*(double s, Quaternion a) { return a *= s; }
    friend Quaternion operator/(Quaternion a, double s) { return a /= s; }
    friend Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }

    // Hamilton product: ij = k, ji = -k.
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
    }

    friend bool operator==(const Quaternion& a, const Quaternion& b) {
        return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
    }

    friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
        return os << '(' << q.w << ',' << q.x << ',' << q.y << ',' << q.z << ')';
    }
};

// Uniform scalar helpers so matrix code can be generic over the three fields.
inline double conj_scalar(double v) { return v; }
inline std::complex<double> conj_scalar(const std::complex<double>& v) { return std::conj(v); }
inline Quaternion conj_scalar(const Quaternion& v) { return v.conj(); }

inline double abs_scalar(double v) { return std::abs(v); }
inline double abs_scalar(const std::complex<double>& v) { return std::abs(v); }
inline double abs_scalar(const Quaternion& v) { return v.abs(); }

inline double real_scalar(double v) { return v; }
inline double real_scalar(const std::complex<double>& v) { return v.real(); }
inline double real_scalar(const Quaternion& v) { return v.w; }

inline double part_of(double v, Part p) { return p == Part::Real ? v : 0.0; }
inline double part_of(const std::complex<double>& v, Part p) {
    if (p == Part::Real) return v.real();
    if (p == Part::I) return v.imag();
    return 0.0;
}
inline double part_of(const Quaternion& v, Part p) { return v.part(p); }

}  // namespace grouplab
