#pragma once

#include <algorithm>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "grouplab/errors.hpp"
#include "grouplab/quaternion.hpp"

namespace grouplab {

enum class Field : int { Real = 0, Complex = 1, Quaternion = 2 };

inline const char* to_string(Field f) {
    switch (f) {
        case Field::Real: return "real";
        case Field::Complex: return "complex";
        case Field::Quaternion: return "quaternion";
    }
    return "?";
}

enum class Family : int { SO = 0, SU = 1, Sp = 2, Spin = 3 };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::SO: return "SO";
        case Family::SU: return "SU";
        case Family::Sp: return "Sp";
        case Family::Spin: return "Spin";
    }
    return "?";
}

struct GroupSpec {
    Family family = Family::SO;
    int n = 2;

    GroupSpec() = default;
    GroupSpec(Family f, int n_) : family(f), n(n_) {
        // Sp(1) is admitted (it is SU(2)); the other families need n >= 2,
        // and Spin needs n >= 3.
        const int min_n = family == Family::Sp ? 1 : family == Family::Spin ? 3 : 2;
        if (n < min_n)
            throw InvalidShapeError("GroupSpec: rank parameter too small for " +
                                    std::string(to_string(f)));
    }

    Field field() const {
        switch (family) {
            case Family::SO: return Field::Real;
            case Family::SU: return Field::Complex;
            case Family::Sp: return Field::Quaternion;
            case Family::Spin:
                throw UnsupportedError("Spin(n) has no matrix sampler; use its SO(n) quotient");
        }
        return Field::Real;
    }

    std::string name() const { return std::string(to_string(family)) + "(" + std::to_string(n) + ")"; }
};

template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T{}) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T{1.0};
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix operator*(const Matrix& o) const {
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T a = (*this)(i, k);
                for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        Matrix r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }

    Matrix scaled(double s) const {
        Matrix r = *this;
        for (auto& v : r.data_) v = v * s;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    // Conjugate transpose (plain transpose over the reals).
    Matrix adjoint() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = conj_scalar((*this)(i, j));
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, abs_scalar(v));
        return m;
    }

    double max_abs_diff(const Matrix& o) const {
        double m = 0.0;
        for (size_t i = 0; i < data_.size(); ++i) m = std::max(m, abs_scalar(data_[i] - o.data_[i]));
        return m;
    }

    double deviation_from_identity() const {
        double m = 0.0;
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                T v = (*this)(i, j);
                if (i == j) v -= T{1.0};
                m = std::max(m, abs_scalar(v));
            }
        return m;
    }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

    // Row-major JSON array form, for debugging dumps. Complex entries emit
    // [re, im] pairs, quaternions [w, x, y, z].
    std::string to_json() const {
        std::ostringstream os;
        os.precision(17);
        os << "[";
        for (int i = 0; i < rows_; ++i) {
            os << (i ? ",[" : "[");
            for (int j = 0; j < cols_; ++j) {
                if (j) os << ",";
                write_entry(os, (*this)(i, j));
            }
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    static void write_entry(std::ostream& os, double v) { os << v; }
    static void write_entry(std::ostream& os, const std::complex<double>& v) {
        os << "[" << v.real() << "," << v.imag() << "]";
    }
    static void write_entry(std::ostream& os, const Quaternion& v) {
        os << "[" << v.w << "," << v.x << "," << v.y << "," << v.z << "]";
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;
using QuaternionMatrix = Matrix<Quaternion>;

// Determinant via LU with partial pivoting; works for the commutative fields.
template <typename T>
T determinant(Matrix<T> a) {
    const int n = a.rows();
    if (n != a.cols()) throw InvalidShapeError("determinant: matrix not square");
    T det{1.0};
    int sign = 1;
    for (int i = 0; i < n; ++i) {
        int p = i;
        double best = abs_scalar(a(i, i));
        for (int r = i + 1; r < n; ++r) {
            const double v = abs_scalar(a(r, i));
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (best == 0.0) return T{0.0};
        if (p != i) {
            for (int j = 0; j < n; ++j) std::swap(a(i, j), a(p, j));
            sign = -sign;
        }
        det = det * a(i, i);
        const T inv = T{1.0} / a(i, i);
        for (int r = i + 1; r < n; ++r) {
            const T f = a(r, i) * inv;
            for (int j = i; j < n; ++j) a(r, j) -= f * a(i, j);
        }
    }
    return det * static_cast<double>(sign);
}

// Upper-triangular matrix; below-diagonal entries are structurally zero.
template <typename T>
struct UpperTriangular {
    explicit UpperTriangular(int n_ = 0) : n(n_), mat(n_, n_) {}

    int n = 0;
    Matrix<T> mat;

    bool check_structure(double tol = 0.0) const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (abs_scalar(mat(i, j)) > tol) return false;
        return true;
    }
};

}  // namespace grouplab
