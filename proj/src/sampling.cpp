#include "grouplab/sampling.hpp"

#include <cmath>

namespace grouplab {

namespace {

constexpr double kRankTol = 1e-12;
constexpr int kHaarRetries = 3;

// Column inner product <a, b> = sum conj(a_i) b_i over column indices ka, kb.
template <typename T>
T col_dot(const Matrix<T>& m, int ka, int kb) {
    T s{0.0};
    for (int i = 0; i < m.rows(); ++i) s += conj_scalar(m(i, ka)) * m(i, kb);
    return s;
}

// Row inner product <a, b>' = sum a_i conj(b_i) over row indices ra, rb.
template <typename T>
T row_dot_primed(const Matrix<T>& m, int ra, int rb) {
    T s{0.0};
    for (int j = 0; j < m.cols(); ++j) s += m(ra, j) * conj_scalar(m(rb, j));
    return s;
}

// Two projection passes per vector keep the loss of orthogonality at the
// rounding level even for ill-conditioned draws; the second pass's
// coefficients are folded into the maker so x = q * maker stays exact.
template <typename T>
Matrix<T> gs_columns(const Matrix<T>& x, Matrix<T>* maker) {
    const int n = x.rows();
    if (n != x.cols()) throw InvalidShapeError("special_gram_schmidt: matrix not square");
    Matrix<T> q = x;
    if (maker) *maker = Matrix<T>(n, n);
    for (int k = 0; k < n; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int l = 0; l < k; ++l) {
                const T c = col_dot(q, l, k);
                for (int i = 0; i < n; ++i) q(i, k) -= q(i, l) * c;  // scalar on the right
                if (maker) (*maker)(l, k) += c;
            }
        }
        const double r = std::sqrt(real_scalar(col_dot(q, k, k)));
        if (r < kRankTol) throw RankDeficientError("Gram-Schmidt residual below tolerance");
        for (int i = 0; i < n; ++i) q(i, k) /= r;
        if (maker) (*maker)(k, k) = T{r};
    }
    return q;
}

template <typename T>
Matrix<T> gs_rows(const Matrix<T>& x) {
    const int n = x.rows();
    if (n != x.cols()) throw InvalidShapeError("special_gram_schmidt: matrix not square");
    Matrix<T> q = x;
    for (int k = 0; k < n; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int l = 0; l < k; ++l) {
                const T c = conj_scalar(row_dot_primed(q, l, k));
                for (int j = 0; j < n; ++j) q(k, j) -= c * q(l, j);  // scalar on the left
            }
        }
        const double r = std::sqrt(real_scalar(row_dot_primed(q, k, k)));
        if (r < kRankTol) throw RankDeficientError("Gram-Schmidt residual below tolerance");
        for (int j = 0; j < n; ++j) q(k, j) /= r;
    }
    return q;
}

template <typename Sampler, typename M>
M haar_with_retries(int n, RngStream& rng, Sampler sample) {
    for (int attempt = 0;; ++attempt) {
        try {
            return special_gram_schmidt(sample(n, rng), Axis::Columns);
        } catch (const RankDeficientError&) {
            if (attempt + 1 >= kHaarRetries) throw;
        }
    }
}

}  // namespace

RealMatrix sample_gaussian_real(int n, RngStream& rng) {
    if (n < 1) throw InvalidShapeError("sample_gaussian: n must be positive");
    RealMatrix m(n, n);
    for (auto& v : m.data()) v = rng.normal();
    return m;
}

ComplexMatrix sample_gaussian_complex(int n, RngStream& rng) {
    if (n < 1) throw InvalidShapeError("sample_gaussian: n must be positive");
    const double s = std::sqrt(0.5);
    ComplexMatrix m(n, n);
    for (auto& v : m.data()) {
        const double re = s * rng.normal();
        const double im = s * rng.normal();
        v = {re, im};
    }
    return m;
}

QuaternionMatrix sample_gaussian_quaternion(int n, RngStream& rng) {
    if (n < 1) throw InvalidShapeError("sample_gaussian: n must be positive");
    QuaternionMatrix m(n, n);
    for (auto& v : m.data())
        v = Quaternion(0.5 * rng.normal(), 0.5 * rng.normal(), 0.5 * rng.normal(), 0.5 * rng.normal());
    return m;
}

RealMatrix special_gram_schmidt(const RealMatrix& x, Axis axis) {
    if (axis == Axis::Columns) {
        RealMatrix q = gs_columns<double>(x, nullptr);
        if (determinant(q) < 0.0)
            for (int i = 0; i < q.rows(); ++i) q(i, q.cols() - 1) = -q(i, q.cols() - 1);
        return q;
    }
    RealMatrix q = gs_rows<double>(x);
    if (determinant(q) < 0.0)
        for (int j = 0; j < q.cols(); ++j) q(q.rows() - 1, j) = -q(q.rows() - 1, j);
    return q;
}

ComplexMatrix special_gram_schmidt(const ComplexMatrix& x, Axis axis) {
    if (axis == Axis::Columns) {
        ComplexMatrix q = gs_columns<std::complex<double>>(x, nullptr);
        const std::complex<double> d = determinant(q);
        const std::complex<double> phase = std::conj(d) / std::abs(d);
        for (int i = 0; i < q.rows(); ++i) q(i, q.cols() - 1) *= phase;
        return q;
    }
    ComplexMatrix q = gs_rows<std::complex<double>>(x);
    const std::complex<double> d = determinant(q);
    const std::complex<double> phase = std::conj(d) / std::abs(d);
    for (int j = 0; j < q.cols(); ++j) q(q.rows() - 1, j) *= phase;
    return q;
}

QuaternionMatrix special_gram_schmidt(const QuaternionMatrix& x, Axis axis) {
    return axis == Axis::Columns ? gs_columns<Quaternion>(x, nullptr) : gs_rows<Quaternion>(x);
}

RealGramSchmidtFactor gram_schmidt_columns_with_maker(const RealMatrix& x) {
    const int n = x.rows();
    RealMatrix r;
    RealMatrix q = gs_columns<double>(x, &r);
    if (determinant(q) < 0.0) {
        for (int i = 0; i < n; ++i) q(i, n - 1) = -q(i, n - 1);
        r(n - 1, n - 1) = -r(n - 1, n - 1);
    }
    RealGramSchmidtFactor out{std::move(q), UpperTriangular<double>(n)};
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) out.maker.mat(i, j) = r(i, j) * inv_sqrt_n;
    return out;
}

RealMatrix sample_haar_so(int n, RngStream& rng) {
    return haar_with_retries<decltype(&sample_gaussian_real), RealMatrix>(n, rng, &sample_gaussian_real);
}

ComplexMatrix sample_haar_su(int n, RngStream& rng) {
    return haar_with_retries<decltype(&sample_gaussian_complex), ComplexMatrix>(n, rng,
                                                                                &sample_gaussian_complex);
}

QuaternionMatrix sample_haar_sp(int n, RngStream& rng) {
    return haar_with_retries<decltype(&sample_gaussian_quaternion), QuaternionMatrix>(
        n, rng, &sample_gaussian_quaternion);
}

UpperTriangular<double> sample_gmd(int n, RngStream& rng) {
    if (n < 1) throw InvalidShapeError("sample_gmd: n must be positive");
    UpperTriangular<double> g(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.mat(i, j) = inv_sqrt_n * rng.normal();
    for (int i = 0; i + 1 < n; ++i) g.mat(i, i) = inv_sqrt_n * rng.chi_norm(n - i);
    g.mat(n - 1, n - 1) = inv_sqrt_n * rng.normal();
    return g;
}

UpperTriangular<Quaternion> sample_gmd_quaternion(int n, RngStream& rng) {
    if (n < 1) throw InvalidShapeError("sample_gmd: n must be positive");
    UpperTriangular<Quaternion> g(n);
    const double s = 0.5 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.mat(i, j) = Quaternion(s * rng.normal(), s * rng.normal(), s * rng.normal(), s * rng.normal());
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        // length of a quaternion-normal vector in n-i dimensions (4(n-i) parts
        // of variance 1/4)
        g.mat(i, i) = Quaternion(inv_sqrt_n * 0.5 * rng.chi_norm(4 * (n - i)));
    }
    return g;
}

RealMatrix sample_over_gaussian(int n, RngStream& rng) {
    const RealMatrix y = sample_gaussian_real(n, rng);
    const UpperTriangular<double> g = sample_gmd(n, rng);
    return y * g.mat;
}

double expected_chi_norm(long m) {
    if (m < 1) throw InvalidShapeError("expected_chi_norm: m must be positive");
    const double a = 0.5 * (static_cast<double>(m) + 1.0);
    const double b = 0.5 * static_cast<double>(m);
    return std::exp(0.5 * std::log(2.0) + std::lgamma(a) - std::lgamma(b));
}

ComplexMatrix phi_embedding(const QuaternionMatrix& q) {
    const int n = q.rows();
    if (n != q.cols()) throw InvalidShapeError("phi_embedding: matrix not square");
    ComplexMatrix m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Quaternion& v = q(i, j);
            const std::complex<double> a{v.w, v.x};   // q = a + j b
            const std::complex<double> b{v.y, -v.z};  // j(c - d i) = c j + d k
            m(i, j) = a;
            m(i, j + n) = -std::conj(b);
            m(i + n, j) = b;
            m(i + n, j + n) = std::conj(a);
        }
    return m;
}

}  // namespace grouplab
