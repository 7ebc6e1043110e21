#pragma once

#include "grouplab/matrix.hpp"
#include "grouplab/rng.hpp"

namespace grouplab {

enum class Axis : int { Columns = 0, Rows = 1 };

// i.i.d. Gaussian matrices. Entry scale per field: real N(0,1); complex parts
// N(0,1/2); quaternion parts N(0,1/4). In all three cases E|entry|^2 = 1.
RealMatrix sample_gaussian_real(int n, RngStream& rng);
ComplexMatrix sample_gaussian_complex(int n, RngStream& rng);
QuaternionMatrix sample_gaussian_quaternion(int n, RngStream& rng);

template <typename T>
Matrix<T> sample_gaussian(int n, RngStream& rng);
template <>
inline RealMatrix sample_gaussian<double>(int n, RngStream& rng) {
    return sample_gaussian_real(n, rng);
}
template <>
inline ComplexMatrix sample_gaussian<std::complex<double>>(int n, RngStream& rng) {
    return sample_gaussian_complex(n, rng);
}
template <>
inline QuaternionMatrix sample_gaussian<Quaternion>(int n, RngStream& rng) {
    return sample_gaussian_quaternion(n, rng);
}

// Sign/phase-corrected Gram-Schmidt. Real output lands in SO(n) (last
// column/row flipped when det < 0); complex output lands in SU(n) (last
// processed vector rotated by the conjugate determinant phase); quaternion
// output is unitary under both Appendix-style inner products, with no
// determinant correction. Output is undilated. Throws RankDeficientError when
// a residual norm drops below 1e-12.
RealMatrix special_gram_schmidt(const RealMatrix& x, Axis axis);
ComplexMatrix special_gram_schmidt(const ComplexMatrix& x, Axis axis);
QuaternionMatrix special_gram_schmidt(const QuaternionMatrix& x, Axis axis);

// Column Gram-Schmidt together with the induced triangular factor, scaled so
// that x = sqrt(n) * q * maker. For Gaussian x the maker is a GMD draw.
struct RealGramSchmidtFactor {
    RealMatrix q;
    UpperTriangular<double> maker;
};
RealGramSchmidtFactor gram_schmidt_columns_with_maker(const RealMatrix& x);

// Haar samples (undilated group elements). Retries internally up to 3 times
// on rank-deficient Gaussian draws, then rethrows.
RealMatrix sample_haar_so(int n, RngStream& rng);
ComplexMatrix sample_haar_su(int n, RngStream& rng);
QuaternionMatrix sample_haar_sp(int n, RngStream& rng);

template <typename T>
Matrix<T> sample_haar(int n, RngStream& rng);
template <>
inline RealMatrix sample_haar<double>(int n, RngStream& rng) {
    return sample_haar_so(n, rng);
}
template <>
inline ComplexMatrix sample_haar<std::complex<double>>(int n, RngStream& rng) {
    return sample_haar_su(n, rng);
}
template <>
inline QuaternionMatrix sample_haar<Quaternion>(int n, RngStream& rng) {
    return sample_haar_sp(n, rng);
}

// Gaussian maker distribution: the law of G with X*G Gaussian for X Haar on
// sqrt(n)SO(n), independent of G. Strictly-upper entries are N(0,1/n); the
// diagonal g_ii is (1/sqrt(n)) times the length of an (n-i+1)-dimensional
// standard Gaussian for i < n, and g_nn is N(0,1/n) (the signed length of the
// one-dimensional final residual).
UpperTriangular<double> sample_gmd(int n, RngStream& rng);

// Quaternion analogue: strictly-upper parts N(0,1/(4n)); every diagonal entry,
// including the last, is (1/sqrt(n)) times the length of a quaternion-normal
// vector (the unit phase of the final residual is absorbed by the group).
UpperTriangular<Quaternion> sample_gmd_quaternion(int n, RngStream& rng);

// Over-Gaussian distribution: Y * G with Y Gaussian and G ~ GMD, independent.
RealMatrix sample_over_gaussian(int n, RngStream& rng);

// E || N(0, I_m) ||, computed exactly as sqrt(2) Gamma((m+1)/2) / Gamma(m/2)
// via log-Gamma. Lies in [sqrt(m) - 1/(2 sqrt(m)), sqrt(m)].
double expected_chi_norm(long m);

// Block embedding of quaternionic matrices into complex 2n x 2n matrices:
// Q = A + jB maps to [[A, -conj(B)], [B, conj(A)]]. Multiplicative and
// adjoint-preserving.
ComplexMatrix phi_embedding(const QuaternionMatrix& q);

}  // namespace grouplab
