#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "grouplab/estimate.hpp"
#include "grouplab/polynomial.hpp"
#include "grouplab/sampling.hpp"

namespace grouplab {

// ---------------------------------------------------------------------------
// Cap sets {X : X_row,col > t} and their exact Haar measure on SO(n).
// ---------------------------------------------------------------------------

// Exact measure of {X_11 > t} (greater = true) or {X_11 < t} under Haar on
// SO(n); the marginal density of an entry is proportional to
// (1 - x^2)^{(n-3)/2} on [-1, 1].
double cap_measure(int n, double t, bool greater);

// Threshold t with cap_measure(n, t, greater) = alpha, by bisection.
double cap_threshold_for_measure(int n, double alpha, bool greater);

// Regularized incomplete beta I_x(a, b) (exposed for the oracle tests).
double regularized_incomplete_beta(double a, double b, double x);

struct IndicatorSpec {
    enum class Kind { CapGt, CapLt, Custom };

    Kind kind = Kind::CapGt;
    double threshold = 0.0;
    int row = 1;
    int col = 1;
    std::function<bool(const RealMatrix&)> custom;

    static IndicatorSpec cap_gt(double t) { return {Kind::CapGt, t, 1, 1, nullptr}; }
    static IndicatorSpec cap_lt(double t) { return {Kind::CapLt, t, 1, 1, nullptr}; }
    static IndicatorSpec whole_group() { return cap_gt(-2.0); }

    bool contains(const RealMatrix& x) const {
        switch (kind) {
            case Kind::CapGt: return x(row - 1, col - 1) > threshold;
            case Kind::CapLt: return x(row - 1, col - 1) < threshold;
            case Kind::Custom: return custom(x);
        }
        return false;
    }

    double measure(int n) const {
        if (kind == Kind::Custom)
            throw UnsupportedError("IndicatorSpec: no closed-form measure for custom predicates");
        return cap_measure(n, threshold, kind == Kind::CapGt);
    }
};

// ---------------------------------------------------------------------------
// Empirical degree-d basis: monomial features orthonormalized against a Haar
// fitting sample.
// ---------------------------------------------------------------------------

struct EmpiricalBasis {
    GroupSpec group;
    int degree_cap = 0;
    std::vector<MonomialIndex> features;
    // coeffs[k] has one weight per feature; basis function k is their
    // weighted sum. Orthonormal w.r.t. the fitting sample.
    std::vector<std::vector<double>> coeffs;
    int rank = 0;
    double sv_threshold = 0.0;
    long n_fit = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    std::vector<double> feature_values(const RealMatrix& x) const;
};

// All monomials of degree <= d in the n x n matrix entries (real field).
std::vector<MonomialIndex> all_monomials_up_to(int n, int d);

// Powers 1, x_11, ..., x_11^d: the features spanning the functions of x_11 in
// V_{<= d}. Caps depend only on x_11, and conditional averaging over the
// stabilizer of the (1,1) entry fixes them while preserving V_{<= d}, so the
// low-degree projection of a cap lives in this span.
std::vector<MonomialIndex> zonal_monomials(int d);

EmpiricalBasis fit_empirical_basis(const GroupSpec& g, int d, long n_fit, std::uint64_t seed,
                                   std::uint64_t stream_id);
EmpiricalBasis fit_empirical_basis_features(const GroupSpec& g, int d,
                                            std::vector<MonomialIndex> features, long n_fit,
                                            std::uint64_t seed, std::uint64_t stream_id);

// Gram matrix of the fitted basis functions on a fresh Haar sample; the fit is
// healthy when this is close to the identity.
RealMatrix empirical_basis_holdout_gram(const EmpiricalBasis& basis, long n_holdout,
                                        std::uint64_t seed, std::uint64_t stream_id);

// || f^{<= d} ||^2 estimated as sum_k <f, b_k>^2 with the two inner-product
// factors taken from independent halves of the evaluation sample (unbiased
// given the basis). The evaluation stream must differ from the fitting
// stream. std_error covers the evaluation noise only; the fitted basis being
// orthonormal merely up to its own sampling error contributes a further
// relative error of order 1/sqrt(n_fit), so pick n_fit accordingly.
EstimateWithCI project_low_degree_norm(const std::function<double(const RealMatrix&)>& f,
                                       const EmpiricalBasis& basis, long n_eval,
                                       std::uint64_t seed, std::uint64_t stream_id);
EstimateWithCI project_low_degree_norm(const IndicatorSpec& f, const EmpiricalBasis& basis,
                                       long n_eval, std::uint64_t seed, std::uint64_t stream_id);
EstimateWithCI project_low_degree_norm(const GroupPolynomial& f, const EmpiricalBasis& basis,
                                       long n_eval, std::uint64_t seed, std::uint64_t stream_id);

// ---------------------------------------------------------------------------
// Norms under the three coupled laws and the pairing estimators.
// ---------------------------------------------------------------------------

enum class Law { Mu, Gamma, Nu };

// ||p||^2 under mu (sqrt(n)-dilated Haar, so the three laws share scales),
// gamma, or nu. The field follows the polynomial.
EstimateWithCI norm_under(Law law, const GroupPolynomial& p, long n_samples, const RngStream& rng);

// <f_A * f_B, f_C> = Pr[a b in C] / mu(C) for normalized indicators, with
// a ~ mu_A and b ~ mu_B drawn by rejection against Haar on SO(n).
EstimateWithCI convolution_form(const IndicatorSpec& a, const IndicatorSpec& b,
                                const IndicatorSpec& c, const GroupSpec& g, long n_samples,
                                const RngStream& rng);

struct ConvSqNormResult {
    EstimateWithCI norm_sq;          // || f_A * f_A ||_2^2
    double doubling_lower_bound = 0;  // 1 / norm_sq: mu(A^2) >= this
};

// Unbiased nested estimator: the outer point x = a1 a2 (a_i ~ mu_A) follows
// the density f_A * f_A, and the inner sample estimates (f_A * f_A)(x).
ConvSqNormResult conv_sq_norm(const IndicatorSpec& a, const GroupSpec& g, long n_outer,
                              long n_inner, const RngStream& rng);

// <T_rho f, f>_mu estimated through the coupling: V ~ Haar and a
// rho-correlated Gaussian pair (Z, Z') give f(GS(Z) V) f(GS(Z') V), with the
// sqrt(n)-dilation applied to the polynomial inputs.
EstimateWithCI noise_pairing(const GroupPolynomial& f, double rho, const GroupSpec& g,
                             long n_samples, const RngStream& rng);

// E[prod of G entries] for G ~ GMD; each entry may appear at most twice.
EstimateWithCI gmd_moment(const MonomialIndex& entries, int n, long n_samples,
                          const RngStream& rng);
// n^{-l/2} with l the number of off-diagonal factors, counted with
// multiplicity.
double gmd_moment_bound(const MonomialIndex& entries, int n);

// <x_I, x_J>_nu for row-form monomials x_I = prod_h x_{h, I_h}; I and J share
// the row set {1..d} and differ in l >= 1 columns.
EstimateWithCI off_diagonal_pairing(const std::vector<int>& cols_i, const std::vector<int>& cols_j,
                                    int n, long n_samples, const RngStream& rng);
// epsilon_l = 2^{l+4} n^{-l/2} 2^{d l / sqrt(n)}.
double off_diagonal_epsilon(int l, int d, int n);

// Exact projection factor floor(n/2)! / (n^d (floor(n/2) - d)!) and its
// Monte-Carlo companion: E_V of the squared comfortable degree-d coefficients
// of R_V f must equal factor * ||f||_mu^2 for row-comfortable d-juntas f.
double comf_projection_factor(int d, int n);
EstimateWithCI comf_projection_mc(const GroupPolynomial& f, int d, int n, long n_v,
                                  const RngStream& rng);

// ---------------------------------------------------------------------------
// Shared-sample batch estimators: every cell of a grid is evaluated on the
// same draw stream, so wide sweeps meet their per-cell sample quotas without
// resampling per cell. Cell estimates are correlated but individually valid.
// ---------------------------------------------------------------------------

// ||x_I||^2_nu for row-form monomials given by their column tuples.
std::vector<EstimateWithCI> nu_diagonal_suite(const std::vector<std::vector<int>>& col_tuples,
                                              int n, long n_samples, const RngStream& rng);

struct PairingCell {
    std::vector<int> cols_i;
    std::vector<int> cols_j;
};

// <x_I, x_J>_nu per cell.
std::vector<EstimateWithCI> nu_pairing_suite(const std::vector<PairingCell>& cells, int n,
                                             long n_samples, const RngStream& rng);

// E[prod of G entries] per cell, G ~ GMD.
std::vector<EstimateWithCI> gmd_moment_suite(const std::vector<MonomialIndex>& cells, int n,
                                             long n_samples, const RngStream& rng);

}  // namespace grouplab
