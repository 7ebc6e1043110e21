#include "grouplab/empirical.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

namespace grouplab {

namespace {

double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpmin = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpmin) d = kFpmin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpmin) d = kFpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpmin) c = kFpmin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpmin) d = kFpmin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpmin) c = kFpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

RealMatrix sample_haar_so_retry(int n, RngStream& rng) { return sample_haar_so(n, rng); }

// Rejection against Haar on SO(n).
RealMatrix sample_conditional(const IndicatorSpec& spec, int n, RngStream& rng) {
    for (;;) {
        RealMatrix x = sample_haar_so_retry(n, rng);
        if (spec.contains(x)) return x;
    }
}

void require_so(const GroupSpec& g, const char* what) {
    if (g.family != Family::SO)
        throw UnsupportedError(std::string(what) + ": indicator analysis is implemented on SO(n)");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_bt =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double cap_measure(int n, double t, bool greater) {
    if (n < 2) throw InvalidShapeError("cap_measure: n >= 2");
    if (t < -1.0) t = -1.0;
    if (t > 1.0) t = 1.0;
    double p_gt;  // P(X_11 > t)
    if (t >= 0.0)
        p_gt = 0.5 * regularized_incomplete_beta(0.5 * (n - 1), 0.5, 1.0 - t * t);
    else
        p_gt = 1.0 - 0.5 * regularized_incomplete_beta(0.5 * (n - 1), 0.5, 1.0 - t * t);
    return greater ? p_gt : 1.0 - p_gt;
}

double cap_threshold_for_measure(int n, double alpha, bool greater) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw MeasureTooSmallError("cap_threshold_for_measure: alpha must be in (0,1)");
    double lo = -1.0, hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double m = cap_measure(n, mid, greater);
        // cap measure is decreasing in t for CapGt, increasing for CapLt
        const bool go_right = greater ? (m > alpha) : (m < alpha);
        if (go_right)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> EmpiricalBasis::feature_values(const RealMatrix& x) const {
    std::vector<double> v(features.size());
    for (size_t i = 0; i < features.size(); ++i) {
        double prod = 1.0;
        for (const MonomialFactor& f : features[i].factors()) prod *= x(f.row - 1, f.col - 1);
        v[i] = prod;
    }
    return v;
}

std::vector<MonomialIndex> all_monomials_up_to(int n, int d) {
    std::vector<MonomialIndex> out;
    std::vector<MonomialFactor> acc;
    // multisets over positions ordered row-major
    struct Rec {
        static void go(int n, int d, int min_pos, std::vector<MonomialFactor>& acc,
                       std::vector<MonomialIndex>& out) {
            out.emplace_back(acc);
            if (static_cast<int>(acc.size()) == d) return;
            for (int pos = min_pos; pos < n * n; ++pos) {
                acc.push_back({pos / n + 1, pos % n + 1, Part::Real});
                go(n, d, pos, acc, out);
                acc.pop_back();
            }
        }
    };
    Rec::go(n, d, 0, acc, out);
    return out;
}

std::vector<MonomialIndex> zonal_monomials(int d) {
    std::vector<MonomialIndex> out;
    for (int k = 0; k <= d; ++k) {
        std::vector<MonomialFactor> fs(static_cast<size_t>(k), MonomialFactor{1, 1, Part::Real});
        out.emplace_back(std::move(fs));
    }
    return out;
}

EmpiricalBasis fit_empirical_basis_features(const GroupSpec& g, int d,
                                            std::vector<MonomialIndex> features, long n_fit,
                                            std::uint64_t seed, std::uint64_t stream_id) {
    require_so(g, "fit_empirical_basis");
    if (2 * d >= g.n) throw InvalidShapeError("fit_empirical_basis: need d < n/2");
    const long f_count = static_cast<long>(features.size());
    if (n_fit < 50 * f_count)
        throw InsufficientSamplesError("fit_empirical_basis: need n_fit >= 50 x feature count");

    EmpiricalBasis basis;
    basis.group = g;
    basis.degree_cap = d;
    basis.features = std::move(features);
    basis.sv_threshold = 1e-6;
    basis.n_fit = n_fit;
    basis.seed = seed;
    basis.stream_id = stream_id;

    // Two-stage whitening on independent halves. The first stage separates
    // the group's exact algebraic relations (empirically zero eigenvalues)
    // from the genuine spectrum and whitens approximately; directions with
    // small true eigenvalues come out of stage one with O(1) relative error,
    // which the second whitening pass measures and removes without
    // small-denominator amplification.
    const int f = static_cast<int>(f_count);
    const long n_a = n_fit / 2;
    const long n_b = n_fit - n_a;
    RngStream rng_a = RngStream(seed, stream_id).substream(0);
    RngStream rng_b = RngStream(seed, stream_id).substream(1);

    constexpr long kBlock = 256;
    Eigen::MatrixXd block(f, kBlock);

    Eigen::MatrixXd gram_a = Eigen::MatrixXd::Zero(f, f);
    for (long s = 0; s < n_a;) {
        const long take = std::min(kBlock, n_a - s);
        for (long t = 0; t < take; ++t) {
            const RealMatrix x = sample_haar_so_retry(g.n, rng_a);
            const std::vector<double> vals = basis.feature_values(x);
            for (int i = 0; i < f; ++i) block(i, t) = vals[static_cast<size_t>(i)];
        }
        gram_a.selfadjointView<Eigen::Lower>().rankUpdate(block.leftCols(take), 1.0);
        s += take;
    }
    gram_a /= static_cast<double>(n_a);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_a(
        Eigen::MatrixXd(gram_a.selfadjointView<Eigen::Lower>()));
    const Eigen::VectorXd evals_a = solver_a.eigenvalues();
    const Eigen::MatrixXd evecs_a = solver_a.eigenvectors();
    int rank_a = 0;
    for (int k = 0; k < f; ++k)
        if (evals_a(k) >= basis.sv_threshold) ++rank_a;
    Eigen::MatrixXd w1(f, rank_a);
    int col = 0;
    for (int k = f - 1; k >= 0; --k) {  // descending eigenvalue order
        if (evals_a(k) < basis.sv_threshold) continue;
        w1.col(col++) = evecs_a.col(k) / std::sqrt(evals_a(k));
    }

    Eigen::MatrixXd gram_b = Eigen::MatrixXd::Zero(rank_a, rank_a);
    Eigen::MatrixXd bblock(rank_a, kBlock);
    for (long s = 0; s < n_b;) {
        const long take = std::min(kBlock, n_b - s);
        for (long t = 0; t < take; ++t) {
            const RealMatrix x = sample_haar_so_retry(g.n, rng_b);
            const std::vector<double> vals = basis.feature_values(x);
            for (int i = 0; i < f; ++i) block(i, t) = vals[static_cast<size_t>(i)];
        }
        bblock.leftCols(take).noalias() = w1.transpose() * block.leftCols(take);
        gram_b.selfadjointView<Eigen::Lower>().rankUpdate(bblock.leftCols(take), 1.0);
        s += take;
    }
    gram_b /= static_cast<double>(n_b);

    // Symmetric inverse square root for the polish: it corrects the measured
    // Gram without rotating into noise eigendirections, so the hold-out error
    // stays at the entrywise sampling level.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver_b(
        Eigen::MatrixXd(gram_b.selfadjointView<Eigen::Lower>()));
    const Eigen::VectorXd evals_b = solver_b.eigenvalues();
    const Eigen::MatrixXd evecs_b = solver_b.eigenvectors();
    Eigen::VectorXd inv_sqrt(rank_a);
    for (int k = 0; k < rank_a; ++k) {
        if (evals_b(k) < basis.sv_threshold)
            throw InsufficientSamplesError("fit_empirical_basis: second-stage Gram degenerate");
        inv_sqrt(k) = 1.0 / std::sqrt(evals_b(k));
    }
    const Eigen::MatrixXd polish = evecs_b * inv_sqrt.asDiagonal() * evecs_b.transpose();
    const Eigen::MatrixXd w_final = w1 * polish;
    for (int k = 0; k < rank_a; ++k) {
        std::vector<double> wcol(static_cast<size_t>(f));
        for (int i = 0; i < f; ++i) wcol[static_cast<size_t>(i)] = w_final(i, k);
        basis.coeffs.push_back(std::move(wcol));
    }
    basis.rank = static_cast<int>(basis.coeffs.size());
    return basis;
}

EmpiricalBasis fit_empirical_basis(const GroupSpec& g, int d, long n_fit, std::uint64_t seed,
                                   std::uint64_t stream_id) {
    return fit_empirical_basis_features(g, d, all_monomials_up_to(g.n, d), n_fit, seed, stream_id);
}

RealMatrix empirical_basis_holdout_gram(const EmpiricalBasis& basis, long n_holdout,
                                        std::uint64_t seed, std::uint64_t stream_id) {
    const int r = basis.rank;
    const int f = static_cast<int>(basis.features.size());
    Eigen::MatrixXd w(f, r);
    for (int k = 0; k < r; ++k)
        for (int i = 0; i < f; ++i)
            w(i, k) = basis.coeffs[static_cast<size_t>(k)][static_cast<size_t>(i)];

    constexpr long kBlock = 256;
    Eigen::MatrixXd block(f, kBlock), bblock(r, kBlock);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(r, r);
    RngStream rng(seed, stream_id);
    for (long s = 0; s < n_holdout;) {
        const long take = std::min(kBlock, n_holdout - s);
        for (long t = 0; t < take; ++t) {
            const RealMatrix x = sample_haar_so_retry(basis.group.n, rng);
            const std::vector<double> vals = basis.feature_values(x);
            for (int i = 0; i < f; ++i) block(i, t) = vals[static_cast<size_t>(i)];
        }
        bblock.leftCols(take).noalias() = w.transpose() * block.leftCols(take);
        acc.selfadjointView<Eigen::Lower>().rankUpdate(bblock.leftCols(take), 1.0);
        s += take;
    }
    acc /= static_cast<double>(n_holdout);
    RealMatrix gram(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) gram(i, j) = i >= j ? acc(i, j) : acc(j, i);
    return gram;
}

EstimateWithCI project_low_degree_norm(const std::function<double(const RealMatrix&)>& f,
                                       const EmpiricalBasis& basis, long n_eval,
                                       std::uint64_t seed, std::uint64_t stream_id) {
    if (seed == basis.seed && stream_id == basis.stream_id)
        throw InsufficientSamplesError(
            "project_low_degree_norm: evaluation stream must differ from the fitting stream");
    constexpr int kPairs = 16;
    if (n_eval < 2 * kPairs)
        throw InsufficientSamplesError("project_low_degree_norm: evaluation sample too small");

    const int fcount = static_cast<int>(basis.features.size());
    const int r = basis.rank;
    RngStream base(seed, stream_id);
    std::vector<double> chunk_estimates;
    chunk_estimates.reserve(kPairs);
    const long per_half = n_eval / (2 * kPairs);

    for (int c = 0; c < kPairs; ++c) {
        std::vector<std::vector<double>> m(2, std::vector<double>(static_cast<size_t>(fcount), 0.0));
        for (int half = 0; half < 2; ++half) {
            RngStream rng = base.substream(static_cast<std::uint64_t>(2 * c + half));
            for (long s = 0; s < per_half; ++s) {
                const RealMatrix x = sample_haar_so_retry(basis.group.n, rng);
                const double fx = f(x);
                if (fx == 0.0) continue;
                const std::vector<double> vals = basis.feature_values(x);
                for (int i = 0; i < fcount; ++i)
                    m[static_cast<size_t>(half)][static_cast<size_t>(i)] +=
                        fx * vals[static_cast<size_t>(i)];
            }
            for (double& v : m[static_cast<size_t>(half)]) v /= static_cast<double>(per_half);
        }
        // <f, b_k> per half, cross-multiplied for an unbiased square
        double est = 0.0;
        for (int k = 0; k < r; ++k) {
            const std::vector<double>& w = basis.coeffs[static_cast<size_t>(k)];
            double ca = 0.0, cb = 0.0;
            for (int i = 0; i < fcount; ++i) {
                ca += w[static_cast<size_t>(i)] * m[0][static_cast<size_t>(i)];
                cb += w[static_cast<size_t>(i)] * m[1][static_cast<size_t>(i)];
            }
            est += ca * cb;
        }
        chunk_estimates.push_back(est);
    }

    EstimateWithCI out;
    out.n_samples = 2 * kPairs * per_half;
    out.seed = seed;
    out.stream_id = stream_id;
    double sum = 0.0, sumsq = 0.0;
    for (double v : chunk_estimates) {
        sum += v;
        sumsq += v * v;
    }
    out.value = sum / kPairs;
    const double var = std::max(0.0, (sumsq - sum * sum / kPairs) / (kPairs - 1));
    out.std_error = std::sqrt(var / kPairs);
    return out;
}

EstimateWithCI project_low_degree_norm(const IndicatorSpec& f, const EmpiricalBasis& basis,
                                       long n_eval, std::uint64_t seed, std::uint64_t stream_id) {
    return project_low_degree_norm(
        std::function<double(const RealMatrix&)>(
            [&f](const RealMatrix& x) { return f.contains(x) ? 1.0 : 0.0; }),
        basis, n_eval, seed, stream_id);
}

EstimateWithCI project_low_degree_norm(const GroupPolynomial& f, const EmpiricalBasis& basis,
                                       long n_eval, std::uint64_t seed, std::uint64_t stream_id) {
    return project_low_degree_norm(
        std::function<double(const RealMatrix&)>(
            [&f](const RealMatrix& x) { return f.evaluate(x); }),
        basis, n_eval, seed, stream_id);
}

EstimateWithCI norm_under(Law law, const GroupPolynomial& p, long n_samples, const RngStream& rng) {
    if (p.degree() > 6) throw TooLargeError("norm_under: polynomial degree > 6");
    const int n = p.ambient_n();
    const double dilation = std::sqrt(static_cast<double>(n));
    EstimateWithCI est;
    switch (p.field()) {
        case Field::Real: {
            est = mc_mean(n_samples, rng, [&](RngStream& r) {
                RealMatrix x;
                switch (law) {
                    case Law::Mu: x = sample_haar_so(n, r).scaled(dilation); break;
                    case Law::Gamma: x = sample_gaussian_real(n, r); break;
                    case Law::Nu: x = sample_over_gaussian(n, r); break;
                }
                const double v = p.evaluate(x);
                return v * v;
            });
            break;
        }
        case Field::Complex: {
            if (law == Law::Nu)
                throw UnsupportedError("norm_under: the over-Gaussian law is implemented on the real field");
            est = mc_mean(n_samples, rng, [&](RngStream& r) {
                const ComplexMatrix x = law == Law::Mu ? [&] {
                    ComplexMatrix m = sample_haar_su(n, r);
                    for (auto& v : m.data()) v *= dilation;
                    return m;
                }()
                                                       : sample_gaussian_complex(n, r);
                const double v = p.evaluate(x);
                return v * v;
            });
            break;
        }
        case Field::Quaternion: {
            if (law == Law::Nu)
                throw UnsupportedError("norm_under: the over-Gaussian law is implemented on the real field");
            est = mc_mean(n_samples, rng, [&](RngStream& r) {
                const QuaternionMatrix x = law == Law::Mu ? [&] {
                    QuaternionMatrix m = sample_haar_sp(n, r);
                    for (auto& v : m.data()) v *= dilation;
                    return m;
                }()
                                                          : sample_gaussian_quaternion(n, r);
                const double v = p.evaluate(x);
                return v * v;
            });
            break;
        }
    }
    return est;
}

EstimateWithCI convolution_form(const IndicatorSpec& a, const IndicatorSpec& b,
                                const IndicatorSpec& c, const GroupSpec& g, long n_samples,
                                const RngStream& rng) {
    require_so(g, "convolution_form");
    if (a.measure(g.n) < 1e-4 || b.measure(g.n) < 1e-4)
        throw MeasureTooSmallError("convolution_form: conditioning sets must have measure >= 1e-4");
    const double mu_c = c.measure(g.n);
    EstimateWithCI est = mc_mean(n_samples, rng, [&](RngStream& r) {
        const RealMatrix x = sample_conditional(a, g.n, r);
        const RealMatrix y = sample_conditional(b, g.n, r);
        return c.contains(x * y) ? 1.0 : 0.0;
    });
    est.value /= mu_c;
    est.std_error /= mu_c;
    return est;
}

ConvSqNormResult conv_sq_norm(const IndicatorSpec& a, const GroupSpec& g, long n_outer,
                              long n_inner, const RngStream& rng) {
    require_so(g, "conv_sq_norm");
    const double alpha = a.measure(g.n);
    if (alpha < 1e-3) throw MeasureTooSmallError("conv_sq_norm: need measure >= 1e-3");
    ConvSqNormResult out;
    out.norm_sq = mc_mean(n_outer, rng, [&](RngStream& r) {
        const RealMatrix a1 = sample_conditional(a, g.n, r);
        const RealMatrix a2 = sample_conditional(a, g.n, r);
        const RealMatrix x = a1 * a2;
        long hits = 0;
        for (long i = 0; i < n_inner; ++i) {
            const RealMatrix y = sample_conditional(a, g.n, r);
            // y^{-1} = y^T on SO(n)
            if (a.contains(x * y.transpose())) ++hits;
        }
        return static_cast<double>(hits) / static_cast<double>(n_inner) / alpha;
    });
    out.doubling_lower_bound = out.norm_sq.value > 0 ? 1.0 / out.norm_sq.value : 0.0;
    return out;
}

EstimateWithCI noise_pairing(const GroupPolynomial& f, double rho, const GroupSpec& g,
                             long n_samples, const RngStream& rng) {
    require_so(g, "noise_pairing");
    if (f.degree() > 4) throw TooLargeError("noise_pairing: degree > 4");
    if (rho < 0.0 || rho > 1.0) throw ConfigError("noise_pairing: rho must lie in [0,1]");
    const int n = g.n;
    const double dilation = std::sqrt(static_cast<double>(n));
    const double co = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    return mc_mean(n_samples, rng, [&](RngStream& r) {
        for (;;) {
            try {
                const RealMatrix v = sample_haar_so(n, r);
                const RealMatrix z = sample_gaussian_real(n, r);
                RealMatrix zp = sample_gaussian_real(n, r);  // becomes rho z + sqrt(1-rho^2) w
                for (size_t i = 0; i < zp.data().size(); ++i)
                    zp.data()[i] = rho * z.data()[i] + co * zp.data()[i];
                const RealMatrix xa = (special_gram_schmidt(z, Axis::Columns) * v).scaled(dilation);
                const RealMatrix xb = (special_gram_schmidt(zp, Axis::Columns) * v).scaled(dilation);
                return f.evaluate(xa) * f.evaluate(xb);
            } catch (const RankDeficientError&) {
                // probability-zero degenerate draw; redraw
            }
        }
    });
}

double gmd_moment_bound(const MonomialIndex& entries, int n) {
    int l = 0;
    for (const MonomialFactor& f : entries.factors())
        if (f.row != f.col) ++l;
    return std::pow(static_cast<double>(n), -0.5 * l);
}

EstimateWithCI gmd_moment(const MonomialIndex& entries, int n, long n_samples,
                          const RngStream& rng) {
    int run = 1;
    const auto& fs = entries.factors();
    for (size_t i = 1; i < fs.size(); ++i) {
        run = fs[i] == fs[i - 1] ? run + 1 : 1;
        if (run > 2) throw MultiplicityTooHighError("gmd_moment: an entry appears more than twice");
    }
    for (const MonomialFactor& f : fs)
        if (f.row > n || f.col > n) throw InvalidShapeError("gmd_moment: entry outside the matrix");
    return mc_mean(n_samples, rng, [&](RngStream& r) {
        const UpperTriangular<double> g = sample_gmd(n, r);
        double prod = 1.0;
        for (const MonomialFactor& f : fs) prod *= g.mat(f.row - 1, f.col - 1);
        return prod;
    });
}

double off_diagonal_epsilon(int l, int d, int n) {
    return std::pow(2.0, l + 4) * std::pow(static_cast<double>(n), -0.5 * l) *
           std::pow(2.0, static_cast<double>(d) * l / std::sqrt(static_cast<double>(n)));
}

EstimateWithCI off_diagonal_pairing(const std::vector<int>& cols_i, const std::vector<int>& cols_j,
                                    int n, long n_samples, const RngStream& rng) {
    const size_t d = cols_i.size();
    if (d == 0 || cols_j.size() != d)
        throw InvalidShapeError("off_diagonal_pairing: column tuples must share a positive length");
    const std::set<int> si(cols_i.begin(), cols_i.end());
    const std::set<int> sj(cols_j.begin(), cols_j.end());
    if (si.size() != d || sj.size() != d)
        throw InvalidShapeError("off_diagonal_pairing: columns must be distinct within each tuple");
    int l = 0;
    for (size_t h = 0; h < d; ++h)
        if (cols_i[h] != cols_j[h]) ++l;
    if (l == 0)
        throw InvalidShapeError("off_diagonal_pairing: identical tuples are a nu-norm, not a pairing");
    return mc_mean(n_samples, rng, [&](RngStream& r) {
        const RealMatrix z = sample_over_gaussian(n, r);
        double prod = 1.0;
        for (size_t h = 0; h < d; ++h)
            prod *= z(static_cast<int>(h), cols_i[h] - 1) * z(static_cast<int>(h), cols_j[h] - 1);
        return prod;
    });
}

double comf_projection_factor(int d, int n) {
    const int m = n / 2;
    if (d < 0 || d > m) throw InvalidShapeError("comf_projection_factor: need 0 <= d <= n/2");
    double v = 1.0;
    for (int t = 0; t < d; ++t) v *= static_cast<double>(m - t) / static_cast<double>(n);
    return v;
}

EstimateWithCI comf_projection_mc(const GroupPolynomial& f, int d, int n, long n_v,
                                  const RngStream& rng) {
    const int m = n / 2;
    if (f.degree() != d) throw InvalidShapeError("comf_projection_mc: degree mismatch");
    // enumerate comfortable degree-d column tuples (rows are 1..d)
    std::vector<std::vector<int>> tuples;
    std::vector<int> acc;
    struct Rec {
        static void go(int m, int d, std::vector<int>& acc, std::vector<std::vector<int>>& out) {
            if (static_cast<int>(acc.size()) == d) {
                out.push_back(acc);
                return;
            }
            for (int c = 1; c <= m; ++c) {
                if (std::find(acc.begin(), acc.end(), c) != acc.end()) continue;
                acc.push_back(c);
                go(m, d, acc, out);
                acc.pop_back();
            }
        }
    };
    Rec::go(m, d, acc, tuples);

    return mc_mean(n_v, rng, [&](RngStream& r) {
        const RealMatrix v = sample_haar_so(n, r);
        const GroupPolynomial rt = right_translate(f, v);
        double total = 0.0;
        for (const auto& tuple : tuples) {
            const double c = rt.coefficient(MonomialIndex::row_form(tuple));
            total += c * c;
        }
        return total;
    });
}

namespace {

// Chunked vector-valued mean over a shared sample stream.
template <typename Fn>
std::vector<EstimateWithCI> mc_mean_suite(size_t n_cells, long n_samples, const RngStream& base,
                                          Fn&& per_sample) {
    std::vector<double> sum(n_cells, 0.0), sumsq(n_cells, 0.0), vals(n_cells, 0.0);
    const int chunks = static_cast<int>(std::min<long>(kMcChunks, std::max<long>(1, n_samples)));
    long done = 0;
    for (int c = 0; c < chunks; ++c) {
        const long quota = n_samples / chunks + (c < n_samples % chunks ? 1 : 0);
        RngStream rng = base.substream(static_cast<std::uint64_t>(c));
        for (long s = 0; s < quota; ++s) {
            per_sample(rng, vals);
            for (size_t i = 0; i < n_cells; ++i) {
                sum[i] += vals[i];
                sumsq[i] += vals[i] * vals[i];
            }
        }
        done += quota;
    }
    std::vector<EstimateWithCI> out(n_cells);
    for (size_t i = 0; i < n_cells; ++i) {
        out[i].n_samples = done;
        out[i].value = sum[i] / static_cast<double>(done);
        const double var = std::max(
            0.0, (sumsq[i] - sum[i] * sum[i] / static_cast<double>(done)) / static_cast<double>(done - 1));
        out[i].std_error = std::sqrt(var / static_cast<double>(done));
    }
    return out;
}

}  // namespace

std::vector<EstimateWithCI> nu_diagonal_suite(const std::vector<std::vector<int>>& col_tuples,
                                              int n, long n_samples, const RngStream& rng) {
    return mc_mean_suite(col_tuples.size(), n_samples, rng,
                         [&](RngStream& r, std::vector<double>& vals) {
                             const RealMatrix z = sample_over_gaussian(n, r);
                             for (size_t i = 0; i < col_tuples.size(); ++i) {
                                 double prod = 1.0;
                                 for (size_t h = 0; h < col_tuples[i].size(); ++h) {
                                     const double e = z(static_cast<int>(h), col_tuples[i][h] - 1);
                                     prod *= e * e;
                                 }
                                 vals[i] = prod;
                             }
                         });
}

std::vector<EstimateWithCI> nu_pairing_suite(const std::vector<PairingCell>& cells, int n,
                                             long n_samples, const RngStream& rng) {
    return mc_mean_suite(cells.size(), n_samples, rng,
                         [&](RngStream& r, std::vector<double>& vals) {
                             const RealMatrix z = sample_over_gaussian(n, r);
                             for (size_t i = 0; i < cells.size(); ++i) {
                                 double prod = 1.0;
                                 for (size_t h = 0; h < cells[i].cols_i.size(); ++h)
                                     prod *= z(static_cast<int>(h), cells[i].cols_i[h] - 1) *
                                             z(static_cast<int>(h), cells[i].cols_j[h] - 1);
                                 vals[i] = prod;
                             }
                         });
}

std::vector<EstimateWithCI> gmd_moment_suite(const std::vector<MonomialIndex>& cells, int n,
                                             long n_samples, const RngStream& rng) {
    return mc_mean_suite(cells.size(), n_samples, rng,
                         [&](RngStream& r, std::vector<double>& vals) {
                             const UpperTriangular<double> g = sample_gmd(n, r);
                             for (size_t i = 0; i < cells.size(); ++i) {
                                 double prod = 1.0;
                                 for (const MonomialFactor& f : cells[i].factors())
                                     prod *= g.mat(f.row - 1, f.col - 1);
                                 vals[i] = prod;
                             }
                         });
}

}  // namespace grouplab
