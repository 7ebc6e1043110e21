#include "doctest.h"

#include <cmath>
#include <vector>

#include "grouplab/empirical.hpp"

using namespace grouplab;

namespace {

// Independent oracle for || f_A * f_A ||_2^2 on SO(3) with A = {X_11 > c}:
// bi-invariant functions of X_11 expand in the zonal spherical functions
// P_k(X_11); the X_11-marginal is uniform, <P_k, P_k> = 1/(2k+1), and
// convolution acts as phi_k * phi_k = phi_k / (2k+1). With f = sum b_k P_k,
//   || f * f ||^2 = sum_k b_k^4 / (2k+1)^3,
// and b_k = (P_{k-1}(c) - P_{k+1}(c)) / (2 alpha) from the Legendre
// integral recurrence.
double so3_conv_sq_norm_oracle(double c, int terms = 400) {
    const double alpha = 0.5 * (1.0 - c);
    std::vector<double> p(static_cast<size_t>(terms) + 2);
    p[0] = 1.0;
    p[1] = c;
    for (int k = 1; k <= terms; ++k)
        p[static_cast<size_t>(k) + 1] =
            ((2.0 * k + 1.0) * c * p[static_cast<size_t>(k)] - k * p[static_cast<size_t>(k) - 1]) /
            (k + 1.0);
    double total = 1.0;  // k = 0 term: b_0 = 1
    for (int k = 1; k <= terms; ++k) {
        const double b = (p[static_cast<size_t>(k) - 1] - p[static_cast<size_t>(k) + 1]) /
                         (2.0 * alpha);
        total += b * b * b * b / std::pow(2.0 * k + 1.0, 3);
    }
    return total;
}

}  // namespace

TEST_CASE("cap measures") {
    for (int n = 2; n <= 30; n += 3) CHECK(cap_measure(n, 0.0, true) == doctest::Approx(0.5));

    // SO(3): uniform marginal
    for (double t : {-0.8, -0.3, 0.2, 0.5, 0.9})
        CHECK(cap_measure(3, t, true) == doctest::Approx(0.5 * (1.0 - t)).epsilon(1e-12));
    CHECK(cap_measure(3, 0.5, true) == doctest::Approx(0.25));

    // gt/lt symmetry
    for (double t : {-0.6, 0.0, 0.4})
        CHECK(cap_measure(8, t, true) + cap_measure(8, t, false) == doctest::Approx(1.0));
    CHECK(cap_measure(8, -0.4, true) == doctest::Approx(cap_measure(8, 0.4, false)));

    // edge saturation
    CHECK(cap_measure(5, 1.0, true) == doctest::Approx(0.0));
    CHECK(cap_measure(5, -1.0, true) == doctest::Approx(1.0));

    // MC oracle at n = 8, t = 0.3
    RngStream rng(61, 0);
    const long m = 1000000;
    long hits = 0;
    for (long i = 0; i < m; ++i)
        if (sample_haar_so(8, rng)(0, 0) > 0.3) ++hits;
    const double est = static_cast<double>(hits) / m;
    const double se = std::sqrt(est * (1 - est) / m);
    CHECK(std::abs(est - cap_measure(8, 0.3, true)) <= 3 * se);

    // inversion round trip
    for (double alpha : {0.05, 0.1, 0.3, 0.7}) {
        const double t = cap_threshold_for_measure(12, alpha, true);
        CHECK(cap_measure(12, t, true) == doctest::Approx(alpha).epsilon(1e-9));
        const double tl = cap_threshold_for_measure(12, alpha, false);
        CHECK(cap_measure(12, tl, false) == doctest::Approx(alpha).epsilon(1e-9));
    }
}

TEST_CASE("empirical basis ranks and hold-out gram") {
    // d = 0: the constant alone
    const EmpiricalBasis b0 = fit_empirical_basis(GroupSpec(Family::SO, 8), 0, 200, 71, 1);
    CHECK(b0.rank == 1);

    // d = 1 on SO(8): constant plus 64 independent mean-zero linears
    const EmpiricalBasis b1 = fit_empirical_basis(GroupSpec(Family::SO, 8), 1, 60000, 71, 2);
    CHECK(static_cast<int>(b1.features.size()) == 65);
    CHECK(b1.rank == 65);
    const RealMatrix g1 = empirical_basis_holdout_gram(b1, 60000, 71, 3);
    CHECK(g1.deviation_from_identity() < 0.05);

    // d = 2 on SO(6): the group relations force rank deficiency
    const EmpiricalBasis b2 = fit_empirical_basis(GroupSpec(Family::SO, 6), 2, 400000, 71, 4);
    CHECK(static_cast<int>(b2.features.size()) == 703);
    CHECK(b2.rank < 703);
    const RealMatrix g2 = empirical_basis_holdout_gram(b2, 100000, 71, 5);
    CHECK(g2.deviation_from_identity() < 0.05);

    CHECK_THROWS_AS(fit_empirical_basis(GroupSpec(Family::SO, 8), 1, 100, 71, 6),
                    InsufficientSamplesError);
    CHECK_THROWS_AS(fit_empirical_basis(GroupSpec(Family::SU, 8), 1, 10000, 71, 7),
                    UnsupportedError);
}

TEST_CASE("projection norms") {
    const GroupSpec so8(Family::SO, 8);

    // constant function: || 1^{<= d} ||^2 = 1 up to the basis fitting noise
    const EmpiricalBasis b1 = fit_empirical_basis(so8, 1, 200000, 73, 1);
    const auto one = [](const RealMatrix&) { return 1.0; };
    const EstimateWithCI e_one =
        project_low_degree_norm(std::function<double(const RealMatrix&)>(one), b1, 40000, 73, 2);
    CHECK(std::abs(e_one.value - 1.0) < 0.02);

    // f = x_11: degree-1 mass 1/8, no constant component
    const GroupPolynomial x11 = GroupPolynomial::monomial(MonomialIndex{{1, 1}}, 1.0, 8);
    const EstimateWithCI e_x11 = project_low_degree_norm(x11, b1, 60000, 73, 3);
    CHECK(e_x11.within(0.125));
    const EmpiricalBasis b0 = fit_empirical_basis(so8, 0, 200, 73, 4);
    const EstimateWithCI e_x11_0 = project_low_degree_norm(x11, b0, 40000, 73, 5);
    CHECK(e_x11_0.within(0.0));

    // cap at t = 0 on SO(3): degree-0 mass alpha^2 = 1/4
    const EmpiricalBasis b03 = fit_empirical_basis(GroupSpec(Family::SO, 3), 0, 200, 73, 6);
    const EstimateWithCI e_cap =
        project_low_degree_norm(IndicatorSpec::cap_gt(0.0), b03, 40000, 73, 7);
    CHECK(e_cap.within(0.25));

    // the evaluation stream must differ from the fitting stream
    CHECK_THROWS_AS(project_low_degree_norm(x11, b1, 40000, 73, 1), InsufficientSamplesError);
}

TEST_CASE("zonal features agree with the full monomial basis on caps") {
    const GroupSpec so6(Family::SO, 6);
    const double t = cap_threshold_for_measure(6, 0.3, true);
    const IndicatorSpec cap = IndicatorSpec::cap_gt(t);

    const EmpiricalBasis full = fit_empirical_basis(so6, 2, 200000, 79, 1);
    const EstimateWithCI e_full = project_low_degree_norm(cap, full, 200000, 79, 2);

    const EmpiricalBasis zonal =
        fit_empirical_basis_features(so6, 2, zonal_monomials(2), 40000, 79, 3);
    const EstimateWithCI e_zonal = project_low_degree_norm(cap, zonal, 200000, 79, 4);

    // the full-basis estimate also carries O(1/sqrt(n_fit)) basis noise
    CHECK(std::abs(e_full.value - e_zonal.value) <=
          3.0 * (e_full.std_error + e_zonal.std_error) + 0.01);
}

TEST_CASE("parseval consistency for a cap on SO(6)") {
    const GroupSpec so6(Family::SO, 6);
    const double alpha = 0.3;
    const double t = cap_threshold_for_measure(6, alpha, true);
    const IndicatorSpec cap = IndicatorSpec::cap_gt(t);

    double previous = 0.0;
    for (int d = 0; d <= 2; ++d) {
        const EmpiricalBasis basis =
            fit_empirical_basis_features(so6, d, zonal_monomials(d), 20000, 83,
                                         static_cast<std::uint64_t>(2 * d + 1));
        const EstimateWithCI est = project_low_degree_norm(
            cap, basis, 200000, 83, static_cast<std::uint64_t>(2 * d + 2));
        CHECK(est.value >= alpha * alpha - est.half_width());
        CHECK(est.value <= alpha + est.half_width());
        CHECK(est.value >= previous - 3.0 * est.std_error - 1e-3);
        previous = est.value;
    }
}

TEST_CASE("norms under the three laws") {
    // constants are 1 under every law
    const GroupPolynomial one = GroupPolynomial::constant(1.0, 8);
    for (Law law : {Law::Mu, Law::Gamma, Law::Nu}) {
        RngStream rng(89, static_cast<std::uint64_t>(law));
        CHECK(norm_under(law, one, 1000, rng).value == doctest::Approx(1.0));
    }

    // antisymmetrizer on 16: two orthonormal gaussian monomials
    const GroupPolynomial p11 = comfortable_junta(Partition{1, 1}, 16);
    RngStream rg(89, 10);
    const EstimateWithCI gamma_norm = norm_under(Law::Gamma, p11, 200000, rg);
    CHECK(gamma_norm.within(2.0));

    // single entry has nu-norm one
    const GroupPolynomial x11 = GroupPolynomial::monomial(MonomialIndex{{1, 1}}, 1.0, 16);
    RngStream rn(89, 11);
    const EstimateWithCI nu_norm = norm_under(Law::Nu, x11, 200000, rn);
    CHECK(nu_norm.within(1.0));

    // complex and quaternion gamma norms of a tagged monomial
    GroupPolynomial zi(3, Field::Complex);
    zi.add_term(MonomialIndex{{1, 1, Part::I}}, 1.0);
    RngStream rc(89, 12);
    CHECK(norm_under(Law::Gamma, zi, 200000, rc).within(0.5));
    RngStream rq(89, 13);
    GroupPolynomial qk(3, Field::Quaternion);
    qk.add_term(MonomialIndex{{1, 2, Part::K}}, 1.0);
    CHECK(norm_under(Law::Gamma, qk, 200000, rq).within(0.25));
}

TEST_CASE("mu and gamma norms agree on comfortable juntas at n = 64") {
    const int n = 64;
    for (const Partition& lam : {Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}}) {
        const GroupPolynomial p = comfortable_junta(lam, n);
        RngStream ra(97, static_cast<std::uint64_t>(lam.twice_sum()));
        RngStream rb(97, static_cast<std::uint64_t>(lam.twice_sum()) + 100);
        const EstimateWithCI mu = norm_under(Law::Mu, p, 12000, ra);
        const EstimateWithCI ga = norm_under(Law::Gamma, p, 12000, rb);
        const double ratio = mu.value / ga.value;
        INFO(lam.to_string() << " ratio " << ratio);
        CHECK(ratio > 1.0 / 1.2);
        CHECK(ratio < 1.2);
    }
}

TEST_CASE("convolution form") {
    const GroupSpec so8(Family::SO, 8);
    const auto whole = IndicatorSpec::whole_group();
    RngStream r1(101, 0);
    CHECK(convolution_form(whole, whole, whole, so8, 2000, r1).value == doctest::Approx(1.0));

    // triangle-inequality product-free cap: no products return to the cap
    const auto far = IndicatorSpec::cap_lt(-0.6);
    RngStream r2(101, 1);
    const EstimateWithCI none = convolution_form(far, far, far, so8, 20000, r2);
    CHECK(none.value == doctest::Approx(0.0));

    // aligned caps associate positively
    const GroupSpec so4(Family::SO, 4);
    RngStream r3(101, 2);
    const EstimateWithCI assoc = convolution_form(IndicatorSpec::cap_gt(0.8),
                                                  IndicatorSpec::cap_gt(0.8),
                                                  IndicatorSpec::cap_gt(0.5), so4, 50000, r3);
    CHECK(assoc.value - assoc.half_width() > 1.0);

    CHECK_THROWS_AS(convolution_form(IndicatorSpec::cap_gt(0.999), whole, whole, so8, 100, r3),
                    MeasureTooSmallError);
}

TEST_CASE("convolution square norm with the legendre oracle") {
    const GroupSpec so3(Family::SO, 3);
    RngStream r1(103, 0);
    const ConvSqNormResult whole = conv_sq_norm(IndicatorSpec::whole_group(), so3, 400, 20, r1);
    CHECK(whole.norm_sq.value == doctest::Approx(1.0));
    CHECK(whole.doubling_lower_bound == doctest::Approx(1.0));

    RngStream r2(103, 1);
    const ConvSqNormResult hemi = conv_sq_norm(IndicatorSpec::cap_gt(0.0), so3, 3000, 40, r2);
    CHECK(hemi.norm_sq.value + hemi.norm_sq.half_width() >= 1.0);

    RngStream r3(103, 2);
    const ConvSqNormResult sharp = conv_sq_norm(IndicatorSpec::cap_gt(0.9), so3, 3000, 40, r3);
    const double oracle = so3_conv_sq_norm_oracle(0.9);
    INFO("oracle " << oracle << " estimate " << sharp.norm_sq.value);
    CHECK(std::abs(sharp.norm_sq.value - oracle) <= sharp.norm_sq.half_width());
}

TEST_CASE("mixing proxy decreases as caps grow") {
    const GroupSpec so4(Family::SO, 4);
    double previous = 1e18;
    int step = 0;
    for (double alpha : {0.1, 0.25, 0.4}) {
        const double t = cap_threshold_for_measure(4, alpha, true);
        RngStream rng(107, static_cast<std::uint64_t>(step++));
        const ConvSqNormResult r = conv_sq_norm(IndicatorSpec::cap_gt(t), so4, 4000, 40, rng);
        const double proxy = r.norm_sq.value - 1.0;  // || f_A * f_A - 1 ||^2
        CHECK(proxy >= -r.norm_sq.half_width());
        CHECK(proxy <= previous + r.norm_sq.half_width());
        previous = proxy;
    }
}

TEST_CASE("noise pairing endpoints and floor") {
    const GroupSpec so8(Family::SO, 8);
    const GroupPolynomial f = comfortable_junta(Partition{1, 1}, 8);

    RngStream r1(109, 0);
    const EstimateWithCI at_one = noise_pairing(f, 1.0, so8, 100000, r1);
    RngStream r2(109, 1);
    const EstimateWithCI mu_norm = norm_under(Law::Mu, f, 100000, r2);
    CHECK(std::abs(at_one.value - mu_norm.value) <=
          3.0 * (at_one.std_error + mu_norm.std_error));

    RngStream r3(109, 2);
    const EstimateWithCI at_zero = noise_pairing(f, 0.0, so8, 60000, r3);
    CHECK(at_zero.within(0.0));  // mean of the antisymmetrizer vanishes

    // hypercontractive floor at rho = 0.5, d <= 2, n = 16
    const GroupSpec so16(Family::SO, 16);
    int k = 3;
    for (const Partition& lam : {Partition{1}, Partition{1, 1}}) {
        const GroupPolynomial p = comfortable_junta(lam, 16);
        RngStream ra(109, static_cast<std::uint64_t>(k++));
        const EstimateWithCI pair = noise_pairing(p, 0.5, so16, 60000, ra);
        RngStream rb(109, static_cast<std::uint64_t>(k++));
        const EstimateWithCI nrm = norm_under(Law::Mu, p, 60000, rb);
        const double d = static_cast<double>(lam.sum());
        const double floor = std::pow(0.5 / 4.0, d) * nrm.value;
        CHECK(pair.value >= floor - pair.half_width() - 3.0 * nrm.std_error);
    }
}

TEST_CASE("gmd moments and bounds") {
    const int n = 16;
    RngStream r1(113, 0);
    const EstimateWithCI single =
        gmd_moment(MonomialIndex{{1, 2}}, n, 200000, r1);
    CHECK(single.within(0.0));
    CHECK(std::abs(single.value) <= gmd_moment_bound(MonomialIndex{{1, 2}}, n) + single.half_width());

    RngStream r2(113, 1);
    const EstimateWithCI sq = gmd_moment(MonomialIndex{{1, 2}, {1, 2}}, n, 200000, r2);
    CHECK(sq.within(1.0 / n));
    CHECK(gmd_moment_bound(MonomialIndex{{1, 2}, {1, 2}}, n) == doctest::Approx(1.0 / n));

    RngStream r3(113, 2);
    const EstimateWithCI diag = gmd_moment(MonomialIndex{{1, 1}, {1, 1}}, n, 200000, r3);
    CHECK(diag.within(1.0));
    CHECK(gmd_moment_bound(MonomialIndex{{1, 1}, {1, 1}}, n) == doctest::Approx(1.0));

    CHECK_THROWS_AS(gmd_moment(MonomialIndex{{1, 2}, {1, 2}, {1, 2}}, n, 10, r3),
                    MultiplicityTooHighError);
}

TEST_CASE("off-diagonal pairings") {
    CHECK(off_diagonal_epsilon(2, 4, 64) == doctest::Approx(2.0));
    CHECK(off_diagonal_epsilon(1, 2, 64) == doctest::Approx(4.7568).epsilon(1e-3));

    const int n = 16;
    RngStream r1(127, 0);
    const EstimateWithCI e1 = off_diagonal_pairing({1, 2}, {1, 3}, n, 200000, r1);
    CHECK(std::abs(e1.value) <= off_diagonal_epsilon(1, 2, n) + e1.half_width());

    RngStream r2(127, 1);
    const EstimateWithCI e2 = off_diagonal_pairing({1, 2}, {2, 1}, n, 200000, r2);
    CHECK(std::abs(e2.value) <= off_diagonal_epsilon(2, 2, n) + e2.half_width());

    CHECK_THROWS_AS(off_diagonal_pairing({1, 2}, {1, 2}, n, 10, r2), InvalidShapeError);
    CHECK_THROWS_AS(off_diagonal_pairing({1, 1}, {1, 2}, n, 10, r2), InvalidShapeError);
}

TEST_CASE("comfortable projection factor") {
    CHECK(comf_projection_factor(0, 10) == doctest::Approx(1.0));
    CHECK(comf_projection_factor(1, 10) == doctest::Approx(0.5));
    CHECK(comf_projection_factor(2, 10) == doctest::Approx(0.2));
    CHECK_THROWS_AS(comf_projection_factor(6, 10), InvalidShapeError);

    // Monte-Carlo companion at d <= 2, n = 10
    const int n = 10;
    int k = 0;
    for (const Partition& lam : {Partition{1}, Partition{2}, Partition{1, 1}}) {
        const GroupPolynomial f = comfortable_junta(lam, n);
        const int d = static_cast<int>(lam.sum());
        RngStream ra(131, static_cast<std::uint64_t>(k++));
        const EstimateWithCI mc = comf_projection_mc(f, d, n, 20000, ra);
        RngStream rb(131, static_cast<std::uint64_t>(k++));
        const EstimateWithCI nrm = norm_under(Law::Mu, f, 200000, rb);
        const double target = comf_projection_factor(d, n) * nrm.value;
        INFO(lam.to_string() << " mc " << mc.value << " target " << target);
        CHECK(std::abs(mc.value - target) <=
              3.0 * (mc.std_error + comf_projection_factor(d, n) * nrm.std_error));
    }
}

TEST_CASE("suite estimators match their scalar counterparts") {
    const int n = 8;
    RngStream r1(137, 0);
    const auto diag = nu_diagonal_suite({{1}, {1, 2}, {3, 8}}, n, 100000, r1);
    for (const auto& e : diag) CHECK(e.within(1.0));

    RngStream r2(137, 1);
    const auto pair = nu_pairing_suite({{{1, 2}, {1, 3}}}, n, 100000, r2);
    CHECK(std::abs(pair[0].value) <= off_diagonal_epsilon(1, 2, n) + pair[0].half_width());

    RngStream r3(137, 2);
    const auto gm = gmd_moment_suite({MonomialIndex{{1, 2}, {1, 2}}}, n, 100000, r3);
    CHECK(gm[0].within(1.0 / n));
}
