#include "doctest.h"

#include <cmath>
#include <map>

#include "grouplab/polynomial.hpp"
#include "grouplab/sampling.hpp"
#include "grouplab/young.hpp"

using namespace grouplab;

namespace {

std::map<Permutation, int> as_map(const SignedPermSum& s) {
    std::map<Permutation, int> m;
    for (const auto& [p, c] : s.terms) m[p] += c;
    return m;
}

}  // namespace

TEST_CASE("young symmetrizer on small shapes") {
    const auto single = as_map(young_symmetrizer(Partition{1}));
    REQUIRE(single.size() == 1);
    CHECK(single.at(Permutation{0}) == 1);

    const auto sym = as_map(young_symmetrizer(Partition{2}));
    REQUIRE(sym.size() == 2);
    CHECK(sym.at(Permutation{0, 1}) == 1);
    CHECK(sym.at(Permutation{1, 0}) == 1);

    const auto alt = as_map(young_symmetrizer(Partition{1, 1}));
    REQUIRE(alt.size() == 2);
    CHECK(alt.at(Permutation{0, 1}) == 1);
    CHECK(alt.at(Permutation{1, 0}) == -1);

    // the identity carries +1, terms are distinct products, signs in {-1,+1}
    for (const Partition& lam : partitions_of(4, 4)) {
        const SignedPermSum c = young_symmetrizer(lam);
        const auto m = as_map(c);
        CHECK(m.size() == c.terms.size());  // P and Q intersect trivially
        Permutation id(4);
        for (int i = 0; i < 4; ++i) id[static_cast<size_t>(i)] = i;
        CHECK(m.at(id) == 1);
        for (const auto& [p, coeff] : m) CHECK(std::abs(coeff) == 1);
    }

    CHECK_THROWS_AS(young_symmetrizer(Partition{9}), TooLargeError);
}

TEST_CASE("comfortable juntas expand the symmetrizer") {
    const GroupPolynomial sym = comfortable_junta(Partition{2}, 6);
    CHECK(sym.term_count() == 2);
    CHECK(sym.coefficient(MonomialIndex{{1, 1}, {2, 2}}) == 1.0);
    CHECK(sym.coefficient(MonomialIndex{{1, 2}, {2, 1}}) == 1.0);

    const GroupPolynomial alt = comfortable_junta(Partition{1, 1}, 6);
    CHECK(alt.coefficient(MonomialIndex{{1, 1}, {2, 2}}) == 1.0);
    CHECK(alt.coefficient(MonomialIndex{{1, 2}, {2, 1}}) == -1.0);

    // P_lambda(Id) = 1 for every shape
    for (long d = 0; d <= 5; ++d)
        for (const Partition& lam : partitions_of(d, d)) {
            const GroupPolynomial p = comfortable_junta(lam, 12);
            CHECK(p.evaluate(RealMatrix::identity(12)) == doctest::Approx(1.0));
        }

    CHECK_THROWS_AS(comfortable_junta(Partition{2, 1}, 6), InvalidShapeError);  // d >= n/2
}

TEST_CASE("evaluate") {
    const GroupPolynomial one = GroupPolynomial::constant(1.0, 4);
    CHECK(one.evaluate(RealMatrix::identity(4)) == doctest::Approx(1.0));

    const GroupPolynomial x11 = GroupPolynomial::monomial(MonomialIndex{{1, 1}}, 1.0, 4);
    CHECK(x11.evaluate(RealMatrix::identity(4)) == doctest::Approx(1.0));

    // block rotation [[0,-1],[1,0]] + I: the antisymmetrizer evaluates to 1
    RealMatrix x = RealMatrix::identity(6);
    x(0, 0) = 0.0;
    x(0, 1) = -1.0;
    x(1, 0) = 1.0;
    x(1, 1) = 0.0;
    const GroupPolynomial alt = comfortable_junta(Partition{1, 1}, 6);
    CHECK(alt.evaluate(x) == doctest::Approx(1.0));

    // field mismatch is an error
    ComplexMatrix c = ComplexMatrix::identity(6);
    CHECK_THROWS_AS(alt.evaluate(c), FieldMismatchError);
}

TEST_CASE("monomial comfortability predicates") {
    const int n = 10;  // half = 5
    CHECK(MonomialIndex{{1, 1}, {2, 2}}.is_comfortable(n));
    CHECK(!MonomialIndex{{1, 1}, {1, 2}}.is_row_comfortable(n));
    CHECK(MonomialIndex{{1, 1}, {1, 2}}.is_column_comfortable(n));
    CHECK(!MonomialIndex{{1, 1}, {2, 1}}.is_column_comfortable(n));
    CHECK(!MonomialIndex{{1, 6}}.is_comfortable(n));  // outside the half minor
    CHECK(MonomialIndex{}.is_comfortable(n));
}

TEST_CASE("lambda_S values and monotonicity") {
    CHECK(lambda_S(MonomialIndex{}, 4) == doctest::Approx(1.0));
    CHECK(lambda_S(MonomialIndex{{1, 1}}, 4) == doctest::Approx(0.9400).epsilon(1e-4));
    CHECK(lambda_S(MonomialIndex{{1, 1}, {2, 2}}, 4) == doctest::Approx(0.7500).epsilon(1e-4));

    // shifting any column strictly decreases lambda_S
    const int n = 20;
    for (int j = 1; j + 1 <= n / 2; ++j) {
        const double a = lambda_S(MonomialIndex{{1, j}}, n);
        const double b = lambda_S(MonomialIndex{{1, j + 1}}, n);
        CHECK(a > b);
    }

    CHECK_THROWS_AS(lambda_S(MonomialIndex{{1, 1}, {2, 1}}, 10), NotComfortableError);
}

TEST_CASE("translates") {
    const int n = 5;
    const GroupPolynomial x11 = GroupPolynomial::monomial(MonomialIndex{{1, 1}}, 1.0, n);

    // V = identity leaves the polynomial unchanged
    const GroupPolynomial same = right_translate(x11, RealMatrix::identity(n));
    CHECK(same.term_count() == 1);
    CHECK(same.coefficient(MonomialIndex{{1, 1}}) == doctest::Approx(1.0));

    // x_11 -> sum_j V_j1 x_1j
    RngStream rng(41, 0);
    const RealMatrix v = sample_haar_so(n, rng);
    const GroupPolynomial rt = right_translate(x11, v);
    for (int j = 1; j <= n; ++j)
        CHECK(rt.coefficient(MonomialIndex{{1, j}}) == doctest::Approx(v(j - 1, 0)));

    // evaluation identity for degree-2 polynomials
    const GroupPolynomial p = comfortable_junta(Partition{2}, n) - comfortable_junta(Partition{1, 1}, n).scaled(0.5);
    for (int s = 0; s < 20; ++s) {
        const RealMatrix x = sample_gaussian_real(n, rng);
        const RealMatrix w = sample_haar_so(n, rng);
        CHECK(right_translate(p, w).evaluate(x) == doctest::Approx(p.evaluate(x * w)).epsilon(1e-10));
        CHECK(left_translate(p, w).evaluate(x) == doctest::Approx(p.evaluate(w * x)).epsilon(1e-10));
    }
}

TEST_CASE("juntas of different degrees are orthogonal under haar") {
    const int n = 10;
    const long n_samples = 1000000;
    const double dil = std::sqrt(static_cast<double>(n));
    const GroupPolynomial p1 = comfortable_junta(Partition{1}, n);
    const GroupPolynomial p2 = comfortable_junta(Partition{2}, n);
    const GroupPolynomial p11 = comfortable_junta(Partition{1, 1}, n);
    const GroupPolynomial p3 = comfortable_junta(Partition{2, 1}, n);

    struct Acc {
        double sum = 0.0, sumsq = 0.0;
        void add(double v) {
            sum += v;
            sumsq += v * v;
        }
        double mean(long n) const { return sum / n; }
        double se(long n) const {
            return std::sqrt((sumsq / n - (sum / n) * (sum / n)) / n);
        }
    };
    Acc a12, a13, a23, a2x11;
    RngStream rng(43, 0);
    for (long s = 0; s < n_samples; ++s) {
        const RealMatrix x = sample_haar_so(n, rng).scaled(dil);
        const double v1 = p1.evaluate(x), v2 = p2.evaluate(x), v3 = p3.evaluate(x),
                     v11 = p11.evaluate(x);
        a12.add(v1 * v2);
        a13.add(v1 * v3);
        a23.add(v2 * v3);
        a2x11.add(v2 * v11);
    }
    CHECK(std::abs(a12.mean(n_samples)) <= 3 * a12.se(n_samples));
    CHECK(std::abs(a13.mean(n_samples)) <= 3 * a13.se(n_samples));
    CHECK(std::abs(a23.mean(n_samples)) <= 3 * a23.se(n_samples));
    // same degree, different shapes: not required to vanish, only finite
    CHECK(std::isfinite(a2x11.mean(n_samples)));
}

TEST_CASE("column comfortable monomials regress onto lambda_S") {
    const int n = 12;
    const double dil = std::sqrt(static_cast<double>(n));
    const std::vector<MonomialIndex> ss = {
        MonomialIndex{{1, 1}},
        MonomialIndex{{1, 2}},
        MonomialIndex{{1, 1}, {2, 2}},
        MonomialIndex{{2, 1}, {3, 3}},
        MonomialIndex{{1, 1}, {1, 2}},  // column comfortable, repeated row
        MonomialIndex{{1, 3}, {2, 2}, {3, 1}},
    };
    for (const MonomialIndex& s : ss) {
        const double target = lambda_S(s, n);
        RngStream rng(47, static_cast<std::uint64_t>(&s - ss.data()));
        constexpr int kChunks = 16;
        const long per_chunk = 12000;
        double slopes[kChunks];
        for (int c = 0; c < kChunks; ++c) {
            RngStream r = rng.substream(static_cast<std::uint64_t>(c));
            double num = 0.0, den = 0.0;
            for (long i = 0; i < per_chunk; ++i) {
                const RealMatrix x = sample_haar_so(n, r);
                const UpperTriangular<double> g = sample_gmd(n, r);
                const RealMatrix xd = x.scaled(dil);
                const RealMatrix yd = (x * g.mat).scaled(dil);
                double hx = 1.0, hy = 1.0;
                for (const MonomialFactor& f : s.factors()) {
                    hx *= xd(f.row - 1, f.col - 1);
                    hy *= yd(f.row - 1, f.col - 1);
                }
                num += hy * hx;
                den += hx * hx;
            }
            slopes[c] = num / den;
        }
        double sum = 0.0, sumsq = 0.0;
        for (double v : slopes) {
            sum += v;
            sumsq += v * v;
        }
        const double mean = sum / kChunks;
        const double se =
            std::sqrt(std::max(0.0, (sumsq - sum * sum / kChunks) / (kChunks - 1)) / kChunks);
        INFO("S = " << s.to_string() << " slope " << mean << " target " << target);
        CHECK(std::abs(mean - target) <= 3.5 * se);
    }
}

TEST_CASE("hs normalizer follows the part variances") {
    CHECK(hs_normalizer(Field::Real, 3) == doctest::Approx(1.0));
    CHECK(hs_normalizer(Field::Complex, 2) == doctest::Approx(2.0));
    CHECK(hs_normalizer(Field::Quaternion, 2) == doctest::Approx(4.0));

    // quaternion check: E[(2^d x_S)^2] = 1 under the quaternion gaussian law
    RngStream rng(53, 0);
    const long m = 200000;
    double acc = 0.0;
    for (long i = 0; i < m; ++i) {
        const QuaternionMatrix x = sample_gaussian_quaternion(3, rng);
        const double v = 4.0 * x(0, 0).part(Part::I) * x(1, 1).part(Part::K);
        acc += v * v;
    }
    CHECK(acc / m == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("polynomial json round trip shape") {
    const GroupPolynomial p = comfortable_junta(Partition{1, 1}, 6);
    const std::string j = p.to_json();
    CHECK(j.find("positions") != std::string::npos);
    CHECK(j.find("coeff") != std::string::npos);
    CHECK(j.find("\"n\":6") != std::string::npos);
}
