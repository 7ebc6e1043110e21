#include "grouplab/weyl_dim.hpp"

#include <cmath>

namespace grouplab {

namespace {

// Parts as exact rationals (doubled storage), padded with zeros to k entries.
std::vector<mpq_class> padded_parts(const Partition& lambda, int k) {
    std::vector<mpq_class> l(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        l[static_cast<size_t>(i)] = mpq_class(lambda.twice_part(static_cast<size_t>(i)), 2);
        l[static_cast<size_t>(i)].canonicalize();
    }
    return l;
}

mpz_class finalize(const mpq_class& v, const char* what) {
    mpq_class c = v;
    c.canonicalize();
    if (c.get_den() != 1)
        throw NonIntegerResultError(std::string("weyl_dimension: non-integer value in ") + what);
    if (c.get_num() <= 0)
        throw NonIntegerResultError(std::string("weyl_dimension: non-positive value in ") + what);
    return c.get_num();
}

// Type B (SO(2k+1), Spin(2k+1)):
//   prod_{i<j} (l_i - l_j + j - i)/(j - i) * prod_{i<=j} (l_i + l_j + 2k+1-i-j)/(2k+1-i-j)
mpq_class dim_type_b(const std::vector<mpq_class>& l, int k) {
    mpq_class prod = 1;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j)
            prod *= (l[i - 1] - l[j - 1] + (j - i)) / mpq_class(j - i);
    for (int i = 1; i <= k; ++i)
        for (int j = i; j <= k; ++j)
            prod *= (l[i - 1] + l[j - 1] + (2 * k + 1 - i - j)) / mpq_class(2 * k + 1 - i - j);
    return prod;
}

// Type D (SO(2k), Spin(2k)); gives the dimension of one mirror when the
// partition has k rows.
mpq_class dim_type_d(const std::vector<mpq_class>& l, int k) {
    mpq_class prod = 1;
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
            prod *= (l[i - 1] - l[j - 1] + (j - i)) / mpq_class(j - i);
            prod *= (l[i - 1] + l[j - 1] + (2 * k - i - j)) / mpq_class(2 * k - i - j);
        }
    return prod;
}

// Type C (Sp(n)):
//   prod_{i<j} (l_i - l_j + j - i)/(j - i) * prod_{i<=j} (l_i + l_j + 2n+2-i-j)/(2n+2-i-j)
mpq_class dim_type_c(const std::vector<mpq_class>& l, int n) {
    mpq_class prod = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            prod *= (l[i - 1] - l[j - 1] + (j - i)) / mpq_class(j - i);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            prod *= (l[i - 1] + l[j - 1] + (2 * n + 2 - i - j)) / mpq_class(2 * n + 2 - i - j);
    return prod;
}

// Type A (SU(n)): prod_{i<j} (l_i - l_j + j - i)/(j - i)
mpq_class dim_type_a(const std::vector<mpq_class>& l, int n) {
    mpq_class prod = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            prod *= (l[i - 1] - l[j - 1] + (j - i)) / mpq_class(j - i);
    return prod;
}

}  // namespace

bool is_self_associated(const GroupSpec& g, const Partition& lambda) {
    if (g.family != Family::SO || g.n % 2 != 0) return false;
    return lambda.rows() == static_cast<size_t>(g.n / 2);
}

mpz_class weyl_dimension(const GroupSpec& g, const Partition& lambda) {
    check_shape(g, lambda);
    switch (g.family) {
        case Family::SO:
        case Family::Spin: {
            if (g.family == Family::SO && !lambda.is_integer())
                throw InvalidShapeError("SO: integer partitions only");
            const int k = g.n / 2;
            const auto l = padded_parts(lambda, k);
            if (g.n % 2 == 1) return finalize(dim_type_b(l, k), "SO/Spin odd");
            if (g.n == 2) throw UnsupportedError("SO(2)/Spin(2) is a torus; no Weyl formula here");
            return finalize(dim_type_d(l, k), "SO/Spin even");
        }
        case Family::Sp: {
            const auto l = padded_parts(lambda, g.n);
            return finalize(dim_type_c(l, g.n), "Sp");
        }
        case Family::SU: {
            const auto l = padded_parts(lambda, g.n);
            return finalize(dim_type_a(l, g.n), "SU");
        }
    }
    throw InvalidShapeError("weyl_dimension: unknown family");
}

mpq_class so_sp_dimension_lower_bound(int n, long d) {
    mpz_class num = 1;
    for (long i = 0; i < d; ++i) num *= (n - d);
    mpz_class fact = 1;
    for (long i = 2; i <= d; ++i) fact *= i;
    return mpq_class(num, fact);
}

mpz_class su_dimension_lower_bound(int n, long d) {
    const long m = n / 2;
    if (d > m) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(d));
    return b;
}

double high_level_dimension_lower_bound(Family f, int n) {
    switch (f) {
        case Family::SO:
        case Family::Spin: return std::exp(n / 32.0);
        case Family::Sp: return std::exp(n / 16.0);
        case Family::SU: throw UnsupportedError("no high-level dimension audit for SU");
    }
    return 1.0;
}

}  // namespace grouplab
