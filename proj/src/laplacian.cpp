#include "grouplab/laplacian.hpp"

namespace grouplab {

namespace {

// Gram matrix from u-coordinates: <u_i, u_j> = 2 delta_ij.
std::vector<std::vector<mpq_class>> gram_from_u_coords(const std::vector<std::vector<mpq_class>>& w) {
    const size_t k = w.size();
    std::vector<std::vector<mpq_class>> g(k, std::vector<mpq_class>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            mpq_class s = 0;
            for (size_t t = 0; t < w[i].size(); ++t) s += w[i][t] * w[j][t];
            g[i][j] = 2 * s;
        }
    return g;
}

Family resolve(Family f) { return f == Family::Spin ? Family::SO : f; }

}  // namespace

mpq_class WeightSystem::dot(const std::vector<long>& a, const std::vector<long>& b) const {
    mpq_class s = 0;
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            s += mpq_class(a[static_cast<size_t>(i)]) * mpq_class(b[static_cast<size_t>(j)]) *
                 gram[static_cast<size_t>(i)][static_cast<size_t>(j)];
    return s;
}

WeightSystem weight_system(Family family, int n) {
    WeightSystem ws;
    ws.family = resolve(family);
    ws.n = n;
    switch (ws.family) {
        case Family::SO: {
            if (n < 3) throw UnsupportedError("weight_system: SO needs n >= 3");
            const int k = n / 2;
            ws.rank = k;
            std::vector<std::vector<mpq_class>> w(static_cast<size_t>(k),
                                                  std::vector<mpq_class>(static_cast<size_t>(k), 0));
            if (n % 2 == 1) {
                // w_i = u_1 + ... + u_i for i < k; w_k = (u_1 + ... + u_k)/2
                for (int i = 1; i <= k - 1; ++i)
                    for (int j = 1; j <= i; ++j) w[i - 1][j - 1] = 1;
                for (int j = 1; j <= k; ++j) w[k - 1][j - 1] = mpq_class(1, 2);
            } else {
                // w_i = u_1 + ... + u_i for i <= k-2; w_{k-1} = (u_1+...+u_k)/2;
                // w_k = w_{k-1} - u_k
                for (int i = 1; i <= k - 2; ++i)
                    for (int j = 1; j <= i; ++j) w[i - 1][j - 1] = 1;
                for (int j = 1; j <= k; ++j) w[k - 2][j - 1] = mpq_class(1, 2);
                for (int j = 1; j <= k - 1; ++j) w[k - 1][j - 1] = mpq_class(1, 2);
                w[k - 1][static_cast<size_t>(k - 1)] = mpq_class(-1, 2);
            }
            ws.gram = gram_from_u_coords(w);
            return ws;
        }
        case Family::Sp: {
            ws.rank = n;
            std::vector<std::vector<mpq_class>> w(static_cast<size_t>(n),
                                                  std::vector<mpq_class>(static_cast<size_t>(n), 0));
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= i; ++j) w[i - 1][j - 1] = 1;
            ws.gram = gram_from_u_coords(w);
            ws.metric_scale = mpq_class(1, 2);
            return ws;
        }
        case Family::SU: {
            ws.rank = n - 1;
            ws.gram.assign(static_cast<size_t>(n - 1), std::vector<mpq_class>(static_cast<size_t>(n - 1)));
            for (int a = 1; a <= n - 1; ++a)
                for (int b = 1; b <= n - 1; ++b) {
                    const int lo = std::min(a, b), hi = std::max(a, b);
                    ws.gram[a - 1][b - 1] = mpq_class(static_cast<long>(lo) * (n - hi), n);
                    ws.gram[a - 1][b - 1].canonicalize();
                }
            return ws;
        }
        case Family::Spin: break;
    }
    throw UnsupportedError("weight_system: unsupported family");
}

WeightCoefficients partition_to_weights(Family family, const Partition& lambda, int n, bool mirror) {
    const Family f = resolve(family);
    if (!lambda.is_integer())
        throw UnsupportedError("partition_to_weights: half-integer spin weights are out of scope");
    check_shape(GroupSpec(f, n), lambda);
    WeightCoefficients out;
    switch (f) {
        case Family::SO: {
            const int k = n / 2;
            if (n < 3) throw UnsupportedError("partition_to_weights: SO needs n >= 3");
            out.r.assign(static_cast<size_t>(k), 0);
            if (n % 2 == 1) {
                for (int i = 1; i <= k - 1; ++i) out.r[i - 1] = lambda.part(i - 1) - lambda.part(i);
                out.r[static_cast<size_t>(k - 1)] = 2 * lambda.part(static_cast<size_t>(k - 1));
                if (mirror) throw InvalidShapeError("partition_to_weights: no mirror branch for odd SO");
            } else {
                for (int i = 1; i <= k - 2; ++i) out.r[i - 1] = lambda.part(i - 1) - lambda.part(i);
                // k-row partitions have two mirror branches; with lambda_k = 0
                // the branches coincide.
                const long a = lambda.part(static_cast<size_t>(k - 2)) - lambda.part(static_cast<size_t>(k - 1));
                const long b = lambda.part(static_cast<size_t>(k - 2)) + lambda.part(static_cast<size_t>(k - 1));
                out.r[static_cast<size_t>(k - 2)] = mirror ? b : a;
                out.r[static_cast<size_t>(k - 1)] = mirror ? a : b;
                out.has_mirror = lambda.rows() == static_cast<size_t>(k);
            }
            return out;
        }
        case Family::Sp: {
            if (mirror) throw InvalidShapeError("partition_to_weights: no mirror branch for Sp");
            out.r.assign(static_cast<size_t>(n), 0);
            for (int i = 1; i <= n; ++i) out.r[i - 1] = lambda.part(i - 1) - lambda.part(i);
            return out;
        }
        case Family::SU: {
            if (mirror) throw InvalidShapeError("partition_to_weights: no mirror branch for SU");
            if (lambda.rows() >= static_cast<size_t>(n))
                throw InvalidShapeError("partition_to_weights: SU needs fewer than n rows");
            out.r.assign(static_cast<size_t>(n - 1), 0);
            for (int i = 1; i <= n - 1; ++i) out.r[i - 1] = lambda.part(i - 1) - lambda.part(i);
            return out;
        }
        case Family::Spin: break;
    }
    throw UnsupportedError("partition_to_weights: unsupported family");
}

mpq_class laplacian_eigenvalue(Family family, const Partition& lambda, int n, bool mirror) {
    const WeightSystem ws = weight_system(family, n);
    const WeightCoefficients wc = partition_to_weights(family, lambda, n, mirror);
    std::vector<long> ones(static_cast<size_t>(ws.rank), 1);
    const mpq_class v_dot_sigma = ws.dot(wc.r, ones);
    const mpq_class v_dot_v = ws.dot(wc.r, wc.r);
    mpq_class ev = ws.metric_scale * (-2 * v_dot_sigma - v_dot_v);
    ev.canonicalize();
    return ev;
}

EigenvalueBound check_eigenvalue_bound(Family family, const Partition& lambda, int n) {
    EigenvalueBound out;
    out.lambda_v = laplacian_eigenvalue(family, lambda, n);
    out.level = level(GroupSpec(family, n), lambda);
    out.bound = mpq_class(-2 * out.level * out.level - 2 * static_cast<long>(n) * out.level);
    out.pass = out.lambda_v <= 0 && out.lambda_v >= out.bound;
    return out;
}

}  // namespace grouplab
