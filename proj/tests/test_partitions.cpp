#include "doctest.h"

#include <cmath>
#include <functional>

#include "grouplab/partition.hpp"
#include "grouplab/weyl_dim.hpp"

using namespace grouplab;

TEST_CASE("partition enumeration") {
    const auto empty = partitions_of(0, 5);
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].rows() == 0);

    const auto p42 = partitions_of(4, 2);
    REQUIRE(p42.size() == 3);
    CHECK(p42[0] == Partition{4});
    CHECK(p42[1] == Partition{3, 1});
    CHECK(p42[2] == Partition{2, 2});

    CHECK(partitions_of(10, 10).size() == 42);
    CHECK(partition_count(10) == 42);  // independent DP oracle
}

TEST_CASE("partition invariants") {
    CHECK_THROWS_AS(Partition({1, 2}), InvalidShapeError);
    CHECK(Partition({3, 1, 0, 0}) == Partition{3, 1});
    const Partition half = Partition::half_integers({3, 1, 1});  // (3/2, 1/2, 1/2)
    CHECK(half.is_half_integer());
    CHECK(half.to_string() == "(3/2,1/2,1/2)");
    CHECK_THROWS_AS(half.sum(), InvalidShapeError);
    CHECK_THROWS_AS(Partition::from_twice({4, 3}), InvalidShapeError);  // mixed parity
}

TEST_CASE("levels") {
    CHECK(level(GroupSpec(Family::SO, 7), Partition{2, 1}) == 3);
    CHECK(level(GroupSpec(Family::SU, 6), Partition{1, 1, 1, 1, 1}) == 1);
    CHECK(level(GroupSpec(Family::SU, 6), Partition{2}) == 2);
    CHECK(level(GroupSpec(Family::Sp, 4), Partition{3, 2}) == 5);
    CHECK(level(GroupSpec(Family::Spin, 9), Partition{2, 2}) == 4);
    // row constraints
    CHECK_THROWS_AS(level(GroupSpec(Family::SO, 4), Partition{1, 1, 1}), InvalidShapeError);
}

TEST_CASE("step vectors") {
    const StepVector s = step_vector(Partition{3, 1}, 4);
    CHECK(s == StepVector{2, 1, 0});
    CHECK(step_vector(Partition{}, 4) == StepVector{0, 0, 0});
    CHECK(partition_from_steps({0, 0, 1}) == Partition{1, 1, 1});

    // round trip over all step vectors with weighted size <= 12
    const int n = 5;
    StepVector a(n - 1, 0);
    long checked = 0;
    std::function<void(int, long)> go = [&](int i, long used) {
        if (i == n) {
            const Partition lam = partition_from_steps(a);
            CHECK(step_vector(lam, n) == a);
            ++checked;
            return;
        }
        for (long v = 0; used + v * i <= 12; ++v) {
            a[static_cast<size_t>(i - 1)] = v;
            go(i + 1, used + v * i);
        }
        a[static_cast<size_t>(i - 1)] = 0;
    };
    go(1, 0);
    CHECK(checked > 100);
}

TEST_CASE("efficient truncations") {
    CHECK(efficient_truncation(Partition{1}, 6) == Partition{1});
    CHECK(dually_efficient_truncation(Partition{1}, 6) == Partition{});

    CHECK(efficient_truncation(Partition{1, 1, 1, 1, 1}, 6) == Partition{});
    CHECK(dually_efficient_truncation(Partition{1, 1, 1, 1, 1}, 6) == Partition{1, 1, 1, 1, 1});

    CHECK(efficient_truncation(Partition{2, 1, 1, 1, 1}, 6) == Partition{1});
    CHECK(dually_efficient_truncation(Partition{2, 1, 1, 1, 1}, 6) == Partition{1, 1, 1, 1, 1});
}

TEST_CASE("littlewood-richardson examples") {
    const auto triv = littlewood_richardson(Partition{}, Partition{2, 1});
    REQUIRE(triv.size() == 1);
    CHECK(triv.at(Partition{2, 1}) == 1);

    const auto pieri = littlewood_richardson(Partition{1}, Partition{1});
    REQUIRE(pieri.size() == 2);
    CHECK(pieri.at(Partition{2}) == 1);
    CHECK(pieri.at(Partition{1, 1}) == 1);

    // (2,1) x (2,1): classical expansion with a multiplicity-2 constituent
    const auto sq = littlewood_richardson(Partition{2, 1}, Partition{2, 1});
    CHECK(sq.at(Partition{3, 2, 1}) == 2);
    CHECK(sq.at(Partition{4, 2}) == 1);
    CHECK(sq.at(Partition{2, 2, 1, 1}) == 1);
    long total = 0;
    for (const auto& [lam, mult] : sq) total += mult;
    CHECK(total == 8);  // number of LR fillings for (2,1)^2
}

TEST_CASE("littlewood-richardson conserves dimensions in SU(5)") {
    const GroupSpec g(Family::SU, 5);
    for (long da = 0; da <= 4; ++da)
        for (long db = 0; db <= 4; ++db)
            for (const Partition& a : partitions_of(da, da))
                for (const Partition& b : partitions_of(db, db)) {
                    const mpz_class lhs = weyl_dimension(g, a) * weyl_dimension(g, b);
                    mpz_class rhs = 0;
                    for (const auto& [lam, mult] : littlewood_richardson(a, b)) {
                        if (lam.rows() > 5) continue;
                        rhs += mult * weyl_dimension(g, lam);
                    }
                    REQUIRE(lhs == rhs);
                }
}

TEST_CASE("weyl dimension oracles") {
    // spherical harmonics on SO(3)
    for (long l = 0; l <= 20; ++l)
        CHECK(weyl_dimension(GroupSpec(Family::SO, 3), Partition{l}) == 2 * l + 1);

    // standard representations
    for (int n = 2; n <= 30; ++n) {
        CHECK(weyl_dimension(GroupSpec(Family::SU, n), Partition{1}) == n);
        CHECK(weyl_dimension(GroupSpec(Family::Sp, n), Partition{1}) == 2 * n);
        if (n >= 3) CHECK(weyl_dimension(GroupSpec(Family::SO, n), Partition{1}) == n);
    }

    CHECK(weyl_dimension(GroupSpec(Family::SO, 5), Partition{1}) == 5);

    // Sp(1) is SU(2)
    for (long d = 0; d <= 20; ++d)
        CHECK(weyl_dimension(GroupSpec(Family::Sp, 1), Partition{d}) ==
              weyl_dimension(GroupSpec(Family::SU, 2), Partition{d}));

    // adjoint of SU(3) via full-column translation invariance: (2,1,0), dim 8
    CHECK(weyl_dimension(GroupSpec(Family::SU, 3), Partition{2, 1}) == 8);
    // exterior square of the standard representation of SO(n): dim n(n-1)/2
    for (int n = 5; n <= 12; ++n)
        CHECK(weyl_dimension(GroupSpec(Family::SO, n), Partition{1, 1}) == n * (n - 1) / 2);

    // SO(4) self-associated pair: each mirror of the (1,1) pair has dimension 3
    CHECK(weyl_dimension(GroupSpec(Family::SO, 4), Partition{1, 1}) == 3);
    CHECK(is_self_associated(GroupSpec(Family::SO, 4), Partition{1, 1}));
    CHECK(!is_self_associated(GroupSpec(Family::SO, 4), Partition{1}));
    CHECK(!is_self_associated(GroupSpec(Family::SO, 5), Partition{1, 1}));

    // spin representations from the half-integer formulas
    CHECK(weyl_dimension(GroupSpec(Family::Spin, 7), Partition::half_integers({1, 1, 1})) == 8);
    CHECK(weyl_dimension(GroupSpec(Family::Spin, 9), Partition::half_integers({1, 1, 1, 1})) == 16);
    CHECK(weyl_dimension(GroupSpec(Family::Spin, 8), Partition::half_integers({1, 1, 1, 1})) == 8);
    // Spin agrees with SO on integer partitions
    CHECK(weyl_dimension(GroupSpec(Family::Spin, 7), Partition{2, 1}) ==
          weyl_dimension(GroupSpec(Family::SO, 7), Partition{2, 1}));

    CHECK_THROWS_AS(weyl_dimension(GroupSpec(Family::SU, 3), Partition{1, 1, 1, 1}),
                    InvalidShapeError);
}

TEST_CASE("dimension lower bounds from the audits") {
    for (const int n : {10, 20}) {
        const long dcap = std::min<long>(6, (n - 1) / 2);
        for (long d = 0; d <= dcap; ++d) {
            for (const Partition& lam : partitions_of(d, std::min<long>(d, n / 2))) {
                const mpq_class bound = so_sp_dimension_lower_bound(n, d);
                CHECK(mpq_class(weyl_dimension(GroupSpec(Family::SO, n), lam)) >= bound);
                CHECK(mpq_class(weyl_dimension(GroupSpec(Family::Sp, n), lam)) >= bound);
                CHECK(weyl_dimension(GroupSpec(Family::SU, n), lam) >=
                      su_dimension_lower_bound(n, d));
            }
        }
    }
    for (const int n : {10, 12}) {
        for (long d = n / 2; d <= n / 2 + 3; ++d) {
            for (const Partition& lam : partitions_of(d, n / 2))
                CHECK(weyl_dimension(GroupSpec(Family::SO, n), lam).get_d() >=
                      high_level_dimension_lower_bound(Family::SO, n));
            for (const Partition& lam : partitions_of(d, n))
                CHECK(weyl_dimension(GroupSpec(Family::Sp, n), lam).get_d() >=
                      high_level_dimension_lower_bound(Family::Sp, n));
        }
    }
}

TEST_CASE("quasirandom profile") {
    const QuasirandomProfile p = quasirandom_profile(100, 0.5);
    CHECK(p.q(1) == doctest::Approx(50.0));
    CHECK(p.q(2) == doctest::Approx(625.0));
    const double threshold = 0.5 * 100 / 1.5;
    CHECK(p.q_tail == doctest::Approx(std::pow(1.5, threshold)));
    for (int d = static_cast<int>(threshold) + 1; d < 50; ++d)
        CHECK(p.q(d) == doctest::Approx(p.q_tail));
    CHECK_THROWS_AS(quasirandom_profile(100, 0.0), InvalidShapeError);
}

TEST_CASE("min-rank and quasirandomness of products") {
    const MinRankResult single = min_rank_and_D({GroupSpec(Family::SU, 5)});
    CHECK(single.min_rank == 5);
    CHECK(single.quasirandomness == 5);

    const MinRankResult pair = min_rank_and_D({GroupSpec(Family::Sp, 3), GroupSpec(Family::SU, 10)});
    CHECK(pair.min_rank == 3);
    CHECK(pair.quasirandomness == 6);

    const MinRankResult spin = min_rank_and_D({GroupSpec(Family::Spin, 4)});
    CHECK(spin.min_rank == 4);
    CHECK(spin.quasirandomness == 4);

    CHECK_THROWS_AS(min_rank_and_D({}), InvalidShapeError);
}
