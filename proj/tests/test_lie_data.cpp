#include "doctest.h"

#include <set>

#include "rtq/lie_data.hpp"
#include "rtq/errors.hpp"

using namespace rtq;

namespace {

// Independent positive-root counts from the classification tables.
long long expected_pos_roots(Family f, int l) {
    switch (f) {
        case Family::A: return static_cast<long long>(l) * (l + 1) / 2;
        case Family::D: return static_cast<long long>(l) * (l - 1);
        case Family::E: return l == 6 ? 36 : (l == 7 ? 63 : 120);
    }
    return -1;
}

} // namespace

TEST_CASE("root system construction across families") {
    struct Case {
        Family f;
        int l;
        int hv;
    };
    for (const auto& c : {Case{Family::A, 1, 2}, Case{Family::A, 2, 3}, Case{Family::A, 3, 4},
                          Case{Family::D, 4, 6}, Case{Family::D, 5, 8}, Case{Family::E, 6, 12},
                          Case{Family::E, 8, 30}}) {
        RootSystem rs = RootSystem::build(c.f, c.l);
        CAPTURE(rs.name());
        CHECK(rs.num_pos_roots() == expected_pos_roots(c.f, c.l));
        CHECK(rs.dual_coxeter() == c.hv);
        CHECK(rs.dim_g() == c.l + 2 * rs.num_pos_roots());

        // gram * cartan = identity as rationals
        for (int i = 0; i < c.l; ++i)
            for (int j = 0; j < c.l; ++j) {
                Rational s(0);
                for (int k = 0; k < c.l; ++k)
                    s += rs.gram_weights(i, k) * Rational(rs.cartan(k, j));
                CHECK(s == Rational(i == j ? 1 : 0));
            }

        // every root has squared length 2
        for (const auto& root : rs.positive_roots())
            CHECK(rs.inner(root, root) == Rational(2));

        // h = <rho, alpha_0> + 1
        CHECK(rs.inner(rs.rho(), rs.highest_root()) == Rational(c.hv - 1));

        // Freudenthal: |rho|^2 / h = dim g / 12
        CHECK(rs.inner(rs.rho(), rs.rho()) ==
              Rational(static_cast<long long>(c.hv) * rs.dim_g(), 12));
    }
}

TEST_CASE("specific small systems") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    CHECK(a1.det_cartan() == 2);
    CHECK(a1.rho() == WeightVec({1}));
    CHECK(a1.inner(WeightVec({1}), WeightVec({1})) == Rational(1, 2));

    RootSystem a2 = RootSystem::build(Family::A, 2);
    CHECK(a2.highest_root() == WeightVec({1, 1}));
    CHECK(a2.det_cartan() == 3);

    RootSystem d4 = RootSystem::build(Family::D, 4);
    CHECK(d4.weyl_order() == 192);
    CHECK(d4.weyl_elements().size() == 192);
}

TEST_CASE("unsupported families and ranks rejected") {
    CHECK_THROWS_AS(RootSystem::build("B3"), Error);
    CHECK_THROWS_AS(RootSystem::build("G2"), Error);
    CHECK_THROWS_AS(RootSystem::build(Family::D, 3), Error);
    CHECK_THROWS_AS(RootSystem::build(Family::E, 9), Error);
    CHECK_THROWS_AS(RootSystem::build(Family::A, 0), Error);
}

TEST_CASE("weyl group enumeration") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    auto w1 = a1.weyl_elements();
    REQUIRE(w1.size() == 2);
    CHECK(w1[0].length == 0);
    CHECK(w1[1].apply(WeightVec({3})) == WeightVec({-3}));

    RootSystem a2 = RootSystem::build(Family::A, 2);
    auto w2 = a2.weyl_elements();
    REQUIRE(w2.size() == 6);
    int plus = 0;
    for (const auto& w : w2)
        if (w.det_sign > 0) ++plus;
    CHECK(plus == 3);

    RootSystem a3w = RootSystem::build(Family::A, 3);
    CHECK(a3w.weyl_elements().size() == 24);

    // dets cancel pairwise
    long long det_sum = 0;
    for (const auto& w : w2) det_sum += w.det_sign;
    CHECK(det_sum == 0);

    // parity-of-length sign equals the true matrix determinant
    auto det3 = [](const std::vector<long long>& m) {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    };
    RootSystem a3 = RootSystem::build(Family::A, 3);
    for (const auto& w : a3.weyl_elements()) CHECK(det3(w.mat) == w.det_sign);

    // every element preserves the form
    RootSystem d4 = RootSystem::build(Family::D, 4);
    WeightVec x({1, -2, 3, 0}), y({0, 1, 1, -1});
    Rational ref = d4.inner(x, y);
    for (const auto& w : d4.weyl_elements()) CHECK(d4.inner(w.apply(x), w.apply(y)) == ref);

    // E7 enumeration exceeds the default cap
    RootSystem e7 = RootSystem::build(Family::E, 7);
    CHECK_THROWS_WITH_AS(e7.weyl_elements(), doctest::Contains("1000000"), Error);
}

TEST_CASE("alcove weights") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    auto i5 = alcove_weights(a1, 5);
    REQUIRE(i5.size() == 4);
    for (long long m = 1; m <= 4; ++m) CHECK(i5[static_cast<size_t>(m - 1)] == WeightVec({m}));

    auto i2 = alcove_weights(a1, 2);
    REQUIRE(i2.size() == 1);
    CHECK(i2[0] == a1.rho());

    RootSystem a2 = RootSystem::build(Family::A, 2);
    auto i4 = alcove_weights(a2, 4);
    REQUIRE(i4.size() == 3);
    CHECK(i4[0] == WeightVec({1, 1}));
    CHECK(i4[1] == WeightVec({1, 2}));
    CHECK(i4[2] == WeightVec({2, 1}));

    CHECK_THROWS_AS(alcove_weights(a2, 2), Error);

    // closed alcove includes the boundary
    CHECK(closed_alcove_weights(a1, 4).size() == 5);
}

TEST_CASE("coset representatives of the root lattice") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    auto reps = coset_reps_root_lattice(a1, 2);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0] == WeightVec({0}));
    CHECK(reps[1] == WeightVec({2})); // alpha_1 in weight coordinates

    CHECK(coset_reps_root_lattice(a1, -2).size() == 2);
    CHECK(coset_reps_root_lattice(RootSystem::build(Family::A, 2), 3).size() == 9);
    CHECK_THROWS_AS(coset_reps_root_lattice(a1, 0), Error);

    // pairwise distinct mod c Lambda^R
    RootSystem a2 = RootSystem::build(Family::A, 2);
    auto r3 = coset_reps_root_lattice(a2, 3);
    std::set<std::pair<long long, long long>> residues;
    for (const auto& v : r3) {
        auto n = a2.root_coords(v);
        residues.insert({((n[0] % 3) + 3) % 3, ((n[1] % 3) + 3) % 3});
    }
    CHECK(residues.size() == 9);
}

TEST_CASE("dual weights") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    for (long long m = 1; m <= 5; ++m) CHECK(dual_weight(a1, WeightVec({m})) == WeightVec({m}));

    RootSystem a2 = RootSystem::build(Family::A, 2);
    CHECK(dual_weight(a2, WeightVec({1, 2})) == WeightVec({2, 1}));
    CHECK(dual_weight(a2, a2.rho()) == a2.rho());

    // involution and alcove stability
    for (const auto& lam : alcove_weights(a2, 6)) {
        WeightVec star = dual_weight(a2, lam);
        CHECK(dual_weight(a2, star) == lam);
    }

    RootSystem d4 = RootSystem::build(Family::D, 4);
    for (const auto& lam : alcove_weights(d4, 7))
        CHECK(dual_weight(d4, dual_weight(d4, lam)) == lam);

    // the alcove is setwise stable under duality
    for (const auto& rs : {a2, d4}) {
        auto interior = alcove_weights(rs, rs.dual_coxeter() + 3);
        std::set<WeightVec> as_set(interior.begin(), interior.end());
        for (const auto& lam : interior) CHECK(as_set.count(dual_weight(rs, lam)) == 1);
    }
}

TEST_CASE("root lattice membership") {
    RootSystem a2 = RootSystem::build(Family::A, 2);
    CHECK(a2.in_root_lattice(a2.simple_roots()[0]));
    CHECK(a2.in_root_lattice(a2.highest_root()));
    CHECK(!a2.in_root_lattice(WeightVec({1, 0})));
    CHECK(a2.in_root_lattice(WeightVec({1, 1}))); // alpha_1 + alpha_2
}
