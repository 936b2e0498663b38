#include "doctest.h"

#include <cmath>
#include <random>

#include "rtq/gauss_sums.hpp"
#include "rtq/lie_data.hpp"

using namespace rtq;

namespace {

RatMat scalar_b(int l, const Rational& m) {
    RatMat b = rat_identity(l);
    for (int i = 0; i < l; ++i) b[static_cast<size_t>(i * l + i)] = m;
    return b;
}

RatMat cube_gram(int l) { return rat_identity(l); }

RatMat root_gram(const RootSystem& rs) {
    int l = rs.rank();
    RatMat g(static_cast<size_t>(l * l));
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            g[static_cast<size_t>(i * l + j)] =
                rs.inner(rs.simple_roots()[static_cast<size_t>(i)],
                         rs.simple_roots()[static_cast<size_t>(j)]);
    return g;
}

double cdist(const Complex<double>& a, const Complex<double>& b) { return (a - b).abs(); }

} // namespace

TEST_CASE("one-dimensional gauss sums by hand") {
    // Zero automorphism: every phase is 1, lhs = vol(Z*)*3 = 3. The rhs side
    // is undefined (B singular) and must say so.
    GaussSumSpec zero =
        GaussSumSpec::make(1, cube_gram(1), 3, scalar_b(1, Rational(0)), {Rational(0)});
    CHECK(cdist(gauss_lhs<double>(zero), {3.0, 0.0}) < 1e-12);
    CHECK_THROWS_AS(dual_coset_reps(zero), Error);

    // Trivial phases with invertible B: B = [6] on Z at r = 3.
    GaussSumSpec triv =
        GaussSumSpec::make(1, cube_gram(1), 3, scalar_b(1, Rational(6)), {Rational(0)});
    CHECK(cdist(gauss_lhs<double>(triv), {3.0, 0.0}) < 1e-12);
    CHECK(cdist(gauss_lhs<double>(triv), gauss_rhs<double>(triv)) < 1e-9);

    // The classic quarter sum: B=[2], r=4 -> sum e^{i pi l^2/2} = 2(1+i).
    GaussSumSpec spec =
        GaussSumSpec::make(1, cube_gram(1), 4, scalar_b(1, Rational(2)), {Rational(0)});
    CHECK(cdist(gauss_lhs<double>(spec), {2.0, 2.0}) < 1e-12);
    CHECK(cdist(gauss_rhs<double>(spec), {2.0, 2.0}) < 1e-12);
}

TEST_CASE("precondition violations are named") {
    // B = [1] with odd r violates half-integrality on the lattice side.
    CHECK_THROWS_AS(GaussSumSpec::make(1, cube_gram(1), 3, scalar_b(1, Rational(1)), {Rational(0)}),
                    Error);
    // non-integral pairing
    CHECK_THROWS_AS(
        GaussSumSpec::make(1, cube_gram(1), 4, scalar_b(1, Rational(1, 2)), {Rational(0)}), Error);
    // psi with non-integral r<lambda,psi>
    CHECK_THROWS_AS(
        GaussSumSpec::make(1, cube_gram(1), 4, scalar_b(1, Rational(2)), {Rational(1, 3)}), Error);
}

TEST_CASE("dual coset representative counts") {
    GaussSumSpec s1 = GaussSumSpec::make(2, cube_gram(2), 2, scalar_b(2, Rational(2)),
                                         {Rational(0), Rational(0)});
    CHECK(dual_coset_reps(s1).size() == 4);
    CHECK(s1.signature_b() == 2);

    GaussSumSpec s2 = GaussSumSpec::make(2, cube_gram(2), 2, scalar_b(2, Rational(1)),
                                         {Rational(0), Rational(0)});
    CHECK(dual_coset_reps(s2).size() == 1);

    // B acting as the Cartan matrix on the A2 root lattice: det = 3.
    RootSystem a2 = RootSystem::build(Family::A, 2);
    RatMat gram = root_gram(a2);
    GaussSumSpec s3 = GaussSumSpec::make(2, gram, 6, gram, {Rational(0), Rational(0)});
    CHECK(dual_coset_reps(s3).size() == 3);
}

TEST_CASE("negative-definite B flips the phase branch") {
    GaussSumSpec spec =
        GaussSumSpec::make(1, cube_gram(1), 4, scalar_b(1, Rational(-2)), {Rational(0)});
    CHECK(spec.signature_b() == -1);
    Complex<double> lhs = gauss_lhs<double>(spec);
    Complex<double> rhs = gauss_rhs<double>(spec);
    CHECK(cdist(lhs, {2.0, -2.0}) < 1e-12); // conjugate of the positive case
    CHECK(cdist(lhs, rhs) < 1e-9);
}

TEST_CASE("reciprocity over a randomized family") {
    std::mt19937 rng(20240807);
    std::uniform_int_distribution<int> b_dist(-6, 6);
    std::uniform_int_distribution<int> r_dist(1, 8);
    std::uniform_int_distribution<int> lat_dist(0, 2);
    std::uniform_int_distribution<int> psi_dist(-2, 2);

    RootSystem a1 = RootSystem::build(Family::A, 1);
    RootSystem a2 = RootSystem::build(Family::A, 2);

    int accepted = 0, trials = 0;
    while (accepted < 120 && trials < 20000) {
        ++trials;
        int which = lat_dist(rng);
        int l = which == 2 ? 2 : (which == 1 ? 1 : 1 + static_cast<int>(rng() % 3));
        RatMat gram = which == 0 ? cube_gram(l) : root_gram(which == 1 ? a1 : a2);
        long long m = b_dist(rng);
        if (m == 0) continue;
        long long r = r_dist(rng);
        // psi in (1/r) Lambda*: dual coordinates k/r, mapped to the lattice
        // basis through G^{-1}.
        RatMat ginv = rat_inverse(gram, l);
        RatVec kvec(static_cast<size_t>(l));
        for (int i = 0; i < l; ++i) kvec[static_cast<size_t>(i)] = Rational(psi_dist(rng), r);
        RatVec psi = rat_mul_vec(ginv, kvec, l);

        GaussSumSpec spec;
        bool ok = true;
        try {
            spec = GaussSumSpec::make(l, gram, r, scalar_b(l, Rational(m)), psi);
        } catch (const Error&) {
            ok = false; // precondition filter
        }
        if (!ok) continue;
        ++accepted;
        Complex<double> lhs = gauss_lhs<double>(spec);
        Complex<double> rhs = gauss_rhs<double>(spec);
        double scale = std::max(1.0, lhs.abs());
        CHECK(cdist(lhs, rhs) / scale < 1e-9);
    }
    CHECK(accepted >= 120);
}

TEST_CASE("psi shifts by dual vectors leave the lhs invariant") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    RatMat gram = root_gram(a1); // [2]
    RatMat ginv = rat_inverse(gram, 1);
    RatVec shift = rat_mul_vec(ginv, {Rational(1)}, 1); // a dual generator in lattice coords
    GaussSumSpec s0 = GaussSumSpec::make(1, gram, 4, scalar_b(1, Rational(1)), {Rational(0)});
    GaussSumSpec s1 = GaussSumSpec::make(1, gram, 4, scalar_b(1, Rational(1)), shift);
    CHECK(cdist(gauss_lhs<double>(s0), gauss_lhs<double>(s1)) < 1e-12);
}

TEST_CASE("gauss sums agree in both precision backends") {
    GaussSumSpec spec =
        GaussSumSpec::make(1, cube_gram(1), 4, scalar_b(1, Rational(2)), {Rational(0)});
    auto lhs_dd = gauss_lhs<dd>(spec);
    auto rhs_dd = gauss_rhs<dd>(spec);
    CHECK((lhs_dd - rhs_dd).abs().to_double() < 1e-28);
    CHECK(std::abs(lhs_dd.re.to_double() - 2.0) < 1e-28);
}
