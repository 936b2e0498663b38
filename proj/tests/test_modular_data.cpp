#include "doctest.h"

#include <cmath>

#include "rtq/modular_data.hpp"
#include "rtq/sl2z_rep.hpp"

using namespace rtq;

TEST_CASE("rank values for small algebras") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    ModularData<double> md4(a1, 4);
    CHECK(md4.rank_d() == doctest::Approx(2.0).epsilon(1e-14));

    ModularData<double> md3(a1, 3);
    CHECK(md3.rank_d() ==
          doctest::Approx(std::sqrt(1.5) / std::sin(3.14159265358979323846 / 3)).epsilon(1e-14));

    // A2 at the minimal level r=3: a single simple object and D = 1.
    RootSystem a2 = RootSystem::build(Family::A, 2);
    ModularData<double> mda2(a2, 3);
    CHECK(mda2.size() == 1);
    CHECK(mda2.rank_d() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(ModularData<double>(a1, 1), Error);
}

TEST_CASE("quantum dimensions") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    ModularData<double> md(a1, 5);
    CHECK(md.qdim(md.rho_index()) == doctest::Approx(1.0).epsilon(1e-14));
    // golden-ratio value sin(2pi/5)/sin(pi/5)
    int idx = md.index_of(WeightVec({2}));
    CHECK(md.qdim(idx) == doctest::Approx(1.6180339887498949).epsilon(1e-14));

    // duality symmetry and D^2 = sum dim^2
    for (long long r = 2; r <= 12; ++r) {
        ModularData<double> m(a1, r);
        double sum2 = 0.0;
        for (int i = 0; i < m.size(); ++i) {
            CHECK(m.qdim(i) == doctest::Approx(m.qdim(m.dual_index(i))).epsilon(1e-12));
            sum2 += m.qdim(i) * m.qdim(i);
        }
        CHECK(std::abs(m.rank_d() * m.rank_d() - sum2) / sum2 < 1e-9);
    }
    RootSystem a2 = RootSystem::build(Family::A, 2);
    for (long long r = 3; r <= 12; ++r) {
        ModularData<double> m(a2, r);
        double sum2 = 0.0;
        for (int i = 0; i < m.size(); ++i) sum2 += m.qdim(i) * m.qdim(i);
        CHECK(std::abs(m.rank_d() * m.rank_d() - sum2) / sum2 < 1e-9);
    }

    CHECK_THROWS_AS(md.index_of(WeightVec({7})), Error);
}

TEST_CASE("omega and the anomaly identity") {
    for (const char* name : {"A1", "A2", "D4"}) {
        RootSystem rs = RootSystem::build(name);
        for (long long r = rs.dual_coxeter(); r <= rs.dual_coxeter() + 4; ++r) {
            ModularData<double> md(rs, r);
            CAPTURE(name);
            CAPTURE(r);

            // two forms of omega agree: exp(2 pi i c/24) vs the rho-norm form
            Rational rho2 = rs.inner(rs.rho(), rs.rho());
            Rational alt = rho2 / Rational(rs.dual_coxeter()) - rho2 / Rational(r);
            CHECK(md.omega_phase() == alt);
            CHECK(std::abs(md.omega().abs() - 1.0) < 1e-14);

            // Delta D^{-1} = omega^{-3}
            Complex<double> lhs = md.delta() / md.rank_d();
            Complex<double> rhs = unit_phase<double>(-md.omega_phase() * Rational(3));
            CHECK((lhs - rhs).abs() < 1e-9);
        }
    }
}

TEST_CASE("S and T matrices") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    ModularData<double> md(a1, 5);
    auto s = s_matrix(md);
    auto t = t_matrix(md);

    // A1 closed form: S_{mn} = D sqrt(2/r) sin(pi m n /r)
    double d = md.rank_d();
    for (int i = 0; i < md.size(); ++i)
        for (int j = 0; j < md.size(); ++j) {
            double expected = d * std::sqrt(2.0 / 5.0) *
                              std::sin(3.14159265358979323846 * (i + 1) * (j + 1) / 5.0);
            CHECK(s.at(i, j).re == doctest::Approx(expected).epsilon(1e-12));
            CHECK(std::abs(s.at(i, j).im) < 1e-14);
        }
    for (int i = 0; i < md.size(); ++i) CHECK(std::abs(t.at(i, i).abs() - 1.0) < 1e-14);

    // symmetry, diagonal unit-modulus T
    RootSystem a2 = RootSystem::build(Family::A, 2);
    ModularData<double> md2(a2, 5);
    auto s2 = s_matrix(md2);
    auto t2 = t_matrix(md2);
    for (int i = 0; i < md2.size(); ++i)
        for (int j = 0; j < md2.size(); ++j) {
            CHECK((s2.at(i, j) - s2.at(j, i)).abs() < 1e-12);
            if (i != j) CHECK(t2.at(i, j).abs() == 0.0);
        }
    for (int i = 0; i < md2.size(); ++i) CHECK(std::abs(t2.at(i, i).abs() - 1.0) < 1e-14);

    // T_{rho rho} = omega * exp(i pi (|rho|^2/r - |rho|^2/h))
    Complex<double> trr = t2.at(md2.rho_index(), md2.rho_index());
    Complex<double> expect = md2.omega() * unit_phase<double>(md2.theta_phase(a2.rho()));
    CHECK((trr - expect).abs() < 1e-14);

    // S row at rho reproduces qdim
    for (int i = 0; i < md2.size(); ++i)
        CHECK(s2.at(i, md2.rho_index()).re == doctest::Approx(md2.qdim(i)).epsilon(1e-12));

    // (S/D) is unitary
    auto xi = gen_xi(md2);
    auto prod = xi * xi.dagger();
    auto id = IndexedMatrix<double>::identity(md2.size());
    CHECK(max_abs_diff(prod, id) < 1e-10);
}
