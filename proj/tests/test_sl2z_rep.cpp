#include "doctest.h"

#include <cmath>
#include <random>

#include "rtq/sl2z_rep.hpp"

using namespace rtq;

namespace {

SL2ZMatrix random_sl2z_nonzero_c(std::mt19937& rng, long long bound) {
    std::uniform_int_distribution<long long> dist(-bound, bound);
    while (true) {
        long long a = dist(rng), c = dist(rng);
        if (c == 0 || gcd_ll(a, c) != 1) continue;
        long long old_r = a, r = c, old_x = 1, x = 0;
        while (r != 0) {
            long long qt = old_r / r;
            long long t = old_r - qt * r;
            old_r = r;
            r = t;
            t = old_x - qt * x;
            old_x = x;
            x = t;
        }
        long long d = old_x * old_r;
        long long b = (a * d - 1) / c;
        return SL2ZMatrix(a, b, c, d);
    }
}

} // namespace

TEST_CASE("generator matrices in rank one") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    ModularData<double> md(a1, 6);
    auto xi = gen_xi(md);
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; n <= 5; ++n) {
            double expected = std::sqrt(2.0 / 6.0) * std::sin(3.14159265358979323846 * m * n / 6.0);
            CHECK(xi.at(m - 1, n - 1).re == doctest::Approx(expected).epsilon(1e-12));
            CHECK(std::abs(xi.at(m - 1, n - 1).im) < 1e-14);
        }

    auto theta = gen_theta(md);
    // rho entry: exp(i pi (1/2)(1/r - 1/2))
    Complex<double> expect = unit_phase<double>(Rational(1, 12) - Rational(1, 4));
    CHECK((theta.at(0, 0) - expect).abs() < 1e-14);
}

TEST_CASE("representation relations") {
    for (const char* name : {"A1", "A2"}) {
        RootSystem rs = RootSystem::build(name);
        for (long long r = rs.dual_coxeter(); r <= rs.dual_coxeter() + 3; ++r) {
            ModularData<double> md(rs, r);
            CAPTURE(name);
            CAPTURE(r);
            auto xi = gen_xi(md);
            auto theta = gen_theta(md);
            auto id = IndexedMatrix<double>::identity(md.size());
            auto cc = charge_conjugation(md);

            auto xi2 = xi * xi;
            CHECK(max_abs_diff(xi2, cc) < 1e-9);          // R(Xi^2) = charge conjugation
            CHECK(max_abs_diff(xi2 * xi2, id) < 1e-9);    // R(Xi)^4 = 1

            auto xt = xi * theta;
            CHECK(max_abs_diff(xt * (xt * xt), xi2) < 1e-9); // (R(Xi)R(Theta))^3 = R(Xi^2)

            // unitarity of the generators
            CHECK(max_abs_diff(xi * xi.dagger(), id) < 1e-10);
        }
    }
}

TEST_CASE("brute force respects known special values") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    ModularData<double> md(a1, 5);

    auto rep_id = rep_bruteforce(md, SL2ZMatrix::identity());
    CHECK(max_abs_diff(rep_id, IndexedMatrix<double>::identity(md.size())) < 1e-12);

    auto rep_xi2 = rep_bruteforce(md, SL2ZMatrix(-1, 0, 0, -1));
    CHECK(max_abs_diff(rep_xi2, charge_conjugation(md)) < 1e-10);

    auto xi = gen_xi(md);
    auto rep_xi = rep_bruteforce(md, SL2ZMatrix::xi());
    CHECK(max_abs_diff(rep_xi, xi) < 1e-10);
}

TEST_CASE("two different generator words give the same matrix") {
    RootSystem a2 = RootSystem::build(Family::A, 2);
    ModularData<double> md(a2, 5);
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 25; ++trial) {
        SL2ZMatrix u = random_sl2z_nonzero_c(rng, 20);
        // word 1: canonical decomposition with trailing Theta power
        auto m1 = rep_bruteforce(md, u);
        // word 2: pure B^C expansion of u
        ContinuedFraction cf = cf_for_matrix(u);
        auto m2 = rep_word(md, cf, 0, 1);
        CHECK(max_abs_diff(m1, m2) < 1e-10);
    }
}

TEST_CASE("closed form matches brute force") {
    std::mt19937 rng(8675309);
    for (const char* name : {"A1", "A2"}) {
        RootSystem rs = RootSystem::build(name);
        long long rmax = std::string(name) == "A1" ? 8 : 5;
        for (long long r = rs.dual_coxeter(); r <= rmax; ++r) {
            ModularData<double> md(rs, r);
            for (int trial = 0; trial < 6; ++trial) {
                SL2ZMatrix u = random_sl2z_nonzero_c(rng, 20);
                auto [eps, closed] = rep_closed(md, u);
                SL2ZMatrix eu = eps > 0 ? u : u.negated();
                auto brute = rep_bruteforce(md, eu);
                CAPTURE(name);
                CAPTURE(r);
                CAPTURE(u.str());
                CHECK(max_abs_diff(closed, brute) < 1e-9);
            }
        }
    }
    RootSystem a1 = RootSystem::build(Family::A, 1);
    ModularData<double> md(a1, 3);
    CHECK_THROWS_AS(rep_closed(md, SL2ZMatrix::theta_pow(2)), Error);
}

TEST_CASE("closed form at the spec example") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    ModularData<double> md(a1, 3);
    SL2ZMatrix u(1, 0, 1, 1);
    auto [eps, closed] = rep_closed(md, u);
    auto brute = rep_bruteforce(md, eps > 0 ? u : u.negated());
    CHECK(max_abs_diff(closed, brute) < 1e-9);
}

TEST_CASE("rho-column formulas agree mutually and with brute force") {
    std::mt19937 rng(424242);
    RootSystem a1 = RootSystem::build(Family::A, 1);
    for (long long r = 3; r <= 8; ++r) {
        ModularData<double> md(a1, r);
        auto xi = gen_xi(md);
        for (int trial = 0; trial < 20; ++trial) {
            SL2ZMatrix u = random_sl2z_nonzero_c(rng, 20);
            auto brute = rep_bruteforce(md, u);
            for (int i = 0; i < md.size(); ++i) {
                const WeightVec& lam = md.weight(i);
                Complex<double> f1 = rep_row_rho(md, u, lam, RhoFormula::CosetOverRho);
                Complex<double> ref = brute.at(i, md.rho_index());
                CHECK((f1 - ref).abs() < 1e-10);
                if (u.a != 0) {
                    Complex<double> f2 = rep_row_rho(md, u, lam, RhoFormula::CompletedSquare);
                    CHECK((f1 - f2).abs() < 1e-10);
                }
            }
        }
    }

    // R(-U)_{lambda rho} = R(U)_{lambda rho}
    ModularData<double> md(a1, 5);
    SL2ZMatrix u(2, 1, 1, 1);
    for (int i = 0; i < md.size(); ++i) {
        Complex<double> plus = rep_row_rho(md, u, md.weight(i), RhoFormula::CosetOverRho);
        Complex<double> minus = rep_row_rho(md, u.negated(), md.weight(i), RhoFormula::CosetOverRho);
        CHECK((plus - minus).abs() < 1e-11);
    }

    // U = Xi Theta^n: matches the direct product R(Xi) R(Theta)^n
    auto xi = gen_xi(md);
    for (long long n : {-3LL, 2LL, 7LL}) {
        SL2ZMatrix u2 = SL2ZMatrix::xi() * SL2ZMatrix::theta_pow(n);
        for (int i = 0; i < md.size(); ++i) {
            Complex<double> direct =
                xi.at(i, md.rho_index()) *
                unit_phase<double>(md.theta_phase(md.rs().rho()) * Rational(n));
            Complex<double> f1 = rep_row_rho(md, u2, md.weight(i), RhoFormula::CosetOverRho);
            CHECK((f1 - direct).abs() < 1e-11);
        }
    }
}

TEST_CASE("rho column of the closed form matches gen_xi") {
    RootSystem a2 = RootSystem::build(Family::A, 2);
    ModularData<double> md(a2, 4);
    auto xi = gen_xi(md);
    for (int i = 0; i < md.size(); ++i) {
        Complex<double> v = rep_row_rho(md, SL2ZMatrix::xi(), md.weight(i), RhoFormula::CosetOverRho);
        CHECK((v - xi.at(i, md.rho_index())).abs() < 1e-12);
    }
}

TEST_CASE("key lemma: closed form equals the iterated sum") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    for (long long r = 2; r <= 5; ++r) {
        ModularData<double> md(a1, r);
        for (std::vector<long long> terms :
             {std::vector<long long>{1}, {2}, {-1}, {2, 3}, {-2, 1}, {3, -2}, {2, 3, 1}}) {
            ContinuedFraction cf(terms);
            bool pivots_ok = true;
            for (int k = 1; k <= cf.length(); ++k)
                if (cf.a(k) == 0) pivots_ok = false;
            if (!pivots_ok) continue;
            auto brute = t_calc_bruteforce(md, cf);
            for (const WeightVec& lam0 : brute.weights)
                for (const WeightVec& lam1 : brute.weights) {
                    Complex<double> closed = t_calc_closed(md, cf, lam0, lam1);
                    Complex<double> direct =
                        brute.mat.at(brute.index_of(lam1), brute.index_of(lam0));
                    CAPTURE(r);
                    CAPTURE(terms[0]);
                    CHECK((closed - direct).abs() < 1e-9);
                }
        }
    }
}

TEST_CASE("key lemma rejects zero pivots") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    ModularData<double> md(a1, 3);
    ContinuedFraction cf({0, 2}); // a_1 = 0
    CHECK_THROWS_AS(t_calc_closed(md, cf, a1.rho(), a1.rho()), Error);
}

TEST_CASE("boundary weights contribute nothing") {
    RootSystem a1 = RootSystem::build(Family::A, 1);
    ModularData<double> md(a1, 4);
    // Xi entries vanish on the boundary of the closed alcove
    WeightVec zero({0}), top({4});
    for (const WeightVec& inner_w : closed_alcove_weights(a1, 4)) {
        CHECK(repdetail::xi_entry(md, zero, inner_w).abs() < 1e-14);
        CHECK(repdetail::xi_entry(md, top, inner_w).abs() < 1e-14);
    }

    // The brute-force matrix over the closed alcove restricted to interior
    // endpoints equals the interior-only iterated sum.
    ContinuedFraction cf({2, 1});
    auto closed_version = t_calc_bruteforce(md, cf);
    auto interior = alcove_weights(a1, 4);
    // interior-only sum computed by hand over interior indices
    auto xi = gen_xi(md);
    int n = md.size();
    IndexedMatrix<double> m = xi;
    for (int k = 0; k < cf.length(); ++k) {
        IndexedMatrix<double> scaled = m;
        long long p = cf.terms()[static_cast<size_t>(k)];
        for (int i = 0; i < n; ++i) {
            Complex<double> ph = unit_phase<double>(md.theta_phase(md.weight(i)) * Rational(p));
            for (int j = 0; j < n; ++j) scaled.at(i, j) = ph * scaled.at(i, j);
        }
        m = xi * scaled;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int ci = closed_version.index_of(interior[static_cast<size_t>(i)]);
            int cj = closed_version.index_of(interior[static_cast<size_t>(j)]);
            CHECK((m.at(i, j) - closed_version.mat.at(ci, cj)).abs() < 1e-10);
        }
}

TEST_CASE("unitarity of brute-force representation matrices") {
    std::mt19937 rng(1001);
    RootSystem a2 = RootSystem::build(Family::A, 2);
    ModularData<double> md(a2, 5);
    auto id = IndexedMatrix<double>::identity(md.size());
    for (int trial = 0; trial < 10; ++trial) {
        SL2ZMatrix u = random_sl2z_nonzero_c(rng, 15);
        auto m = rep_bruteforce(md, u);
        CHECK(max_abs_diff(m * m.dagger(), id) < 1e-9);
    }
}
