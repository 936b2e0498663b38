#pragma once

#include <utility>
#include <vector>

#include "rtq/arith.hpp"
#include "rtq/modular_data.hpp"

namespace rtq {

// Dense complex matrix indexed by an ordered set of alcove weights.
template <typename Real>
struct IndexedMatrix {
    int n = 0;
    std::vector<Complex<Real>> e; // n*n row-major

    IndexedMatrix() = default;
    explicit IndexedMatrix(int size) : n(size), e(static_cast<size_t>(size) * size) {}

    Complex<Real>& at(int i, int j) { return e[static_cast<size_t>(i) * n + j]; }
    const Complex<Real>& at(int i, int j) const { return e[static_cast<size_t>(i) * n + j]; }

    static IndexedMatrix identity(int size) {
        IndexedMatrix m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = Complex<Real>(Real(1.0));
        return m;
    }

    IndexedMatrix dagger() const {
        IndexedMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = at(j, i).conj();
        return m;
    }

    friend IndexedMatrix operator*(const IndexedMatrix& a, const IndexedMatrix& b) {
        IndexedMatrix r(a.n);
        for (int i = 0; i < a.n; ++i)
            for (int j = 0; j < a.n; ++j) {
                ComplexSum<Real> acc;
                for (int k = 0; k < a.n; ++k) acc.add(a.at(i, k) * b.at(k, j));
                r.at(i, j) = acc.value();
            }
        return r;
    }

    std::vector<Complex<Real>> column(int j) const {
        std::vector<Complex<Real>> v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = at(i, j);
        return v;
    }
};

template <typename Real>
Real max_abs_diff(const IndexedMatrix<Real>& a, const IndexedMatrix<Real>& b) {
    Real best(0.0);
    for (size_t k = 0; k < a.e.size(); ++k) {
        Real d = (a.e[k] - b.e[k]).abs();
        if (best < d) best = d;
    }
    return best;
}

namespace repdetail {

// Generator entries are given by formulas valid for arbitrary weight-lattice
// points, not just alcove interior ones; the brute-force iterated sums rely
// on this to range over the closed alcove.
template <typename Real>
Complex<Real> xi_entry(const ModularData<Real>& md, const WeightVec& lam, const WeightVec& mu) {
    using ops = real_ops<Real>;
    const RootSystem& rs = md.rs();
    const long long r = md.level();
    const long long scale = rs.inner_scale();

    ComplexSum<Real> acc;
    for (const WeylElement& w : rs.weyl_elements()) {
        long long s = rs.inner_scaled(w.apply(lam), mu);
        Complex<Real> ph = unit_phase<Real>(Rational::from128(detail::i128(-2) * s,
                                                              detail::i128(scale) * r));
        acc.add(w.det_sign > 0 ? ph : -ph);
    }
    Real norm = Real(1.0) / (half_int_pow(ops::from_ll(r), rs.rank()) *
                             ops::sqrt(ops::from_ll(rs.det_cartan())));
    return unit_phase<Real>(Rational(rs.num_pos_roots(), 2)) * acc.value() * norm;
}

} // namespace repdetail

// R(Xi) on the alcove index set.
template <typename Real>
IndexedMatrix<Real> gen_xi(const ModularData<Real>& md) {
    IndexedMatrix<Real> m(md.size());
    for (int i = 0; i < md.size(); ++i)
        for (int j = 0; j < md.size(); ++j)
            m.at(i, j) = repdetail::xi_entry(md, md.weight(i), md.weight(j));
    return m;
}

// R(Theta): diagonal with exp(i pi (|l|^2/r - |rho|^2/h)).
template <typename Real>
IndexedMatrix<Real> gen_theta(const ModularData<Real>& md) {
    IndexedMatrix<Real> m(md.size());
    for (int i = 0; i < md.size(); ++i)
        m.at(i, i) = unit_phase<Real>(md.theta_phase(md.weight(i)));
    return m;
}

// S = D * R(Xi), T = omega * R(Theta).
template <typename Real>
IndexedMatrix<Real> s_matrix(const ModularData<Real>& md) {
    IndexedMatrix<Real> m = gen_xi(md);
    for (auto& v : m.e) v = v * md.rank_d();
    return m;
}

template <typename Real>
IndexedMatrix<Real> t_matrix(const ModularData<Real>& md) {
    IndexedMatrix<Real> m(md.size());
    for (int i = 0; i < md.size(); ++i) m.at(i, i) = md.twist(i);
    return m;
}

// R(Xi^2), the charge conjugation permutation delta_{lambda mu*}.
template <typename Real>
IndexedMatrix<Real> charge_conjugation(const ModularData<Real>& md) {
    IndexedMatrix<Real> m(md.size());
    for (int i = 0; i < md.size(); ++i) m.at(md.dual_index(i), i) = Complex<Real>(Real(1.0));
    return m;
}

namespace repdetail {

// Apply diag(Theta)^p from the left.
template <typename Real>
void theta_scale(const ModularData<Real>& md, long long p, IndexedMatrix<Real>& m) {
    if (!p) return;
    for (int i = 0; i < md.size(); ++i) {
        Complex<Real> ph = unit_phase<Real>(md.theta_phase(md.weight(i)) * Rational(p));
        for (int j = 0; j < md.size(); ++j) m.at(i, j) = ph * m.at(i, j);
    }
}

} // namespace repdetail

// R(B^C * Theta^n) evaluated as an explicit generator word (matrix products
// in the fixed lexicographic index order). Trusted oracle path.
template <typename Real>
IndexedMatrix<Real> rep_word(const ModularData<Real>& md, const ContinuedFraction& cf,
                             long long theta_power, int eps) {
    IndexedMatrix<Real> xi = gen_xi(md);
    IndexedMatrix<Real> m = IndexedMatrix<Real>::identity(md.size());
    if (theta_power) {
        for (int i = 0; i < md.size(); ++i)
            m.at(i, i) = unit_phase<Real>(md.theta_phase(md.weight(i)) * Rational(theta_power));
    }
    for (int k = 0; k < cf.length(); ++k) {
        m = xi * m;
        repdetail::theta_scale(md, cf.terms()[static_cast<size_t>(k)], m);
    }
    if (eps < 0) m = charge_conjugation(md) * m;
    return m;
}

// R(U) as a product of generator matrices along the canonical decomposition.
template <typename Real>
IndexedMatrix<Real> rep_bruteforce(const ModularData<Real>& md, const SL2ZMatrix& u) {
    Sl2zDecomposition dec = decompose_sl2z(u);
    if (dec.pure_theta) return rep_word(md, ContinuedFraction(), dec.theta_power, dec.eps);
    return rep_word(md, dec.cf, dec.theta_power, dec.eps);
}

// Closed form for R(eps*U), c != 0: the coset/Weyl double sum. Returns the
// sign eps from the constructive decomposition together with the matrix.
template <typename Real>
std::pair<int, IndexedMatrix<Real>> rep_closed(const ModularData<Real>& md, const SL2ZMatrix& u) {
    using ops = real_ops<Real>;
    if (u.c == 0)
        fail(Errc::CZero, "closed form needs c != 0; use the Theta-power path for " + u.str());
    const RootSystem& rs = md.rs();
    const long long r = md.level();
    const long long scale = rs.inner_scale();
    const int eps = decompose_sl2z(u).eps;
    const long long c = u.c;
    const long long absc = c < 0 ? -c : c;

    Rational rho2 = rs.inner(rs.rho(), rs.rho());
    Rational phi = rademacher_phi(u);

    // i^{|D+|} sign(eps c)^{|D+|} / ((r|c|)^{l/2} vol) * exp(-i pi |rho|^2 Phi(U)/h)
    Complex<Real> pref = unit_phase<Real>(Rational(rs.num_pos_roots(), 2));
    if (sign_of(eps * c) < 0 && rs.num_pos_roots() % 2 != 0) pref = -pref;
    pref = pref * unit_phase<Real>(-rho2 * phi / Rational(rs.dual_coxeter()));
    Real norm = Real(1.0) / (half_int_pow(ops::from_ll(r) * ops::from_ll(absc), rs.rank()) *
                             ops::sqrt(ops::from_ll(rs.det_cartan())));

    std::vector<WeightVec> cosets = coset_reps_root_lattice(rs, c);
    const auto& weyl = rs.weyl_elements();

    IndexedMatrix<Real> m(md.size());
    for (int mu_i = 0; mu_i < md.size(); ++mu_i) {
        const WeightVec& mu = md.weight(mu_i);
        std::vector<WeightVec> wmu;
        wmu.reserve(weyl.size());
        for (const auto& w : weyl) wmu.push_back(w.apply(mu));
        long long mu2 = rs.inner_scaled(mu, mu);
        Complex<Real> mu_factor =
            unit_phase<Real>(Rational::from128(detail::i128(u.d) * mu2,
                                               detail::i128(c) * r * scale));
        for (int la_i = 0; la_i < md.size(); ++la_i) {
            const WeightVec& lam = md.weight(la_i);
            ComplexSum<Real> acc;
            for (const WeightVec& nu : cosets) {
                WeightVec v = lam + r * nu;
                long long v2 = rs.inner_scaled(v, v);
                Rational quad = Rational::from128(detail::i128(u.a) * v2, detail::i128(c) * r * scale);
                Complex<Real> outer_ph = unit_phase<Real>(quad);
                ComplexSum<Real> inner_acc;
                for (size_t wi = 0; wi < weyl.size(); ++wi) {
                    long long s = rs.inner_scaled(v, wmu[wi]);
                    Complex<Real> ph = unit_phase<Real>(
                        Rational::from128(detail::i128(-2) * s, detail::i128(scale) * r * eps * c));
                    inner_acc.add(weyl[wi].det_sign > 0 ? ph : -ph);
                }
                acc.add(outer_ph * inner_acc.value());
            }
            m.at(la_i, mu_i) = pref * mu_factor * acc.value() * norm;
        }
    }
    return {eps, m};
}

enum class RhoFormula { CosetOverRho, CompletedSquare };

// The two rho-column closed forms; both are free of the sign ambiguity.
template <typename Real>
Complex<Real> rep_row_rho(const ModularData<Real>& md, const SL2ZMatrix& u, const WeightVec& lam,
                          RhoFormula which) {
    using ops = real_ops<Real>;
    if (u.c == 0) fail(Errc::CZero, "rho-column closed form needs c != 0");
    const RootSystem& rs = md.rs();
    const long long r = md.level();
    const long long scale = rs.inner_scale();
    const long long c = u.c;
    const long long absc = c < 0 ? -c : c;

    Rational rho2 = rs.inner(rs.rho(), rs.rho());
    Complex<Real> pref = unit_phase<Real>(Rational(rs.num_pos_roots(), 2));
    if (c < 0 && rs.num_pos_roots() % 2 != 0) pref = -pref;
    pref = pref * unit_phase<Real>(-rho2 * rademacher_phi(u) / Rational(rs.dual_coxeter()));
    Real norm = Real(1.0) / (half_int_pow(ops::from_ll(r) * ops::from_ll(absc), rs.rank()) *
                             ops::sqrt(ops::from_ll(rs.det_cartan())));

    std::vector<WeightVec> cosets = coset_reps_root_lattice(rs, c);
    const auto& weyl = rs.weyl_elements();
    ComplexSum<Real> acc;

    if (which == RhoFormula::CosetOverRho) {
        long long lam2 = rs.inner_scaled(lam, lam);
        Complex<Real> lam_factor = unit_phase<Real>(
            Rational::from128(detail::i128(u.a) * lam2, detail::i128(c) * r * scale));
        std::vector<WeightVec> wlam;
        for (const auto& w : weyl) wlam.push_back(w.apply(lam));
        for (const WeightVec& nu : cosets) {
            WeightVec v = rs.rho() + r * nu;
            long long v2 = rs.inner_scaled(v, v);
            Complex<Real> outer_ph = unit_phase<Real>(
                Rational::from128(detail::i128(u.d) * v2, detail::i128(c) * r * scale));
            ComplexSum<Real> inner_acc;
            for (size_t wi = 0; wi < weyl.size(); ++wi) {
                long long s = rs.inner_scaled(v, wlam[wi]);
                Complex<Real> ph = unit_phase<Real>(
                    Rational::from128(detail::i128(-2) * s, detail::i128(scale) * r * c));
                inner_acc.add(weyl[wi].det_sign > 0 ? ph : -ph);
            }
            acc.add(outer_ph * inner_acc.value());
        }
        return pref * lam_factor * acc.value() * norm;
    }

    if (u.a == 0)
        fail(Errc::InvalidArgument, "completed-square rho formula needs a != 0 in " + u.str());
    Complex<Real> b_factor =
        unit_phase<Real>(rho2 * Rational(u.b) / (Rational(u.a) * Rational(r)));
    for (size_t wi = 0; wi < weyl.size(); ++wi) {
        WeightVec wrho = weyl[wi].apply(rs.rho());
        ComplexSum<Real> inner_acc;
        for (const WeightVec& nu : cosets) {
            // |lam + r nu - w(rho)/a|^2 = |a(lam + r nu) - w(rho)|^2 / a^2
            WeightVec v = u.a * (lam + r * nu) - wrho;
            long long v2 = rs.inner_scaled(v, v);
            inner_acc.add(unit_phase<Real>(Rational::from128(
                detail::i128(v2), detail::i128(c) * u.a * r * scale)));
        }
        Complex<Real> term = inner_acc.value();
        acc.add(weyl[wi].det_sign > 0 ? term : -term);
    }
    return pref * b_factor * acc.value() * norm;
}

// ---- key lemma: the iterated sum T^C and its closed form ----

// Brute-force T^C as a matrix over the closed alcove (boundary included;
// boundary entries of R(Xi) vanish, so this matches the interior sum).
template <typename Real>
struct ClosedAlcoveMatrix {
    std::vector<WeightVec> weights;
    IndexedMatrix<Real> mat;

    int index_of(const WeightVec& w) const {
        for (size_t i = 0; i < weights.size(); ++i)
            if (weights[i] == w) return static_cast<int>(i);
        fail(Errc::InvalidArgument, "weight " + w.str() + " is not in the closed alcove");
    }
};

template <typename Real>
ClosedAlcoveMatrix<Real> t_calc_bruteforce(const ModularData<Real>& md, const ContinuedFraction& cf) {
    const RootSystem& rs = md.rs();
    ClosedAlcoveMatrix<Real> out;
    out.weights = closed_alcove_weights(rs, md.level());
    int n = static_cast<int>(out.weights.size());

    IndexedMatrix<Real> xi(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            xi.at(i, j) = repdetail::xi_entry(md, out.weights[static_cast<size_t>(i)],
                                              out.weights[static_cast<size_t>(j)]);

    IndexedMatrix<Real> m = xi;
    for (int k = 0; k < cf.length(); ++k) {
        long long p = cf.terms()[static_cast<size_t>(k)];
        IndexedMatrix<Real> scaled = m;
        if (p) {
            for (int i = 0; i < n; ++i) {
                Complex<Real> ph =
                    unit_phase<Real>(md.theta_phase(out.weights[static_cast<size_t>(i)]) * Rational(p));
                for (int j = 0; j < n; ++j) scaled.at(i, j) = ph * scaled.at(i, j);
            }
        }
        m = xi * scaled;
    }
    out.mat = std::move(m);
    return out;
}

// Coset closed form of the iterated sum; valid when every a_k is nonzero.
template <typename Real>
Complex<Real> t_calc_closed(const ModularData<Real>& md, const ContinuedFraction& cf,
                            const WeightVec& lam0, const WeightVec& lam_end) {
    using ops = real_ops<Real>;
    const int t = cf.length();
    if (t < 1) fail(Errc::InvalidArgument, "closed form needs a nonempty tuple");
    for (int k = 1; k <= t; ++k)
        if (cf.a(k) == 0)
            fail(Errc::ZeroPivot, "closed form needs nonzero a_k; a_" + std::to_string(k) +
                                      " vanishes for the given tuple");
    const RootSystem& rs = md.rs();
    const long long r = md.level();
    const long long scale = rs.inner_scale();
    const long long at = cf.a(t);
    const long long ct = cf.c(t); // = a_{t-1}, nonzero by assumption
    const long long abs_at = at < 0 ? -at : at;

    Rational rho2 = rs.inner(rs.rho(), rs.rho());

    long long dt = 0;
    for (int k = 1; k <= t; ++k) dt += sign_of(cf.a(k - 1)) * sign_of(cf.a(k));
    Rational inv_chain(0);
    for (int i = 1; i <= t - 1; ++i) inv_chain += Rational(1, cf.a(i - 1) * cf.a(i));

    Complex<Real> kfac = unit_phase<Real>(Rational((t + 1) * rs.num_pos_roots(), 2));
    kfac = kfac * unit_phase<Real>(Rational(rs.rank() * dt, 4)); // zeta^{l D_t}
    kfac = kfac * unit_phase<Real>(-Rational(cf.term_sum()) * rho2 / Rational(rs.dual_coxeter()));
    kfac = kfac * unit_phase<Real>(-inv_chain * md.norm2(lam0) / Rational(r));
    Real norm = Real(1.0) / (half_int_pow(ops::from_ll(r) * ops::from_ll(abs_at), rs.rank()) *
                             ops::sqrt(ops::from_ll(rs.det_cartan())));

    ComplexSum<Real> acc;
    std::vector<WeightVec> cosets = coset_reps_root_lattice(rs, at);
    for (const WeylElement& w : rs.weyl_elements()) {
        WeightVec wl0 = w.apply(lam0);
        ComplexSum<Real> inner_acc;
        for (const WeightVec& mu : cosets) {
            // |lam_end + r mu + w(lam0)/c_t|^2 = |c_t(lam_end + r mu) + w(lam0)|^2 / c_t^2
            WeightVec v = ct * (lam_end + r * mu) + wl0;
            long long v2 = rs.inner_scaled(v, v);
            inner_acc.add(unit_phase<Real>(Rational::from128(
                detail::i128(-v2), detail::i128(ct) * at * r * scale)));
        }
        Complex<Real> term = inner_acc.value();
        acc.add(w.det_sign > 0 ? term : -term);
    }
    return kfac * acc.value() * norm;
}

} // namespace rtq
