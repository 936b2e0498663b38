#pragma once

#include "rtq/parallel.hpp"

namespace rtq {

namespace taudetail {

// (S G^C) e_rho, built right-to-left with matrix-vector products over the
// full index set per step.
template <typename Real>
std::vector<Complex<Real>> sg_rho_column(const ModularData<Real>& md, const IndexedMatrix<Real>& s,
                                         const ContinuedFraction& cf) {
    int n = md.size();
    std::vector<Complex<Real>> v(static_cast<size_t>(n));
    v[static_cast<size_t>(md.rho_index())] = Complex<Real>(Real(1.0));
    auto apply_s = [&]() {
        std::vector<Complex<Real>> out(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            ComplexSum<Real> acc;
            for (int k = 0; k < n; ++k) acc.add(s.at(i, k) * v[static_cast<size_t>(k)]);
            out[static_cast<size_t>(i)] = acc.value();
        }
        v = std::move(out);
    };
    for (int k = 0; k < cf.length(); ++k) {
        apply_s();
        long long m = cf.terms()[static_cast<size_t>(k)];
        if (m)
            for (int i = 0; i < n; ++i)
                v[static_cast<size_t>(i)] =
                    unit_phase<Real>(md.twist_phase(i) * Rational(m)) * v[static_cast<size_t>(i)];
    }
    apply_s();
    return v;
}

template <typename Real>
InvariantMeta make_meta(const ModularData<Real>& md, const std::string& manifold,
                        const Rational& sigma) {
    InvariantMeta meta;
    meta.algebra = md.rs().name();
    meta.level = md.level();
    meta.manifold = manifold;
    meta.sigma = sigma.str();
    meta.precision = real_ops<Real>::name();
    return meta;
}

inline void check_sign_requirement(const SeifertPresentation& m, const EvalOptions& opt) {
    long long ag = static_cast<long long>(m.a_eps()) * m.genus;
    if (m.eps == SeifertPresentation::Base::NonOrientable && ag % 2 != 0 && !opt.signs)
        fail(Errc::MissingSignTable,
             "non-orientable base with odd genus exponent needs a self-dual sign table");
}

} // namespace taudetail

template <typename Real>
InvariantResult<Real> tau_matrix_form(const ModularData<Real>& md, const SeifertPresentation& m,
                                      const EvalOptions& opt) {
    m.validate();
    taudetail::check_sign_requirement(m, opt);
    const bool non_orientable = m.eps == SeifertPresentation::Base::NonOrientable;
    const long long ag = static_cast<long long>(m.a_eps()) * m.genus;
    const int n = m.fiber_count();

    auto fibers = expand_fibers(m, opt.alternate_expansions);
    Rational sigma = sigma_epsilon(m, fibers);

    IndexedMatrix<Real> s = s_matrix(md);
    std::vector<std::vector<Complex<Real>>> columns;
    long long sum_m = 0;
    for (const auto& f : fibers) {
        columns.push_back(taudetail::sg_rho_column(md, s, f.cf));
        sum_m += f.cf.length();
    }

    Complex<Real> pref = md.omega_pow(Rational(-3) * sigma); // (Delta D^{-1})^sigma
    Real dpow = ipow(md.rank_d(), ag - 2 - sum_m);

    ComplexSum<Real> acc;
    for (int i = 0; i < md.size(); ++i) {
        if (non_orientable && md.dual_index(i) != i) continue; // b_j^{(n)} = delta_{j,j*}
        Complex<Real> term(ipow(md.qdim(i), 2 - n - ag));
        if (non_orientable && ag % 2 != 0) {
            int eps_sign = opt.signs->at(md.weight(i));
            if (eps_sign < 0) term = -term;
        }
        if (m.b && *m.b != 0)
            term = term * unit_phase<Real>(md.twist_phase(i) * Rational(-*m.b));
        for (const auto& col : columns) term = term * col[static_cast<size_t>(i)];
        acc.add(term);
    }

    InvariantResult<Real> out;
    out.value = pref * acc.value() * dpow;
    out.method = Method::MatrixForm;
    out.meta = taudetail::make_meta(md, m.str(), sigma);
    return out;
}

template <typename Real>
InvariantResult<Real> tau_closed_form(const ModularData<Real>& md, const SeifertPresentation& m,
                                      const EvalOptions& opt) {
    using ops = real_ops<Real>;
    m.validate();
    taudetail::check_sign_requirement(m, opt);
    const RootSystem& rs = md.rs();
    const bool non_orientable = m.eps == SeifertPresentation::Base::NonOrientable;
    const int a_eps = m.a_eps();
    const long long ag = static_cast<long long>(a_eps) * m.genus;
    const int n = m.fiber_count();
    const long long r = md.level();
    const long long scale = rs.inner_scale();
    const int l = rs.rank();
    const int npos = rs.num_pos_roots();
    const long long h = rs.dual_coxeter();

    const auto& weyl = rs.weyl_elements();

    // Budget: the factorized per-fiber sums cost |W| * alpha^l terms per
    // index-set element.
    long long per_lambda = 0;
    for (auto [alpha, beta] : m.fibers) {
        long long coset = 1;
        for (int i = 0; i < l; ++i) coset *= alpha;
        per_lambda += static_cast<long long>(weyl.size()) * coset;
    }
    long long total = static_cast<long long>(md.size()) * (per_lambda + 1);
    if (total > opt.term_budget)
        fail(Errc::BudgetExceeded, "estimated " + std::to_string(total) +
                                       " terms exceeds the budget " + std::to_string(opt.term_budget));

    Rational e_num = m.euler_number();
    int sign_e = e_num.sign();
    Rational rho2 = rs.inner(rs.rho(), rs.rho());

    Rational dedekind_total(0);
    for (auto [alpha, beta] : m.fibers) dedekind_total += dedekind_sum(beta, alpha);

    // Phase prefactors, all in units of pi.
    Rational phase = rho2 / Rational(r) *
                     (Rational(3 * (a_eps - 1) * sign_e) - e_num - Rational(12) * dedekind_total);
    phase += Rational(static_cast<long long>(n) * npos, 2); // i^{n |D+|}
    phase += Rational(3 * (1 - a_eps) * sign_e) * rho2 / Rational(h);
    Complex<Real> pref = unit_phase<Real>(phase);

    // r^{l(a g/2 - 1)} / (2^{|D+|(n + ag - 2)} vol^{2-ag} A^{l/2})
    Real real_factor = half_int_pow(ops::from_ll(r), static_cast<long long>(l) * (ag - 2));
    real_factor = real_factor / ipow(Real(2.0), static_cast<long long>(npos) * (n + ag - 2));
    real_factor = real_factor / half_int_pow(ops::from_ll(rs.det_cartan()), 2 - ag);
    long long big_a = 1;
    for (auto [alpha, beta] : m.fibers) big_a *= alpha;
    real_factor = real_factor * half_int_pow(ops::from_ll(big_a), -l);

    // Per-fiber (w, nu) tables: the j-sums factor out of the product given
    // lambda, so each fiber is summed independently.
    struct FiberTable {
        long long alpha;
        std::vector<int> det_signs;
        std::vector<WeightVec> shift;   // r*nu + w(rho)
        std::vector<Rational> base_phase; // -(beta*/alpha)(r|nu|^2 + 2<w(rho),nu>)
    };
    std::vector<FiberTable> tables;
    for (auto [alpha, beta] : m.fibers) {
        long long beta_red = beta % alpha;
        if (beta_red < 0) beta_red += alpha;
        long long beta_star = mod_inverse(beta_red, alpha);
        FiberTable tab;
        tab.alpha = alpha;
        for (const WeightVec& nu : coset_reps_root_lattice(rs, alpha)) {
            long long nu2 = rs.inner_scaled(nu, nu);
            for (const WeylElement& w : weyl) {
                WeightVec wrho = w.apply(rs.rho());
                long long cross = rs.inner_scaled(wrho, nu);
                Rational ph = Rational(-beta_star, alpha) *
                              Rational::from128(detail::i128(r) * nu2 + detail::i128(2) * cross, scale);
                tab.det_signs.push_back(w.det_sign);
                tab.shift.push_back(r * nu + wrho);
                tab.base_phase.push_back(ph);
            }
        }
        tables.push_back(std::move(tab));
    }

    // Z sum: lambda outermost (parallel axis, slot-reduced in index order).
    std::vector<Complex<Real>> slots(static_cast<size_t>(md.size()));
    parallel_for(md.size(), opt.workers, [&](int i) {
        if (non_orientable && md.dual_index(i) != i) return; // b^{(n)} = delta_{j,j*}
        const WeightVec& lam = md.weight(i);
        Complex<Real> term(Real(1.0));
        for (int k = 0; k < npos; ++k) {
            long long pairing = rs.pair_with_root(lam, rs.positive_root_coeffs(k));
            term = term * ipow(sinpi<Real>(Rational(pairing, r)), 2 - n - ag);
        }
        term = term * unit_phase<Real>(e_num * md.norm2(lam) / Rational(r));
        if (non_orientable && ag % 2 != 0 && opt.signs->at(lam) < 0) term = -term;
        for (const auto& tab : tables) {
            ComplexSum<Real> acc;
            for (size_t k = 0; k < tab.shift.size(); ++k) {
                long long cross = rs.inner_scaled(lam, tab.shift[k]);
                Rational ph = tab.base_phase[k] +
                              Rational::from128(detail::i128(-2) * cross,
                                                detail::i128(scale) * r * tab.alpha);
                Complex<Real> v = unit_phase<Real>(ph);
                acc.add(tab.det_signs[k] > 0 ? v : -v);
            }
            term = term * acc.value();
        }
        slots[static_cast<size_t>(i)] = term;
    });
    ComplexSum<Real> z;
    for (const auto& v : slots) z.add(v);

    InvariantResult<Real> out;
    out.value = pref * z.value() * real_factor;
    out.method = Method::ClosedForm;
    out.meta = taudetail::make_meta(md, m.str(), dedekind_total);
    return out;
}

template <typename Real>
InvariantResult<Real> tau_lens_cf(const ModularData<Real>& md, long long p, long long q) {
    if (gcd_ll(p, q) != 1)
        fail(Errc::NotCoprime, "L(p,q) requires coprime (p,q), got (" + std::to_string(p) + "," +
                                   std::to_string(q) + ")");
    std::vector<long long> terms;
    if (q != 0) {
        terms = cf_expand(Rational(-p, q)).terms();
        terms.push_back(0);
    } else {
        terms = {0, 0, 0}; // m = 3, a_1 = a_2 = 0
    }
    ContinuedFraction cf(terms);
    long long head_sum = cf.term_sum() - terms.back();
    Rational sigma = (Rational(head_sum) - rademacher_phi(cf.b_matrix())) / Rational(3);

    IndexedMatrix<Real> s = s_matrix(md);
    // G^C e_rho: t T-steps and t S-steps, right-to-left.
    int n = md.size();
    std::vector<Complex<Real>> v(static_cast<size_t>(n));
    v[static_cast<size_t>(md.rho_index())] = Complex<Real>(Real(1.0));
    for (int k = 0; k < cf.length(); ++k) {
        std::vector<Complex<Real>> out_v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            ComplexSum<Real> acc;
            for (int j = 0; j < n; ++j) acc.add(s.at(i, j) * v[static_cast<size_t>(j)]);
            out_v[static_cast<size_t>(i)] = acc.value();
        }
        v = std::move(out_v);
        long long mterm = terms[static_cast<size_t>(k)];
        if (mterm)
            for (int i = 0; i < n; ++i)
                v[static_cast<size_t>(i)] =
                    unit_phase<Real>(md.twist_phase(i) * Rational(mterm)) * v[static_cast<size_t>(i)];
    }

    InvariantResult<Real> out;
    out.value = md.omega_pow(Rational(-3) * sigma) *
                ipow(md.rank_d(), -cf.length()) * v[static_cast<size_t>(md.rho_index())];
    out.method = Method::LensCF;
    out.meta = taudetail::make_meta(md, "L(" + std::to_string(p) + "," + std::to_string(q) + ")", sigma);
    return out;
}

template <typename Real>
InvariantResult<Real> tau_lens_rep(const ModularData<Real>& md, long long p, long long q) {
    if (gcd_ll(p, q) != 1)
        fail(Errc::NotCoprime, "L(p,q) requires coprime (p,q), got (" + std::to_string(p) + "," +
                                   std::to_string(q) + ")");
    // U = [[q, b],[p, d]] with qd - bp = 1.
    long long b = 0, d = 0;
    if (p == 0) {
        d = q; // q = +-1, so U = q*Id
    } else {
        long long old_r = q, rr = p, old_x = 1, x = 0;
        while (rr != 0) {
            long long quot = old_r / rr;
            long long tmp = old_r - quot * rr;
            old_r = rr;
            rr = tmp;
            tmp = old_x - quot * x;
            old_x = x;
            x = tmp;
        }
        d = old_x * old_r; // old_r = +-1; now q*d ≡ 1 (mod p)
        b = (q * d - 1) / p;
    }
    SL2ZMatrix u(q, b, p, d);
    Rational phi = rademacher_phi(u);

    Complex<Real> u_rho_rho;
    if (p != 0) {
        u_rho_rho = rep_row_rho(md, u, md.rs().rho(), RhoFormula::CosetOverRho);
    } else {
        // pure Theta power: R(U)_{rho rho} = exp(i pi n theta_rho), n = eps*b
        Sl2zDecomposition dec = decompose_sl2z(u);
        u_rho_rho = unit_phase<Real>(md.theta_phase(md.rs().rho()) * Rational(dec.theta_power));
    }

    InvariantResult<Real> out;
    out.value = md.omega_pow(phi) * u_rho_rho;
    out.method = Method::LensRTLens;
    out.meta = taudetail::make_meta(md, "L(" + std::to_string(p) + "," + std::to_string(q) + ")", phi);
    return out;
}

template <typename Real>
Complex<Real> tau_lens_large_r_value(const RootSystem& rs, long long r, long long p, long long q) {
    using ops = real_ops<Real>;
    if (p == 0) fail(Errc::PZero, "the coset closed form needs p != 0");
    if (gcd_ll(p, q) != 1) fail(Errc::NotCoprime, "L(p,q) requires coprime (p,q)");
    const int l = rs.rank();
    const int npos = rs.num_pos_roots();
    const long long scale = rs.inner_scale();
    const long long absp = p < 0 ? -p : p;
    Rational rho2 = rs.inner(rs.rho(), rs.rho());

    Complex<Real> pref = unit_phase<Real>(Rational(npos, 2)); // i^{|D+|}
    if (p < 0 && npos % 2 != 0) pref = -pref;                 // sign(p)^{|D+|}
    pref = pref *
           unit_phase<Real>(Rational(12 * sign_of(p)) * dedekind_sum(q, absp) * rho2 / Rational(r));
    Real norm = Real(1.0) / (half_int_pow(ops::from_ll(r) * ops::from_ll(absp), l) *
                             ops::sqrt(ops::from_ll(rs.det_cartan())));

    std::vector<WeightVec> cosets = coset_reps_root_lattice(rs, p);
    ComplexSum<Real> acc;
    for (const WeylElement& w : rs.weyl_elements()) {
        WeightVec wrho = w.apply(rs.rho());
        long long rr = rs.inner_scaled(rs.rho(), wrho);
        Complex<Real> w_factor = unit_phase<Real>(
            Rational::from128(detail::i128(-2) * rr, detail::i128(scale) * p * r));
        ComplexSum<Real> inner_acc;
        for (const WeightVec& nu : cosets) {
            long long nu2 = rs.inner_scaled(nu, nu);
            WeightVec qrho_minus = q * rs.rho() - wrho;
            long long cross = rs.inner_scaled(nu, qrho_minus);
            Rational ph = Rational::from128(detail::i128(q) * r * nu2, detail::i128(p) * scale) +
                          Rational::from128(detail::i128(2) * cross, detail::i128(p) * scale);
            inner_acc.add(unit_phase<Real>(ph));
        }
        Complex<Real> term = w_factor * inner_acc.value();
        acc.add(w.det_sign > 0 ? term : -term);
    }
    return pref * acc.value() * norm;
}

template <typename Real>
InvariantResult<Real> tau_lens_large_r(const ModularData<Real>& md, long long p, long long q) {
    InvariantResult<Real> out;
    out.value = tau_lens_large_r_value<Real>(md.rs(), md.level(), p, q);
    out.method = Method::LensAsymp;
    out.meta = taudetail::make_meta(md, "L(" + std::to_string(p) + "," + std::to_string(q) + ")",
                                    Rational(0));
    return out;
}

template <typename Real>
std::vector<InvariantResult<Real>> tau_lens_all(const ModularData<Real>& md, long long p, long long q) {
    std::vector<InvariantResult<Real>> out;
    out.push_back(tau_lens_cf(md, p, q));
    out.push_back(tau_lens_rep(md, p, q));
    if (p != 0) out.push_back(tau_lens_large_r(md, p, q));
    return out;
}

} // namespace rtq
