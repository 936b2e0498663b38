#pragma once

#include <map>
#include <vector>

#include "rtq/rt_invariants.hpp"

namespace rtq {

// Candidate Chern-Simons phases {q|nu|^2/(2p) mod 1 : nu in Lambda^R/p Lambda^R}
// as exact rationals, deduplicated and sorted.
std::vector<Rational> cs_phase_set(const RootSystem& rs, long long p, long long q);

// One oscillatory family of the expansion: e^{2 pi i r alpha} r^{d} times a
// polynomial in 1/r. coeffs[m] is the absolute coefficient of r^{-m}; the
// leading one (m = 0) can vanish, which shifts the effective growth order.
template <typename Real>
struct AsymptoticTerm {
    Rational alpha;                    // CS phase mod 1
    Rational d;                        // growth exponent, -l/2 for lens spaces
    std::vector<Complex<Real>> coeffs; // size order+1
};

template <typename Real>
struct AsymptoticExpansion {
    int order = 0;
    std::vector<AsymptoticTerm<Real>> terms;
};

// Exact regrouping of the lens closed form by CS phase. The grouped data is
// r-independent; evaluating it at any level reproduces the closed form, and
// Taylor expansion of the 1/r factors yields the asymptotic coefficients.
template <typename Real>
class LensGrouping {
public:
    LensGrouping(const RootSystem& rs, long long p, long long q) : rs_(&rs), p_(p), q_(q) {
        using ops = real_ops<Real>;
        if (p == 0) fail(Errc::PZero, "lens asymptotics need p != 0");
        if (gcd_ll(p, q) != 1) fail(Errc::NotCoprime, "L(p,q) requires coprime (p,q)");
        const int l = rs.rank();
        const int npos = rs.num_pos_roots();
        const long long scale = rs.inner_scale();
        const long long absp = p < 0 ? -p : p;

        Complex<Real> kfac = unit_phase<Real>(Rational(npos, 2));
        if (p < 0 && npos % 2 != 0) kfac = -kfac;
        kfac = kfac / (half_int_pow(ops::from_ll(absp), l) * ops::sqrt(ops::from_ll(rs.det_cartan())));

        Rational rho2 = rs.inner(rs.rho(), rs.rho());
        Rational dede = Rational(12 * sign_of(p)) * dedekind_sum(q, absp) * rho2;

        const auto& weyl = rs.weyl_elements();
        theta_.reserve(weyl.size());
        for (const WeylElement& w : weyl) {
            WeightVec wrho = w.apply(rs.rho());
            long long rr = rs.inner_scaled(rs.rho(), wrho);
            // 1/r phase per Weyl element, in units of pi:
            // 12 sign(p) s(q,|p|) |rho|^2 - 2 <rho, w(rho)>/p
            theta_.push_back(dede + Rational::from128(detail::i128(-2) * rr,
                                                      detail::i128(scale) * p));
        }

        std::map<Rational, std::vector<ComplexSum<Real>>> groups;
        for (const WeightVec& nu : coset_reps_root_lattice(rs, p)) {
            long long nu2 = rs.inner_scaled(nu, nu);
            // CS phase: q|nu|^2/(2p) mod 1
            Rational alpha =
                Rational::from128(detail::i128(q) * nu2, detail::i128(2) * p * scale).mod(1);
            auto it = groups.find(alpha);
            if (it == groups.end())
                it = groups.emplace(alpha, std::vector<ComplexSum<Real>>(weyl.size())).first;
            for (size_t wi = 0; wi < weyl.size(); ++wi) {
                WeightVec qrho_minus = q * rs.rho() - weyl[wi].apply(rs.rho());
                long long cross = rs.inner_scaled(nu, qrho_minus);
                // q|nu|^2/p differs from 2*alpha by an even integer, so the
                // oscillatory factor is exactly e^{2 pi i r alpha}; only the
                // r-free cross phase stays in the amplitude.
                Rational ph = Rational::from128(detail::i128(2) * cross, detail::i128(p) * scale);
                Complex<Real> v = unit_phase<Real>(ph);
                it->second[wi].add(weyl[wi].det_sign > 0 ? v : -v);
            }
        }
        for (auto& [alpha, sums] : groups) {
            Group g;
            g.alpha = alpha;
            for (auto& s : sums) g.amp.push_back(kfac * s.value());
            groups_.push_back(std::move(g));
        }
    }

    const RootSystem& rs() const { return *rs_; }
    long long p() const { return p_; }
    long long q() const { return q_; }

    // Exact value at level r: identical to the ungrouped closed form.
    Complex<Real> value(long long r) const {
        using ops = real_ops<Real>;
        Real rpow = half_int_pow(ops::from_ll(r), -rs_->rank());
        ComplexSum<Real> acc;
        for (const auto& g : groups_) {
            Complex<Real> osc = unit_phase<Real>(g.alpha * Rational(2) * Rational(r));
            ComplexSum<Real> inner;
            for (size_t wi = 0; wi < g.amp.size(); ++wi)
                inner.add(g.amp[wi] * unit_phase<Real>(theta_[wi] / Rational(r)));
            acc.add(osc * inner.value());
        }
        return acc.value() * rpow;
    }

    // Taylor coefficients in 1/r up to the requested order.
    AsymptoticExpansion<Real> expansion(int order) const {
        using ops = real_ops<Real>;
        AsymptoticExpansion<Real> out;
        out.order = order;
        for (const auto& g : groups_) {
            AsymptoticTerm<Real> term;
            term.alpha = g.alpha;
            term.d = Rational(-rs_->rank(), 2);
            for (int m = 0; m <= order; ++m) {
                // coefficient of r^{-m}: sum_w amp_w (i pi theta_w)^m / m!
                ComplexSum<Real> acc;
                for (size_t wi = 0; wi < g.amp.size(); ++wi) {
                    Real th = ops::pi() * ops::from_rational(theta_[wi]);
                    Real fact(1.0);
                    for (int f = 2; f <= m; ++f) fact = fact * Real(static_cast<double>(f));
                    Complex<Real> pw = cpow_int(Complex<Real>(Real(0.0), th), m);
                    acc.add(g.amp[wi] * pw / fact);
                }
                term.coeffs.push_back(acc.value());
            }
            out.terms.push_back(std::move(term));
        }
        return out;
    }

    // Truncated reconstruction at level r from an expansion.
    static Complex<Real> reconstruct(const AsymptoticExpansion<Real>& exp_data, long long r) {
        using ops = real_ops<Real>;
        ComplexSum<Real> acc;
        for (const auto& t : exp_data.terms) {
            Complex<Real> osc = unit_phase<Real>(t.alpha * Rational(2) * Rational(r));
            Real rpow = half_int_pow(ops::from_ll(r), t.d.num() * 2 / t.d.den());
            Complex<Real> poly{};
            Real rinv = Real(1.0) / ops::from_ll(r);
            Real rm(1.0);
            for (const auto& c : t.coeffs) {
                poly += c * rm;
                rm = rm * rinv;
            }
            acc.add(osc * poly * rpow);
        }
        return acc.value();
    }

private:
    struct Group {
        Rational alpha;
        std::vector<Complex<Real>> amp; // per Weyl element
    };

    const RootSystem* rs_;
    long long p_;
    long long q_;
    std::vector<Rational> theta_; // per Weyl element, units of pi (divided by r)
    std::vector<Group> groups_;
};

template <typename Real>
AsymptoticExpansion<Real> lens_expansion(const RootSystem& rs, long long p, long long q, int order) {
    if (order < 0) fail(Errc::InvalidArgument, "expansion order must be >= 0");
    return LensGrouping<Real>(rs, p, q).expansion(order);
}

struct SlopeFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
};

// Least-squares slope of log|residual| against log r.
SlopeFit slope_fit(const std::vector<std::pair<double, double>>& r_and_residual);

} // namespace rtq
