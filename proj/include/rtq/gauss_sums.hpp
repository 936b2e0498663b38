#pragma once

#include <string>
#include <vector>

#include "rtq/complexval.hpp"
#include "rtq/ratmat.hpp"
#include "rtq/snf.hpp"

namespace rtq {

// Data of one lattice Gauss sum: a lattice given by the Gram matrix of its
// basis, a nonzero integer r, a self-adjoint automorphism B (matrix in the
// lattice basis) and a shift vector psi (coordinates in the lattice basis).
// Validation checks the reciprocity preconditions exactly and derives the
// dual-side matrices.
class GaussSumSpec {
public:
    GaussSumSpec() = default;

    static GaussSumSpec make(int dim, RatMat gram, long long r, RatMat b_mat, RatVec psi);

    int dim() const { return dim_; }
    long long r() const { return r_; }
    const RatMat& gram() const { return gram_; }
    const RatMat& b_mat() const { return b_mat_; }
    const RatVec& psi() const { return psi_; }

    const RatMat& pairing_q() const { return q_; }          // <e_i, B e_j>
    const RatMat& gram_inv() const { return gram_inv_; }
    const std::vector<long long>& b_dual() const { return b_dual_; } // B on dual coords, integral
    Rational det_b() const { return det_b_; }
    int signature_b() const { return signature_; }
    Rational det_gram() const { return det_gram_; }

private:
    int dim_ = 0;
    RatMat gram_;
    long long r_ = 1;
    RatMat b_mat_;
    RatVec psi_;

    RatMat q_;
    RatMat gram_inv_;
    std::vector<long long> b_dual_;
    Rational det_b_;
    Rational det_gram_;
    int signature_ = 0;
};

// Representatives of Lambda*/B Lambda* in dual-basis coordinates, |det B|
// of them, via the Smith normal form of B's dual-basis matrix.
std::vector<std::vector<long long>> dual_coset_reps(const GaussSumSpec& spec);

// vol(Lambda*) * sum_{lambda in Lambda/r Lambda} e^{pi i <l,Bl>/r} e^{2 pi i <l,psi>}
template <typename Real>
Complex<Real> gauss_lhs(const GaussSumSpec& spec);

// (det B/i)^{-1/2} r^{l/2} sum_{mu in Lambda*/B Lambda*} e^{-pi i r <mu+psi, B^{-1}(mu+psi)>}
// The branch of the square root is exp(i pi sig(B)/4)/sqrt(|det B|).
template <typename Real>
Complex<Real> gauss_rhs(const GaussSumSpec& spec);

// --- implementation ---

template <typename Real>
Complex<Real> gauss_lhs(const GaussSumSpec& spec) {
    using ops = real_ops<Real>;
    const int l = spec.dim();
    const long long r = spec.r();
    const long long m = r < 0 ? -r : r;
    const RatMat& q = spec.pairing_q();

    // <e_i, psi> = (G p)_i
    RatVec gp = rat_mul_vec(spec.gram(), spec.psi(), l);

    ComplexSum<Real> acc;
    std::vector<long long> n(static_cast<size_t>(l), 0);
    while (true) {
        // phase/pi = (n^T Q n)/r + 2 n.gp
        Rational quad(0);
        for (int i = 0; i < l; ++i) {
            if (!n[static_cast<size_t>(i)]) continue;
            Rational row(0);
            for (int j = 0; j < l; ++j)
                row += q[static_cast<size_t>(i * l + j)] * Rational(n[static_cast<size_t>(j)]);
            quad += Rational(n[static_cast<size_t>(i)]) * row;
        }
        Rational lin(0);
        for (int i = 0; i < l; ++i) lin += Rational(n[static_cast<size_t>(i)]) * gp[static_cast<size_t>(i)];
        acc.add(unit_phase<Real>(quad / Rational(r) + Rational(2) * lin));

        int pos = l - 1;
        while (pos >= 0 && n[static_cast<size_t>(pos)] == m - 1) {
            n[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++n[static_cast<size_t>(pos)];
    }
    // vol(Lambda*) = det(G)^{-1/2}
    Real vol_dual = Real(1.0) / ops::sqrt(ops::from_rational(spec.det_gram()));
    return acc.value() * vol_dual;
}

template <typename Real>
Complex<Real> gauss_rhs(const GaussSumSpec& spec) {
    using ops = real_ops<Real>;
    const int l = spec.dim();
    const long long r = spec.r();

    RatMat b_inv = rat_inverse(spec.b_mat(), l);
    RatMat g_binv = rat_mul(spec.gram(), b_inv, l); // <x, B^{-1} y> = x^T (G B^{-1}) y

    ComplexSum<Real> acc;
    for (const auto& rep : dual_coset_reps(spec)) {
        // mu in lattice-basis coordinates: G^{-1} * rep
        RatVec mu(static_cast<size_t>(l), Rational(0));
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                mu[static_cast<size_t>(i)] += spec.gram_inv()[static_cast<size_t>(i * l + j)] *
                                              Rational(rep[static_cast<size_t>(j)]);
        RatVec z = mu;
        for (int i = 0; i < l; ++i) z[static_cast<size_t>(i)] += spec.psi()[static_cast<size_t>(i)];
        RatVec gz = rat_mul_vec(g_binv, z, l);
        Rational quad = rat_dot(z, gz); // <z, B^{-1} z>
        acc.add(unit_phase<Real>(Rational(-r) * quad));
    }

    Rational absdet = spec.det_b().sign() < 0 ? -spec.det_b() : spec.det_b();
    Real scale = half_int_pow(ops::from_ll(r < 0 ? -r : r), l) /
                 ops::sqrt(ops::from_rational(absdet));
    Complex<Real> branch = unit_phase<Real>(Rational(spec.signature_b(), 4));
    if (r < 0) branch = branch * unit_phase<Real>(Rational(l, 2)); // principal (-|r|)^{l/2}
    return acc.value() * scale * branch;
}

} // namespace rtq
