#include "rtq/gauss_sums.hpp"

namespace rtq {

namespace {

bool is_half_integer_times(const Rational& x, long long r) {
    // (r/2)*x in Z
    Rational v = Rational(r, 2) * x;
    return v.is_integer();
}

} // namespace

GaussSumSpec GaussSumSpec::make(int dim, RatMat gram, long long r, RatMat b_mat, RatVec psi) {
    if (r == 0) fail(Errc::PreconditionViolation, "gauss sum requires r != 0");
    GaussSumSpec s;
    s.dim_ = dim;
    s.gram_ = std::move(gram);
    s.r_ = r;
    s.b_mat_ = std::move(b_mat);
    s.psi_ = std::move(psi);

    const int l = dim;
    s.det_gram_ = rat_det(s.gram_, l);
    if (s.det_gram_.sign() <= 0)
        fail(Errc::PreconditionViolation, "lattice Gram matrix must be positive definite");

    // Self-adjointness: M^T G = G M, i.e. Q = G M symmetric.
    s.q_ = rat_mul(s.gram_, s.b_mat_, l);
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
            if (s.q_[static_cast<size_t>(i * l + j)] != s.q_[static_cast<size_t>(j * l + i)])
                fail(Errc::PreconditionViolation, "B is not self-adjoint for the given Gram form");

    s.det_b_ = rat_det(s.b_mat_, l);
    s.gram_inv_ = rat_inverse(s.gram_, l);

    // Lattice-side integrality: <l,B h> in Z; (1/2)<l,B r l> in Z; r<l,psi> in Z.
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (!s.q_[static_cast<size_t>(i * l + j)].is_integer())
                fail(Errc::PreconditionViolation,
                     "<lambda, B eta> is not integral on the lattice (entry " + std::to_string(i) +
                         "," + std::to_string(j) + ")");
    for (int i = 0; i < l; ++i)
        if (!is_half_integer_times(s.q_[static_cast<size_t>(i * l + i)], r))
            fail(Errc::PreconditionViolation,
                 "(1/2)<lambda, B r lambda> is not integral on the lattice (index " +
                     std::to_string(i) + ")");
    RatVec gp = rat_mul_vec(s.gram_, s.psi_, l);
    for (int i = 0; i < l; ++i)
        if (!(Rational(r) * gp[static_cast<size_t>(i)]).is_integer())
            fail(Errc::PreconditionViolation,
                 "r<lambda, psi> is not integral on the lattice (index " + std::to_string(i) + ")");

    // Dual-side: B Lambda* in Lambda*; (1/2)<mu, B r mu>, <mu, r xi>, r<mu,psi> in Z.
    RatMat b_dual = rat_mul(rat_mul(s.gram_, s.b_mat_, l), s.gram_inv_, l);
    s.b_dual_.assign(static_cast<size_t>(l * l), 0);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            const Rational& v = b_dual[static_cast<size_t>(i * l + j)];
            if (!v.is_integer())
                fail(Errc::NonIntegralB, "B is not integral on the dual lattice");
            s.b_dual_[static_cast<size_t>(i * l + j)] = v.num();
        }
    // Q* = <e*_i, B e*_j> = (M G^{-1})_{ij}
    RatMat q_dual = rat_mul(s.b_mat_, s.gram_inv_, l);
    for (int i = 0; i < l; ++i)
        if (!is_half_integer_times(q_dual[static_cast<size_t>(i * l + i)], r))
            fail(Errc::PreconditionViolation,
                 "(1/2)<mu, B r mu> is not integral on the dual lattice (index " +
                     std::to_string(i) + ")");
    for (int i = 0; i < l; ++i)
        for (int j = i + 1; j < l; ++j)
            if (!(Rational(r) * q_dual[static_cast<size_t>(i * l + j)]).is_integer())
                fail(Errc::PreconditionViolation,
                     "(1/2)<mu, B r mu> is not integral on the dual lattice (cross term)");
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            if (!(Rational(r) * s.gram_inv_[static_cast<size_t>(i * l + j)]).is_integer())
                fail(Errc::PreconditionViolation, "<mu, r xi> is not integral on the dual lattice");
    for (int i = 0; i < l; ++i)
        if (!(Rational(r) * s.psi_[static_cast<size_t>(i)]).is_integer())
            fail(Errc::PreconditionViolation,
                 "r<mu, psi> is not integral on the dual lattice (index " + std::to_string(i) + ")");

    s.signature_ = rat_signature(s.q_, l);
    return s;
}

std::vector<std::vector<long long>> dual_coset_reps(const GaussSumSpec& spec) {
    const int l = spec.dim();
    if (spec.det_b().is_zero()) fail(Errc::SingularB, "B is singular");
    SmithForm snf = smith_normal_form(spec.b_dual(), l);

    // x = U^{-1} t, t_i in [0, s_i).
    RatMat u_rat(static_cast<size_t>(l * l));
    for (int i = 0; i < l * l; ++i) u_rat[static_cast<size_t>(i)] = Rational(snf.u[static_cast<size_t>(i)]);
    RatMat u_inv = rat_inverse(u_rat, l);

    std::vector<std::vector<long long>> reps;
    std::vector<long long> t(static_cast<size_t>(l), 0);
    while (true) {
        std::vector<long long> x(static_cast<size_t>(l), 0);
        for (int i = 0; i < l; ++i) {
            Rational v(0);
            for (int j = 0; j < l; ++j)
                v += u_inv[static_cast<size_t>(i * l + j)] * Rational(t[static_cast<size_t>(j)]);
            if (!v.is_integer()) fail(Errc::InvalidArgument, "unimodular inverse was not integral");
            x[static_cast<size_t>(i)] = v.num();
        }
        reps.push_back(std::move(x));
        int pos = l - 1;
        while (pos >= 0 && (snf.diag(pos) == 0 || t[static_cast<size_t>(pos)] ==
                                                      std::abs(snf.diag(pos)) - 1)) {
            t[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++t[static_cast<size_t>(pos)];
    }
    return reps;
}

} // namespace rtq
