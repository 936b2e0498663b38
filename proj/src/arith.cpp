#include "rtq/arith.hpp"

#include <cstdlib>

#include "rtq/errors.hpp"

namespace rtq {

SL2ZMatrix::SL2ZMatrix(long long a_, long long b_, long long c_, long long d_)
    : a(a_), b(b_), c(c_), d(d_) {
    if (det() != 1)
        fail(Errc::InvalidArgument, "matrix " + str() + " has determinant " + std::to_string(det()) +
                                        ", expected 1");
}

std::string SL2ZMatrix::str() const {
    return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
           std::to_string(d) + "]]";
}

ContinuedFraction::ContinuedFraction(std::vector<long long> terms) : terms_(std::move(terms)) {
    init();
}

void ContinuedFraction::init() {
    size_t t = terms_.size();
    seq_a_.assign(t + 1, 0);
    seq_b_.assign(t + 1, 0);
    seq_c_.assign(t + 1, 0);
    seq_d_.assign(t + 1, 0);
    seq_a_[0] = seq_d_[0] = 1;
    for (size_t k = 1; k <= t; ++k) {
        long long m = terms_[k - 1];
        seq_a_[k] = m * seq_a_[k - 1] - seq_c_[k - 1];
        seq_c_[k] = seq_a_[k - 1];
        seq_b_[k] = m * seq_b_[k - 1] - seq_d_[k - 1];
        seq_d_[k] = seq_b_[k - 1];
    }
}

long long ContinuedFraction::term_sum() const {
    long long s = 0;
    for (long long m : terms_) s += m;
    return s;
}

Rational ContinuedFraction::nested_value() const {
    if (terms_.empty()) fail(Errc::InvalidArgument, "nested value of an empty tuple");
    Rational v(terms_[0]);
    for (size_t k = 1; k < terms_.size(); ++k) {
        if (v.is_zero()) fail(Errc::ZeroDenominator, "zero inner value in nested fraction");
        v = Rational(terms_[k]) - Rational(1) / v;
    }
    return v;
}

Rational dedekind_sum(long long s, long long q) {
    if (q == 0) fail(Errc::ZeroDenominator, "Dedekind sum with q = 0");
    if (q < 0) q = -q; // s(s,-q) = s(s,q)
    if (gcd_ll(s, q) != 1)
        fail(Errc::NotCoprime, "Dedekind sum requires gcd(s,q)=1, got s=" + std::to_string(s) +
                                   ", q=" + std::to_string(q));
    if (q == 1) return Rational(0);
    s %= q;
    if (s < 0) s += q;
    // Euclidean recursion from the reciprocity law
    //   s(h,k) + s(k,h) = -1/4 + (h^2 + k^2 + 1)/(12 h k),
    // with s periodic in its first argument.
    Rational acc(0);
    long long h = s, k = q;
    int sign = 1;
    while (h != 0) {
        acc += Rational(sign) * (Rational(-1, 4) +
                                 Rational::from128(detail::i128(h) * h + detail::i128(k) * k + 1,
                                                   detail::i128(12) * h * k));
        long long next = k % h;
        k = h;
        h = next;
        sign = -sign;
    }
    // Recursion bottoms out at s(0,1) = 0; k must be 1 here since gcd = 1.
    return acc;
}

Rational rademacher_phi(const SL2ZMatrix& u) {
    if (u.c != 0) {
        Rational head(u.a + u.d, u.c);
        long long absq = u.c < 0 ? -u.c : u.c;
        return head - Rational(12 * sign_of(u.c)) * dedekind_sum(u.d, absq);
    }
    return Rational(u.b, u.d);
}

ContinuedFraction cf_expand(const Rational& target) {
    // Hirzebruch-Jung: peel x = a - 1/x' with a = ceil(x); after the first
    // term every x' > 1, so all inner terms are >= 2. Terms come out
    // outermost-first and are reversed for storage.
    std::vector<long long> outer;
    Rational x = target;
    while (true) {
        long long a = x.ceil();
        outer.push_back(a);
        Rational rem = Rational(a) - x; // in [0,1)
        if (rem.is_zero()) break;
        x = Rational(1) / rem;
    }
    std::vector<long long> terms(outer.rbegin(), outer.rend());
    ContinuedFraction cf(terms);
    if (cf.nested_value() != target)
        fail(Errc::InvalidArgument, "continued fraction self-check failed for " + target.str());
    return cf;
}

namespace {

// Quotient m minimizing |m*c - a| over integers, exact arithmetic.
long long nearest_quotient(long long a, long long c) {
    long long q = a / c;
    long long best = q;
    long long best_err = std::llabs(a - q * c);
    for (long long cand : {q - 1, q + 1}) {
        long long err = std::llabs(a - cand * c);
        if (err < best_err) {
            best = cand;
            best_err = err;
        }
    }
    return best;
}

// One left-peel: M -> Xi^{-1} Theta^{-m} M.
SL2ZMatrix peel(const SL2ZMatrix& m, long long q) {
    return SL2ZMatrix(m.c, m.d, q * m.c - m.a, q * m.d - m.b);
}

} // namespace

ContinuedFraction cf_for_matrix(const SL2ZMatrix& v) {
    std::vector<long long> outer; // outermost term first while peeling
    SL2ZMatrix m = v;
    while (!(m == SL2ZMatrix::identity()) && !(m == SL2ZMatrix::identity().negated())) {
        long long q;
        if (m.c != 0) {
            q = nearest_quotient(m.a, m.c);
        } else {
            // m = eps*Theta^k with k != 0; peel with q = k*eps to land on -eps*Xi.
            q = m.a * m.b;
        }
        outer.push_back(q);
        m = peel(m, q);
    }
    std::vector<long long> terms(outer.rbegin(), outer.rend());
    if (m == SL2ZMatrix::identity().negated()) {
        terms.push_back(0);
        terms.push_back(0); // Theta^0 Xi Theta^0 Xi = -1 flips the sign
    }
    ContinuedFraction cf(terms);
    if (!(cf.b_matrix() == v))
        fail(Errc::InvalidArgument, "generator-word reconstruction failed for " + v.str());
    return cf;
}

Sl2zDecomposition decompose_sl2z(const SL2ZMatrix& u) {
    Sl2zDecomposition out;
    if (u.c == 0) {
        // u = eps*Theta^n
        out.pure_theta = true;
        out.eps = u.a > 0 ? 1 : -1;
        out.theta_power = out.eps * u.b;
        return out;
    }
    if (u.a == 0) {
        // u = eps * Xi * Theta^n; B^{(0)} = Xi.
        out.eps = u.c > 0 ? 1 : -1;
        out.theta_power = out.eps * u.d;
        out.cf = ContinuedFraction({0});
    } else {
        // Peel from the left; intermediate c-entries stay nonzero until the
        // remainder is a pure Theta power, which keeps every a_k nonzero.
        std::vector<long long> outer;
        SL2ZMatrix m = u;
        while (m.c != 0) {
            long long q = nearest_quotient(m.a, m.c);
            outer.push_back(q);
            m = peel(m, q);
        }
        out.eps = m.a > 0 ? 1 : -1;
        out.theta_power = out.eps * m.b;
        out.cf = ContinuedFraction(std::vector<long long>(outer.rbegin(), outer.rend()));
        for (int k = 1; k <= out.cf.length(); ++k)
            if (out.cf.a(k) == 0)
                fail(Errc::InvalidArgument, "zero pivot in decomposition of " + u.str());
    }
    // Reconstruction check is mandatory.
    SL2ZMatrix rebuilt = out.cf.b_matrix() * SL2ZMatrix::theta_pow(out.theta_power);
    if (out.eps < 0) rebuilt = rebuilt.negated();
    if (!(rebuilt == u)) fail(Errc::InvalidArgument, "decomposition reconstruction failed for " + u.str());
    return out;
}

long long mod_inverse(long long beta, long long alpha) {
    if (alpha <= 0) fail(Errc::InvalidArgument, "modulus must be positive");
    if (gcd_ll(beta, alpha) != 1)
        fail(Errc::NotCoprime, "no inverse of " + std::to_string(beta) + " modulo " +
                                   std::to_string(alpha));
    if (alpha == 1) return 0;
    long long b = beta % alpha;
    if (b < 0) b += alpha;
    long long t = 0, new_t = 1, r = alpha, new_r = b;
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += alpha;
    return t;
}

} // namespace rtq
