#pragma once

#include <vector>

#include "rtq/rational.hpp"

namespace rtq {

// Integer 2x2 matrix with determinant 1.
struct SL2ZMatrix {
    long long a = 1, b = 0, c = 0, d = 1;

    SL2ZMatrix() = default;
    SL2ZMatrix(long long a_, long long b_, long long c_, long long d_);

    long long det() const { return a * d - b * c; }

    friend SL2ZMatrix operator*(const SL2ZMatrix& x, const SL2ZMatrix& y) {
        return SL2ZMatrix(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                          x.c * y.b + x.d * y.d);
    }
    friend bool operator==(const SL2ZMatrix& x, const SL2ZMatrix& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }

    SL2ZMatrix negated() const { return SL2ZMatrix(-a, -b, -c, -d); }
    std::string str() const;

    static SL2ZMatrix xi() { return SL2ZMatrix(0, -1, 1, 0); }
    static SL2ZMatrix theta_pow(long long n) { return SL2ZMatrix(1, n, 0, 1); }
    static SL2ZMatrix identity() { return SL2ZMatrix(); }
};

// Tuple C = (m_1,...,m_t) with the derived generator-word matrices
// B_k = Theta^{m_k} Xi ... Theta^{m_1} Xi kept alongside. The entry sequences
// satisfy a_k = m_k a_{k-1} - c_{k-1}, c_k = a_{k-1} (same for b,d) with
// a_0 = d_0 = 1, b_0 = c_0 = 0.
class ContinuedFraction {
public:
    ContinuedFraction() { init(); }
    explicit ContinuedFraction(std::vector<long long> terms);

    const std::vector<long long>& terms() const { return terms_; }
    int length() const { return static_cast<int>(terms_.size()); }

    long long a(int k) const { return seq_a_[static_cast<size_t>(k)]; }
    long long b(int k) const { return seq_b_[static_cast<size_t>(k)]; }
    long long c(int k) const { return seq_c_[static_cast<size_t>(k)]; }
    long long d(int k) const { return seq_d_[static_cast<size_t>(k)]; }

    SL2ZMatrix b_matrix(int k) const { return SL2ZMatrix(a(k), b(k), c(k), d(k)); }
    SL2ZMatrix b_matrix() const { return b_matrix(length()); }

    long long term_sum() const;
    // Nested value a_t - 1/(a_{t-1} - ... - 1/a_1); throws on a division by
    // zero inside the nest.
    Rational nested_value() const;

private:
    void init();
    std::vector<long long> terms_;
    std::vector<long long> seq_a_, seq_b_, seq_c_, seq_d_;
};

// Exact Dedekind sum s(s,q), equal to the cotangent sum
// (1/4|q|) sum_{j=1}^{|q|-1} cot(pi j/q) cot(pi s j/q); s(s,+-1) = 0.
Rational dedekind_sum(long long s, long long q);

// Rademacher Phi on PSL(2,Z): for [[p,r],[q,s]], (p+s)/q - 12 sign(q) s(s,|q|)
// when q != 0, r/s when q = 0.
Rational rademacher_phi(const SL2ZMatrix& u);

// Ceiling-based negative continued fraction of target = alpha/beta:
// returns C = (a_1,...,a_m) with a_m - 1/(a_{m-1} - ... - 1/a_1) = target.
ContinuedFraction cf_expand(const Rational& target);

// Expansion of an arbitrary V in SL(2,Z) as an exact generator word:
// B^C = V as integer matrices, with a sign flip absorbed by appending (0,0).
ContinuedFraction cf_for_matrix(const SL2ZMatrix& v);

// U = eps * B^C * Theta^n per the constructive decomposition; when c = 0 the
// matrix is a pure Theta power and `pure_theta` is set instead of C.
struct Sl2zDecomposition {
    int eps = 1;
    bool pure_theta = false;
    long long theta_power = 0; // exponent n (also used for the pure case)
    ContinuedFraction cf;      // valid when !pure_theta; all a_k nonzero unless a==0
};

Sl2zDecomposition decompose_sl2z(const SL2ZMatrix& u);

// beta* with beta*beta ≡ 1 mod alpha and 0 <= beta* < alpha (alpha=1 -> 0).
long long mod_inverse(long long beta, long long alpha);

} // namespace rtq
