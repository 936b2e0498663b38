#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rtq/rational.hpp"

namespace rtq {

enum class Family { A, D, E };

std::string family_name(Family f);

// Integer coordinate vector in the fundamental-weight basis. This is the
// universal lattice-point representation: membership in the weight lattice is
// trivial, and the pairing with a simple root alpha_i is just coordinate i.
struct WeightVec {
    std::vector<long long> c;

    WeightVec() = default;
    explicit WeightVec(std::vector<long long> coords) : c(std::move(coords)) {}

    int rank() const { return static_cast<int>(c.size()); }
    long long operator[](int i) const { return c[static_cast<size_t>(i)]; }
    long long& operator[](int i) { return c[static_cast<size_t>(i)]; }

    friend bool operator==(const WeightVec& a, const WeightVec& b) { return a.c == b.c; }
    friend bool operator!=(const WeightVec& a, const WeightVec& b) { return !(a.c == b.c); }
    friend bool operator<(const WeightVec& a, const WeightVec& b) { return a.c < b.c; }

    friend WeightVec operator+(const WeightVec& a, const WeightVec& b) {
        WeightVec r = a;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
        return r;
    }
    friend WeightVec operator-(const WeightVec& a, const WeightVec& b) {
        WeightVec r = a;
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
        return r;
    }
    friend WeightVec operator*(long long s, const WeightVec& a) {
        WeightVec r = a;
        for (auto& v : r.c) v *= s;
        return r;
    }

    std::string str() const;
};

// Element of the Weyl group as an integer matrix acting on weight coordinates.
struct WeylElement {
    std::vector<long long> mat; // l*l row-major
    int det_sign = 1;
    int length = 0;

    WeightVec apply(const WeightVec& x) const {
        int l = x.rank();
        WeightVec y(std::vector<long long>(static_cast<size_t>(l), 0));
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) y[i] += mat[static_cast<size_t>(i * l + j)] * x[j];
        return y;
    }
};

// Complete root datum of a simply-laced simple Lie algebra, normalized so
// every root has squared length 2. Immutable after construction; the Weyl
// group enumeration is cached lazily under a once-flag.
class RootSystem {
public:
    static constexpr long long kDefaultWeylCap = 1000000;

    static RootSystem build(Family family, int rank);
    static RootSystem build(const std::string& name); // "A1", "D4", "E6", ...

    Family family() const { return family_; }
    int rank() const { return rank_; }
    std::string name() const { return family_name(family_) + std::to_string(rank_); }

    const std::vector<long long>& cartan() const { return cartan_; } // l*l row-major
    long long cartan(int i, int j) const { return cartan_[static_cast<size_t>(i * rank_ + j)]; }
    long long det_cartan() const { return det_cartan_; }

    // gram_weights = inverse Cartan matrix = inner products of fundamental
    // weights; stored as integer matrix over a common denominator.
    Rational gram_weights(int i, int j) const {
        return Rational(gram_num_[static_cast<size_t>(i * rank_ + j)], gram_den_);
    }

    const std::vector<WeightVec>& simple_roots() const { return simple_roots_; }
    const std::vector<WeightVec>& positive_roots() const { return positive_roots_; }
    // Root-basis coefficients of the k-th positive root.
    const std::vector<long long>& positive_root_coeffs(int k) const {
        return pos_root_coeffs_[static_cast<size_t>(k)];
    }
    const WeightVec& highest_root() const { return highest_root_; }
    const std::vector<long long>& highest_root_coeffs() const { return highest_root_coeffs_; }
    const WeightVec& rho() const { return rho_; }

    int dual_coxeter() const { return dual_coxeter_; }
    int num_pos_roots() const { return static_cast<int>(positive_roots_.size()); }
    int dim_g() const { return rank_ + 2 * num_pos_roots(); }

    double vol_root_lattice() const; // sqrt(det cartan)
    double vol_weight_lattice() const; // 1/sqrt(det cartan)

    long long weyl_order() const { return weyl_order_; }

    // Exhaustive Weyl group, identity first, ordered by length then
    // lexicographically by matrix entries. Cached; throws WeylGroupTooLarge
    // above the cap. The reference is tied to this RootSystem, so calling on
    // a temporary is rejected.
    const std::vector<WeylElement>& weyl_elements(long long cap = kDefaultWeylCap) const&;
    const std::vector<WeylElement>& weyl_elements(long long cap = kDefaultWeylCap) const&& = delete;

    // Exact inner product via the weight-lattice Gram form.
    Rational inner(const WeightVec& x, const WeightVec& y) const;
    // inner_scale()*<x,y> as an integer, for hot loops.
    long long inner_scaled(const WeightVec& x, const WeightVec& y) const;
    long long inner_scale() const { return gram_den_; }

    // <x, alpha> for alpha given by root-basis coefficients: an exact integer.
    long long pair_with_root(const WeightVec& x, const std::vector<long long>& coeffs) const {
        long long s = 0;
        for (int i = 0; i < rank_; ++i) s += coeffs[static_cast<size_t>(i)] * x[i];
        return s;
    }

    bool in_root_lattice(const WeightVec& x) const;
    // Root-basis coordinates of x (throws if x is not in the root lattice).
    std::vector<long long> root_coords(const WeightVec& x) const;

    WeightVec simple_reflection(int i, const WeightVec& x) const {
        WeightVec y = x;
        long long xi = x[i];
        for (int k = 0; k < rank_; ++k) y[k] -= xi * cartan(i, k);
        return y;
    }

private:
    RootSystem() = default;
    void derive_tables();

    Family family_{};
    int rank_ = 0;
    std::vector<long long> cartan_;
    long long det_cartan_ = 0;
    std::vector<long long> gram_num_;
    long long gram_den_ = 1;
    std::vector<WeightVec> simple_roots_;
    std::vector<WeightVec> positive_roots_;
    std::vector<std::vector<long long>> pos_root_coeffs_;
    WeightVec highest_root_;
    std::vector<long long> highest_root_coeffs_;
    WeightVec rho_;
    int dual_coxeter_ = 0;
    long long weyl_order_ = 0;

    struct WeylCache {
        std::once_flag flag;
        std::vector<WeylElement> elements;
    };
    mutable std::shared_ptr<WeylCache> weyl_cache_ = std::make_shared<WeylCache>();
};

// Interior alcove weights {lambda : <lambda,alpha_i> > 0, <lambda,alpha_0> < r}
// in deterministic lexicographic order.
std::vector<WeightVec> alcove_weights(const RootSystem& rs, long long r);

// Closed-alcove lattice points (boundary included), same ordering.
std::vector<WeightVec> closed_alcove_weights(const RootSystem& rs, long long r);

// |c|^l representatives of Lambda^R / c Lambda^R, as weight coordinates.
std::vector<WeightVec> coset_reps_root_lattice(const RootSystem& rs, long long c);

// lambda* = -w0(lambda - rho) + rho, computed by dominance reduction.
WeightVec dual_weight(const RootSystem& rs, const WeightVec& lambda);

Rational inner(const RootSystem& rs, const WeightVec& x, const WeightVec& y);

} // namespace rtq
