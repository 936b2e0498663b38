#pragma once

#include <map>
#include <vector>

#include "rtq/complexval.hpp"
#include "rtq/errors.hpp"
#include "rtq/lie_data.hpp"

namespace rtq {

// Quantum-group modular data at level r >= dual Coxeter number: the alcove
// index set I, the rank D, omega, twists and quantum dimensions.
template <typename Real>
class ModularData {
public:
    using ops = real_ops<Real>;

    ModularData(const RootSystem& rs, long long r) : rs_(&rs), r_(r) {
        if (r < rs.dual_coxeter())
            fail(Errc::LevelTooSmall, "level r=" + std::to_string(r) +
                                          " is below the dual Coxeter number " +
                                          std::to_string(rs.dual_coxeter()) + " of " + rs.name());
        index_set_ = alcove_weights(rs, r);
        for (size_t i = 0; i < index_set_.size(); ++i)
            lookup_.emplace(index_set_[i], static_cast<int>(i));
        rho_index_ = lookup_.at(rs.rho());

        dual_.resize(index_set_.size());
        for (size_t i = 0; i < index_set_.size(); ++i) {
            auto it = lookup_.find(dual_weight(rs, index_set_[i]));
            if (it == lookup_.end())
                fail(Errc::InvalidArgument, "dual weight left the alcove interior");
            dual_[i] = it->second;
        }

        norm2_rho_ = rs.inner(rs.rho(), rs.rho());

        // D = r^{l/2} det(C)^{1/2} / prod_{a>0} 2 sin(pi <a,rho>/r)
        Real denom(1.0);
        for (int k = 0; k < rs.num_pos_roots(); ++k) {
            long long h = rs.pair_with_root(rs.rho(), rs.positive_root_coeffs(k));
            denom = denom * (Real(2.0) * sinpi<Real>(Rational(h, r)));
        }
        rank_d_ = half_int_pow(ops::from_ll(r), rs.rank()) *
                  ops::sqrt(ops::from_ll(rs.det_cartan())) / denom;

        qdims_.resize(index_set_.size());
        for (size_t i = 0; i < index_set_.size(); ++i) {
            Real prod(1.0);
            for (int k = 0; k < rs.num_pos_roots(); ++k) {
                long long h = rs.pair_with_root(index_set_[i], rs.positive_root_coeffs(k));
                prod = prod * (Real(2.0) * sinpi<Real>(Rational(h, r)));
            }
            // D * r^{-l/2} * det(C)^{-1/2} * prod = prod / (prod at rho)
            qdims_[i] = rank_d_ * prod /
                        (half_int_pow(ops::from_ll(r), rs.rank()) * ops::sqrt(ops::from_ll(rs.det_cartan())));
        }
    }

    const RootSystem& rs() const { return *rs_; }
    long long level() const { return r_; }

    const std::vector<WeightVec>& index_set() const { return index_set_; }
    int size() const { return static_cast<int>(index_set_.size()); }
    const WeightVec& weight(int i) const { return index_set_[static_cast<size_t>(i)]; }
    int rho_index() const { return rho_index_; }
    int dual_index(int i) const { return dual_[static_cast<size_t>(i)]; }

    int index_of(const WeightVec& w) const {
        auto it = lookup_.find(w);
        if (it == lookup_.end())
            fail(Errc::IndexOutOfAlcove, "weight " + w.str() + " is not in the open alcove at level " +
                                             std::to_string(r_));
        return it->second;
    }
    bool contains(const WeightVec& w) const { return lookup_.count(w) != 0; }

    Real rank_d() const { return rank_d_; }

    Rational central_charge() const {
        return Rational((r_ - rs_->dual_coxeter()) * rs_->dim_g(), r_);
    }
    // omega = exp(2 pi i c/24); phase in units of pi is c/12.
    Rational omega_phase() const { return central_charge() / Rational(12); }
    Complex<Real> omega() const { return unit_phase<Real>(omega_phase()); }
    Complex<Real> omega_pow(const Rational& x) const { return unit_phase<Real>(omega_phase() * x); }

    Rational norm2(const WeightVec& x) const { return rs_->inner(x, x); }

    // Theta-generator phase |l|^2/r - |rho|^2/h, in units of pi.
    Rational theta_phase(const WeightVec& l) const {
        return norm2(l) / Rational(r_) - norm2_rho_ / Rational(rs_->dual_coxeter());
    }

    // Twist v_i = omega * exp(i pi theta_phase).
    Rational twist_phase(int i) const { return omega_phase() + theta_phase(weight(i)); }
    Complex<Real> twist(int i) const { return unit_phase<Real>(twist_phase(i)); }

    Real qdim(int i) const { return qdims_[static_cast<size_t>(i)]; }
    Real qdim(const WeightVec& w) const { return qdims_[static_cast<size_t>(index_of(w))]; }

    // Delta = sum_i v_i^{-1} dim(i)^2.
    Complex<Real> delta() const {
        ComplexSum<Real> acc;
        for (int i = 0; i < size(); ++i)
            acc.add(unit_phase<Real>(-twist_phase(i)) * (qdim(i) * qdim(i)));
        return acc.value();
    }

private:
    const RootSystem* rs_;
    long long r_;
    std::vector<WeightVec> index_set_;
    std::map<WeightVec, int> lookup_;
    std::vector<int> dual_;
    int rho_index_ = 0;
    Rational norm2_rho_;
    Real rank_d_{};
    std::vector<Real> qdims_;
};

} // namespace rtq
