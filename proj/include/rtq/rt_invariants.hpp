#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rtq/sl2z_rep.hpp"

namespace rtq {

// Seifert data (eps; g | b; (alpha_1,beta_1),...,(alpha_n,beta_n)).
// b absent means non-normalized data (the b = 0 surgery diagram); when b is
// present the pairs must satisfy 0 < beta_j < alpha_j.
struct SeifertPresentation {
    enum class Base { Orientable, NonOrientable };

    Base eps = Base::Orientable;
    int genus = 0;
    std::optional<long long> b;
    std::vector<std::pair<long long, long long>> fibers;

    bool normalized() const { return b.has_value(); }
    int a_eps() const { return eps == Base::Orientable ? 2 : 1; }
    int fiber_count() const { return static_cast<int>(fibers.size()); }

    void validate() const;
    Rational euler_number() const; // E = -(b + sum beta/alpha)
    std::string str() const;       // canonical "o;g|b;(a,b),..." form

    // Parse the grammar "eps;g|b;(a1,b1),(a2,b2),..." with b omissible.
    static SeifertPresentation parse(const std::string& text);
};

// Frobenius-Schur-style signs for self-dual indices; required only for
// non-orientable bases of odd genus. The table is caller-supplied.
struct SelfDualSignTable {
    std::map<WeightVec, int> sign;

    int at(const WeightVec& w) const {
        auto it = sign.find(w);
        if (it == sign.end())
            fail(Errc::MissingSignTable, "no self-dual sign supplied for weight " + w.str());
        if (it->second != 1 && it->second != -1)
            fail(Errc::InvalidArgument, "self-dual signs must be +-1");
        return it->second;
    }
};

enum class Method { MatrixForm, ClosedForm, LensCF, LensRTLens, LensAsymp };

std::string method_name(Method m);

struct InvariantMeta {
    std::string algebra;
    long long level = 0;
    std::string manifold;
    std::string sigma; // Phi- or sigma-type exponent used, as an exact rational
    std::string precision;
};

template <typename Real>
struct InvariantResult {
    Complex<Real> value;
    Method method = Method::MatrixForm;
    InvariantMeta meta;
};

struct EvalOptions {
    long long term_budget = 1000000000; // refuse closed-form sums above this
    int workers = 1;                    // threads for the lambda sweep
    const SelfDualSignTable* signs = nullptr;
    // Use the secondary expansion (1, a1+1, a2, ...) per fiber instead of the
    // canonical ceiling-based one; the invariant must not depend on it.
    bool alternate_expansions = false;
};

// Per-fiber arithmetic data shared by both evaluators.
struct FiberExpansion {
    long long alpha = 1;
    long long beta = 0;
    ContinuedFraction cf; // expansion of alpha/beta
    Rational phi;         // Phi(B^C)
};

std::vector<FiberExpansion> expand_fibers(const SeifertPresentation& m, bool alternate = false);

// sigma_eps of the surgery formula; sign(0) = 0 by convention.
Rational sigma_epsilon(const SeifertPresentation& m, const std::vector<FiberExpansion>& fibers);

// --- evaluators (definitions in rt_invariants_impl.hpp) ---

template <typename Real>
InvariantResult<Real> tau_matrix_form(const ModularData<Real>& md, const SeifertPresentation& m,
                                      const EvalOptions& opt = {});

template <typename Real>
InvariantResult<Real> tau_closed_form(const ModularData<Real>& md, const SeifertPresentation& m,
                                      const EvalOptions& opt = {});

// Surgery-formula lens evaluation through a continued fraction of -p/q.
template <typename Real>
InvariantResult<Real> tau_lens_cf(const ModularData<Real>& md, long long p, long long q);

// omega^{Phi(U)} * R(U)_{rho rho} with U = [[q,b],[p,d]].
template <typename Real>
InvariantResult<Real> tau_lens_rep(const ModularData<Real>& md, long long p, long long q);

// Coset/Weyl closed form of the lens invariant (needs p != 0); this is the
// form whose large-r expansion the asymptotics module extracts.
template <typename Real>
Complex<Real> tau_lens_large_r_value(const RootSystem& rs, long long r, long long p, long long q);

template <typename Real>
InvariantResult<Real> tau_lens_large_r(const ModularData<Real>& md, long long p, long long q);

// All applicable lens methods (asymp path skipped when p = 0).
template <typename Real>
std::vector<InvariantResult<Real>> tau_lens_all(const ModularData<Real>& md, long long p, long long q);

} // namespace rtq

#include "rtq/rt_invariants_impl.hpp"
