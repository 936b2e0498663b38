#include "rtq/asymptotics.hpp"

#include <cmath>
#include <set>

namespace rtq {

std::vector<Rational> cs_phase_set(const RootSystem& rs, long long p, long long q) {
    if (p == 0) fail(Errc::PZero, "Chern-Simons phase set needs p != 0");
    if (gcd_ll(p, q) != 1) fail(Errc::NotCoprime, "L(p,q) requires coprime (p,q)");
    const long long scale = rs.inner_scale();
    std::set<Rational> phases;
    for (const WeightVec& nu : coset_reps_root_lattice(rs, p)) {
        long long nu2 = rs.inner_scaled(nu, nu);
        phases.insert(
            Rational::from128(detail::i128(q) * nu2, detail::i128(2) * p * scale).mod(1));
    }
    return std::vector<Rational>(phases.begin(), phases.end());
}

SlopeFit slope_fit(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 5)
        fail(Errc::DegenerateData, "slope fit needs at least 5 points, got " +
                                       std::to_string(pts.size()));
    std::vector<double> xs, ys;
    for (auto [r, resid] : pts) {
        if (!(resid > 0.0))
            fail(Errc::DegenerateData, "slope fit needs strictly positive residuals");
        if (!(r > 0.0)) fail(Errc::DegenerateData, "slope fit needs positive r values");
        xs.push_back(std::log(r));
        ys.push_back(std::log(resid));
    }
    size_t n = xs.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) fail(Errc::DegenerateData, "slope fit needs at least two distinct r values");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    double ss_res = 0;
    for (size_t i = 0; i < n; ++i) {
        double pred = my + fit.slope * (xs[i] - mx);
        ss_res += (ys[i] - pred) * (ys[i] - pred);
    }
    if (n > 2) fit.stderr_slope = std::sqrt(ss_res / (static_cast<double>(n - 2) * sxx));
    return fit;
}

} // namespace rtq
