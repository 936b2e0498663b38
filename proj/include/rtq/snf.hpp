#pragma once

#include <vector>

namespace rtq {

// Smith normal form of a square integer matrix: U*A*V = S with U, V
// unimodular and S diagonal, each diagonal entry dividing the next.
struct SmithForm {
    int n = 0;
    std::vector<long long> u, s, v; // n*n row-major
    long long diag(int i) const { return s[static_cast<size_t>(i * n + i)]; }
};

SmithForm smith_normal_form(const std::vector<long long>& a, int n);

std::vector<long long> mat_mul_ll(const std::vector<long long>& a, const std::vector<long long>& b,
                                  int n);
long long mat_det_ll(std::vector<long long> m, int n);

} // namespace rtq
