#include "rtq/snf.hpp"

#include <cstdlib>
#include <utility>

#include "rtq/errors.hpp"

namespace rtq {

std::vector<long long> mat_mul_ll(const std::vector<long long>& a, const std::vector<long long>& b,
                                  int n) {
    std::vector<long long> r(static_cast<size_t>(n * n), 0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            long long aik = a[static_cast<size_t>(i * n + k)];
            if (!aik) continue;
            for (int j = 0; j < n; ++j)
                r[static_cast<size_t>(i * n + j)] += aik * b[static_cast<size_t>(k * n + j)];
        }
    return r;
}

long long mat_det_ll(std::vector<long long> m, int n) {
    long long prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[static_cast<size_t>(k * n + k)] == 0) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[static_cast<size_t>(r * n + k)] != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return 0;
            for (int j = 0; j < n; ++j)
                std::swap(m[static_cast<size_t>(k * n + j)], m[static_cast<size_t>(pivot * n + j)]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[static_cast<size_t>(i * n + j)] =
                    (m[static_cast<size_t>(i * n + j)] * m[static_cast<size_t>(k * n + k)] -
                     m[static_cast<size_t>(i * n + k)] * m[static_cast<size_t>(k * n + j)]) /
                    prev;
        prev = m[static_cast<size_t>(k * n + k)];
    }
    return sign * m[static_cast<size_t>((n - 1) * n + (n - 1))];
}

namespace {

struct Worker {
    int n;
    std::vector<long long> a, u, v;

    long long& at(std::vector<long long>& m, int i, int j) { return m[static_cast<size_t>(i * n + j)]; }

    void swap_rows(int i, int j) {
        for (int k = 0; k < n; ++k) {
            std::swap(at(a, i, k), at(a, j, k));
            std::swap(at(u, i, k), at(u, j, k));
        }
    }
    void swap_cols(int i, int j) {
        for (int k = 0; k < n; ++k) {
            std::swap(at(a, k, i), at(a, k, j));
            std::swap(at(v, k, i), at(v, k, j));
        }
    }
    void add_row(int dst, int src, long long f) { // row dst += f*row src
        for (int k = 0; k < n; ++k) {
            at(a, dst, k) += f * at(a, src, k);
            at(u, dst, k) += f * at(u, src, k);
        }
    }
    void add_col(int dst, int src, long long f) {
        for (int k = 0; k < n; ++k) {
            at(a, k, dst) += f * at(a, k, src);
            at(v, k, dst) += f * at(v, k, src);
        }
    }
    void negate_row(int i) {
        for (int k = 0; k < n; ++k) {
            at(a, i, k) = -at(a, i, k);
            at(u, i, k) = -at(u, i, k);
        }
    }
};

} // namespace

SmithForm smith_normal_form(const std::vector<long long>& a_in, int n) {
    Worker w;
    w.n = n;
    w.a = a_in;
    w.u.assign(static_cast<size_t>(n * n), 0);
    w.v.assign(static_cast<size_t>(n * n), 0);
    for (int i = 0; i < n; ++i) {
        w.u[static_cast<size_t>(i * n + i)] = 1;
        w.v[static_cast<size_t>(i * n + i)] = 1;
    }

    for (int t = 0; t < n; ++t) {
        // Find a nonzero pivot in the lower-right block.
        int pi = -1, pj = -1;
        long long best = 0;
        for (int i = t; i < n; ++i)
            for (int j = t; j < n; ++j) {
                long long val = std::llabs(w.at(w.a, i, j));
                if (val != 0 && (best == 0 || val < best)) {
                    best = val;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // remaining block is zero
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        bool again = true;
        while (again) {
            again = false;
            for (int i = t + 1; i < n; ++i) {
                long long q = w.at(w.a, i, t) / w.at(w.a, t, t);
                if (q) w.add_row(i, t, -q);
                if (w.at(w.a, i, t) != 0) {
                    w.swap_rows(t, i); // remainder is smaller; continue Euclid
                    again = true;
                }
            }
            for (int j = t + 1; j < n; ++j) {
                long long q = w.at(w.a, t, j) / w.at(w.a, t, t);
                if (q) w.add_col(j, t, -q);
                if (w.at(w.a, t, j) != 0) {
                    w.swap_cols(t, j);
                    again = true;
                }
            }
        }
        if (w.at(w.a, t, t) < 0) w.negate_row(t);
    }

    // Enforce the divisibility chain.
    for (int t = 0; t + 1 < n; ++t) {
        for (int k = t + 1; k < n; ++k) {
            long long x = w.at(w.a, t, t);
            long long y = w.at(w.a, k, k);
            if (x == 0 || y % x == 0) continue;
            // Merge the two diagonal entries through a 2x2 gcd step.
            w.add_col(t, k, 1);
            bool again = true;
            while (again) {
                again = false;
                long long q = w.at(w.a, k, t) / w.at(w.a, t, t);
                if (q) w.add_row(k, t, -q);
                if (w.at(w.a, k, t) != 0) {
                    w.swap_rows(t, k);
                    again = true;
                    continue;
                }
                q = w.at(w.a, t, k) / w.at(w.a, t, t);
                if (q) w.add_col(k, t, -q);
                if (w.at(w.a, t, k) != 0) {
                    w.swap_cols(t, k);
                    again = true;
                }
            }
            if (w.at(w.a, t, t) < 0) w.negate_row(t);
            if (w.at(w.a, k, k) < 0) w.negate_row(k);
        }
    }

    SmithForm out;
    out.n = n;
    out.s = w.a;
    out.u = w.u;
    out.v = w.v;
    return out;
}

} // namespace rtq
