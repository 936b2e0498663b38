#include "rtq/lie_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "rtq/errors.hpp"

namespace rtq {

std::string family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::D: return "D";
        case Family::E: return "E";
    }
    return "?";
}

std::string WeightVec::str() const {
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s + ")";
}

namespace {

std::vector<long long> cartan_matrix(Family family, int l) {
    auto bad = [&](const std::string& why) {
        fail(Errc::UnsupportedType,
             "unsupported type " + family_name(family) + std::to_string(l) + ": " + why);
    };
    std::vector<std::pair<int, int>> edges;
    switch (family) {
        case Family::A:
            if (l < 1) bad("rank must be >= 1");
            for (int i = 0; i + 1 < l; ++i) edges.push_back({i, i + 1});
            break;
        case Family::D:
            if (l < 4) bad("rank must be >= 4");
            for (int i = 0; i + 1 < l - 1; ++i) edges.push_back({i, i + 1});
            edges.push_back({l - 3, l - 1});
            break;
        case Family::E:
            if (l < 6 || l > 8) bad("rank must be 6, 7 or 8");
            // Bourbaki numbering: chain 1-3-4-5-...-l, branch node 2 attached to 4.
            edges.push_back({0, 2});
            for (int i = 2; i + 1 < l; ++i) edges.push_back({i, i + 1});
            edges.push_back({1, 3});
            break;
    }
    std::vector<long long> c(static_cast<size_t>(l * l), 0);
    for (int i = 0; i < l; ++i) c[static_cast<size_t>(i * l + i)] = 2;
    for (auto [i, j] : edges) {
        c[static_cast<size_t>(i * l + j)] = -1;
        c[static_cast<size_t>(j * l + i)] = -1;
    }
    return c;
}

long long weyl_order_formula(Family family, int l) {
    auto factorial = [](int n) {
        long long f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    switch (family) {
        case Family::A: return factorial(l + 1);
        case Family::D: return (1LL << (l - 1)) * factorial(l);
        case Family::E:
            if (l == 6) return 51840LL;
            if (l == 7) return 2903040LL;
            return 696729600LL;
    }
    return 0;
}

// Exact inverse of a small integer matrix by rational Gauss-Jordan; returns
// numerators over a single common denominator.
void invert_integer_matrix(const std::vector<long long>& m, int l, std::vector<long long>& num,
                           long long& den) {
    std::vector<std::vector<Rational>> a(static_cast<size_t>(l),
                                         std::vector<Rational>(static_cast<size_t>(2 * l)));
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) a[i][j] = Rational(m[static_cast<size_t>(i * l + j)]);
        a[i][static_cast<size_t>(l + i)] = Rational(1);
    }
    for (int col = 0; col < l; ++col) {
        int pivot = -1;
        for (int row = col; row < l; ++row)
            if (!a[row][col].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) fail(Errc::InvalidArgument, "singular Cartan matrix");
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pivot)]);
        Rational inv = Rational(1) / a[col][col];
        for (int j = 0; j < 2 * l; ++j) a[col][j] *= inv;
        for (int row = 0; row < l; ++row) {
            if (row == col || a[row][col].is_zero()) continue;
            Rational f = a[row][col];
            for (int j = 0; j < 2 * l; ++j) a[row][j] -= f * a[col][j];
        }
    }
    long long lcm = 1;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            long long d = a[i][static_cast<size_t>(l + j)].den();
            lcm = lcm / gcd_ll(lcm, d) * d;
        }
    num.assign(static_cast<size_t>(l * l), 0);
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            const Rational& r = a[i][static_cast<size_t>(l + j)];
            num[static_cast<size_t>(i * l + j)] = r.num() * (lcm / r.den());
        }
    den = lcm;
}

long long det_integer_matrix(std::vector<long long> m, int l) {
    // Bareiss fraction-free elimination.
    long long prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < l; ++k) {
        if (m[static_cast<size_t>(k * l + k)] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < l; ++r)
                if (m[static_cast<size_t>(r * l + k)] != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            for (int j = 0; j < l; ++j)
                std::swap(m[static_cast<size_t>(k * l + j)], m[static_cast<size_t>(swap_row * l + j)]);
            sign = -sign;
        }
        for (int i = k + 1; i < l; ++i)
            for (int j = k + 1; j < l; ++j) {
                m[static_cast<size_t>(i * l + j)] =
                    (m[static_cast<size_t>(i * l + j)] * m[static_cast<size_t>(k * l + k)] -
                     m[static_cast<size_t>(i * l + k)] * m[static_cast<size_t>(k * l + j)]) /
                    prev;
            }
        prev = m[static_cast<size_t>(k * l + k)];
    }
    return sign * m[static_cast<size_t>((l - 1) * l + (l - 1))];
}

} // namespace

RootSystem RootSystem::build(Family family, int rank) {
    RootSystem rs;
    rs.family_ = family;
    rs.rank_ = rank;
    rs.cartan_ = cartan_matrix(family, rank);
    rs.derive_tables();
    return rs;
}

RootSystem RootSystem::build(const std::string& name) {
    if (name.size() < 2) fail(Errc::UnsupportedType, "cannot parse algebra name '" + name + "'");
    Family f;
    switch (name[0]) {
        case 'A': case 'a': f = Family::A; break;
        case 'D': case 'd': f = Family::D; break;
        case 'E': case 'e': f = Family::E; break;
        case 'B': case 'b': case 'C': case 'c': case 'F': case 'f': case 'G': case 'g':
            fail(Errc::UnsupportedType, "family " + name.substr(0, 1) +
                                            " is not simply laced; supported families are A, D, E");
        default:
            fail(Errc::UnsupportedType, "cannot parse algebra name '" + name + "'");
    }
    int rank = 0;
    try {
        rank = std::stoi(name.substr(1));
    } catch (const std::exception&) {
        fail(Errc::UnsupportedType, "cannot parse rank in algebra name '" + name + "'");
    }
    return build(f, rank);
}

void RootSystem::derive_tables() {
    int l = rank_;
    det_cartan_ = det_integer_matrix(cartan_, l);
    invert_integer_matrix(cartan_, l, gram_num_, gram_den_);

    simple_roots_.clear();
    for (int i = 0; i < l; ++i) {
        std::vector<long long> row(static_cast<size_t>(l));
        for (int j = 0; j < l; ++j) row[static_cast<size_t>(j)] = cartan(i, j);
        simple_roots_.push_back(WeightVec(row));
    }

    // Orbit of the simple roots under simple reflections = all roots. Track
    // root-basis coefficients alongside weight coordinates; the pairing with
    // alpha_i is coordinate i, so the reflection updates both exactly.
    std::map<WeightVec, std::vector<long long>> seen;
    std::vector<WeightVec> frontier;
    for (int i = 0; i < l; ++i) {
        std::vector<long long> e(static_cast<size_t>(l), 0);
        e[static_cast<size_t>(i)] = 1;
        seen.emplace(simple_roots_[static_cast<size_t>(i)], e);
        frontier.push_back(simple_roots_[static_cast<size_t>(i)]);
    }
    while (!frontier.empty()) {
        std::vector<WeightVec> next;
        for (const auto& x : frontier) {
            const auto& coeffs = seen.at(x);
            for (int i = 0; i < l; ++i) {
                WeightVec y = simple_reflection(i, x);
                auto cc = coeffs;
                cc[static_cast<size_t>(i)] -= x[i];
                if (seen.emplace(y, cc).second) next.push_back(y);
            }
        }
        frontier = std::move(next);
    }

    positive_roots_.clear();
    pos_root_coeffs_.clear();
    for (const auto& [root, coeffs] : seen) {
        bool pos = true;
        for (long long v : coeffs)
            if (v < 0) pos = false;
        if (pos) {
            positive_roots_.push_back(root);
            pos_root_coeffs_.push_back(coeffs);
        }
    }

    // The unique dominant root is the highest root.
    int found = -1;
    for (size_t k = 0; k < positive_roots_.size(); ++k) {
        bool dom = true;
        for (int i = 0; i < l; ++i)
            if (positive_roots_[k][i] < 0) dom = false;
        if (dom) {
            if (found >= 0) fail(Errc::InvalidArgument, "multiple dominant roots");
            found = static_cast<int>(k);
        }
    }
    if (found < 0) fail(Errc::InvalidArgument, "no dominant root");
    highest_root_ = positive_roots_[static_cast<size_t>(found)];
    highest_root_coeffs_ = pos_root_coeffs_[static_cast<size_t>(found)];

    rho_ = WeightVec(std::vector<long long>(static_cast<size_t>(l), 1));
    long long height = 0;
    for (long long v : highest_root_coeffs_) height += v;
    dual_coxeter_ = static_cast<int>(height + 1);

    weyl_order_ = weyl_order_formula(family_, l);
}

double RootSystem::vol_root_lattice() const { return std::sqrt(static_cast<double>(det_cartan_)); }
double RootSystem::vol_weight_lattice() const {
    return 1.0 / std::sqrt(static_cast<double>(det_cartan_));
}

const std::vector<WeylElement>& RootSystem::weyl_elements(long long cap) const& {
    if (weyl_order_ > cap)
        fail(Errc::WeylGroupTooLarge, "Weyl group of " + name() + " has order " +
                                          std::to_string(weyl_order_) +
                                          ", above the enumeration cap " + std::to_string(cap));
    std::call_once(weyl_cache_->flag, [this]() {
        int l = rank_;
        std::vector<std::vector<long long>> gens;
        for (int i = 0; i < l; ++i) {
            std::vector<long long> m(static_cast<size_t>(l * l), 0);
            for (int k = 0; k < l; ++k) m[static_cast<size_t>(k * l + k)] = 1;
            // Column i of s_i is e_i - alpha_i (in weight coordinates).
            for (int k = 0; k < l; ++k) m[static_cast<size_t>(k * l + i)] -= cartan(i, k);
            gens.push_back(std::move(m));
        }
        auto mul = [l](const std::vector<long long>& a, const std::vector<long long>& b) {
            std::vector<long long> r(static_cast<size_t>(l * l), 0);
            for (int i = 0; i < l; ++i)
                for (int k = 0; k < l; ++k) {
                    long long aik = a[static_cast<size_t>(i * l + k)];
                    if (!aik) continue;
                    for (int j = 0; j < l; ++j)
                        r[static_cast<size_t>(i * l + j)] += aik * b[static_cast<size_t>(k * l + j)];
                }
            return r;
        };

        std::set<std::vector<long long>> seen;
        std::vector<long long> id(static_cast<size_t>(l * l), 0);
        for (int k = 0; k < l; ++k) id[static_cast<size_t>(k * l + k)] = 1;
        seen.insert(id);

        auto& out = weyl_cache_->elements;
        out.push_back(WeylElement{id, 1, 0});
        std::vector<std::vector<long long>> frontier{id};
        int depth = 0;
        while (!frontier.empty()) {
            ++depth;
            std::set<std::vector<long long>> next;
            for (const auto& w : frontier)
                for (const auto& g : gens) {
                    auto m = mul(g, w);
                    if (!seen.count(m)) next.insert(m);
                }
            frontier.clear();
            for (const auto& m : next)
                if (seen.insert(m).second) {
                    out.push_back(WeylElement{m, depth % 2 == 0 ? 1 : -1, depth});
                    frontier.push_back(m);
                }
        }
    });
    return weyl_cache_->elements;
}

Rational RootSystem::inner(const WeightVec& x, const WeightVec& y) const {
    return Rational(inner_scaled(x, y), gram_den_);
}

long long RootSystem::inner_scaled(const WeightVec& x, const WeightVec& y) const {
    long long s = 0;
    for (int i = 0; i < rank_; ++i) {
        if (!x[i]) continue;
        long long row = 0;
        for (int j = 0; j < rank_; ++j) row += gram_num_[static_cast<size_t>(i * rank_ + j)] * y[j];
        s += x[i] * row;
    }
    return s;
}

bool RootSystem::in_root_lattice(const WeightVec& x) const {
    // n = C^{-1} x must be integral.
    for (int i = 0; i < rank_; ++i) {
        long long s = 0;
        for (int j = 0; j < rank_; ++j) s += gram_num_[static_cast<size_t>(i * rank_ + j)] * x[j];
        if (s % gram_den_ != 0) return false;
    }
    return true;
}

std::vector<long long> RootSystem::root_coords(const WeightVec& x) const {
    std::vector<long long> n(static_cast<size_t>(rank_));
    for (int i = 0; i < rank_; ++i) {
        long long s = 0;
        for (int j = 0; j < rank_; ++j) s += gram_num_[static_cast<size_t>(i * rank_ + j)] * x[j];
        if (s % gram_den_ != 0)
            fail(Errc::InvalidArgument, "vector " + x.str() + " is not in the root lattice");
        n[static_cast<size_t>(i)] = s / gram_den_;
    }
    return n;
}

namespace {

void enumerate_alcove(const RootSystem& rs, long long r, long long min_coord,
                      std::vector<WeightVec>& out) {
    int l = rs.rank();
    const auto& marks = rs.highest_root_coeffs();
    WeightVec x(std::vector<long long>(static_cast<size_t>(l), 0));
    // Lexicographic depth-first enumeration of min_coord <= x_i with
    // sum marks_i * x_i <= r; the caller shifts r for open/closed variants.
    auto rec = [&](auto&& self, int i, long long used) -> void {
        if (i == l) {
            out.push_back(x);
            return;
        }
        long long remaining_min = 0;
        for (int k = i + 1; k < l; ++k) remaining_min += min_coord * marks[static_cast<size_t>(k)];
        for (long long v = min_coord;; ++v) {
            long long u = used + v * marks[static_cast<size_t>(i)];
            if (u + remaining_min > r) break;
            x[i] = v;
            self(self, i + 1, u);
        }
        x[i] = 0;
    };
    rec(rec, 0, 0);
}

} // namespace

std::vector<WeightVec> alcove_weights(const RootSystem& rs, long long r) {
    if (r < rs.dual_coxeter())
        fail(Errc::LevelTooSmall, "level r=" + std::to_string(r) + " is below the dual Coxeter number " +
                                      std::to_string(rs.dual_coxeter()) + " of " + rs.name());
    std::vector<WeightVec> out;
    enumerate_alcove(rs, r - 1, 1, out);
    return out;
}

std::vector<WeightVec> closed_alcove_weights(const RootSystem& rs, long long r) {
    std::vector<WeightVec> out;
    enumerate_alcove(rs, r, 0, out);
    return out;
}

std::vector<WeightVec> coset_reps_root_lattice(const RootSystem& rs, long long c) {
    if (c == 0) fail(Errc::ZeroModulus, "coset enumeration requires a nonzero modulus");
    long long m = c < 0 ? -c : c;
    int l = rs.rank();
    std::vector<WeightVec> out;
    std::vector<long long> digits(static_cast<size_t>(l), 0);
    while (true) {
        WeightVec v(std::vector<long long>(static_cast<size_t>(l), 0));
        for (int i = 0; i < l; ++i)
            if (digits[static_cast<size_t>(i)])
                v = v + digits[static_cast<size_t>(i)] * rs.simple_roots()[static_cast<size_t>(i)];
        out.push_back(v);
        int pos = l - 1;
        while (pos >= 0 && digits[static_cast<size_t>(pos)] == m - 1) {
            digits[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++digits[static_cast<size_t>(pos)];
    }
    return out;
}

WeightVec dual_weight(const RootSystem& rs, const WeightVec& lambda) {
    // lambda* = rho + (dominant representative of rho - lambda).
    WeightVec v = rs.rho() - lambda;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int i = 0; i < rs.rank(); ++i)
            if (v[i] < 0) {
                v = rs.simple_reflection(i, v);
                moved = true;
            }
    }
    return rs.rho() + v;
}

Rational inner(const RootSystem& rs, const WeightVec& x, const WeightVec& y) {
    return rs.inner(x, y);
}

} // namespace rtq
