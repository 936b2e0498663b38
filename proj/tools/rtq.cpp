#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rtq/asymptotics.hpp"
#include "rtq/gauss_sums.hpp"
#include "rtq/rt_invariants.hpp"

#include "cache.hpp"

using nlohmann::ordered_json;
using namespace rtq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagreement = 1;
constexpr int kExitUsage = 2;

struct LevelRange {
    long long lo = 0, hi = 0, step = 1;
};

LevelRange parse_range(const std::string& text) {
    LevelRange r;
    size_t c1 = text.find(':');
    if (c1 == std::string::npos) {
        r.lo = r.hi = std::stoll(text);
        return r;
    }
    size_t c2 = text.find(':', c1 + 1);
    r.lo = std::stoll(text.substr(0, c1));
    if (c2 == std::string::npos) {
        r.hi = std::stoll(text.substr(c1 + 1));
    } else {
        r.hi = std::stoll(text.substr(c1 + 1, c2 - c1 - 1));
        r.step = std::stoll(text.substr(c2 + 1));
    }
    if (r.step <= 0 || r.hi < r.lo)
        fail(Errc::InvalidArgument, "bad level range '" + text + "' (use lo:hi:step)");
    return r;
}

template <typename Real>
ordered_json json_complex(const Complex<Real>& v) {
    return ordered_json::array(
        {real_ops<Real>::to_double(v.re), real_ops<Real>::to_double(v.im)});
}

template <typename Real>
double rel_disagreement(const Complex<Real>& a, const Complex<Real>& b) {
    double d = real_ops<Real>::to_double((a - b).abs());
    double scale = std::max(real_ops<Real>::to_double(a.abs()), real_ops<Real>::to_double(b.abs()));
    return scale < 1e-2 ? d : d / scale;
}

// ---- describe ----

int cmd_describe(const std::string& algebra, const std::string& format) {
    RootSystem rs = RootSystem::build(algebra);
    ordered_json j;
    j["family"] = family_name(rs.family());
    j["rank"] = rs.rank();
    ordered_json cartan = ordered_json::array();
    for (int i = 0; i < rs.rank(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < rs.rank(); ++k) row.push_back(rs.cartan(i, k));
        cartan.push_back(row);
    }
    j["cartan"] = cartan;
    ordered_json gram = ordered_json::array();
    for (int i = 0; i < rs.rank(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < rs.rank(); ++k) row.push_back(rs.gram_weights(i, k).str());
        gram.push_back(row);
    }
    j["gram_weights"] = gram;
    ordered_json roots = ordered_json::array();
    for (const auto& root : rs.positive_roots()) roots.push_back(root.c);
    j["positive_roots"] = roots;
    j["highest_root"] = rs.highest_root().c;
    j["rho"] = rs.rho().c;
    j["dual_coxeter"] = rs.dual_coxeter();
    j["num_pos_roots"] = rs.num_pos_roots();
    j["dim_g"] = rs.dim_g();
    j["det_cartan"] = rs.det_cartan();
    j["vol_root_lattice"] = rs.vol_root_lattice();
    j["vol_weight_lattice"] = rs.vol_weight_lattice();
    j["weyl_order"] = rs.weyl_order();
    if (format == "plain") {
        std::cout << rs.name() << ": rank " << rs.rank() << ", " << rs.num_pos_roots()
                  << " positive roots, h = " << rs.dual_coxeter() << ", dim g = " << rs.dim_g()
                  << ", |W| = " << rs.weyl_order() << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    return kExitOk;
}

// ---- modular-data ----

template <typename Real>
int cmd_modular_data(const std::string& algebra, long long level, bool with_matrices) {
    RootSystem rs = RootSystem::build(algebra);
    ModularData<Real> md(rs, level);
    ordered_json j;
    j["algebra"] = rs.name();
    j["level"] = level;
    j["precision"] = real_ops<Real>::name();
    ordered_json idx = ordered_json::array();
    for (int i = 0; i < md.size(); ++i) idx.push_back(md.weight(i).c);
    j["index_set"] = idx;
    j["rank_D"] = real_ops<Real>::to_double(md.rank_d());
    j["omega"] = json_complex(md.omega());
    j["central_charge"] = md.central_charge().str();
    ordered_json dims = ordered_json::array();
    for (int i = 0; i < md.size(); ++i) dims.push_back(real_ops<Real>::to_double(md.qdim(i)));
    j["qdim"] = dims;
    if (with_matrices) {
        auto s = s_matrix(md);
        auto t = t_matrix(md);
        ordered_json sj = ordered_json::array(), tj = ordered_json::array();
        for (int i = 0; i < md.size(); ++i) {
            ordered_json srow = ordered_json::array(), trow = ordered_json::array();
            for (int k = 0; k < md.size(); ++k) {
                srow.push_back(json_complex(s.at(i, k)));
                trow.push_back(json_complex(t.at(i, k)));
            }
            sj.push_back(srow);
            tj.push_back(trow);
        }
        j["S"] = sj;
        j["T"] = tj;
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

// ---- rep ----

template <typename Real>
int cmd_rep(const std::string& algebra, long long level, const std::vector<long long>& entries,
            const std::string& mode) {
    RootSystem rs = RootSystem::build(algebra);
    ModularData<Real> md(rs, level);
    SL2ZMatrix u(entries[0], entries[1], entries[2], entries[3]);
    ordered_json j;
    j["algebra"] = rs.name();
    j["level"] = level;
    j["U"] = ordered_json::array({u.a, u.b, u.c, u.d});

    auto dump_matrix = [&](const IndexedMatrix<Real>& m) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < m.n; ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < m.n; ++k) row.push_back(json_complex(m.at(i, k)));
            rows.push_back(row);
        }
        return rows;
    };

    int code = kExitOk;
    if (mode == "brute" || mode == "both") j["brute"] = dump_matrix(rep_bruteforce(md, u));
    if (mode == "closed" || mode == "both") {
        auto [eps, closed] = rep_closed(md, u);
        j["eps"] = eps;
        j["closed"] = dump_matrix(closed);
        if (mode == "both") {
            SL2ZMatrix eu = eps > 0 ? u : u.negated();
            double diff = real_ops<Real>::to_double(max_abs_diff(closed, rep_bruteforce(md, eu)));
            j["max_discrepancy"] = diff;
            if (diff > 1e-9) code = kExitDisagreement;
        }
    }
    std::cout << j.dump(2) << "\n";
    return code;
}

// ---- invariant ----

struct InvariantRequest {
    std::string algebra;
    LevelRange levels;
    bool is_lens = false;
    long long p = 0, q = 0;
    std::string seifert_text;
    std::string method = "all";
    std::string precision = "double";
    std::string format = "json";
    std::string cache_dir;
    long long term_budget = 1000000000;
    int workers = 1;
};

template <typename Real>
std::vector<InvariantResult<Real>> evaluate_invariants(const ModularData<Real>& md,
                                                       const InvariantRequest& req) {
    std::vector<InvariantResult<Real>> results;
    if (req.is_lens) {
        if (req.method == "matrix")
            results.push_back(tau_lens_cf(md, req.p, req.q));
        else if (req.method == "closed")
            results.push_back(tau_lens_rep(md, req.p, req.q));
        else
            results = tau_lens_all(md, req.p, req.q);
    } else {
        SeifertPresentation m = SeifertPresentation::parse(req.seifert_text);
        EvalOptions opt;
        opt.term_budget = req.term_budget;
        opt.workers = req.workers;
        if (req.method == "matrix" || req.method == "all")
            results.push_back(tau_matrix_form(md, m, opt));
        if (req.method == "closed" || req.method == "all")
            results.push_back(tau_closed_form(md, m, opt));
    }
    return results;
}

template <typename Real>
int run_invariant(const InvariantRequest& req) {
    rtqcli::ResultCache cache(req.cache_dir);
    ordered_json output = ordered_json::array();
    std::vector<std::string> csv_lines;
    int code = kExitOk;

    RootSystem rs = RootSystem::build(req.algebra);
    for (long long r = req.levels.lo; r <= req.levels.hi; r += req.levels.step) {
        ModularData<Real> md(rs, r);
        auto results = evaluate_invariants(md, req);
        for (size_t i = 1; i < results.size(); ++i) {
            double d = rel_disagreement(results[0].value, results[i].value);
            if (d > 1e-8) {
                code = kExitDisagreement;
                std::cerr << "disagreement at r=" << r << " between "
                          << method_name(results[0].method) << " and "
                          << method_name(results[i].method) << ": " << d << "\n";
            }
        }
        for (const auto& res : results) {
            std::string key = req.algebra + "|" + std::to_string(r) + "|" + res.meta.manifold +
                              "|" + method_name(res.method) + "|" + res.meta.precision;
            ordered_json entry;
            entry["value"] = json_complex(res.value);
            entry["method"] = method_name(res.method);
            ordered_json meta;
            meta["algebra"] = res.meta.algebra;
            meta["level"] = res.meta.level;
            meta["manifold"] = res.meta.manifold;
            meta["exponent"] = res.meta.sigma;
            meta["precision"] = res.meta.precision;
            entry["metadata"] = meta;
            if (cache.enabled()) {
                if (auto hit = cache.lookup(key)) {
                    double re = rtqcli::double_of_hex((*hit)["value_hex"][0].get<std::string>());
                    double im = rtqcli::double_of_hex((*hit)["value_hex"][1].get<std::string>());
                    double dre = re - real_ops<Real>::to_double(res.value.re);
                    double dim_ = im - real_ops<Real>::to_double(res.value.im);
                    if (dre != 0.0 || dim_ != 0.0) {
                        std::cerr << "cache mismatch for " << key << "\n";
                        code = kExitDisagreement;
                    }
                } else {
                    ordered_json payload;
                    payload["value_hex"] = ordered_json::array(
                        {rtqcli::hex_of_double(real_ops<Real>::to_double(res.value.re)),
                         rtqcli::hex_of_double(real_ops<Real>::to_double(res.value.im))});
                    payload["entry"] = entry;
                    cache.store(key, payload);
                }
            }
            output.push_back(entry);
            std::ostringstream line;
            line << r << "," << method_name(res.method) << ","
                 << real_ops<Real>::to_double(res.value.re) << ","
                 << real_ops<Real>::to_double(res.value.im);
            csv_lines.push_back(line.str());
        }
    }

    if (req.format == "csv") {
        std::cout << "level,method,re,im\n";
        for (const auto& line : csv_lines) std::cout << line << "\n";
    } else if (req.format == "plain") {
        for (const auto& entry : output)
            std::cout << entry["metadata"]["manifold"].get<std::string>() << " r="
                      << entry["metadata"]["level"] << " " << entry["method"].get<std::string>()
                      << ": " << entry["value"].dump() << "\n";
    } else {
        std::cout << (output.size() == 1 ? output[0].dump(2) : output.dump(2)) << "\n";
    }
    return code;
}

// ---- asymptotics ----

template <typename Real>
int cmd_asymptotics(const std::string& algebra, long long p, long long q, int order,
                    const std::string& r_range, const std::string& residuals_path) {
    RootSystem rs = RootSystem::build(algebra);
    LensGrouping<Real> grouping(rs, p, q);
    auto expansion = grouping.expansion(order);

    ordered_json j;
    j["algebra"] = rs.name();
    j["lens"] = ordered_json::array({p, q});
    j["order"] = order;
    j["precision"] = real_ops<Real>::name();
    ordered_json terms = ordered_json::array();
    for (const auto& t : expansion.terms) {
        ordered_json tj;
        tj["alpha"] = t.alpha.str();
        tj["d"] = t.d.str();
        ordered_json coeffs = ordered_json::array();
        for (const auto& c : t.coeffs) coeffs.push_back(json_complex(c));
        tj["coeffs"] = coeffs;
        terms.push_back(tj);
    }
    j["terms"] = terms;
    std::cout << j.dump(2) << "\n";

    if (!r_range.empty()) {
        LevelRange range = parse_range(r_range);
        std::ostringstream csv;
        csv << "r,exact_re,exact_im,truncated_re,truncated_im,residual\n";
        for (long long r = range.lo; r <= range.hi; r += range.step) {
            auto exact = grouping.value(r);
            auto approx = LensGrouping<Real>::reconstruct(expansion, r);
            csv << r << "," << real_ops<Real>::to_double(exact.re) << ","
                << real_ops<Real>::to_double(exact.im) << ","
                << real_ops<Real>::to_double(approx.re) << ","
                << real_ops<Real>::to_double(approx.im) << ","
                << real_ops<Real>::to_double((exact - approx).abs()) << "\n";
        }
        if (residuals_path.empty() || residuals_path == "-") {
            std::cout << csv.str();
        } else {
            std::ofstream out(residuals_path, std::ios::trunc);
            out << csv.str();
            std::cerr << "residual table written to " << residuals_path << "\n";
        }
    }
    return kExitOk;
}

// ---- verify ----

struct CheckReport {
    ordered_json checks = ordered_json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, const std::string& detail) {
        ordered_json c;
        c["name"] = name;
        c["pass"] = pass;
        c["detail"] = detail;
        checks.push_back(c);
        all_pass = all_pass && pass;
        std::cerr << (pass ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail)
                  << "\n";
    }
};

void verify_relations(CheckReport& rep, const std::string& algebra, long long level) {
    RootSystem rs = RootSystem::build(algebra);
    ModularData<double> md(rs, level);
    auto xi = gen_xi(md);
    auto theta = gen_theta(md);
    auto id = IndexedMatrix<double>::identity(md.size());
    auto cc = charge_conjugation(md);
    auto xi2 = xi * xi;
    auto xt = xi * theta;

    auto tag = algebra + " r=" + std::to_string(level);
    double d1 = max_abs_diff(xi2 * xi2, id);
    rep.add("relations/xi_fourth_power " + tag, d1 < 1e-9, "max dev " + std::to_string(d1));
    double d2 = max_abs_diff(xt * (xt * xt), cc);
    rep.add("relations/xitheta_cubed " + tag, d2 < 1e-9, "max dev " + std::to_string(d2));
    double d3 = max_abs_diff(xi2, cc);
    rep.add("relations/charge_conjugation " + tag, d3 < 1e-9, "max dev " + std::to_string(d3));
    double d4 = max_abs_diff(xi * xi.dagger(), id);
    rep.add("relations/xi_unitary " + tag, d4 < 1e-9, "max dev " + std::to_string(d4));

    Complex<double> anomaly = md.delta() / md.rank_d() * cpow_int(md.omega(), 3);
    double d5 = (anomaly - Complex<double>(1.0)).abs();
    rep.add("relations/anomaly " + tag, d5 < 1e-9, "dev " + std::to_string(d5));

    double sum2 = 0;
    for (int i = 0; i < md.size(); ++i) sum2 += md.qdim(i) * md.qdim(i);
    double d6 = std::abs(md.rank_d() * md.rank_d() - sum2) / sum2;
    rep.add("relations/rank_square " + tag, d6 < 1e-9, "rel dev " + std::to_string(d6));
}

void verify_reciprocity(CheckReport& rep, int trials, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> b_dist(-6, 6);
    std::uniform_int_distribution<int> r_dist(1, 8);
    std::uniform_int_distribution<int> lat_dist(0, 2);
    RootSystem a1 = RootSystem::build(Family::A, 1);
    RootSystem a2 = RootSystem::build(Family::A, 2);

    int accepted = 0;
    double worst = 0;
    int guard = 0;
    while (accepted < trials && guard < trials * 200) {
        ++guard;
        int which = lat_dist(rng);
        int l = which == 2 ? 2 : 1;
        RatMat gram;
        if (which == 0) {
            gram = rat_identity(l);
        } else {
            const RootSystem& rs = which == 1 ? a1 : a2;
            l = rs.rank();
            gram.assign(static_cast<size_t>(l * l), Rational(0));
            for (int i = 0; i < l; ++i)
                for (int k = 0; k < l; ++k)
                    gram[static_cast<size_t>(i * l + k)] =
                        rs.inner(rs.simple_roots()[static_cast<size_t>(i)],
                                 rs.simple_roots()[static_cast<size_t>(k)]);
        }
        long long m = b_dist(rng);
        if (m == 0) continue;
        RatMat b = rat_identity(l);
        for (int i = 0; i < l; ++i) b[static_cast<size_t>(i * l + i)] = Rational(m);
        GaussSumSpec spec;
        bool ok = true;
        try {
            spec = GaussSumSpec::make(l, gram, r_dist(rng), b,
                                      RatVec(static_cast<size_t>(l), Rational(0)));
        } catch (const Error&) {
            ok = false;
        }
        if (!ok) continue;
        ++accepted;
        auto lhs = gauss_lhs<double>(spec);
        auto rhs = gauss_rhs<double>(spec);
        double scale = std::max(1.0, lhs.abs());
        worst = std::max(worst, (lhs - rhs).abs() / scale);
    }
    rep.add("reciprocity/lhs_equals_rhs", accepted >= trials && worst < 1e-9,
            std::to_string(accepted) + " specs, worst rel dev " + std::to_string(worst));
}

void verify_oracle(CheckReport& rep, const std::string& algebra, long long level, unsigned seed) {
    RootSystem rs = RootSystem::build(algebra);
    ModularData<double> md(rs, level);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long long> dist(-20, 20);

    double worst = 0;
    int done = 0;
    while (done < 10) {
        long long a = dist(rng), c = dist(rng);
        if (c == 0 || gcd_ll(a, c) != 1) continue;
        long long old_r = a, r = c, old_x = 1, x = 0;
        while (r != 0) {
            long long qt = old_r / r;
            long long t = old_r - qt * r;
            old_r = r;
            r = t;
            t = old_x - qt * x;
            old_x = x;
            x = t;
        }
        long long d = old_x * old_r;
        long long b = (a * d - 1) / c;
        SL2ZMatrix u(a, b, c, d);
        auto [eps, closed] = rep_closed(md, u);
        auto brute = rep_bruteforce(md, eps > 0 ? u : u.negated());
        worst = std::max(worst, max_abs_diff(closed, brute));
        ++done;
    }
    rep.add("oracle/closed_vs_brute " + algebra + " r=" + std::to_string(level), worst < 1e-9,
            "worst entry dev " + std::to_string(worst));

    double worst_tau = 0;
    for (const char* text : {"o;0|-1", "o;0|0", "o;0|-1;(2,1),(3,1),(5,1)", "o;1|-2;(3,2)"}) {
        SeifertPresentation m = SeifertPresentation::parse(text);
        auto tm = tau_matrix_form(md, m);
        auto tc = tau_closed_form(md, m);
        worst_tau = std::max(worst_tau, rel_disagreement(tm.value, tc.value));
    }
    rep.add("oracle/dual_path " + algebra + " r=" + std::to_string(level), worst_tau < 1e-8,
            "worst rel dev " + std::to_string(worst_tau));
}

void verify_asymptotics(CheckReport& rep, const std::string& algebra) {
    RootSystem rs = RootSystem::build(algebra);

    double worst_exact = 0;
    for (long long r : {5LL, 12LL, 37LL}) {
        if (r < rs.dual_coxeter()) continue;
        LensGrouping<double> g(rs, 3, 1);
        auto direct = tau_lens_large_r_value<double>(rs, r, 3, 1);
        worst_exact = std::max(worst_exact, (g.value(r) - direct).abs());
    }
    rep.add("asymptotics/regrouping_exact " + algebra, worst_exact < 1e-10,
            "worst dev " + std::to_string(worst_exact));

    if (rs.rank() == 1) {
        LensGrouping<dd> g(rs, 3, 1);
        auto expansion = g.expansion(1);
        std::vector<std::pair<double, double>> pts;
        for (long long r = 20; r <= 200; r += 6) {
            double resid =
                (g.value(r) - LensGrouping<dd>::reconstruct(expansion, r)).abs().to_double();
            if (resid > 1e-28) pts.push_back({static_cast<double>(r), resid});
        }
        SlopeFit fit = slope_fit(pts);
        rep.add("asymptotics/truncation_slope " + algebra, fit.slope <= -0.5 - 1 - 0.7,
                "slope " + std::to_string(fit.slope));
    }

    auto phases = cs_phase_set(rs, 2, 1);
    bool ok = !phases.empty() && phases[0] == Rational(0);
    rep.add("asymptotics/cs_phases " + algebra, ok, "count " + std::to_string(phases.size()));
}

int cmd_verify(const std::string& suite, const std::string& algebra, long long level, int trials,
               unsigned seed) {
    CheckReport rep;
    if (suite == "relations" || suite == "all") verify_relations(rep, algebra, level);
    if (suite == "reciprocity" || suite == "all") verify_reciprocity(rep, trials, seed);
    if (suite == "oracle" || suite == "all") verify_oracle(rep, algebra, level, seed);
    if (suite == "asymptotics" || suite == "all") verify_asymptotics(rep, algebra);
    ordered_json j;
    j["suite"] = suite;
    j["algebra"] = algebra;
    j["level"] = level;
    j["seed"] = seed;
    j["checks"] = rep.checks;
    j["passed"] = rep.all_pass;
    std::cout << j.dump(2) << "\n";
    return rep.all_pass ? kExitOk : kExitDisagreement;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reshetikhin-Turaev invariants of Seifert fibered spaces for A/D/E algebras"};
    app.require_subcommand(1);

    std::string algebra = "A1";
    std::string format = "json";
    std::string precision = "double";

    auto* describe = app.add_subcommand("describe", "print root-system data as JSON");
    describe->add_option("--algebra", algebra, "algebra, e.g. A1, A2, D4, E6")->required();
    describe->add_option("--format", format, "json|plain");

    auto* mdsub = app.add_subcommand("modular-data", "index set, rank, omega, S/T matrices");
    long long level = 0;
    bool with_matrices = false;
    mdsub->add_option("--algebra", algebra)->required();
    mdsub->add_option("--level", level, "level r >= dual Coxeter number")->required();
    mdsub->add_flag("--matrices", with_matrices, "include S and T entries");
    mdsub->add_option("--precision", precision, "double|high");

    auto* phisub = app.add_subcommand("phi", "Rademacher Phi of an SL(2,Z) matrix");
    std::vector<long long> mat_entries;
    phisub->add_option("entries", mat_entries, "a b c d")->expected(4);

    auto* dedsub = app.add_subcommand("dedekind", "Dedekind sum s(s,q)");
    long long ded_s = 0, ded_q = 1;
    dedsub->add_option("s", ded_s)->required();
    dedsub->add_option("q", ded_q)->required();

    auto* cfsub = app.add_subcommand("cf", "negative continued fraction of p/q");
    long long cf_p = 0, cf_q = 1;
    cfsub->add_option("p", cf_p)->required();
    cfsub->add_option("q", cf_q)->required();

    auto* repsub = app.add_subcommand("rep", "representation matrix of U in SL(2,Z)");
    std::string rep_mode = "both";
    repsub->add_option("--algebra", algebra)->required();
    repsub->add_option("--level", level)->required();
    repsub->add_option("entries", mat_entries, "a b c d")->expected(4);
    repsub->add_option("--mode", rep_mode, "closed|brute|both");
    repsub->add_option("--precision", precision, "double|high");

    auto* invsub = app.add_subcommand("invariant", "quantum invariant of a Seifert manifold");
    InvariantRequest req;
    std::string level_text;
    std::vector<long long> lens_pq;
    invsub->add_option("--algebra", req.algebra, "A1, A2, D4, ...")->required();
    invsub->add_option("--level", level_text, "level r, or a sweep lo:hi[:step]")->required();
    invsub->add_option("--lens", lens_pq, "lens space parameters p q")->expected(2);
    invsub->add_option("--seifert", req.seifert_text,
                       "Seifert data \"eps;g|b;(a1,b1),...\" (b omissible)");
    invsub->add_option("--method", req.method, "matrix|closed|all");
    invsub->add_option("--precision", req.precision, "double|high");
    invsub->add_option("--format", req.format, "json|csv|plain");
    invsub->add_option("--cache-dir", req.cache_dir, "result cache directory (env RTQ_CACHE_DIR)");
    invsub->add_option("--term-budget", req.term_budget, "refuse larger closed-form sums");
    invsub->add_option("--workers", req.workers, "threads for the lambda sweep");

    auto* asympsub = app.add_subcommand("asymptotics", "large-r expansion of a lens invariant");
    long long as_order = 0;
    std::string r_range, residuals_path;
    asympsub->add_option("--algebra", algebra)->required();
    asympsub->add_option("--lens", lens_pq, "p q")->expected(2)->required();
    asympsub->add_option("--order", as_order, "truncation order N");
    asympsub->add_option("--r-range", r_range, "residual sweep lo:hi[:step]");
    asympsub->add_option("--residuals", residuals_path, "CSV output path (default stdout)");
    asympsub->add_option("--precision", precision, "double|high");

    auto* verifysub = app.add_subcommand("verify", "run a property suite");
    std::string suite = "all";
    int trials = 100;
    unsigned seed = 20240807;
    verifysub->add_option("suite", suite, "relations|reciprocity|oracle|asymptotics|all");
    verifysub->add_option("--algebra", algebra);
    verifysub->add_option("--level", level, "level for the relation/oracle suites");
    verifysub->add_option("--trials", trials);
    verifysub->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (describe->parsed()) return cmd_describe(algebra, format);
        if (mdsub->parsed())
            return precision == "high" ? cmd_modular_data<dd>(algebra, level, with_matrices)
                                       : cmd_modular_data<double>(algebra, level, with_matrices);
        if (phisub->parsed()) {
            SL2ZMatrix u(mat_entries[0], mat_entries[1], mat_entries[2], mat_entries[3]);
            std::cout << rademacher_phi(u).str() << "\n";
            return kExitOk;
        }
        if (dedsub->parsed()) {
            std::cout << dedekind_sum(ded_s, ded_q).str() << "\n";
            return kExitOk;
        }
        if (cfsub->parsed()) {
            ContinuedFraction cf = cf_expand(Rational(cf_p, cf_q));
            ordered_json j;
            j["target"] = Rational(cf_p, cf_q).str();
            j["terms"] = cf.terms();
            SL2ZMatrix bm = cf.b_matrix();
            j["b_matrix"] = ordered_json::array({bm.a, bm.b, bm.c, bm.d});
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
        if (repsub->parsed())
            return precision == "high" ? cmd_rep<dd>(algebra, level, mat_entries, rep_mode)
                                       : cmd_rep<double>(algebra, level, mat_entries, rep_mode);
        if (invsub->parsed()) {
            std::vector<std::string> problems;
            req.levels = parse_range(level_text);
            req.is_lens = !lens_pq.empty();
            if (req.is_lens) {
                req.p = lens_pq[0];
                req.q = lens_pq[1];
            }
            if (req.is_lens && !req.seifert_text.empty())
                problems.push_back("--lens and --seifert are mutually exclusive");
            if (!req.is_lens && req.seifert_text.empty())
                problems.push_back("one of --lens or --seifert is required");
            if (req.method != "matrix" && req.method != "closed" && req.method != "all")
                problems.push_back("--method must be matrix, closed or all");
            if (req.precision != "double" && req.precision != "high")
                problems.push_back("--precision must be double or high");
            if (req.format != "json" && req.format != "csv" && req.format != "plain")
                problems.push_back("--format must be json, csv or plain");
            if (req.workers < 1) problems.push_back("--workers must be >= 1");
            if (!problems.empty()) {
                for (const auto& p : problems) std::cerr << "error: " << p << "\n";
                return kExitUsage;
            }
            if (req.cache_dir.empty())
                if (const char* env = std::getenv("RTQ_CACHE_DIR")) req.cache_dir = env;
            return req.precision == "high" ? run_invariant<dd>(req) : run_invariant<double>(req);
        }
        if (asympsub->parsed())
            return precision == "high"
                       ? cmd_asymptotics<dd>(algebra, lens_pq[0], lens_pq[1],
                                             static_cast<int>(as_order), r_range, residuals_path)
                       : cmd_asymptotics<double>(algebra, lens_pq[0], lens_pq[1],
                                                 static_cast<int>(as_order), r_range,
                                                 residuals_path);
        if (verifysub->parsed()) {
            if (level == 0) level = RootSystem::build(algebra).dual_coxeter() + 2;
            return cmd_verify(suite, algebra, level, trials, seed);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
