#include "rtq/rt_invariants.hpp"

#include <sstream>

namespace rtq {

void SeifertPresentation::validate() const {
    if (genus < 0) fail(Errc::InvalidArgument, "genus must be non-negative");
    if (eps == Base::NonOrientable && genus == 0)
        fail(Errc::InvalidArgument, "non-orientable base needs genus > 0");
    for (size_t j = 0; j < fibers.size(); ++j) {
        auto [alpha, beta] = fibers[j];
        std::string tag = "fiber " + std::to_string(j + 1);
        if (alpha <= 0) fail(Errc::ZeroAlpha, tag + ": alpha must be positive");
        if (gcd_ll(alpha, beta) != 1)
            fail(Errc::NotCoprime, tag + ": (" + std::to_string(alpha) + "," + std::to_string(beta) +
                                       ") is not coprime");
        if (normalized() && !(0 < beta && beta < alpha))
            fail(Errc::InvalidArgument,
                 tag + ": normalized data requires 0 < beta < alpha, got beta=" + std::to_string(beta));
    }
}

Rational SeifertPresentation::euler_number() const {
    Rational e(b.value_or(0));
    for (auto [alpha, beta] : fibers) e += Rational(beta, alpha);
    return -e;
}

std::string SeifertPresentation::str() const {
    std::string s = eps == Base::Orientable ? "o" : "n";
    s += ";" + std::to_string(genus);
    if (b) s += "|" + std::to_string(*b);
    if (!fibers.empty()) {
        s += ";";
        for (size_t j = 0; j < fibers.size(); ++j) {
            if (j) s += ",";
            s += "(" + std::to_string(fibers[j].first) + "," + std::to_string(fibers[j].second) + ")";
        }
    }
    return s;
}

namespace {

[[noreturn]] void parse_fail(const std::string& text, size_t pos, const std::string& why) {
    fail(Errc::ParseError,
         "cannot parse Seifert data '" + text + "' at position " + std::to_string(pos) + ": " + why);
}

long long parse_int(const std::string& text, size_t& pos) {
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        parse_fail(text, start, "expected an integer");
    return std::stoll(text.substr(start, pos - start));
}

} // namespace

SeifertPresentation SeifertPresentation::parse(const std::string& text) {
    SeifertPresentation m;
    size_t pos = 0;
    auto skip_ws = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (pos >= text.size()) parse_fail(text, pos, "empty input");
    if (text[pos] == 'o')
        m.eps = Base::Orientable;
    else if (text[pos] == 'n')
        m.eps = Base::NonOrientable;
    else
        parse_fail(text, pos, "base class must be 'o' or 'n'");
    ++pos;
    skip_ws();
    if (pos >= text.size() || text[pos] != ';') parse_fail(text, pos, "expected ';' after base class");
    ++pos;
    skip_ws();
    m.genus = static_cast<int>(parse_int(text, pos));
    skip_ws();
    if (pos < text.size() && text[pos] == '|') {
        ++pos;
        skip_ws();
        m.b = parse_int(text, pos);
        skip_ws();
    }
    if (pos < text.size()) {
        if (text[pos] != ';') parse_fail(text, pos, "expected ';' before the fiber list");
        ++pos;
        skip_ws();
        while (pos < text.size()) {
            if (text[pos] != '(') parse_fail(text, pos, "expected '(' to open a fiber pair");
            size_t open = pos;
            ++pos;
            skip_ws();
            long long alpha = parse_int(text, pos);
            skip_ws();
            if (pos >= text.size() || text[pos] != ',')
                parse_fail(text, pos, "expected ',' inside the fiber pair");
            ++pos;
            skip_ws();
            long long beta = parse_int(text, pos);
            skip_ws();
            if (pos >= text.size() || text[pos] != ')')
                parse_fail(text, open, "unclosed fiber pair");
            ++pos;
            m.fibers.push_back({alpha, beta});
            skip_ws();
            if (pos >= text.size()) break;
            if (text[pos] != ',') parse_fail(text, pos, "expected ',' between fiber pairs");
            ++pos;
            skip_ws();
        }
    }
    m.validate();
    return m;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::MatrixForm: return "matrix_form";
        case Method::ClosedForm: return "closed_form";
        case Method::LensCF: return "lens_cf";
        case Method::LensRTLens: return "lens_rtlens";
        case Method::LensAsymp: return "lens_asymp";
    }
    return "?";
}

std::vector<FiberExpansion> expand_fibers(const SeifertPresentation& m, bool alternate) {
    std::vector<FiberExpansion> out;
    for (size_t j = 0; j < m.fibers.size(); ++j) {
        auto [alpha, beta] = m.fibers[j];
        FiberExpansion f;
        f.alpha = alpha;
        f.beta = beta;
        if (beta == 0)
            fail(Errc::ZeroDenominator,
                 "fiber " + std::to_string(j + 1) + " has beta = 0; remove the trivial (1,0) fiber");
        f.cf = cf_expand(Rational(alpha, beta));
        if (alternate) {
            // (a1, a2, ...) and (1, a1+1, a2, ...) nest to the same value.
            std::vector<long long> terms = f.cf.terms();
            terms[0] += 1;
            terms.insert(terms.begin(), 1);
            f.cf = ContinuedFraction(terms);
            if (f.cf.nested_value() != Rational(alpha, beta))
                fail(Errc::InvalidArgument, "secondary expansion self-check failed");
        }
        f.phi = rademacher_phi(f.cf.b_matrix());
        out.push_back(std::move(f));
    }
    return out;
}

Rational sigma_epsilon(const SeifertPresentation& m, const std::vector<FiberExpansion>& fibers) {
    Rational sigma(0);
    sigma += Rational(m.a_eps() - 1) * Rational(m.euler_number().sign());
    for (const auto& f : fibers) sigma += Rational(sign_of(f.alpha) * sign_of(f.beta));
    for (const auto& f : fibers)
        sigma += (Rational(f.cf.term_sum()) - f.phi) / Rational(3);
    return sigma;
}

} // namespace rtq
