#include "pleatray/traceform.hpp"

#include <sstream>

namespace pleatray {

namespace {

GaussianRational i_power(int q) {
    switch (((q % 4) + 4) % 4) {
        case 0: return {Rational(1), Rational(0)};
        case 1: return {Rational(0), Rational(1)};
        case 2: return {Rational(-1), Rational(0)};
        default: return {Rational(0), Rational(-1)};
    }
}

bool is_integer(const GaussianRational& g) {
    return g.im == 0 && boost::multiprecision::denominator(g.re) == 1;
}

// |v| = 2^m with m >= 0, for rational v with zero imaginary part
int log2_if_power_of_two(const GaussianRational& v) {
    if (v.im != 0) return -1;
    Rational a = v.re < 0 ? Rational(-v.re) : v.re;
    if (boost::multiprecision::denominator(a) != 1) return -1;
    auto n = boost::multiprecision::numerator(a);
    if (n == 0) return -1;
    int m = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++m;
    }
    return n == 1 ? m : -1;
}

}  // namespace

TopForm extract_top(const Polynomial& p) {
    if (p.is_constant()) throw ParabolicTrace();
    int n = p.nvars();
    TopForm f;
    f.q.resize(n);
    for (int i = 0; i < n; ++i) f.q[i] = std::max(0, p.degree(i));
    Monomial top(f.q.begin(), f.q.end());
    f.top_coeff = p.coeff(top);
    f.sub_coeffs.resize(n);
    for (int i = 0; i < n; ++i) {
        if (f.q[i] == 0) continue;
        Monomial sub = top;
        --sub[i];
        f.sub_coeffs[i] = p.coeff(sub);
    }
    return f;
}

RecoveredDT recover_dt(const Polynomial& p) {
    TopForm f = extract_top(p);
    if (f.top_coeff.is_zero())
        throw std::domain_error("top coefficient vanishes: degenerate trace");
    RecoveredDT r;
    int qsum = 0;
    for (int qi : f.q) {
        r.q.push_back(qi);
        qsum += qi;
    }
    for (std::size_t i = 0; i < f.q.size(); ++i) {
        if (f.q[i] == 0) {
            r.p.emplace_back(0);
            r.p_is_integer.push_back(true);
            continue;
        }
        GaussianRational pi = f.sub_coeffs[i] / f.top_coeff;
        r.p.push_back(pi.re);
        r.p_is_integer.push_back(is_integer(pi));
    }
    r.log2_top = log2_if_power_of_two(f.top_coeff / i_power(qsum));
    r.top_unit_power_of_two = r.log2_top >= 0;
    return r;
}

int scc_count(const PathWord& w, const PantsDecomposition& d) {
    validate_word(w, d);
    std::vector<std::pair<PantsEnd, PantsEnd>> ends;  // (from, to) per crossing
    for (const Token& t : w.tokens) {
        if (!std::holds_alternative<CrossTok>(t)) continue;
        const CrossTok& c = std::get<CrossTok>(t);
        PantsEnd from = d.gluings()[c.curve].a;
        PantsEnd to = d.gluings()[c.curve].b;
        if (c.dir == -1) std::swap(from, to);
        ends.push_back({from, to});
    }
    if (ends.empty()) return 0;
    int h = 0;
    for (std::size_t k = 0; k < ends.size(); ++k) {
        const PantsEnd& enter = ends[k].second;                       // arc starts here
        const PantsEnd& exit = ends[(k + 1) % ends.size()].first;     // and leaves here
        if (enter == exit) ++h;
    }
    return h;
}

namespace {

std::string gstr(const GaussianRational& g) { return g.str(); }

nlohmann::json rational_json(const Rational& r) {
    if (boost::multiprecision::denominator(r) == 1)
        return boost::multiprecision::numerator(r).convert_to<long long>();
    return format_rational(r);
}

}  // namespace

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json j;
    j["word"] = word;
    j["q"] = q;
    nlohmann::json pj = nlohmann::json::array();
    for (const Rational& r : p) pj.push_back(rational_json(r));
    j["p"] = pj;
    j["h"] = h;
    j["parabolic"] = parabolic;
    j["pass"] = pass;
    nlohmann::json cj = nlohmann::json::object();
    for (const auto& [k, c] : clauses) cj[k] = {{"pass", c.pass}, {"detail", c.detail}};
    j["clauses"] = cj;
    return j;
}

VerifyReport verify_top_terms(const PathWord& w, const PantsDecomposition& d) {
    validate_word(w, d);
    int n = d.xi();
    Polynomial tr = trace(holonomy_symbolic(w, d));

    VerifyReport rep;
    rep.word = w.name;
    std::vector<int> crosses(n);
    int total_crosses = 0;
    for (int i = 0; i < n; ++i) {
        crosses[i] = cross_count(w, i);
        total_crosses += crosses[i];
    }

    if (total_crosses == 0) {
        rep.parabolic = true;
        rep.q.assign(n, 0);
        rep.p.assign(n, Rational(0));
        bool pm2 = tr == Polynomial::constant(n, GaussianRational::integer(2)) ||
                   tr == Polynomial::constant(n, GaussianRational::integer(-2));
        rep.clauses["parabolic"] = {pm2, pm2 ? "trace is the constant +-2"
                                             : "pants-parallel word with trace " + tr.str()};
        bool claims_ok = true;
        if (w.claimed) {
            for (long long qi : w.claimed->q)
                if (qi != 0) claims_ok = false;
            rep.clauses["d"] = {claims_ok, claims_ok ? "claimed q is zero"
                                                     : "claimed q nonzero on a pants loop"};
        }
        rep.pass = pm2 && claims_ok;
        return rep;
    }

    TopForm f;
    bool constant_trace = false;
    try {
        f = extract_top(tr);
    } catch (const ParabolicTrace&) {
        constant_trace = true;
        f.q.assign(n, 0);
        f.sub_coeffs.assign(n, GaussianRational{});
    }

    rep.h = scc_count(w, d);
    int qsum = 0;
    for (int qi : f.q) qsum += qi;

    // (a) degrees match crossing counts
    {
        bool ok = !constant_trace;
        std::ostringstream os;
        for (int i = 0; i < n; ++i) {
            int deg = constant_trace ? 0 : f.q[i];
            if (deg != crosses[i]) ok = false;
            os << "deg(tau_" << i + 1 << ")=" << deg << " crossings=" << crosses[i] << "; ";
        }
        rep.clauses["a"] = {ok, os.str()};
    }
    for (int qi : f.q) rep.q.push_back(qi);

    // (b) top coefficient is +- i^q 2^h
    GaussianRational expected = i_power(qsum) * GaussianRational::integer(1 << rep.h);
    {
        bool ok = !constant_trace && !f.top_coeff.is_zero() &&
                  (f.top_coeff == expected || f.top_coeff == -expected);
        rep.clauses["b"] = {ok, "top = " + gstr(f.top_coeff) + ", expected +-" + gstr(expected)};
    }

    // (c) integral twists
    std::vector<GaussianRational> p_exact(n);
    {
        bool ok = true;
        std::ostringstream os;
        for (int i = 0; i < n; ++i) {
            if (f.q[i] == 0 || f.top_coeff.is_zero()) {
                rep.p.emplace_back(0);
                continue;
            }
            p_exact[i] = f.sub_coeffs[i] / f.top_coeff;
            rep.p.push_back(p_exact[i].re);
            if (!is_integer(p_exact[i])) {
                ok = false;
                os << "p_" << i + 1 << " = " << gstr(p_exact[i]) << " not an integer; ";
            }
        }
        rep.clauses["c"] = {ok, os.str().empty() ? "all twists integral" : os.str()};
    }

    // (d) claims match the recovered coordinates
    if (w.claimed) {
        bool ok = true;
        std::ostringstream os;
        for (int i = 0; i < n; ++i) {
            if (w.claimed->q[i] != rep.q[i]) ok = false;
            if (f.q[i] > 0 && Rational(w.claimed->p[i]) != rep.p[i]) ok = false;
        }
        os << "claimed (q,p) vs recovered";
        rep.clauses["d"] = {ok, os.str()};
    }

    // (e) remainder bounds: total degree <= q - 2, per-variable degree <= q_i
    {
        Polynomial model(n);
        if (!constant_trace && !f.top_coeff.is_zero()) {
            Monomial top(f.q.begin(), f.q.end());
            model = Polynomial::monomial(n, top, f.top_coeff);
            for (int i = 0; i < n; ++i) {
                if (f.q[i] == 0 || f.sub_coeffs[i].is_zero()) continue;
                Monomial sub = top;
                --sub[i];
                model = model + Polynomial::monomial(n, sub, f.sub_coeffs[i]);
            }
        }
        Polynomial R = tr - model;
        bool ok = R.total_degree() <= qsum - 2;
        for (int i = 0; i < n; ++i)
            if (R.degree(i) > f.q[i]) ok = false;
        std::ostringstream os;
        os << "remainder total degree " << R.total_degree() << " vs bound " << qsum - 2;
        rep.clauses["e"] = {ok, os.str()};
    }

    rep.pass = true;
    for (const auto& [k, c] : rep.clauses)
        if (!c.pass) rep.pass = false;
    return rep;
}

}  // namespace pleatray
