#include "pleatray/pleating.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "pleatray/traceform.hpp"

namespace pleatray {

namespace {

void require_upper(const std::vector<std::complex<double>>& tau) {
    if (tau.empty()) throw std::invalid_argument("empty parameter vector");
    for (const auto& w : tau)
        if (!(w.imag() > 0)) throw std::invalid_argument("parameters must have Im > 0");
}

}  // namespace

double e_function(const DTCoords& c, const std::vector<std::complex<double>>& tau) {
    require_upper(tau);
    if (c.q.size() != tau.size() || c.p.size() != tau.size())
        throw std::invalid_argument("coordinate/parameter length mismatch");
    double rho2 = 0;
    for (const auto& w : tau) rho2 += w.imag() * w.imag();
    double rho = std::sqrt(rho2);
    double prod = 1;
    for (const auto& w : tau) prod *= w.imag() / rho;
    double sum = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        double qi = static_cast<double>(c.q[i]);
        double pi = static_cast<double>(c.p[i]);
        sum += (qi * tau[i].real() + pi) * rho / tau[i].imag();
    }
    return prod * sum;
}

double e_function(const RationalLamination& eta, const std::vector<std::complex<double>>& tau) {
    validate_lamination(eta);
    double total = 0;
    for (const auto& c : eta.components)
        total += c.weight.convert_to<double>() * e_function(c.coords, tau);
    return total;
}

std::vector<double> u_vector(const std::vector<std::complex<double>>& tau) {
    require_upper(tau);
    double rho2 = 0;
    for (const auto& w : tau) rho2 += w.imag() * w.imag();
    double rho = std::sqrt(rho2);
    double prod = 1;
    for (const auto& w : tau) prod *= w.imag() / rho;
    std::vector<double> u(2 * tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) {
        double s = prod * rho / tau[i].imag();
        u[2 * i] = s * tau[i].real();
        u[2 * i + 1] = s;
    }
    return u;
}

SolveError::SolveError(std::string k, const std::string& msg)
    : std::runtime_error(msg), kind(std::move(k)) {}

namespace {

const PathWord& resolve_component(const SurfaceSig& sig, const LaminationComponent& c) {
    const PathWord& w = catalog_word(sig, c.name);
    if (!w.claimed || !(*w.claimed == c.coords))
        throw std::invalid_argument("component " + c.name +
                                    " does not carry the catalog coordinates");
    return w;
}

void push_constraint(RealTraceSystem& sys, const PathWord& w) {
    sys.constraints.push_back(w);
    sys.traces.push_back(trace(holonomy_symbolic(w, sys.decomposition)));
}

}  // namespace

RealTraceSystem build_system(const RationalLamination& eta, const Marking& m, SystemMode mode) {
    validate_lamination(eta);
    if (!is_admissible(eta, m.decomposition))
        throw std::invalid_argument("lamination must meet every pants curve");
    int xi = m.decomposition.xi();
    int k = static_cast<int>(eta.components.size());
    if (mode == SystemMode::ExactRay && k != 1)
        throw std::invalid_argument("exact-ray systems take a single component");

    RealTraceSystem sys{m.decomposition, {}, {}, {}, mode, eta, line_of(eta)};
    const SurfaceSig& sig = m.decomposition.sig();

    std::vector<CurveRef> refs;
    for (const auto& c : eta.components) {
        const PathWord& w = resolve_component(sig, c);
        refs.push_back({c.name, c.coords});
        push_constraint(sys, w);
    }
    LinkSystem link = complete_link_system(refs, m);
    for (const auto& c : link.curves) push_constraint(sys, catalog_word(sig, c.name));
    if (mode == SystemMode::ExactRay)
        for (const auto& d : link.duals) push_constraint(sys, catalog_word(sig, d.name));

    if (mode == SystemMode::ExactRay) {
        sys.pins.push_back({0, Rational(1)});
    } else {
        for (int i = 0; i < xi; ++i) sys.pins.push_back({i, sys.line.q[0] / sys.line.q[i]});
    }
    return sys;
}

namespace {

std::vector<std::complex<double>> to_tau(const std::vector<double>& coords) {
    std::vector<std::complex<double>> tau(coords.size() / 2);
    for (std::size_t i = 0; i < tau.size(); ++i)
        tau[i] = {coords[2 * i], coords[2 * i + 1]};
    return tau;
}

std::vector<double> residuals(const RealTraceSystem& sys, const std::vector<double>& coords,
                              std::vector<std::complex<double>>* traces_out = nullptr) {
    auto tau = to_tau(coords);
    std::vector<double> r(sys.traces.size());
    if (traces_out) traces_out->resize(sys.traces.size());
    for (std::size_t i = 0; i < sys.traces.size(); ++i) {
        std::complex<double> tr = sys.traces[i].eval(tau);
        r[i] = tr.imag();
        if (traces_out) (*traces_out)[i] = tr;
    }
    return r;
}

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Gaussian elimination with partial pivoting; throws SolveError on a
// numerically vanishing pivot.
std::vector<double> solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                                 double scale) {
    int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) piv = row;
        if (std::abs(a[piv][col]) < 1e-14 * std::max(scale, 1e-300))
            throw SolveError("singular-jacobian", "jacobian pivot vanished");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int row = col + 1; row < n; ++row) {
            double f = a[row][col] / a[col][col];
            for (int j = col; j < n; ++j) a[row][j] -= f * a[col][j];
            b[row] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int col = n - 1; col >= 0; --col) {
        double s = b[col];
        for (int j = col + 1; j < n; ++j) s -= a[col][j] * x[j];
        x[col] = s / a[col][col];
    }
    return x;
}

double norm_inf(const std::vector<std::vector<double>>& a) {
    double m = 0;
    for (const auto& row : a) {
        double s = 0;
        for (double v : row) s += std::abs(v);
        m = std::max(m, s);
    }
    return m;
}

void fill_deviations(const RealTraceSystem& sys, RaySample& s) {
    std::size_t xi = s.tau.size();
    s.dev_re.resize(xi);
    s.dev_im.resize(xi);
    double q1 = sys.line.q[0].convert_to<double>();
    for (std::size_t i = 0; i < xi; ++i) {
        double ratio = (sys.line.p[i] / sys.line.q[i]).convert_to<double>();
        double qi = sys.line.q[i].convert_to<double>();
        s.dev_re[i] = std::abs(s.tau[i].real() + ratio);
        s.dev_im[i] = std::abs(qi * s.tau[i].imag() / (q1 * s.t) - 1.0);
    }
}

}  // namespace

RaySample newton_solve(const RealTraceSystem& sys, double t, std::vector<double> coords) {
    if (!(t > 0)) throw std::invalid_argument("station t must be positive");
    std::size_t xi = sys.line.q.size();
    if (coords.size() != 2 * xi) throw std::invalid_argument("seed length must be 2 xi");

    std::vector<bool> pinned(2 * xi, false);
    for (const auto& pin : sys.pins) {
        coords[2 * pin.index + 1] = pin.scale.convert_to<double>() * t;
        pinned[2 * pin.index + 1] = true;
    }
    for (std::size_t i = 0; i < xi; ++i)
        if (!(coords[2 * i + 1] > 0))
            throw std::invalid_argument("seed must lie in the upper half-space");

    std::vector<int> free_idx;
    for (std::size_t i = 0; i < 2 * xi; ++i)
        if (!pinned[i]) free_idx.push_back(static_cast<int>(i));
    int n = static_cast<int>(free_idx.size());
    if (n != static_cast<int>(sys.traces.size()))
        throw std::logic_error("system is not square");

    auto im_coord = [](int idx) { return idx % 2 == 1; };

    std::vector<double> r = residuals(sys, coords);
    double rmax = max_abs(r);
    int iters = 0;
    while (rmax > kResidualTol) {
        if (iters >= kMaxNewtonIters)
            throw SolveError("no-convergence", "newton iteration budget exhausted");

        std::vector<std::vector<double>> jac(n, std::vector<double>(n));
        for (int j = 0; j < n; ++j) {
            int idx = free_idx[j];
            double h = 1e-6 * std::max(1.0, std::abs(coords[idx]));
            if (im_coord(idx)) h = std::min(h, coords[idx] / 2);
            std::vector<double> plus = coords, minus = coords;
            plus[idx] += h;
            minus[idx] -= h;
            auto rp = residuals(sys, plus);
            auto rm = residuals(sys, minus);
            for (int i = 0; i < n; ++i) jac[i][j] = (rp[i] - rm[i]) / (2 * h);
        }

        double jmax = 0;
        for (const auto& row : jac) jmax = std::max(jmax, max_abs(row));
        if (jmax < 1e-8) throw SolveError("singular-jacobian", "jacobian vanishes at iterate");

        // condition estimate from explicit inverse; systems here are tiny
        std::vector<std::vector<double>> inv(n, std::vector<double>(n));
        for (int col = 0; col < n; ++col) {
            std::vector<double> e(n, 0.0);
            e[col] = 1.0;
            auto x = solve_linear(jac, e, jmax);
            for (int row = 0; row < n; ++row) inv[row][col] = x[row];
        }
        if (norm_inf(jac) * norm_inf(inv) > 1e12)
            throw SolveError("ill-conditioned", "jacobian condition number exceeds 1e12");

        std::vector<double> neg(n);
        for (int i = 0; i < n; ++i) neg[i] = -r[i];
        auto dx = solve_linear(jac, neg, jmax);

        bool accepted = false, saw_valid = false;
        double lam = 1.0;
        for (int halving = 0; halving < 20 && !accepted; ++halving, lam /= 2) {
            std::vector<double> cand = coords;
            for (int j = 0; j < n; ++j) cand[free_idx[j]] += lam * dx[j];
            bool valid = true;
            for (std::size_t i = 0; i < xi; ++i)
                if (!(cand[2 * i + 1] > 0)) valid = false;
            if (!valid) continue;
            saw_valid = true;
            auto rc = residuals(sys, cand);
            double rcmax = max_abs(rc);
            if (rcmax < rmax) {
                coords = std::move(cand);
                r = std::move(rc);
                rmax = rcmax;
                accepted = true;
            }
        }
        if (!accepted)
            throw SolveError(saw_valid ? "no-convergence" : "left-upper-half-space",
                             saw_valid ? "line search failed to reduce the residual"
                                       : "every step left the upper half-space");
        ++iters;
    }

    std::vector<std::complex<double>> trs;
    r = residuals(sys, coords, &trs);
    RaySample s;
    s.t = t;
    s.tau = to_tau(coords);
    s.residual = max_abs(r);
    s.newton_iters = iters;
    s.cusp_proximity = std::numeric_limits<double>::infinity();
    for (const auto& tr : trs)
        s.cusp_proximity =
            std::min({s.cusp_proximity, std::abs(tr - 2.0), std::abs(tr + 2.0)});
    if (s.cusp_proximity < kCuspTol)
        throw SolveError("cusp", "cusp: system trace within " + std::to_string(kCuspTol) +
                                     " of +-2 at t = " + std::to_string(t));
    fill_deviations(sys, s);
    return s;
}

RayTrace trace_ray(const RationalLamination& eta, const Marking& m,
                   const std::vector<double>& schedule) {
    if (schedule.empty()) throw std::invalid_argument("empty schedule");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 0)) throw std::invalid_argument("schedule stations must be positive");
        if (i > 0 && !(schedule[i] < schedule[i - 1]))
            throw std::invalid_argument("schedule must be strictly decreasing");
    }
    SystemMode mode =
        eta.components.size() == 1 ? SystemMode::ExactRay : SystemMode::PinnedImaginary;
    RealTraceSystem sys = build_system(eta, m, mode);

    RayTrace out;
    out.lamination = eta;
    out.line = sys.line;
    out.mode = mode;
    out.schedule = schedule;

    auto seed_tau = line_point(sys.line, schedule.front());
    std::vector<double> coords(2 * seed_tau.size());
    for (std::size_t i = 0; i < seed_tau.size(); ++i) {
        coords[2 * i] = seed_tau[i].real();
        coords[2 * i + 1] = seed_tau[i].imag();
    }

    for (std::size_t idx = 0; idx < schedule.size(); ++idx) {
        RaySample s;
        try {
            s = newton_solve(sys, schedule[idx], coords);
        } catch (const SolveError& e) {
            if (idx == 0) throw;
            out.truncated = true;
            out.note = e.kind + std::string(": ") + e.what();
            break;
        }
        for (std::size_t i = 0; i < s.tau.size(); ++i) {
            coords[2 * i] = s.tau[i].real();
            coords[2 * i + 1] = s.tau[i].imag();
        }
        out.samples.push_back(std::move(s));
    }
    return out;
}

double check_line_reality(const RationalLamination& eta, const Marking& m, double t) {
    validate_lamination(eta);
    if (eta.components.size() != 1)
        throw std::invalid_argument("line reality check takes a single-curve lamination");
    if (!is_admissible(eta, m.decomposition))
        throw std::invalid_argument("lamination must meet every pants curve");
    const PathWord& w = resolve_component(m.decomposition.sig(), eta.components.front());
    Polynomial tr = trace(holonomy_symbolic(w, m.decomposition));
    auto tau = line_point(line_of(eta), t);
    std::complex<double> v = tr.eval(tau);
    if (std::abs(v) == 0.0) throw std::domain_error("trace vanishes on the line");
    return std::abs(v.imag()) / std::abs(v);
}

void write_ray_csv(const RayTrace& r, std::ostream& os) {
    std::size_t xi = r.line.q.size();
    os << "t";
    for (std::size_t i = 1; i <= xi; ++i) os << ",re_tau_" << i << ",im_tau_" << i;
    os << ",residual,cusp_proximity\n";
    char buf[40];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    for (const auto& s : r.samples) {
        put(s.t);
        for (const auto& w : s.tau) {
            os << ',';
            put(w.real());
            os << ',';
            put(w.imag());
        }
        os << ',';
        put(s.residual);
        os << ',';
        put(s.cusp_proximity);
        os << '\n';
    }
}

nlohmann::json ray_json(const RayTrace& r) {
    nlohmann::json j;
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : r.lamination.components) {
        nlohmann::json jc;
        jc["weight"] = format_rational(c.weight);
        jc["name"] = c.name;
        jc["q"] = c.coords.q;
        jc["p"] = c.coords.p;
        comps.push_back(std::move(jc));
    }
    j["lamination"] = {{"components", std::move(comps)}};
    std::vector<std::string> lq, lp;
    for (const auto& v : r.line.q) lq.push_back(format_rational(v));
    for (const auto& v : r.line.p) lp.push_back(format_rational(v));
    j["line"] = {{"q", lq}, {"p", lp}};
    j["mode"] = r.mode == SystemMode::ExactRay ? "exact-ray" : "pinned-imaginary";
    j["schedule"] = r.schedule;
    j["tolerances"] = {{"residual", kResidualTol},
                       {"cusp", kCuspTol},
                       {"max_newton_iters", kMaxNewtonIters}};
    j["truncated"] = r.truncated;
    if (!r.note.empty()) j["note"] = r.note;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : r.samples) {
        nlohmann::json js;
        js["t"] = s.t;
        nlohmann::json tau = nlohmann::json::array();
        for (const auto& w : s.tau) tau.push_back({w.real(), w.imag()});
        js["tau"] = std::move(tau);
        js["residual"] = s.residual;
        js["newton_iters"] = s.newton_iters;
        js["cusp_proximity"] = s.cusp_proximity;
        js["dev_re"] = s.dev_re;
        js["dev_im"] = s.dev_im;
        samples.push_back(std::move(js));
    }
    j["samples"] = std::move(samples);
    return j;
}

}  // namespace pleatray
