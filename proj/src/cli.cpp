#include "pleatray/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pleatray/holonomy.hpp"
#include "pleatray/pleating.hpp"
#include "pleatray/surface.hpp"
#include "pleatray/traceform.hpp"

namespace pleatray {

namespace {

struct CliError {
    int code;
    std::string msg;
};

int log_level(const char* env = std::getenv("PLEATRAY_LOG")) {
    if (!env) return 0;
    std::string s(env);
    if (s == "debug") return 2;
    if (s == "info") return 1;
    return 0;
}

struct Logger {
    std::ostream& err;
    int level;
    void info(const std::string& m) const {
        if (level >= 1) err << "info: " << m << "\n";
    }
    void debug(const std::string& m) const {
        if (level >= 2) err << "debug: " << m << "\n";
    }
};

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    if (s.empty()) return out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw CliError{1, "empty entry in list '" + s + "'"};
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<double> parse_schedule(const std::string& s) {
    std::vector<double> out;
    for (const auto& item : split_csv(s)) {
        try {
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw CliError{1, "cannot parse schedule entry '" + item + "'"};
        }
    }
    if (out.empty()) throw CliError{1, "schedule is empty"};
    for (double t : out)
        if (!(t > 0)) throw CliError{1, "schedule stations must be positive"};
    return out;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& item : split_csv(s)) {
        try {
            out.push_back(parse_rational(item));
        } catch (const std::exception&) {
            throw CliError{1, "cannot parse coordinate '" + item + "'"};
        }
    }
    return out;
}

// interleaved q_1,p_1,...,q_xi,p_xi
template <typename T>
std::pair<std::vector<T>, std::vector<T>> deinterleave(const std::vector<T>& v) {
    if (v.empty() || v.size() % 2 != 0)
        throw CliError{1, "expected interleaved q,p pairs"};
    std::vector<T> q, p;
    for (std::size_t i = 0; i < v.size(); i += 2) {
        q.push_back(v[i]);
        p.push_back(v[i + 1]);
    }
    return {std::move(q), std::move(p)};
}

DTCoords parse_dt(const std::string& s) {
    auto entries = parse_rational_list(s);
    auto [q, p] = deinterleave(entries);
    DTCoords c;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (boost::multiprecision::denominator(q[i]) != 1 ||
            boost::multiprecision::denominator(p[i]) != 1)
            throw CliError{1, "integer coordinates required"};
        c.q.push_back(q[i].convert_to<long long>());
        c.p.push_back(p[i].convert_to<long long>());
    }
    return c;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw CliError{1, "cannot open " + path};
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw CliError{1, path + ": " + e.what()};
    }
}

Marking load_surface(const std::string& spec) {
    if (spec == "s11" || spec == "s04" || spec == "s12") return Marking::builtin(spec);
    auto j = load_json_file(spec);
    PantsDecomposition d = [&] {
        try {
            return PantsDecomposition::from_json(j);
        } catch (const std::exception& e) {
            throw CliError{1, spec + ": " + e.what()};
        }
    }();
    const std::string& id = d.id();
    if (id == "s11" || id == "s04" || id == "s12") {
        Marking m = Marking::builtin(id);
        m.decomposition = d;
        return m;
    }
    return Marking{d, {}};
}

bool looks_like_path(const std::string& s) {
    return std::filesystem::exists(s) || s.find('/') != std::string::npos ||
           (s.size() > 5 && s.substr(s.size() - 5) == ".json");
}

PathWord load_word(const Marking& m, const std::string& ref) {
    if (looks_like_path(ref)) {
        auto j = load_json_file(ref);
        try {
            return PathWord::from_json(j);
        } catch (const nlohmann::json::exception& e) {
            throw CliError{1, ref + ": " + e.what()};
        }
    }
    try {
        return catalog_word(m.decomposition.sig(), ref);
    } catch (const std::exception& e) {
        throw CliError{1, e.what()};
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// sink for generated text: --out path or the process stdout
void emit(const std::string& body, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << body;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw CliError{1, "cannot write " + out_path};
    f << body;
}

int cmd_validate(const Marking& m, const std::string& coords, std::ostream& out) {
    DTCoords c = parse_dt(coords);
    DehnReport rep = [&] {
        try {
            return validate_dt(c, m.decomposition);
        } catch (const std::exception& e) {
            throw CliError{2, e.what()};
        }
    }();
    nlohmann::json j{{"ok", rep.ok}, {"violations", rep.violations}};
    out << j.dump() << "\n";
    return rep.ok ? 0 : 2;
}

int cmd_trace_poly(const Marking& m, const std::string& word_ref, const std::string& out_path,
                   std::ostream& out) {
    PathWord w = load_word(m, word_ref);
    Polynomial tr = [&] {
        try {
            return trace(holonomy_symbolic(w, m.decomposition));
        } catch (const std::exception& e) {
            throw CliError{2, e.what()};
        }
    }();
    emit(tr.to_json().dump() + "\n", out_path, out);
    return 0;
}

int cmd_verify_top(const Marking& m, const std::string& word_ref, const std::string& out_path,
                   std::ostream& out, const Logger& log) {
    std::vector<PathWord> words;
    if (word_ref.empty()) {
        try {
            words = catalog(m.decomposition.sig());
        } catch (const std::exception& e) {
            throw CliError{2, e.what()};
        }
    } else if (looks_like_path(word_ref)) {
        auto j = load_json_file(word_ref);
        try {
            if (j.is_array())
                for (const auto& e : j) words.push_back(PathWord::from_json(e));
            else
                words.push_back(PathWord::from_json(j));
        } catch (const nlohmann::json::exception& e) {
            throw CliError{1, word_ref + ": " + e.what()};
        }
        if (words.empty()) throw CliError{1, "word list is empty"};
    } else {
        words.push_back(load_word(m, word_ref));
    }

    bool all_pass = true;
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& w : words) {
        log.debug("verifying " + w.name);
        VerifyReport rep = [&] {
            try {
                return verify_top_terms(w, m.decomposition);
            } catch (const std::exception& e) {
                throw CliError{2, w.name + ": " + e.what()};
            }
        }();
        all_pass = all_pass && rep.pass;
        reports.push_back(rep.to_json());
    }
    emit(reports.dump() + "\n", out_path, out);
    return all_pass ? 0 : 2;
}

RationalLamination resolve_lamination(const SurfaceSig& sig, const std::string& lam_spec) {
    auto entries = parse_rational_list(lam_spec);
    auto [q, p] = deinterleave(entries);
    std::vector<PathWord> words = [&] {
        try {
            return catalog(sig);
        } catch (const std::exception& e) {
            throw CliError{2, e.what()};
        }
    }();
    for (const auto& w : words) {
        if (!w.claimed) continue;
        const DTCoords& c = *w.claimed;
        if (c.q.size() != q.size()) continue;
        Rational weight{0};
        for (std::size_t i = 0; i < q.size() && weight == 0; ++i) {
            if (c.q[i] != 0)
                weight = q[i] / c.q[i];
            else if (c.p[i] != 0)
                weight = p[i] / c.p[i];
        }
        if (weight <= 0) continue;
        bool match = true;
        for (std::size_t i = 0; i < q.size() && match; ++i)
            match = q[i] == weight * c.q[i] && p[i] == weight * c.p[i];
        if (!match) continue;
        RationalLamination eta;
        eta.components.push_back({weight, w.name, c});
        return eta;
    }
    throw CliError{2, "no catalog curve is proportional to (" + lam_spec + ")"};
}

int cmd_ray(const Marking& m, const std::string& lam_spec, const std::string& schedule_spec,
            const std::string& format, const std::string& out_path, double tol,
            std::ostream& out, const Logger& log) {
    auto schedule = parse_schedule(schedule_spec);
    for (std::size_t i = 1; i < schedule.size(); ++i)
        if (!(schedule[i] < schedule[i - 1]))
            throw CliError{1, "schedule must be strictly decreasing"};
    RationalLamination eta = resolve_lamination(m.decomposition.sig(), lam_spec);
    log.info("lamination resolved to weight " + format_rational(eta.components[0].weight) +
             " on " + eta.components[0].name);
    log.info("tracing " + std::to_string(schedule.size()) + " stations from t=" +
             fmt17(schedule.front()) + " down to t=" + fmt17(schedule.back()));

    RayTrace rt;
    try {
        rt = trace_ray(eta, m, schedule);
    } catch (const SolveError& e) {
        throw CliError{3, std::string("solver failed at the first station: ") + e.what()};
    } catch (const std::exception& e) {
        throw CliError{2, e.what()};
    }
    for (const auto& s : rt.samples)
        log.info("station t=" + fmt17(s.t) + " residual=" + fmt17(s.residual) +
                 " iters=" + std::to_string(s.newton_iters));
    if (rt.truncated) log.info("truncated: " + rt.note);

    std::string body;
    if (format == "csv") {
        std::ostringstream ss;
        write_ray_csv(rt, ss);
        body = ss.str();
    } else {
        body = ray_json(rt).dump() + "\n";
    }
    emit(body, out_path, out);

    // deviation summary goes to stdout only when the data went to a file
    if (!out_path.empty() && !rt.samples.empty()) {
        const RaySample& first = rt.samples.front();
        const RaySample& last = rt.samples.back();
        double final_dev = *std::max_element(first.dev_re.begin(), first.dev_re.end());
        out << "summary: " << rt.samples.size() << " stations, t=" << fmt17(first.t) << " .. "
            << fmt17(last.t) << (rt.truncated ? " (truncated)" : "") << "\n";
        for (std::size_t i = 0; i < first.dev_re.size(); ++i)
            out << "  dev_re[" << i + 1 << "]: t=" << fmt17(first.t) << " -> "
                << fmt17(first.dev_re[i]) << ", t=" << fmt17(last.t) << " -> "
                << fmt17(last.dev_re[i]) << "\n";
        out << "  max dev_re at t=" << fmt17(first.t) << ": " << fmt17(final_dev)
            << (final_dev < tol ? " (within " : " (exceeds ") << fmt17(tol) << ")\n";
    }
    return 0;
}

int cmd_line(const Marking& m, const std::string& coords_spec, const std::string& schedule_spec,
             const std::string& out_path, std::ostream& out) {
    auto schedule = parse_schedule(schedule_spec);
    auto entries = parse_rational_list(coords_spec);
    auto [q, p] = deinterleave(entries);
    if (static_cast<int>(q.size()) != m.decomposition.xi())
        throw CliError{2, "coordinate length does not match complexity"};
    for (const auto& qi : q)
        if (qi <= 0) throw CliError{2, "line requires q_i > 0 for all i"};
    AsymptoticLine L{q, p};

    std::ostringstream ss;
    ss << "t";
    for (std::size_t i = 1; i <= q.size(); ++i) ss << ",re_tau_" << i << ",im_tau_" << i;
    ss << "\n";
    for (double t : schedule) {
        auto w = line_point(L, t);
        ss << fmt17(t);
        for (const auto& z : w) ss << ',' << fmt17(z.real()) << ',' << fmt17(z.imag());
        ss << "\n";
    }
    emit(ss.str(), out_path, out);
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"holonomy trace polynomials and pleating rays on plumbed surfaces"};
    app.require_subcommand(1);

    std::string surface = "s11", coords, lam, word, schedule, out_path;
    std::string format = "csv";
    double tol = 0.1;

    auto add_surface = [&](CLI::App* c) {
        c->add_option("--surface", surface, "builtin id (s11, s04, s12) or decomposition JSON");
    };

    auto* v = app.add_subcommand("validate", "check coordinates against the twist conditions");
    add_surface(v);
    v->add_option("--coords", coords, "interleaved q_1,p_1,...")->required();

    auto* tp = app.add_subcommand("trace-poly", "print the trace polynomial of a word");
    add_surface(tp);
    tp->add_option("--word", word, "catalog name or word JSON path")->required();
    tp->add_option("--out", out_path, "write to file instead of stdout");

    auto* vt = app.add_subcommand("verify-top", "verify top-term structure of trace polynomials");
    add_surface(vt);
    vt->add_option("--word", word, "catalog name or word-list JSON path (default: full catalog)");
    vt->add_option("--out", out_path, "write to file instead of stdout");

    auto* ray = app.add_subcommand("ray", "trace a pleating ray down a schedule");
    add_surface(ray);
    ray->add_option("--lam", lam, "lamination coordinates q_1,p_1,...")->required();
    ray->add_option("--schedule", schedule, "strictly decreasing stations t_0,t_1,...")
        ->required();
    ray->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    ray->add_option("--out", out_path, "write to file instead of stdout");
    ray->add_option("--tol", tol, "deviation tolerance quoted in the summary");

    auto* ln = app.add_subcommand("line", "sample the asymptotic line of admissible coordinates");
    add_surface(ln);
    ln->add_option("--coords", coords, "interleaved q_1,p_1,... with q_i > 0")->required();
    ln->add_option("--schedule", schedule, "stations t_0,t_1,...")->required();
    ln->add_option("--out", out_path, "write to file instead of stdout");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e, out, err);
        return c == 0 ? 0 : 1;
    }

    Logger log{err, log_level()};
    try {
        Marking m = load_surface(surface);
        if (app.got_subcommand(v)) return cmd_validate(m, coords, out);
        if (app.got_subcommand(tp)) return cmd_trace_poly(m, word, out_path, out);
        if (app.got_subcommand(vt)) return cmd_verify_top(m, word, out_path, out, log);
        if (app.got_subcommand(ray))
            return cmd_ray(m, lam, schedule, format, out_path, tol, out, log);
        if (app.got_subcommand(ln)) return cmd_line(m, coords, schedule, out_path, out);
    } catch (const CliError& e) {
        err << "error: " << e.msg << "\n";
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace pleatray
