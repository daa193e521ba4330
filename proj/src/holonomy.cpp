#include "pleatray/holonomy.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace pleatray {

namespace {

struct IntMat {
    long a, b, c, d;
};

IntMat gen_int(char gen, int exp) {
    if (gen == 'A') return exp > 0 ? IntMat{1, 2, 0, 1} : IntMat{1, -2, 0, 1};
    if (gen == 'B') return exp > 0 ? IntMat{1, 0, 2, 1} : IntMat{1, 0, -2, 1};
    throw std::invalid_argument("generator must be A or B");
}

IntMat omega_int(Slot s) {
    switch (s) {
        case Slot::Zero: return {1, -1, 1, 0};
        case Slot::One: return {0, -1, 1, -1};
        case Slot::Inf: return {1, 0, 0, 1};
    }
    throw std::invalid_argument("bad slot");
}

IntMat omega_inv_int(Slot s) {
    switch (s) {
        case Slot::Zero: return {0, 1, -1, 1};
        case Slot::One: return {-1, 1, -1, 0};
        case Slot::Inf: return {1, 0, 0, 1};
    }
    throw std::invalid_argument("bad slot");
}

// Scalar embeddings of Gaussian integers, per entry ring.
Polynomial gp(int nvars, long re, long im) {
    return Polynomial::constant(nvars, {Rational(re), Rational(im)});
}

std::complex<double> gc(long re, long im) {
    return {static_cast<double>(re), static_cast<double>(im)};
}

template <typename S, typename Embed>
Mat2<S> lift(const IntMat& m, Embed g) {
    return {g(m.a, 0), g(m.b, 0), g(m.c, 0), g(m.d, 0)};
}

// Omega_e^-1 (J^-1 T^-1) Omega_e' with J^-1 T_tau^-1 = [[i, -i tau],[0, -i]].
template <typename S, typename Embed>
Mat2<S> glue_impl(const PantsDecomposition& d, int curve, int dir, const S& tau_old, Embed g) {
    if (curve < 0 || curve >= d.xi()) throw std::invalid_argument("curve index out of range");
    if (dir != 1 && dir != -1) throw std::invalid_argument("direction must be +1 or -1");
    PantsEnd from = d.gluings()[curve].a;
    PantsEnd to = d.gluings()[curve].b;
    if (dir == -1) std::swap(from, to);
    Mat2<S> core{g(0, 1), g(0, -1) * tau_old, g(0, 0), g(0, -1)};
    return mat_mul(mat_mul(lift<S>(omega_inv_int(from.slot), g), core),
                   lift<S>(omega_int(to.slot), g));
}

struct WordWalk {
    int start_pants = 0;
    bool started = false;
};

// Shared validity walk: PantsGen must sit in the current pants, a crossing
// must leave from the pants the path is currently in, and the loop closes.
template <typename OnGen, typename OnCross>
void walk_word(const PathWord& w, const PantsDecomposition& d, OnGen on_gen, OnCross on_cross) {
    int current = -1;
    int start = -1;
    for (const Token& t : w.tokens) {
        if (std::holds_alternative<PantsGen>(t)) {
            const PantsGen& g = std::get<PantsGen>(t);
            if (g.pants < 0 || g.pants >= d.pants_count())
                throw std::invalid_argument("word " + w.name + ": pants index out of range");
            if (g.exp != 1 && g.exp != -1)
                throw std::invalid_argument("word " + w.name + ": exponent must be +1 or -1");
            if (current < 0) current = start = g.pants;
            if (g.pants != current)
                throw std::invalid_argument("word " + w.name +
                                            ": generator used outside the current pants");
            on_gen(g);
        } else {
            const CrossTok& c = std::get<CrossTok>(t);
            if (c.curve < 0 || c.curve >= d.xi())
                throw std::invalid_argument("word " + w.name + ": curve index out of range");
            if (c.dir != 1 && c.dir != -1)
                throw std::invalid_argument("word " + w.name + ": direction must be +1 or -1");
            PantsEnd from = d.gluings()[c.curve].a;
            PantsEnd to = d.gluings()[c.curve].b;
            if (c.dir == -1) std::swap(from, to);
            if (current < 0) current = start = from.pants;
            if (from.pants != current)
                throw std::invalid_argument("word " + w.name +
                                            ": crossing does not start in the current pants");
            on_cross(c);
            current = to.pants;
        }
    }
    if (current >= 0 && current != start)
        throw std::invalid_argument("word " + w.name + ": not a closed loop");
}

}  // namespace

std::pair<MatC, MatC> gamma_generators() {
    auto g = [](long re, long im) { return gc(re, im); };
    return {lift<std::complex<double>>(gen_int('A', 1), g),
            lift<std::complex<double>>(gen_int('B', 1), g)};
}

MatC omega(Slot eps) {
    auto g = [](long re, long im) { return gc(re, im); };
    return lift<std::complex<double>>(omega_int(eps), g);
}

MatC omega_inverse(Slot eps) {
    auto g = [](long re, long im) { return gc(re, im); };
    return lift<std::complex<double>>(omega_inv_int(eps), g);
}

MatPoly glue_matrix(const PantsDecomposition& d, int curve, int dir, const Polynomial& tau_old) {
    int n = tau_old.nvars();
    return glue_impl(d, curve, dir, tau_old, [n](long re, long im) { return gp(n, re, im); });
}

MatC glue_matrix(const PantsDecomposition& d, int curve, int dir, std::complex<double> tau_old) {
    return glue_impl(d, curve, dir, tau_old, [](long re, long im) { return gc(re, im); });
}

void validate_word(const PathWord& w, const PantsDecomposition& d) {
    walk_word(w, d, [](const PantsGen&) {}, [](const CrossTok&) {});
}

int cross_count(const PathWord& w, int curve) {
    int n = 0;
    for (const Token& t : w.tokens)
        if (std::holds_alternative<CrossTok>(t) && std::get<CrossTok>(t).curve == curve) ++n;
    return n;
}

MatPoly holonomy_symbolic(const PathWord& w, const PantsDecomposition& d) {
    int n = d.xi();
    auto g = [n](long re, long im) { return gp(n, re, im); };
    MatPoly acc = lift<Polynomial>(IntMat{1, 0, 0, 1}, g);
    walk_word(
        w, d,
        [&](const PantsGen& t) { acc = mat_mul(acc, lift<Polynomial>(gen_int(t.gen, t.exp), g)); },
        [&](const CrossTok& c) {
            Polynomial tau_old =
                Polynomial::variable(n, c.curve) + Polynomial::constant(n, GaussianRational::one());
            acc = mat_mul(acc, glue_impl(d, c.curve, c.dir, tau_old, g));
        });
    return acc;
}

MatC holonomy_numeric(const PathWord& w, const PantsDecomposition& d, const PlumbingParams& p) {
    if (static_cast<int>(p.tau.size()) != d.xi())
        throw std::invalid_argument("parameter count must equal the number of pants curves");
    for (const auto& t : p.tau)
        if (!(t.imag() > 0)) throw std::domain_error("plumbing parameters need Im tau > 0");
    auto g = [](long re, long im) { return gc(re, im); };
    MatC acc = lift<std::complex<double>>(IntMat{1, 0, 0, 1}, g);
    walk_word(
        w, d,
        [&](const PantsGen& t) {
            acc = mat_mul(acc, lift<std::complex<double>>(gen_int(t.gen, t.exp), g));
        },
        [&](const CrossTok& c) {
            acc = mat_mul(acc, glue_impl(d, c.curve, c.dir, p.tau[c.curve] + 1.0, g));
        });
    return acc;
}

std::complex<double> complex_length(std::complex<double> t) {
    if (t == std::complex<double>(2, 0) || t == std::complex<double>(-2, 0))
        throw std::domain_error("trace +-2 is parabolic; no complex length");
    const double pi = 3.14159265358979323846;
    std::complex<double> lam = 2.0 * std::acosh(t / 2.0);
    if (lam.imag() <= -pi || lam.imag() > pi) lam = 2.0 * std::acosh(-t / 2.0);
    if (!(lam.real() > 0)) throw std::domain_error("elliptic trace; no loxodromic length");
    return lam;
}

std::complex<double> kra_convert(std::complex<double> t_K) {
    if (t_K == std::complex<double>(0, 0)) throw std::domain_error("kra parameter must be nonzero");
    const double pi = 3.14159265358979323846;
    return std::complex<double>(0, -1.0 / pi) * std::log(t_K);
}

nlohmann::json PathWord::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    if (claimed) j["claimed"] = {{"q", claimed->q}, {"p", claimed->p}};
    nlohmann::json toks = nlohmann::json::array();
    for (const Token& t : tokens) {
        if (std::holds_alternative<PantsGen>(t)) {
            const PantsGen& g = std::get<PantsGen>(t);
            toks.push_back({{"gen", std::string(1, g.gen)}, {"pants", g.pants}, {"exp", g.exp}});
        } else {
            const CrossTok& c = std::get<CrossTok>(t);
            toks.push_back({{"cross", c.curve}, {"dir", c.dir}});
        }
    }
    j["tokens"] = toks;
    return j;
}

PathWord PathWord::from_json(const nlohmann::json& j) {
    PathWord w;
    w.name = j.at("name").get<std::string>();
    if (j.contains("claimed")) {
        DTCoords c;
        c.q = j.at("claimed").at("q").get<std::vector<long long>>();
        c.p = j.at("claimed").at("p").get<std::vector<long long>>();
        if (c.q.size() != c.p.size())
            throw std::invalid_argument("claimed q and p must have equal length");
        w.claimed = c;
    }
    for (const auto& t : j.at("tokens")) {
        if (t.contains("gen")) {
            std::string gs = t.at("gen").get<std::string>();
            if (gs != "A" && gs != "B") throw std::invalid_argument("generator must be A or B");
            int exp = t.at("exp").get<int>();
            if (exp != 1 && exp != -1) throw std::invalid_argument("exponent must be +1 or -1");
            w.tokens.push_back(PantsGen{t.at("pants").get<int>(), gs[0], exp});
        } else if (t.contains("cross")) {
            int dir = t.at("dir").get<int>();
            if (dir != 1 && dir != -1) throw std::invalid_argument("direction must be +1 or -1");
            w.tokens.push_back(CrossTok{t.at("cross").get<int>(), dir});
        } else {
            throw std::invalid_argument("token needs a gen or cross key");
        }
    }
    return w;
}

namespace {

PathWord make(const std::string& name, std::vector<long long> q, std::vector<long long> p,
              std::vector<Token> toks) {
    return PathWord{name, DTCoords{std::move(q), std::move(p)}, std::move(toks)};
}

Token GT(int pants, char gen, int exp) { return PantsGen{pants, gen, exp}; }
Token XT(int curve, int dir) { return CrossTok{curve, dir}; }

std::vector<PathWord> build_catalog(const std::string& id) {
    if (id == "s11") {
        return {
            make("sigma1", {0}, {2}, {GT(0, 'A', 1)}),
            make("d1", {1}, {0}, {XT(0, 1)}),
            make("d1_tw1", {1}, {2}, {GT(0, 'A', 1), XT(0, 1)}),
            make("d1_twm1", {1}, {-2}, {GT(0, 'A', -1), XT(0, 1)}),
            make("c22", {2}, {2}, {XT(0, 1), GT(0, 'A', 1), XT(0, 1)}),
            make("c42", {4}, {2}, {XT(0, 1), XT(0, 1), XT(0, 1), XT(0, 1), GT(0, 'A', 1)}),
        };
    }
    if (id == "s04") {
        std::vector<Token> base = {XT(0, 1), GT(1, 'B', 1), XT(0, -1), GT(0, 'A', 1),
                                   GT(0, 'B', -1)};
        std::vector<Token> tw = base, twm = base;
        tw.insert(tw.begin(), GT(0, 'A', 1));
        twm.insert(twm.begin(), GT(0, 'A', -1));
        return {
            make("sigma1", {0}, {2}, {GT(0, 'A', 1)}),
            make("d1", {2}, {0}, base),
            make("d1_tw1", {2}, {2}, tw),
            make("d1_twm1", {2}, {-2}, twm),
        };
    }
    if (id == "s12") {
        return {
            make("sigma1", {0, 0}, {2, 0}, {GT(0, 'A', 1)}),
            make("sigma2", {0, 0}, {0, 2}, {GT(0, 'B', 1)}),
            make("g12", {1, 1}, {0, 0}, {XT(0, 1), XT(1, 1)}),
            make("g12_tw1", {1, 1}, {2, 0}, {GT(0, 'A', 1), XT(0, 1), XT(1, 1)}),
            make("g12_tw2", {1, 1}, {0, 2}, {XT(0, 1), GT(1, 'A', 1), XT(1, 1)}),
            make("g12_push", {1, 1}, {2, -2},
                 {XT(0, 1), GT(1, 'B', 1), GT(1, 'A', -1), XT(1, 1)}),
            make("d1", {2, 0}, {0, 0},
                 {XT(0, 1), GT(1, 'A', 1), GT(1, 'B', -1), XT(0, -1), GT(0, 'A', 1),
                  GT(0, 'B', -1)}),
            make("d2", {0, 2}, {0, 0},
                 {XT(1, 1), GT(0, 'A', 1), GT(0, 'B', -1), XT(1, -1), GT(1, 'A', 1),
                  GT(1, 'B', -1)}),
        };
    }
    throw std::invalid_argument("no catalog for surface " + id);
}

std::string sig_id(const SurfaceSig& sig) {
    if (sig == SurfaceSig{1, 1}) return "s11";
    if (sig == SurfaceSig{0, 4}) return "s04";
    if (sig == SurfaceSig{1, 2}) return "s12";
    throw std::invalid_argument("unsupported surface signature");
}

}  // namespace

std::vector<PathWord> catalog(const SurfaceSig& sig) { return build_catalog(sig_id(sig)); }

const PathWord& catalog_word(const SurfaceSig& sig, const std::string& name) {
    static std::map<std::string, std::vector<PathWord>> cache;
    std::string id = sig_id(sig);
    auto it = cache.find(id);
    if (it == cache.end()) it = cache.emplace(id, build_catalog(id)).first;
    for (const PathWord& w : it->second)
        if (w.name == name) return w;
    throw std::invalid_argument("no catalog word named " + name + " on " + id);
}

}  // namespace pleatray
