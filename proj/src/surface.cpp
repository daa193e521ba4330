#include "pleatray/surface.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pleatray {

std::string slot_name(Slot s) {
    switch (s) {
        case Slot::Zero: return "0";
        case Slot::One: return "1";
        case Slot::Inf: return "inf";
    }
    throw std::invalid_argument("bad slot");
}

Slot slot_from_name(const std::string& name) {
    if (name == "0") return Slot::Zero;
    if (name == "1") return Slot::One;
    if (name == "inf") return Slot::Inf;
    throw std::invalid_argument("bad slot label: " + name);
}

PantsDecomposition::PantsDecomposition(SurfaceSig sig, int pants, std::vector<Gluing> gluings,
                                       std::string id)
    : sig_(sig), pants_(pants), gluings_(std::move(gluings)), id_(std::move(id)) {
    if (sig_.xi() < 1) throw std::invalid_argument("surface admits no pants decomposition");
    if (pants_ != sig_.pants_count())
        throw std::invalid_argument("pants count does not match signature");
    if (static_cast<int>(gluings_.size()) != sig_.xi())
        throw std::invalid_argument("gluing count must equal complexity");
    std::set<std::pair<int, int>> used;
    for (const Gluing& g : gluings_) {
        for (const PantsEnd& e : {g.a, g.b}) {
            if (e.pants < 0 || e.pants >= pants_)
                throw std::invalid_argument("gluing references missing pants");
            if (!used.insert({e.pants, static_cast<int>(e.slot)}).second)
                throw std::invalid_argument("boundary slot used by two gluings");
        }
        if (g.a.pants == g.b.pants && g.a.slot == g.b.slot)
            throw std::invalid_argument("self-gluing must join distinct slots");
    }
    // free slots = boundary count
    if (3 * pants_ - 2 * sig_.xi() != sig_.boundary)
        throw std::invalid_argument("slot bookkeeping does not close up");
    // connectivity of the gluing graph
    std::vector<int> parent(pants_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) { while (parent[x] != x) x = parent[x] = parent[parent[x]]; return x; };
    for (const Gluing& g : gluings_) parent[find(g.a.pants)] = find(g.b.pants);
    for (int j = 0; j < pants_; ++j)
        if (find(j) != find(0)) throw std::invalid_argument("decomposition is disconnected");
}

std::vector<PantsEnd> PantsDecomposition::free_slots() const {
    std::vector<PantsEnd> out;
    for (int j = 0; j < pants_; ++j)
        for (Slot s : {Slot::Zero, Slot::One, Slot::Inf})
            if (curve_at(j, s) < 0) out.push_back({j, s});
    return out;
}

int PantsDecomposition::curve_at(int pants, Slot s) const {
    for (std::size_t i = 0; i < gluings_.size(); ++i) {
        const Gluing& g = gluings_[i];
        if ((g.a.pants == pants && g.a.slot == s) || (g.b.pants == pants && g.b.slot == s))
            return static_cast<int>(i);
    }
    return -1;
}

nlohmann::json PantsDecomposition::to_json() const {
    nlohmann::json j;
    j["genus"] = sig_.genus;
    j["boundary"] = sig_.boundary;
    nlohmann::json pants = nlohmann::json::array();
    for (int k = 0; k < pants_; ++k) pants.push_back(k);
    j["pants"] = pants;
    nlohmann::json gl = nlohmann::json::array();
    for (std::size_t i = 0; i < gluings_.size(); ++i) {
        const Gluing& g = gluings_[i];
        gl.push_back({{"curve", i},
                      {"ends",
                       {{g.a.pants, slot_name(g.a.slot)}, {g.b.pants, slot_name(g.b.slot)}}}});
    }
    j["gluings"] = gl;
    if (!id_.empty()) j["id"] = id_;
    return j;
}

PantsDecomposition PantsDecomposition::from_json(const nlohmann::json& j) {
    SurfaceSig sig{j.at("genus").get<int>(), j.at("boundary").get<int>()};
    int pants = static_cast<int>(j.at("pants").size());
    std::vector<Gluing> gluings(j.at("gluings").size(), Gluing{});
    for (const auto& g : j.at("gluings")) {
        int i = g.at("curve").get<int>();
        if (i < 0 || i >= static_cast<int>(gluings.size()))
            throw std::invalid_argument("gluing curve index out of range");
        const auto& ends = g.at("ends");
        if (ends.size() != 2) throw std::invalid_argument("gluing needs two ends");
        gluings[i] = Gluing{{ends[0][0].get<int>(), slot_from_name(ends[0][1].get<std::string>())},
                            {ends[1][0].get<int>(), slot_from_name(ends[1][1].get<std::string>())}};
    }
    std::string id = j.value("id", "");
    return PantsDecomposition(sig, pants, std::move(gluings), id);
}

PantsDecomposition PantsDecomposition::builtin(const std::string& id) {
    if (id == "s11")
        return PantsDecomposition(SurfaceSig{1, 1}, 1,
                                  {Gluing{{0, Slot::Inf}, {0, Slot::Zero}}}, "s11");
    if (id == "s04")
        return PantsDecomposition(SurfaceSig{0, 4}, 2,
                                  {Gluing{{0, Slot::Inf}, {1, Slot::Inf}}}, "s04");
    if (id == "s12")
        return PantsDecomposition(SurfaceSig{1, 2}, 2,
                                  {Gluing{{0, Slot::Inf}, {1, Slot::Zero}},
                                   Gluing{{1, Slot::Inf}, {0, Slot::Zero}}},
                                  "s12");
    throw std::invalid_argument("unknown builtin surface: " + id);
}

DehnReport validate_dt(const DTCoords& c, const PantsDecomposition& d) {
    int xi = d.xi();
    if (static_cast<int>(c.q.size()) != xi || static_cast<int>(c.p.size()) != xi)
        throw std::invalid_argument("coordinate length does not match complexity");
    DehnReport r;
    for (int i = 0; i < xi; ++i) {
        if (c.q[i] < 0) {
            r.ok = false;
            r.violations.push_back("q_" + std::to_string(i + 1) + " negative");
        } else if (c.q[i] == 0 && c.p[i] < 0) {
            r.ok = false;
            r.violations.push_back("condition (i) at index " + std::to_string(i + 1) +
                                   ": q=0 requires p >= 0");
        }
    }
    // condition (ii): pants with all three slots on pants curves
    for (int j = 0; j < d.pants_count(); ++j) {
        long long sum = 0;
        bool all_glued = true;
        for (Slot s : {Slot::Zero, Slot::One, Slot::Inf}) {
            int i = d.curve_at(j, s);
            if (i < 0) { all_glued = false; break; }
            sum += c.q[i];
        }
        if (all_glued && sum % 2 != 0) {
            r.ok = false;
            r.violations.push_back("condition (ii) at pants " + std::to_string(j) +
                                   ": boundary intersection sum odd");
        }
    }
    return r;
}

long long thurston_pairing(const DTCoords& a, const DTCoords& b) {
    if (a.q.size() != b.q.size() || a.p.size() != b.p.size() || a.q.size() != a.p.size())
        throw std::invalid_argument("coordinate length mismatch");
    long long acc = 0;
    for (std::size_t i = 0; i < a.q.size(); ++i) acc += a.q[i] * b.p[i] - b.q[i] * a.p[i];
    return acc;
}

std::vector<double> star(const std::vector<double>& v) {
    if (v.size() % 2 != 0) throw std::invalid_argument("star needs an even-length vector");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
        out[i] = v[i + 1];
        out[i + 1] = -v[i];
    }
    return out;
}

void validate_lamination(const RationalLamination& eta) {
    if (eta.components.empty()) throw std::invalid_argument("empty lamination");
    std::size_t xi = eta.components.front().coords.q.size();
    for (const auto& c : eta.components) {
        if (c.weight <= 0) throw std::invalid_argument("lamination weights must be positive");
        if (c.coords.q.size() != xi || c.coords.p.size() != xi)
            throw std::invalid_argument("component coordinate length mismatch");
    }
    for (std::size_t a = 0; a < eta.components.size(); ++a)
        for (std::size_t b = a + 1; b < eta.components.size(); ++b)
            if (thurston_pairing(eta.components[a].coords, eta.components[b].coords) != 0)
                throw std::invalid_argument("components " + eta.components[a].name + ", " +
                                            eta.components[b].name +
                                            " have nonzero Thurston pairing");
}

std::vector<Rational> lamination_q(const RationalLamination& eta) {
    std::size_t xi = eta.components.empty() ? 0 : eta.components.front().coords.q.size();
    std::vector<Rational> out(xi, Rational(0));
    for (const auto& c : eta.components)
        for (std::size_t i = 0; i < xi; ++i) out[i] += c.weight * c.coords.q[i];
    return out;
}

std::vector<Rational> lamination_p(const RationalLamination& eta) {
    std::size_t xi = eta.components.empty() ? 0 : eta.components.front().coords.p.size();
    std::vector<Rational> out(xi, Rational(0));
    for (const auto& c : eta.components)
        for (std::size_t i = 0; i < xi; ++i) out[i] += c.weight * c.coords.p[i];
    return out;
}

bool is_admissible(const RationalLamination& eta) {
    auto q = lamination_q(eta);
    if (q.empty()) return false;
    for (const auto& qi : q)
        if (qi <= 0) return false;
    return true;
}

bool is_admissible(const RationalLamination& eta, const PantsDecomposition& d) {
    auto q = lamination_q(eta);
    if (static_cast<int>(q.size()) != d.xi())
        throw std::invalid_argument("lamination/decomposition complexity mismatch");
    return is_admissible(eta);
}

AsymptoticLine line_of(const RationalLamination& eta) {
    AsymptoticLine L{lamination_q(eta), lamination_p(eta)};
    for (const auto& qi : L.q)
        if (qi <= 0) throw std::invalid_argument("line requires q_i > 0 for all i");
    return L;
}

std::vector<std::complex<double>> line_point(const AsymptoticLine& L, double t) {
    if (t <= 0) throw std::invalid_argument("line parameter must be positive");
    if (L.q.empty() || L.q.size() != L.p.size())
        throw std::invalid_argument("malformed line coordinates");
    for (const auto& qi : L.q)
        if (qi <= 0) throw std::invalid_argument("line requires q_i > 0 for all i");
    std::vector<std::complex<double>> w(L.q.size());
    for (std::size_t i = 0; i < L.q.size(); ++i) {
        double re = (-L.p[i] / L.q[i]).convert_to<double>();
        double im = t * (L.q[0] / L.q[i]).convert_to<double>();
        w[i] = {re, im};
    }
    return w;
}

Marking Marking::builtin(const std::string& id) {
    Marking m;
    m.decomposition = PantsDecomposition::builtin(id);
    if (id == "s11" || id == "s04") m.dual_names = {"d1"};
    else m.dual_names = {"d1", "d2"};
    return m;
}

int rational_rank(const std::vector<std::vector<Rational>>& rows) {
    std::vector<std::vector<Rational>> m = rows;
    int rank = 0;
    std::size_t cols = m.empty() ? 0 : m.front().size();
    for (std::size_t col = 0; col < cols && rank < static_cast<int>(m.size()); ++col) {
        std::size_t pivot = m.size();
        for (std::size_t r = rank; r < m.size(); ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (static_cast<int>(r) == rank || m[r][col] == 0) continue;
            Rational f = m[r][col] / m[rank][col];
            for (std::size_t cc = col; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

namespace {

std::vector<Rational> interleaved(const DTCoords& c) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < c.q.size(); ++i) {
        v.push_back(Rational(c.q[i]));
        v.push_back(Rational(c.p[i]));
    }
    return v;
}

}  // namespace

LinkSystem complete_link_system(const std::vector<CurveRef>& components, const Marking& m) {
    const std::string& id = m.decomposition.id();
    if (id != "s11" && id != "s04" && id != "s12")
        throw std::invalid_argument("complete_link_system supports catalog surfaces only");
    if (components.empty()) throw std::invalid_argument("no components given");
    int xi = m.decomposition.xi();
    int k = static_cast<int>(components.size());
    if (k > xi) throw std::invalid_argument("more components than complexity");
    for (const auto& c : components) {
        if (static_cast<int>(c.coords.q.size()) != xi)
            throw std::invalid_argument("component coordinate length mismatch");
        bool all_zero = true;
        for (long long q : c.coords.q)
            if (q != 0) all_zero = false;
        if (all_zero)
            throw std::invalid_argument("component " + c.name +
                                        " is pants-parallel; not an admissible support");
    }
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (thurston_pairing(components[a].coords, components[b].coords) != 0)
                throw std::invalid_argument("components are not pairwise disjoint (pairing != 0)");

    LinkSystem ls;
    if (k < xi) {
        // catalog completion table; names resolve to words in the holonomy catalog
        if (id == "s12" && k == 1 && components[0].name == "g12") {
            ls.curves.push_back({"g12_push", DTCoords{{1, 1}, {2, -2}}});
            ls.duals.push_back({"d1", DTCoords{{2, 0}, {0, 0}}});
        } else {
            throw std::invalid_argument("no catalog completion for the given components on " + id);
        }
    }
    std::vector<std::vector<Rational>> rows;
    for (const auto& c : components) rows.push_back(interleaved(c.coords));
    for (const auto& c : ls.curves) rows.push_back(interleaved(c.coords));
    for (const auto& c : ls.duals) rows.push_back(interleaved(c.coords));
    ls.rank = rational_rank(rows);
    if (ls.rank != 2 * xi - k)
        throw std::invalid_argument("link system rank " + std::to_string(ls.rank) +
                                    " != " + std::to_string(2 * xi - k));
    return ls;
}

}  // namespace pleatray
