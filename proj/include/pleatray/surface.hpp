#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "pleatray/rational.hpp"

namespace pleatray {

struct SurfaceSig {
    int genus = 0;
    int boundary = 0;
    int xi() const { return 3 * genus - 3 + boundary; }
    int pants_count() const { return 2 * genus - 2 + boundary; }
    friend bool operator==(const SurfaceSig&, const SurfaceSig&) = default;
};

// Boundary slots of the standard triply punctured sphere: the punctures 0, 1, inf.
enum class Slot { Zero, One, Inf };

std::string slot_name(Slot s);
Slot slot_from_name(const std::string& name);

struct PantsEnd {
    int pants = 0;
    Slot slot = Slot::Zero;
    friend bool operator==(const PantsEnd&, const PantsEnd&) = default;
};

// Pants curve sigma_i = the identification of end a with end b.
struct Gluing {
    PantsEnd a, b;
};

class PantsDecomposition {
  public:
    PantsDecomposition(SurfaceSig sig, int pants, std::vector<Gluing> gluings,
                       std::string id = "");

    const SurfaceSig& sig() const { return sig_; }
    int xi() const { return static_cast<int>(gluings_.size()); }
    int pants_count() const { return pants_; }
    const std::vector<Gluing>& gluings() const { return gluings_; }
    const std::string& id() const { return id_; }

    std::vector<PantsEnd> free_slots() const;
    // curve index gluing (pants, slot), or -1 if the slot is free
    int curve_at(int pants, Slot s) const;

    nlohmann::json to_json() const;
    static PantsDecomposition from_json(const nlohmann::json& j);
    static PantsDecomposition builtin(const std::string& id);  // s11, s04, s12

  private:
    SurfaceSig sig_;
    int pants_;
    std::vector<Gluing> gluings_;
    std::string id_;
};

// Multicurve coordinates: q_i = intersection with sigma_i, p_i = twist.
struct DTCoords {
    std::vector<long long> q, p;
    friend bool operator==(const DTCoords&, const DTCoords&) = default;
};

struct DehnReport {
    bool ok = true;
    std::vector<std::string> violations;
};

DehnReport validate_dt(const DTCoords& c, const PantsDecomposition& d);

long long thurston_pairing(const DTCoords& a, const DTCoords& b);

// per pair (x_i, y_i) -> (y_i, -x_i); pairing(a,b) == dot(a, star(b))
std::vector<double> star(const std::vector<double>& v);

struct CurveRef {
    std::string name;
    DTCoords coords;
};

struct LaminationComponent {
    Rational weight;
    std::string name;  // catalog word name, resolved by the holonomy layer
    DTCoords coords;
};

struct RationalLamination {
    std::vector<LaminationComponent> components;
};

// weights positive, equal lengths, pairwise Thurston pairing zero (necessary
// disjointness check; full disjointness is the catalog's responsibility)
void validate_lamination(const RationalLamination& eta);

std::vector<Rational> lamination_q(const RationalLamination& eta);
std::vector<Rational> lamination_p(const RationalLamination& eta);

bool is_admissible(const RationalLamination& eta);
bool is_admissible(const RationalLamination& eta, const PantsDecomposition& d);

struct AsymptoticLine {
    std::vector<Rational> q, p;  // q_i > 0
};

AsymptoticLine line_of(const RationalLamination& eta);
// w_i(t) = -p_i/q_i + i t q_1/q_i
std::vector<std::complex<double>> line_point(const AsymptoticLine& L, double t);

struct Marking {
    PantsDecomposition decomposition = PantsDecomposition::builtin("s11");
    std::vector<std::string> dual_names;
    static Marking builtin(const std::string& id);
};

struct LinkSystem {
    std::vector<CurveRef> curves;  // completion curves gamma_{k+1..xi}
    std::vector<CurveRef> duals;   // their duals D_{k+1..xi}
    int rank = 0;                  // certified rank, must equal 2*xi - k
};

// Catalog-driven completion of a disjoint curve system to a full link system.
LinkSystem complete_link_system(const std::vector<CurveRef>& components, const Marking& m);

int rational_rank(const std::vector<std::vector<Rational>>& rows);

}  // namespace pleatray
