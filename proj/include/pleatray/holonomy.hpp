#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pleatray/polynomial.hpp"
#include "pleatray/surface.hpp"

namespace pleatray {

// SL(2) lift of a holonomy element. Entries are either trace polynomials'
// coefficient ring (symbolic) or complex doubles (numeric evaluation).
template <typename S>
struct Mat2 {
    S a, b, c, d;
};

using MatPoly = Mat2<Polynomial>;
using MatC = Mat2<std::complex<double>>;

template <typename S>
Mat2<S> mat_mul(const Mat2<S>& x, const Mat2<S>& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

template <typename S>
S det(const Mat2<S>& m) {
    return m.a * m.d - m.b * m.c;
}

template <typename S>
S trace(const Mat2<S>& m) {
    return m.a + m.d;
}

// Word alphabet: generators of the triply punctured sphere group inside one
// pants, and crossings of pants curves between (possibly equal) pants.
struct PantsGen {
    int pants = 0;
    char gen = 'A';  // 'A' fixes inf, 'B' fixes 0
    int exp = 1;     // +1 or -1
};

struct CrossTok {
    int curve = 0;
    int dir = 1;  // +1 traverses the gluing a->b, -1 the reverse
};

using Token = std::variant<PantsGen, CrossTok>;

struct PathWord {
    std::string name;
    std::optional<DTCoords> claimed;
    std::vector<Token> tokens;

    nlohmann::json to_json() const;
    static PathWord from_json(const nlohmann::json& j);
};

// New-convention plumbing parameters, one per pants curve. Im tau_i > 0.
struct PlumbingParams {
    std::vector<std::complex<double>> tau;
};

std::pair<MatC, MatC> gamma_generators();
MatC omega(Slot eps);
MatC omega_inverse(Slot eps);

// Crossing matrix Omega_e^-1 J^-1 T_tau^-1 Omega_e' for pants curve i.
// tau is the OLD plumbing parameter; callers in the new convention pass nu+1.
MatPoly glue_matrix(const PantsDecomposition& d, int curve, int dir, const Polynomial& tau_old);
MatC glue_matrix(const PantsDecomposition& d, int curve, int dir, std::complex<double> tau_old);

// Pants continuity along the token stream plus cyclic closure.
void validate_word(const PathWord& w, const PantsDecomposition& d);
int cross_count(const PathWord& w, int curve);

// Ordered product of token matrices, left to right. Symbolic entries are
// polynomials in the new parameters nu_1..nu_xi (old = nu + 1 substituted
// exactly); numeric entries evaluate the same product at given parameters.
MatPoly holonomy_symbolic(const PathWord& w, const PantsDecomposition& d);
MatC holonomy_numeric(const PathWord& w, const PantsDecomposition& d, const PlumbingParams& p);

// lambda with Re > 0, Im in (-pi, pi], solving 2 cosh(lambda/2) = +-t.
// Throws on t = +-2 (parabolic) and on purely rotational (elliptic) traces.
std::complex<double> complex_length(std::complex<double> t);

// tau = -(i/pi) log t_K, principal branch.
std::complex<double> kra_convert(std::complex<double> t_K);

// Named curves with claimed Dehn-Thurston coordinates for the supported
// surfaces. Claims are certified downstream by the top-terms verifier.
std::vector<PathWord> catalog(const SurfaceSig& sig);
const PathWord& catalog_word(const SurfaceSig& sig, const std::string& name);

}  // namespace pleatray
