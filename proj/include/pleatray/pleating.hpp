#pragma once

#include <complex>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "pleatray/holonomy.hpp"
#include "pleatray/polynomial.hpp"
#include "pleatray/surface.hpp"

namespace pleatray {

// E_gamma(tau) = eta_1 ... eta_xi sum_i (q_i x_i + p_i) / eta_i with
// eta_i = y_i / ||y||. Requires Im tau_i > 0.
double e_function(const DTCoords& c, const std::vector<std::complex<double>>& tau);
double e_function(const RationalLamination& eta, const std::vector<std::complex<double>>& tau);

// u(tau) interleaves (x_i, 1) scaled so that E_gamma = <i(gamma), u>,
// i(gamma) = (q_1, p_1, ..., q_xi, p_xi).
std::vector<double> u_vector(const std::vector<std::complex<double>>& tau);

struct SolveError : std::runtime_error {
    std::string kind;  // no-convergence | singular-jacobian | ill-conditioned |
                       // left-upper-half-space | cusp
    SolveError(std::string k, const std::string& msg);
};

enum class SystemMode { ExactRay, PinnedImaginary };

// y_{index} = scale * t while tracing
struct Pin {
    int index = 0;
    Rational scale{1};
};

struct RealTraceSystem {
    PantsDecomposition decomposition;
    std::vector<PathWord> constraints;  // words whose traces are forced real
    std::vector<Polynomial> traces;     // compiled trace polynomials, same order
    std::vector<Pin> pins;
    SystemMode mode = SystemMode::ExactRay;
    RationalLamination lamination;
    AsymptoticLine line;
};

// Exact-ray mode (single component): the component plus its catalog completion
// curves and duals, y_1 pinned. Pinned-imaginary mode: components plus
// completion curves, every y_i pinned to t q_1 / q_i.
RealTraceSystem build_system(const RationalLamination& eta, const Marking& m, SystemMode mode);

struct RaySample {
    double t = 0;
    std::vector<std::complex<double>> tau;
    double residual = 0;        // max |Im tr| over the system
    int newton_iters = 0;
    double cusp_proximity = 0;  // min distance of any system trace to +-2
    std::vector<double> dev_re;  // |Re tau_i + p_i / q_i|
    std::vector<double> dev_im;  // |q_i Im tau_i / (q_1 t) - 1|
};

inline constexpr double kResidualTol = 1e-10;
inline constexpr double kCuspTol = 1e-6;
inline constexpr int kMaxNewtonIters = 50;

// Damped Newton on the free coordinates, pins applied to the seed first.
// Seed is (x_1, y_1, ..., x_xi, y_xi); free imaginary parts must be positive.
RaySample newton_solve(const RealTraceSystem& sys, double t, std::vector<double> seed);

struct RayTrace {
    RationalLamination lamination;
    AsymptoticLine line;
    SystemMode mode = SystemMode::ExactRay;
    std::vector<double> schedule;
    std::vector<RaySample> samples;
    bool truncated = false;
    std::string note;  // reason when truncated
};

// Continuation along a strictly decreasing schedule, seeded from the
// asymptotic line at the largest t. A failure at the first station is an
// error; later failures truncate the trace.
RayTrace trace_ray(const RationalLamination& eta, const Marking& m,
                   const std::vector<double>& schedule);

// |Im tr| / |tr| for the single support curve evaluated on the lamination's
// line at height t. Throws on zero trace.
double check_line_reality(const RationalLamination& eta, const Marking& m, double t);

// header: t,re_tau_1,im_tau_1,...,residual,cusp_proximity
void write_ray_csv(const RayTrace& r, std::ostream& os);
nlohmann::json ray_json(const RayTrace& r);

}  // namespace pleatray
