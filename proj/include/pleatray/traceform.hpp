#pragma once

#include <map>
#include <string>
#include <vector>

#include "pleatray/holonomy.hpp"

namespace pleatray {

// Signalled for constant traces: the class is parallel to a pants curve and
// carries no top-term data.
struct ParabolicTrace : std::domain_error {
    ParabolicTrace() : std::domain_error("constant trace: pants-parallel (parabolic) class") {}
};

// Leading data of a trace polynomial: per-variable degrees, the coefficient
// at the full multidegree, and the xi coefficients one step below it.
struct TopForm {
    std::vector<int> q;
    GaussianRational top_coeff;
    std::vector<GaussianRational> sub_coeffs;  // entry i lowers q_i by one; 0 when q_i = 0
};

TopForm extract_top(const Polynomial& p);

struct RecoveredDT {
    std::vector<long long> q;
    std::vector<Rational> p;         // sub_coeff_i / top_coeff; 0 where q_i = 0
    std::vector<bool> p_is_integer;  // integrality certificate per index
    bool top_unit_power_of_two = false;  // top_coeff = (+-1) i^q 2^m
    int log2_top = -1;                   // the m above, -1 if no such form
};

RecoveredDT recover_dt(const Polynomial& p);

// Number of maximal within-pants arcs whose entering and exiting slot is the
// same boundary slot. Fixes the power of two in the top coefficient.
int scc_count(const PathWord& w, const PantsDecomposition& d);

struct ClauseCheck {
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::string word;
    std::vector<long long> q;
    std::vector<Rational> p;
    int h = 0;
    bool parabolic = false;
    bool pass = false;
    std::map<std::string, ClauseCheck> clauses;

    nlohmann::json to_json() const;
};

// Exact checks against the expected shape of a simple-curve trace:
// (a) degrees equal crossing counts, (b) top coefficient is a unit times
// i^q 2^h with h from scc_count, (c) recovered twists are integers,
// (d) claimed coordinates match, (e) remainder degree bounds.
VerifyReport verify_top_terms(const PathWord& w, const PantsDecomposition& d);

}  // namespace pleatray
