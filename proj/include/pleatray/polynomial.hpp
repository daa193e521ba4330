#pragma once

#include <complex>
#include <map>
#include <vector>

#include <json.hpp>

#include "pleatray/rational.hpp"

namespace pleatray {

// Exponent vector, one entry per variable. std::map over these iterates in
// lexicographic order, which fixes term order everywhere (serialization,
// printing, arithmetic) with no extra sorting.
using Monomial = std::vector<int>;

// Sparse multivariate polynomial over Q(i) in variables tau_1..tau_n.
// Invariant: no stored coefficient is zero; every key has size nvars().
class Polynomial {
  public:
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const GaussianRational& c);
    static Polynomial variable(int nvars, int index);
    static Polynomial monomial(int nvars, const Monomial& exp, const GaussianRational& c);

    int nvars() const { return nvars_; }
    const std::map<Monomial, GaussianRational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;

    GaussianRational coeff(const Monomial& exp) const;
    GaussianRational constant_term() const { return coeff(Monomial(nvars_, 0)); }
    int degree(int var) const;   // -1 for the zero polynomial
    int total_degree() const;    // -1 for the zero polynomial

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial scaled(const GaussianRational& c) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::complex<double> eval(const std::vector<std::complex<double>>& x) const;

    // tau_var -> tau_var + c, exact binomial expansion. Degrees are preserved.
    Polynomial substitute_shift(int var, const GaussianRational& c) const;

    nlohmann::json to_json() const;
    static Polynomial from_json(int nvars, const nlohmann::json& j);

    std::string str() const;  // human-readable, deterministic term order

  private:
    void add_term(const Monomial& exp, const GaussianRational& c);
    void check_same_vars(const Polynomial& other) const;

    int nvars_;
    std::map<Monomial, GaussianRational> terms_;
};

}  // namespace pleatray
