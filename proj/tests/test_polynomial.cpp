#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "pleatray/polynomial.hpp"

using namespace pleatray;
using std::complex;

namespace {

// Independent term-by-term evaluator: sums c * prod pow(x_i, e_i) using
// std::pow on complex, no shared code with Polynomial::eval.
complex<double> eval_oracle(const Polynomial& p, const std::vector<complex<double>>& x) {
    complex<double> acc{0.0, 0.0};
    for (const auto& [exp, c] : p.terms()) {
        complex<double> t = c.to_complex();
        for (std::size_t i = 0; i < exp.size(); ++i)
            t *= std::pow(x[i], complex<double>(double(exp[i]), 0.0));
        acc += t;
    }
    return acc;
}

// Independent product coefficient: double loop over term maps (convolution).
GaussianRational product_coeff_oracle(const Polynomial& a, const Polynomial& b,
                                      const Monomial& target) {
    GaussianRational acc;
    for (const auto& [ea, ca] : a.terms()) {
        for (const auto& [eb, cb] : b.terms()) {
            bool match = true;
            for (std::size_t i = 0; i < target.size(); ++i)
                if (ea[i] + eb[i] != target[i]) { match = false; break; }
            if (match) acc = acc + ca * cb;
        }
    }
    return acc;
}

std::mt19937 rng_fixed() { return std::mt19937{0xBEEFul}; }

Polynomial random_poly(std::mt19937& rng, int nvars, int max_terms, int max_exp) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> expd(0, max_exp);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    Polynomial p(nvars);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = expd(rng);
        GaussianRational c(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
        p = p + Polynomial::monomial(nvars, e, c);
    }
    return p;
}

}  // namespace

TEST_CASE("gaussian rational field ops") {
    GaussianRational i(Rational(0), Rational(1));
    CHECK((i * i) == GaussianRational(Rational(-1), Rational(0)));

    GaussianRational a(Rational(3, 2), Rational(-1, 3));
    GaussianRational b(Rational(-2, 5), Rational(7, 4));
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);          // exact division
    CHECK(a * b == b * a);
    CHECK(a.conj().conj() == a);
    CHECK((a * a.conj()).im == Rational(0));

    // i^4 cycle
    GaussianRational p = GaussianRational::one();
    for (int k = 0; k < 4; ++k) p = p * i;
    CHECK(p == GaussianRational::one());
}

TEST_CASE("gaussian rational parse/format roundtrip") {
    GaussianRational a(Rational(-7, 3), Rational(0));
    CHECK(format_rational(a.re) == "-7/3");
    CHECK(parse_rational("-7/3") == Rational(-7, 3));
    CHECK(parse_rational("4") == Rational(4));
    CHECK(parse_rational("6/4") == Rational(3, 2));  // normalized on parse
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("a/b"));
    CHECK_THROWS(parse_rational("1.5"));
}

TEST_CASE("polynomial basics: (t+1)(t-1) == t^2 - 1") {
    Polynomial t = Polynomial::variable(1, 0);
    Polynomial one = Polynomial::constant(1, GaussianRational::one());
    Polynomial prod = (t + one) * (t - one);
    Polynomial expect = t * t - one;
    CHECK(prod == expect);
    CHECK(prod.degree(0) == 2);
    CHECK(prod.total_degree() == 2);
    CHECK(prod.coeff(Monomial{2}) == GaussianRational::one());
    CHECK(prod.coeff(Monomial{1}) == GaussianRational());
    CHECK(prod.coeff(Monomial{0}) == -GaussianRational::one());
}

TEST_CASE("zero and constant polynomial degrees") {
    Polynomial z(2);
    CHECK(z.is_zero());
    CHECK(z.degree(0) == -1);
    CHECK(z.total_degree() == -1);
    Polynomial c = Polynomial::constant(2, GaussianRational(Rational(5), Rational(0)));
    CHECK(c.degree(0) == 0);
    CHECK(c.degree(1) == 0);
    CHECK(c.total_degree() == 0);
    CHECK_FALSE(c.is_zero());
    // adding inverse cancels terms entirely
    CHECK((c - c).is_zero());
    CHECK((c - c).terms().empty());
}

TEST_CASE("ring identities on random polynomials") {
    auto rng = rng_fixed();
    for (int trial = 0; trial < 50; ++trial) {
        Polynomial a = random_poly(rng, 2, 6, 4);
        Polynomial b = random_poly(rng, 2, 6, 4);
        Polynomial c = random_poly(rng, 2, 6, 4);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("product coefficients match convolution oracle") {
    auto rng = rng_fixed();
    std::uniform_int_distribution<int> expd(0, 8);
    for (int trial = 0; trial < 30; ++trial) {
        Polynomial a = random_poly(rng, 3, 5, 3);
        Polynomial b = random_poly(rng, 3, 5, 3);
        Polynomial ab = a * b;
        for (int probe = 0; probe < 10; ++probe) {
            Monomial m{expd(rng), expd(rng), expd(rng)};
            CHECK(ab.coeff(m) == product_coeff_oracle(a, b, m));
        }
    }
}

TEST_CASE("evaluation matches term-by-term oracle") {
    auto rng = rng_fixed();
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = random_poly(rng, 2, 8, 5);
        std::vector<complex<double>> x{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        complex<double> got = p.eval(x);
        complex<double> want = eval_oracle(p, x);
        CHECK(std::abs(got - want) <= 1e-10 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    auto rng = rng_fixed();
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    for (int trial = 0; trial < 25; ++trial) {
        Polynomial a = random_poly(rng, 2, 6, 4);
        Polynomial b = random_poly(rng, 2, 6, 4);
        std::vector<complex<double>> x{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        complex<double> lhs = (a * b).eval(x);
        complex<double> rhs = a.eval(x) * b.eval(x);
        CHECK(std::abs(lhs - rhs) <= 1e-9 * (1.0 + std::abs(rhs)));
        CHECK(std::abs((a + b).eval(x) - (a.eval(x) + b.eval(x))) <= 1e-9);
    }
}

TEST_CASE("substitute_shift: tau -> tau + c") {
    Polynomial t = Polynomial::variable(1, 0);
    Polynomial one = Polynomial::constant(1, GaussianRational::one());
    // (t)^2 under t -> t+1 gives t^2 + 2t + 1
    Polynomial sq = t * t;
    Polynomial shifted = sq.substitute_shift(0, GaussianRational::one());
    CHECK(shifted == sq + t + t + one);

    auto rng = rng_fixed();
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial p = random_poly(rng, 2, 6, 4);
        GaussianRational c(Rational(3, 2), Rational(-1, 2));
        Polynomial ps = p.substitute_shift(1, c);
        // degree in every variable is preserved by a shift
        CHECK(ps.degree(0) == p.degree(0));
        CHECK(ps.degree(1) == p.degree(1));
        // inverse shift restores the original exactly
        CHECK(ps.substitute_shift(1, -c) == p);
        // numeric consistency: ps(x) == p(x0, x1 + c)
        std::vector<complex<double>> x{{coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        std::vector<complex<double>> xc = x;
        xc[1] += c.to_complex();
        CHECK(std::abs(ps.eval(x) - p.eval(xc)) <= 1e-9 * (1.0 + std::abs(p.eval(xc))));
    }
}

TEST_CASE("json serialization: sorted, exact, roundtrip") {
    Polynomial t0 = Polynomial::variable(2, 0);
    Polynomial t1 = Polynomial::variable(2, 1);
    GaussianRational half_i(Rational(0), Rational(1, 2));
    Polynomial p = t1 * t1 + t0 * Polynomial::constant(2, half_i)
                 - Polynomial::constant(2, GaussianRational(Rational(2), Rational(0)));
    nlohmann::json j = p.to_json();
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    // lexicographic exponent order: (0,0) < (0,2) < (1,0)
    CHECK(j[0]["exp"] == nlohmann::json::array({0, 0}));
    CHECK(j[1]["exp"] == nlohmann::json::array({0, 2}));
    CHECK(j[2]["exp"] == nlohmann::json::array({1, 0}));
    CHECK(j[0]["re"] == "-2/1");
    CHECK(j[2]["im"] == "1/2");
    CHECK(Polynomial::from_json(2, j) == p);
    // byte-identical dumps across repeated serialization
    CHECK(p.to_json().dump() == j.dump());
}

TEST_CASE("mismatched variable counts are rejected") {
    Polynomial a(1), b(2);
    CHECK_THROWS(a + b);
    CHECK_THROWS(a * b);
    CHECK_THROWS(a.eval(std::vector<complex<double>>{}));
    CHECK_THROWS(a.substitute_shift(3, GaussianRational::one()));
}
