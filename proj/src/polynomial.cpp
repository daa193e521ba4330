#include "pleatray/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace pleatray {

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    auto check_int = [](const std::string& t) {
        if (t.empty()) throw std::invalid_argument("empty rational component");
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) throw std::invalid_argument("sign without digits");
        for (std::size_t k = start; k < t.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(t[k])))
                throw std::invalid_argument("non-digit in rational: " + t);
    };
    check_int(num);
    check_int(den);
    boost::multiprecision::cpp_int n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(n, d);
}

std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string GaussianRational::str() const {
    std::ostringstream os;
    os << format_rational(re);
    if (im != 0) os << (im > 0 ? "+" : "") << format_rational(im) << "i";
    return os.str();
}

Polynomial Polynomial::constant(int nvars, const GaussianRational& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
    if (index < 0 || index >= nvars) throw std::invalid_argument("variable index out of range");
    Monomial e(nvars, 0);
    e[index] = 1;
    return monomial(nvars, e, GaussianRational::one());
}

Polynomial Polynomial::monomial(int nvars, const Monomial& exp, const GaussianRational& c) {
    if (static_cast<int>(exp.size()) != nvars)
        throw std::invalid_argument("exponent vector size mismatch");
    for (int e : exp)
        if (e < 0) throw std::invalid_argument("negative exponent");
    Polynomial p(nvars);
    p.add_term(exp, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == Monomial(nvars_, 0));
}

GaussianRational Polynomial::coeff(const Monomial& exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? GaussianRational() : it->second;
}

int Polynomial::degree(int var) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index out of range");
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

void Polynomial::add_term(const Monomial& exp, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(exp, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void Polynomial::check_same_vars(const Polynomial& other) const {
    if (nvars_ != other.nvars_)
        throw std::invalid_argument("polynomials over different variable counts");
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_same_vars(b);
    Polynomial r(a.nvars_);
    Monomial e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::scaled(const GaussianRational& c) const {
    Polynomial r(nvars_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

std::complex<double> Polynomial::eval(const std::vector<std::complex<double>>& x) const {
    if (static_cast<int>(x.size()) != nvars_)
        throw std::invalid_argument("evaluation point has wrong dimension");
    // power tables per variable, built by repeated multiplication
    std::vector<std::vector<std::complex<double>>> pows(nvars_);
    for (int i = 0; i < nvars_; ++i) {
        int d = degree(i);
        pows[i].resize(static_cast<std::size_t>(std::max(d, 0)) + 1);
        pows[i][0] = {1.0, 0.0};
        for (int k = 1; k <= d; ++k) pows[i][k] = pows[i][k - 1] * x[i];
    }
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (int i = 0; i < nvars_; ++i) t *= pows[i][e[i]];
        acc += t;
    }
    return acc;
}

Polynomial Polynomial::substitute_shift(int var, const GaussianRational& c) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, k] : terms_) {
        int n = e[var];
        // (tau + c)^n expanded exactly; binomials and c-powers built incrementally
        GaussianRational cpow = GaussianRational::one();
        Rational binom(1);
        // j = n down to 0: coeff = C(n, j) * c^(n-j), exponent j in var
        // iterate j from n to 0 so cpow accumulates c^(n-j)
        for (int j = n; j >= 0; --j) {
            Monomial em = e;
            em[var] = j;
            r.add_term(em, k * cpow * GaussianRational(binom, Rational(0)));
            if (j > 0) {
                binom = binom * j / (n - j + 1);
                cpow = cpow * c;
            }
        }
    }
    return r;
}

nlohmann::json Polynomial::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : terms_) {
        nlohmann::json term;
        term["exp"] = e;
        term["re"] = format_rational(c.re);
        term["im"] = format_rational(c.im);
        arr.push_back(std::move(term));
    }
    return arr;
}

Polynomial Polynomial::from_json(int nvars, const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial json must be an array");
    Polynomial p(nvars);
    for (const auto& term : j) {
        Monomial e = term.at("exp").get<Monomial>();
        if (static_cast<int>(e.size()) != nvars)
            throw std::invalid_argument("exponent vector size mismatch in json");
        GaussianRational c(parse_rational(term.at("re").get<std::string>()),
                           parse_rational(term.at("im").get<std::string>()));
        p.add_term(e, c);
    }
    return p;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (int i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            os << "*t" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

}  // namespace pleatray
