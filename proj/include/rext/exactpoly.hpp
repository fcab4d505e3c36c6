#pragma once

// Exact polynomial algebra over the rationals.
//
// UniPoly is dense (ascending coefficients, trailing zeros trimmed), BiPoly is
// sparse. Everything is a value type and immutable once built.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rext {

using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

// mpq -> long double with ~100 bits of intermediate precision.
long double to_long_double(const Rational& q);

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    UniPoly(std::initializer_list<Rational> coeffs);

    static UniPoly constant(const Rational& c);
    static UniPoly monomial(const Rational& c, int degree);
    static UniPoly x() { return monomial(1, 1); }

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int k) const;
    const Rational& leading() const;

    // Multiplicity of the root at x = 0.
    int order_at_zero() const;

    UniPoly derivative() const;
    UniPoly derivative(int times) const;

    // Returns p(x + a).
    UniPoly shifted(const Rational& a) const;
    // Returns p(-x).
    UniPoly reflected() const;
    // p(x) / x^k, requires x^k | p.
    UniPoly divide_by_x_power(int k) const;
    // p(x) with x -> x^2 removed, requires an even polynomial.
    UniPoly even_part_in_square() const;

    UniPoly monic() const;

    Rational operator()(const Rational& v) const;
    double eval(double v) const;
    long double eval(long double v) const;
    std::complex<double> eval(std::complex<double> v) const;

    // +1 / -1 / 0: sign of p just to the right of a (first nonzero Taylor term).
    int sign_right_of(const Rational& a) const;
    int sign_at(const Rational& a) const;

    // Parity: +1 even, -1 odd, 0 neither (zero polynomial counts as even).
    int parity() const;

    UniPoly& operator+=(const UniPoly& o);
    UniPoly& operator-=(const UniPoly& o);
    UniPoly& operator*=(const Rational& c);

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator-(const UniPoly& a);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(UniPoly a, const Rational& c) { return a *= c; }
    friend UniPoly operator*(const Rational& c, UniPoly a) { return a *= c; }
    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string(char var = 'x') const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct DivMod {
    UniPoly quotient;
    UniPoly remainder;
};

DivMod divmod(const UniPoly& a, const UniPoly& b);
// Exact division; throws std::domain_error when b does not divide a.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);
// Monic gcd (zero when both are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);
UniPoly pow(const UniPoly& p, int e);

// Determinant over Q[x] by fraction-free (Bareiss) elimination.
UniPoly determinant(std::vector<std::vector<UniPoly>> m);

// Wr[f_1..f_N](x): determinant of the matrix of derivatives f_j^{(i)}.
UniPoly wronskian(std::span<const UniPoly> polys);

// Upper bound for the modulus of every real root (Cauchy).
Rational root_bound(const UniPoly& p);

// Canonical Sturm chain; members rescaled by positive constants.
std::vector<UniPoly> sturm_chain(const UniPoly& p);

// Number of distinct real roots in (lo, hi]; hi = nullopt means +infinity.
int sturm_count(const UniPoly& p, const Rational& lo, const std::optional<Rational>& hi);
inline int sturm_positive_roots(const UniPoly& p) { return sturm_count(p, 0, std::nullopt); }

// Disjoint intervals (lo, hi], each holding exactly one distinct root of p in
// (lo, hi]; endpoints are never roots except possibly lo of the first one.
struct RootInterval {
    Rational lo;
    Rational hi;
};
std::vector<RootInterval> isolate_roots(const UniPoly& p, const Rational& lo,
                                        const std::optional<Rational>& hi);

// Long double copy of a polynomial's coefficients for fast Horner evaluation.
class NumericPoly {
public:
    NumericPoly() = default;
    explicit NumericPoly(const UniPoly& p);
    long double operator()(long double x) const;
    std::complex<long double> operator()(std::complex<long double> x) const;
    const std::vector<long double>& coeffs() const { return c_; }

private:
    std::vector<long double> c_;
};

class RationalFunction {
public:
    RationalFunction() : RationalFunction(UniPoly{}) {}
    RationalFunction(const UniPoly& p);  // NOLINT
    const UniPoly& num() const { return num_; }
    const UniPoly& den() const { return den_; }

    RationalFunction derivative() const;

    Rational operator()(const Rational& v) const;
    double eval(double v) const;
    long double eval(long double v) const;

    friend RationalFunction rf_simplify(const UniPoly& num, const UniPoly& den);
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    // True if deg(num) < deg(den).
    bool is_proper() const { return num_.degree() < den_.degree(); }

private:
    RationalFunction(UniPoly num, UniPoly den);
    UniPoly num_;
    UniPoly den_;
    NumericPoly fast_num_;
    NumericPoly fast_den_;
};

// Canonical quotient: common factors removed, denominator monic.
RationalFunction rf_simplify(const UniPoly& num, const UniPoly& den);

// Sparse bivariate polynomial; key (i, j) holds the coefficient of x^i y^j.
class BiPoly {
public:
    using Key = std::pair<int, int>;

    BiPoly() = default;
    static BiPoly separable(const UniPoly& px, const UniPoly& py);

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(int i, int j) const;
    int degree_x() const;
    int degree_y() const;

    BiPoly swapped() const;
    bool is_symmetric() const { return *this == swapped(); }
    // p(-x, y)
    BiPoly reflected_x() const;

    Rational operator()(const Rational& x, const Rational& y) const;

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    BiPoly& operator*=(const Rational& c);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(BiPoly a, const Rational& c) { return a *= c; }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

    // Exact division by px(x)*py(y); nullopt if not divisible.
    std::optional<BiPoly> divide_separable(const UniPoly& px, const UniPoly& py) const;

    // Dense row-major coefficient table [i][j] in long double.
    std::vector<std::vector<long double>> dense_long_double() const;

private:
    void add_term(const Key& k, const Rational& c);
    std::map<Key, Rational> terms_;
};

// JSON-friendly serialization: ascending "num/den" coefficient strings.
std::vector<std::string> serialize(const UniPoly& p);
UniPoly deserialize_poly(std::span<const std::string> coeffs);

}  // namespace rext
