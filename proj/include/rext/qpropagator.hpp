#pragma once

// Closed-form propagator of a rationally extended singular oscillator:
// the oscillator kernel times a ratio of exponentially weighted Q-polynomial
// sums, reflected through the origin to enforce K(0, y; t) = 0.

#include "rext/exactpoly.hpp"
#include "rext/hermite.hpp"
#include "rext/sequences.hpp"

#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

namespace rext {

using Complex = std::complex<double>;

class TimeDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Time inside the single caustic cell 0 <= Re t < pi, Im t <= 0.
class ComplexTime {
public:
    static constexpr double kDefaultFloor = 1e-9;

    // Throws TimeDomainError outside the supported strip.
    explicit ComplexTime(Complex t, double floor = kDefaultFloor);
    ComplexTime(double re, double im, double floor = kDefaultFloor) : ComplexTime(Complex(re, im), floor) {}

    Complex value() const { return t_; }
    double re() const { return t_.real(); }
    double im() const { return t_.imag(); }

private:
    Complex t_;
};

// R_k = Q_k with the (2 pi)^{-|sigma|/2} factor dropped, k = 0..sigma.last()+1.
struct QTable {
    GapSequence sigma;
    std::vector<BiPoly> r;
    BiPoly sum;
    Rational c;  // sum = c W(x) W(y)
};

// Throws RegularityError (inadmissible sigma) or std::logic_error if the
// sum fails to factor.
QTable build_qtable(const GapSequence& sigma);

Complex k_osc(double x, double y, const ComplexTime& t);

class PropagatorModel {
public:
    explicit PropagatorModel(const GapSequence& sigma);
    PropagatorModel(QTable table, std::shared_ptr<const SeedSet> seed);

    const GapSequence& sigma() const { return table_.sigma; }
    const QTable& table() const { return table_; }
    int l_number() const { return l_number_; }

    // Sum_k R_k(x, y), and Sum_k R_k(x, y) e^{-ikt}.
    long double r_sum(double x, double y) const;
    std::complex<long double> r_weighted(double x, double y, const ComplexTime& t) const;
    long double r_value(int k, double x, double y) const;

    // K_osc * weighted / plain; singular where W(x) W(y) = 0.
    Complex k_formal(double x, double y, const ComplexTime& t) const;

    // Image-method propagator on the half line: x >= 0 (exact 0 at x = 0), y > 0.
    // Below kSeriesCut (and for moderate y / sin t) the image terms are combined analytically.
    Complex operator()(double x, double y, const ComplexTime& t) const;

    static constexpr double kSeriesCut = 0.25;
    Complex image_direct(double x, double y, const ComplexTime& t) const;
    Complex image_series(double x, double y, const ComplexTime& t) const;

private:
    void prepare();

    QTable table_;
    std::shared_ptr<const SeedSet> seed_;
    int l_number_ = 0;
    int image_sign_ = 1;  // tau with K = prefactor * (F(x) - tau F(-x)) / W(x)
    int lead_order_ = 1;  // F(x) - tau F(-x) = O(x^lead_order_)
    NumericPoly what_;
    std::vector<std::vector<std::vector<long double>>> dense_;
};

}  // namespace rext
