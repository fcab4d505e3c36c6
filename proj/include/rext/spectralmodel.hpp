#pragma once

// The rationally extended potential V^sigma, its bound states and its shape.

#include "rext/exactpoly.hpp"
#include "rext/hermite.hpp"
#include "rext/sequences.hpp"

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rext {

class RegularityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class SpectrumError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct RegularityCertificate {
    int ord0 = 0;
    int expected_ord0 = 0;  // l_N (l_N + 1) / 2
    int positive_roots = 0;
    std::optional<RootInterval> first_root;  // isolating interval of the first positive root
    bool passes() const { return positive_roots == 0 && ord0 == expected_ord0; }
};

RegularityCertificate certify_regular(std::span<const int> levels);
inline RegularityCertificate certify_regular(const GapSequence& sigma) {
    return certify_regular(std::span<const int>(sigma.elements()));
}

struct PotentialModel {
    GapSequence sigma;
    std::shared_ptr<const SeedSet> seed;
    RationalFunction v;   // x^2/4 - 2 (ln W)'' + |sigma|
    int singular_coeff;   // lim x^2 V(x)

    double operator()(double x) const { return v.eval(x); }
    long double operator()(long double x) const { return v.eval(x); }
};

// Throws RegularityError for sequences failing the exact certificate.
PotentialModel build_potential(const GapSequence& sigma);

struct Eigenstate {
    int n = 0;
    double energy = 0;
    long double amplitude = 0;  // sqrt(2) N_n p_n
    RationalFunction shape;     // W^{(n)} / W

    long double operator()(long double x) const;
    double operator()(double x) const { return static_cast<double>((*this)(static_cast<long double>(x))); }
};

// Normalized bound state at oscillator level n (odd, not in sigma).
Eigenstate eigenfunction(const PotentialModel& model, int n);
Eigenstate eigenfunction(const GapSequence& sigma, int n);

struct CriticalPoint {
    double x_lo, x_hi;  // isolating bracket of the stationary point
    enum class Kind { minimum, maximum, degenerate } kind;
};

struct WellReport {
    std::vector<CriticalPoint> points;
    int minima = 0;
    int maxima = 0;
    int degenerate = 0;
};

// Exact classification of the stationary points of V on (0, inf).
WellReport analyze_wells(const PotentialModel& model);
// Number of local minima; throws std::domain_error on degenerate critical points.
int count_wells(const PotentialModel& model);

struct UniformGrid {
    double x_min, x_max;
    int n_points;
    double at(int k) const { return n_points == 1 ? x_min : x_min + (x_max - x_min) * k / (n_points - 1); }
};

// max |H^sigma(L psi_n) - (n + 1/2) L psi_n| / max |L psi_n| over the grid,
// second derivative by central differences with step h.
double susy_check(const PotentialModel& model, int n, const UniformGrid& grid, double h = 1e-3);

}  // namespace rext
