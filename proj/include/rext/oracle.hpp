#pragma once

// Independent numerical ground truth for the closed forms: half-line
// quadrature, the truncated spectral sum, finite-difference residuals.

#include "rext/qpropagator.hpp"
#include "rext/spectralmodel.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rext {

// Every tolerance the verification suites use, by name.
struct Tolerances {
    double spectral_agreement = 1e-6;  // closed form vs spectral sum, relative
    double boundary = 1e-5;            // |K(1e-6, y)| / local scale
    double evolution = 1e-6;           // eigenstate evolution deviation
    double evolution_t0 = 1e-3;        // same, t = -1e-3 i
    double gram = 1e-8;                // Gram matrix vs identity
    double schrodinger = 1e-4;         // relative PDE residual at h = 1e-3
    double order_ratio_min = 3.0;      // residual(h) / residual(h/2) bracket
    double order_ratio_max = 5.0;
    double susy = 1e-5;                // intertwining residual
    double bz_origin = 1e-12;          // B_z(0) vs closed value
    double bz_far = 1e-2;              // |B_z(50) - 1|
    double quadrature = 1e-12;         // Gaussian moment self-test
    double time_floor = 1e-9;          // |sin t| floor

    // Throws std::invalid_argument for unknown names.
    void set(const std::string& name, double value);
    std::map<std::string, double> as_map() const;
};

class ConvergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Composite Gauss-Legendre on (0, x_cut].
class QuadratureRule {
public:
    QuadratureRule(double x_cut, int panels);
    // x_cut chosen so x^degree e^{-x^2/2} < 1e-18 beyond it.
    static QuadratureRule for_gaussian_weight(int degree, int panels = 96);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double x_cut() const { return x_cut_; }
    int panels() const { return panels_; }

    template <class F>
    auto integrate(F&& f) const -> decltype(f(0.0)) {
        decltype(f(0.0)) acc{};
        for (std::size_t k = 0; k < nodes_.size(); ++k) acc += weights_[k] * f(nodes_[k]);
        return acc;
    }

private:
    std::vector<double> nodes_, weights_;
    double x_cut_;
    int panels_;
};

struct GridSpec {
    double x_min, x_max;
    int n_points;
    GridSpec(double lo, double hi, int n);
    double at(int k) const { return n_points == 1 ? x_min : x_min + (x_max - x_min) * k / (n_points - 1); }
    std::vector<double> points() const;
};

// Eigenfunctions evaluated by the cofactor expansion of Wr[He_sigma, He_n]
// with a normalized three-term recurrence; usable far beyond the exact
// Hermite table.
class SpectralBasis {
public:
    explicit SpectralBasis(const GapSequence& sigma);
    const std::vector<int>& levels(int count) const;
    double psi(int n, double x) const;

private:
    GapSequence sigma_;
    SeedSet seed_;
    std::vector<NumericPoly> cofactors_;
    NumericPoly what_;
    mutable std::vector<int> levels_;
};

struct SpectralSum {
    Complex value;
    double last_term;  // magnitude of the final term
};

SpectralSum spectral_propagator(const SpectralBasis& basis, double x, double y, Complex t, int n_terms);
SpectralSum spectral_propagator(const GapSequence& sigma, double x, double y, Complex t, int n_terms);

using KernelFn = std::function<Complex(double x, double y, const ComplexTime& t)>;
using PotentialFn = std::function<double(double)>;

// max over x, y in grid of |i dK/dt - (-d2K/dx2 + V K)| / max(|K|, floor).
double schrodinger_residual(const KernelFn& kernel, const PotentialFn& v, const GridSpec& grid, Complex t,
                            double h_x, double h_t, double floor = 1e-12);
double schrodinger_residual(const PropagatorModel& k, const PotentialModel& model, const GridSpec& grid, Complex t,
                            double h_x, double h_t);

std::vector<std::vector<double>> gram_matrix(const PotentialModel& model, int n_states);
std::vector<std::vector<double>> gram_matrix(const std::vector<Eigenstate>& states);

// max_x |int K(x,y;t) psi_n(y) dy - e^{-i E_n t} psi_n(x)| / max_x |psi_n(x)|.
double evolve_eigenfunction(const PropagatorModel& k, const PotentialModel& model, int n, Complex t,
                            const GridSpec& grid, int panels = 128);

}  // namespace rext
