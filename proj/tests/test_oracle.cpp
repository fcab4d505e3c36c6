#include "doctest.h"

#include "rext/oracle.hpp"

#include <cmath>
#include <numbers>

using namespace rext;

namespace {

const Tolerances tol;

double max_identity_error(const std::vector<std::vector<double>>& g) {
    double e = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) e = std::max(e, std::abs(g[i][j] - (i == j ? 1.0 : 0.0)));
    return e;
}

}  // namespace

TEST_CASE("quadrature reproduces Gaussian moments") {
    const auto rule = QuadratureRule::for_gaussian_weight(2);
    const double half = std::sqrt(std::numbers::pi / 2);
    const double m2 = rule.integrate([](double x) { return x * x * std::exp(-x * x / 2); });
    CHECK(std::abs(m2 - half) <= tol.quadrature * half);
    const auto wide = QuadratureRule::for_gaussian_weight(8);
    const double m8 = wide.integrate([](double x) { return std::pow(x, 8) * std::exp(-x * x / 2); });
    CHECK(std::abs(m8 - 105 * half) <= tol.quadrature * 105 * half);
    CHECK(wide.x_cut() > rule.x_cut());
    CHECK_THROWS_AS(QuadratureRule(0.0, 4), std::invalid_argument);
}

TEST_CASE("grids exclude the origin") {
    CHECK_THROWS_AS(GridSpec(0.0, 1.0, 5), std::domain_error);
    CHECK_THROWS_AS(GridSpec(-1.0, 1.0, 5), std::domain_error);
    const GridSpec g(0.5, 4.0, 8);
    CHECK(g.points().front() == 0.5);
    CHECK(g.points().back() == 4.0);
}

TEST_CASE("tolerance record") {
    Tolerances t;
    t.set("gram", 1e-6);
    CHECK(t.gram == 1e-6);
    CHECK(t.as_map().at("gram") == 1e-6);
    CHECK(t.as_map().size() == 13);
    CHECK_THROWS_AS(t.set("nonsense", 1.0), std::invalid_argument);
}

TEST_CASE("recurrence eigenfunctions agree with the exact-shape route") {
    for (const char* s : {"1", "1,6,7", "1,3,6,7,10,11"}) {
        const auto sigma = GapSequence::parse(s);
        const SpectralBasis basis(sigma);
        const auto model = build_potential(sigma);
        for (int n : spectrum(sigma, 6).quanta) {
            const auto e = eigenfunction(model, n);
            for (double x : {0.3, 1.0, 2.5, 5.0}) CHECK(std::abs(basis.psi(n, x) - e(x)) <= 1e-14 * std::abs(e(x)));
        }
        CHECK_THROWS_AS(basis.psi(2, 1.0), SpectrumError);
        CHECK_THROWS_AS(basis.psi(sigma.elements().front(), 1.0), SpectrumError);
    }
}

TEST_CASE("spectral sum") {
    const auto sigma = GapSequence::parse("1");
    const SpectralBasis basis(sigma);
    const Complex t(0.0, -0.5);
    CHECK_THROWS_AS(spectral_propagator(basis, 1, 1, Complex(0.5, 0.0), 10), ConvergenceError);
    CHECK_THROWS_AS(spectral_propagator(basis, 1, 1, t, 0), std::invalid_argument);

    const auto one = spectral_propagator(basis, 0.7, 1.3, t, 1);
    const Complex single = basis.psi(3, 0.7) * basis.psi(3, 1.3) * std::exp(Complex(0, -1) * 3.5 * t);
    CHECK(std::abs(one.value - single) <= 1e-16 * std::abs(single));

    // Tail envelope: log of the last term falls with slope -1 per level (E step 2, Im t = -1/2).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int n = 10; n <= 60; ++n) {
        const double l = std::log(spectral_propagator(basis, 1, 1, t, n).last_term);
        sx += n;
        sy += l;
        sxx += n * n;
        sxy += n * l;
        ++count;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("closed form agrees with the spectral sum") {
    const ComplexTime t(0.6, -0.25);
    for (const char* s : {"1", "1,6,7"}) {
        const auto sigma = GapSequence::parse(s);
        const PropagatorModel k(sigma);
        const SpectralBasis basis(sigma);
        double previous = 1e300;
        for (int terms : {10, 20, 40, 100}) {
            double worst = 0;
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    const double x = 0.4 + 0.65 * i, y = 0.4 + 0.65 * j;
                    const Complex a = k(x, y, t);
                    worst = std::max(worst, std::abs(a - spectral_propagator(basis, x, y, t.value(), terms).value) / std::abs(a));
                }
            CHECK(worst < previous);
            previous = worst;
        }
        CHECK(previous <= tol.spectral_agreement);
    }
    // Near the wall the series path must agree too.
    const auto sigma = GapSequence::parse("1,3");
    const PropagatorModel k(sigma);
    const SpectralBasis basis(sigma);
    for (double x : {0.05, 0.2})
        for (double y : {0.1, 1.0}) {
            const Complex a = k(x, y, t), b = spectral_propagator(basis, x, y, t.value(), 100).value;
            CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
        }
}

TEST_CASE("Schrodinger residual") {
    const Complex t(0.7, -0.2);
    const auto control = [](double x, double y, const ComplexTime& tt) { return k_osc(x, y, tt); };
    const auto quarter = [](double x) { return x * x / 4; };
    CHECK(schrodinger_residual(control, quarter, GridSpec(0.5, 4.0, 8), t, 1e-3, 1e-3) <= tol.schrodinger);

    for (const char* s : {"1", "1,6,7"}) {
        const auto sigma = GapSequence::parse(s);
        const PropagatorModel k(sigma);
        const auto model = build_potential(sigma);
        const GridSpec inner(0.5, 3.0, 8);
        const double r1 = schrodinger_residual(k, model, inner, t, 1e-3, 1e-3);
        const double r2 = schrodinger_residual(k, model, inner, t, 5e-4, 5e-4);
        CHECK(r1 <= tol.schrodinger);
        CHECK(r1 / r2 >= tol.order_ratio_min);
        CHECK(r1 / r2 <= tol.order_ratio_max);
        // On the wider grid the O(h^2) term dominates at h = 1e-3; halving h is enough.
        const GridSpec wide(0.5, 4.0, 8);
        CHECK(schrodinger_residual(k, model, wide, t, 5e-4, 5e-4) <= tol.schrodinger);
        // The wrong potential is detected.
        CHECK(schrodinger_residual([&k](double x, double y, const ComplexTime& tt) { return k(x, y, tt); }, quarter,
                                   inner, t, 1e-3, 1e-3) > 1e-2);
    }
    CHECK_THROWS_AS(schrodinger_residual(control, quarter, GridSpec(1e-4, 1.0, 3), t, 1e-3, 1e-3), std::domain_error);
}

TEST_CASE("orthonormality") {
    CHECK(max_identity_error(gram_matrix(build_potential(GapSequence::parse("1")), 4)) <= tol.gram);
    const auto m = build_potential(GapSequence::parse("1,6,7"));
    CHECK(max_identity_error(gram_matrix(m, 6)) <= tol.gram);

    // Negative control: a rescaled state is not normalized.
    auto states = std::vector<Eigenstate>{eigenfunction(m, 3)};
    states[0].amplitude *= 1.1L;
    CHECK(std::abs(gram_matrix(states)[0][0] - 1.21) < 1e-10);
}

TEST_CASE("eigenfunction evolution") {
    const GridSpec grid(0.5, 4.0, 8);
    for (const char* s : {"1", "1,6,7"}) {
        const auto sigma = GapSequence::parse(s);
        const PropagatorModel k(sigma);
        const auto model = build_potential(sigma);
        for (int n : spectrum(sigma, 3).quanta) {
            CHECK(evolve_eigenfunction(k, model, n, Complex(0.7, -0.2), grid) <= tol.evolution);
            CHECK(evolve_eigenfunction(k, model, n, Complex(0.0, -1e-3), grid) <= tol.evolution_t0);
        }
    }
}

TEST_CASE("oracle operations are deterministic") {
    const auto sigma = GapSequence::parse("1,6,7");
    const SpectralBasis a(sigma), b(sigma);
    const Complex t(0.6, -0.25);
    CHECK(spectral_propagator(a, 1.1, 2.3, t, 50).value == spectral_propagator(b, 1.1, 2.3, t, 50).value);
    const auto m = build_potential(sigma);
    CHECK(gram_matrix(m, 3) == gram_matrix(m, 3));
}
