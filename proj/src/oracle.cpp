#include "rext/oracle.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rext {

void Tolerances::set(const std::string& name, double value) {
    static const std::map<std::string, double Tolerances::*> fields{
        {"spectral_agreement", &Tolerances::spectral_agreement},
        {"boundary", &Tolerances::boundary},
        {"evolution", &Tolerances::evolution},
        {"evolution_t0", &Tolerances::evolution_t0},
        {"gram", &Tolerances::gram},
        {"schrodinger", &Tolerances::schrodinger},
        {"order_ratio_min", &Tolerances::order_ratio_min},
        {"order_ratio_max", &Tolerances::order_ratio_max},
        {"susy", &Tolerances::susy},
        {"bz_origin", &Tolerances::bz_origin},
        {"bz_far", &Tolerances::bz_far},
        {"quadrature", &Tolerances::quadrature},
        {"time_floor", &Tolerances::time_floor},
    };
    auto it = fields.find(name);
    if (it == fields.end()) throw std::invalid_argument("unknown tolerance '" + name + "'");
    this->*(it->second) = value;
}

std::map<std::string, double> Tolerances::as_map() const {
    return {{"spectral_agreement", spectral_agreement},
            {"boundary", boundary},
            {"evolution", evolution},
            {"evolution_t0", evolution_t0},
            {"gram", gram},
            {"schrodinger", schrodinger},
            {"order_ratio_min", order_ratio_min},
            {"order_ratio_max", order_ratio_max},
            {"susy", susy},
            {"bz_origin", bz_origin},
            {"bz_far", bz_far},
            {"quadrature", quadrature},
            {"time_floor", time_floor}};
}

// ---------------------------------------------------------------- quadrature

QuadratureRule::QuadratureRule(double x_cut, int panels) : x_cut_(x_cut), panels_(panels) {
    if (x_cut <= 0 || panels < 1) throw std::invalid_argument("oracle: quadrature needs x_cut > 0 and panels >= 1");
    using rule = boost::math::quadrature::gauss<long double, 20>;
    std::vector<long double> ref_nodes, ref_weights;
    for (std::size_t k = 0; k < rule::abscissa().size(); ++k) {
        const long double a = rule::abscissa()[k], w = rule::weights()[k];
        ref_nodes.push_back(a);
        ref_weights.push_back(w);
        if (a != 0) {
            ref_nodes.push_back(-a);
            ref_weights.push_back(w);
        }
    }
    const long double width = static_cast<long double>(x_cut) / panels;
    for (int p = 0; p < panels; ++p) {
        const long double mid = width * (p + 0.5L);
        for (std::size_t k = 0; k < ref_nodes.size(); ++k) {
            nodes_.push_back(static_cast<double>(mid + 0.5L * width * ref_nodes[k]));
            weights_.push_back(static_cast<double>(0.5L * width * ref_weights[k]));
        }
    }
}

QuadratureRule QuadratureRule::for_gaussian_weight(int degree, int panels) {
    const double target = std::log(1e-18);
    double x = std::max(1.0, std::sqrt(static_cast<double>(std::max(degree, 1))));
    while (degree * std::log(x) - x * x / 2 > target) x += 0.25;
    return QuadratureRule(x, panels);
}

GridSpec::GridSpec(double lo, double hi, int n) : x_min(lo), x_max(hi), n_points(n) {
    if (!(lo > 0)) throw std::domain_error("oracle: grid must exclude the singular point x = 0");
    if (hi < lo || n < 1) throw std::invalid_argument("oracle: malformed grid");
}

std::vector<double> GridSpec::points() const {
    std::vector<double> p;
    for (int k = 0; k < n_points; ++k) p.push_back(at(k));
    return p;
}

// ---------------------------------------------------------------- spectral sum

SpectralBasis::SpectralBasis(const GapSequence& sigma) : sigma_(sigma), seed_(sigma), what_(seed_.what()) {
    for (const auto& c : seed_.cofactors()) cofactors_.emplace_back(c);
}

const std::vector<int>& SpectralBasis::levels(int count) const {
    if (static_cast<int>(levels_.size()) < count) levels_ = spectrum(sigma_, count).quanta;
    return levels_;
}

double SpectralBasis::psi(int n, double xd) const {
    if (n < 0 || n % 2 == 0 || sigma_.contains(n))
        throw SpectrumError("oracle: level " + std::to_string(n) + " is not in the spectrum");
    const long double x = xd;
    long double nsq = 1;
    for (int s : sigma_.elements()) nsq /= static_cast<long double>(n - s);

    // g_m = He_m(x) e^{-x^2/4} / sqrt(m!)
    std::vector<long double> g(static_cast<std::size_t>(n) + 1);
    g[0] = std::exp(-x * x / 4);
    if (n >= 1) g[1] = x * g[0];
    for (int m = 1; m < n; ++m)
        g[static_cast<std::size_t>(m + 1)] =
            (x * g[static_cast<std::size_t>(m)] - std::sqrt(static_cast<long double>(m)) * g[static_cast<std::size_t>(m - 1)]) /
            std::sqrt(static_cast<long double>(m + 1));

    long double acc = 0, falling = 1;  // falling = sqrt(n! / (n - r)!)
    for (std::size_t r = 0; r < cofactors_.size() && static_cast<int>(r) <= n; ++r) {
        acc += cofactors_[r](x) * falling * g[static_cast<std::size_t>(n) - r];
        falling *= std::sqrt(static_cast<long double>(n - static_cast<int>(r)));
    }
    const long double pref =
        std::sqrt(2 * nsq) * std::pow(2 * std::numbers::pi_v<long double>, -0.25L);
    return static_cast<double>(pref * acc / what_(x));
}

SpectralSum spectral_propagator(const SpectralBasis& basis, double x, double y, Complex t, int n_terms) {
    if (!(t.imag() < 0))
        throw ConvergenceError("oracle: the spectral sum needs Im t < 0; for real t use the closed form");
    if (n_terms < 1) throw std::invalid_argument("oracle: n_terms must be positive");
    const auto& lv = basis.levels(n_terms);
    const Complex minus_i(0, -1);
    Complex acc = 0;
    double last = 0;
    for (int k = 0; k < n_terms; ++k) {
        const int n = lv[static_cast<std::size_t>(k)];
        const Complex term = basis.psi(n, x) * basis.psi(n, y) * std::exp(minus_i * (n + 0.5) * t);
        acc += term;
        last = std::abs(term);
    }
    return {acc, last};
}

SpectralSum spectral_propagator(const GapSequence& sigma, double x, double y, Complex t, int n_terms) {
    return spectral_propagator(SpectralBasis(sigma), x, y, t, n_terms);
}

// ---------------------------------------------------------------- residuals

double schrodinger_residual(const KernelFn& kernel, const PotentialFn& v, const GridSpec& grid, Complex t,
                            double h_x, double h_t, double floor) {
    if (grid.x_min - h_x <= 0) throw std::domain_error("oracle: residual stencil reaches x <= 0");
    const Complex i(0, 1);
    const ComplexTime t0(t), tp(t + h_t), tm(t - h_t);
    double worst = 0;
    for (double x : grid.points()) {
        for (double y : grid.points()) {
            const Complex k0 = kernel(x, y, t0);
            const Complex kxx = (kernel(x + h_x, y, t0) - 2.0 * k0 + kernel(x - h_x, y, t0)) / (h_x * h_x);
            const Complex kt = (kernel(x, y, tp) - kernel(x, y, tm)) / (2 * h_t);
            const Complex r = i * kt - (-kxx + v(x) * k0);
            worst = std::max(worst, std::abs(r) / std::max(std::abs(k0), floor));
        }
    }
    return worst;
}

double schrodinger_residual(const PropagatorModel& k, const PotentialModel& model, const GridSpec& grid, Complex t,
                            double h_x, double h_t) {
    return schrodinger_residual([&k](double x, double y, const ComplexTime& tt) { return k(x, y, tt); },
                                [&model](double x) { return model(x); }, grid, t, h_x, h_t);
}

std::vector<std::vector<double>> gram_matrix(const std::vector<Eigenstate>& states) {
    int degree = 2;
    for (const auto& s : states) degree = std::max(degree, 2 * s.n + 2);
    const auto rule = QuadratureRule::for_gaussian_weight(degree);
    const std::size_t n = states.size();
    std::vector<std::vector<double>> g(n, std::vector<double>(n));
    std::vector<std::vector<long double>> values(n);
    for (std::size_t a = 0; a < n; ++a)
        for (double x : rule.nodes()) values[a].push_back(states[a](static_cast<long double>(x)));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            long double acc = 0;
            for (std::size_t k = 0; k < rule.nodes().size(); ++k) acc += rule.weights()[k] * values[a][k] * values[b][k];
            g[a][b] = g[b][a] = static_cast<double>(acc);
        }
    return g;
}

std::vector<std::vector<double>> gram_matrix(const PotentialModel& model, int n_states) {
    if (n_states < 1 || n_states > 12) throw std::invalid_argument("oracle: gram_matrix supports 1..12 states");
    std::vector<Eigenstate> states;
    for (int n : spectrum(model.sigma, n_states).quanta) states.push_back(eigenfunction(model, n));
    return gram_matrix(states);
}

double evolve_eigenfunction(const PropagatorModel& k, const PotentialModel& model, int n, Complex t,
                            const GridSpec& grid, int panels) {
    const Eigenstate psi = eigenfunction(model, n);
    const ComplexTime time(t);
    const auto rule = QuadratureRule::for_gaussian_weight(2 * n + 4, panels);
    std::vector<double> psi_nodes;
    for (double y : rule.nodes()) psi_nodes.push_back(psi(y));
    const Complex phase = std::exp(Complex(0, -1) * psi.energy * t);
    double worst = 0, scale = 0;
    for (double x : grid.points()) {
        Complex acc = 0;
        for (std::size_t j = 0; j < rule.nodes().size(); ++j) acc += rule.weights()[j] * k(x, rule.nodes()[j], time) * psi_nodes[j];
        const double target = psi(x);
        worst = std::max(worst, std::abs(acc - phase * target));
        scale = std::max(scale, std::abs(target));
    }
    return worst / scale;
}

}  // namespace rext
