#include "rext/spectralmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rext {

RegularityCertificate certify_regular(std::span<const int> levels) {
    const SeedSet seed(levels);
    RegularityCertificate c;
    c.ord0 = seed.ord0();
    const int l = seed.l_number();
    c.expected_ord0 = l * (l + 1) / 2;
    const UniPoly reduced = seed.what().divide_by_x_power(c.ord0);
    const auto roots = isolate_roots(reduced, 0, std::nullopt);
    c.positive_roots = static_cast<int>(roots.size());
    if (!roots.empty()) c.first_root = roots.front();
    return c;
}

PotentialModel build_potential(const GapSequence& sigma) {
    const auto cert = certify_regular(sigma);
    if (!cert.passes()) {
        std::ostringstream os;
        os << "spectralmodel: gap sequence {" << sigma.to_string() << "} fails the regularity certificate";
        if (cert.first_root)
            os << ": Wronskian root in (" << cert.first_root->lo.get_d() << ", " << cert.first_root->hi.get_d() << "]";
        else
            os << ": order at origin " << cert.ord0 << " != " << cert.expected_ord0;
        throw RegularityError(os.str());
    }

    auto seed = std::make_shared<const SeedSet>(sigma);
    const UniPoly& w = seed->what();
    const UniPoly w1 = w.derivative(), w2 = w1.derivative();
    const UniPoly w_sq = w * w;
    const UniPoly oscillator{Rational(sigma.size()), Rational(0), Rational(1, 4)};
    const UniPoly num = oscillator * w_sq - (w2 * w - w1 * w1) * Rational(2);
    RationalFunction v = rf_simplify(num, w_sq);

    const int od = v.den().order_at_zero();
    const int on = v.num().is_zero() ? od : v.num().order_at_zero();
    int singular = 0;
    if (od - on == 2) {
        const Rational c = v.num().coeff(on) / v.den().coeff(od);
        if (c.get_den() != 1) throw std::logic_error("non-integer centrifugal coefficient");
        singular = static_cast<int>(c.get_num().get_si());
    } else if (od - on > 2) {
        throw std::logic_error("potential singularity stronger than 1/x^2");
    }
    return PotentialModel{sigma, std::move(seed), std::move(v), singular};
}

long double Eigenstate::operator()(long double x) const {
    return amplitude * std::exp(-x * x / 4) * shape.eval(x);
}

Eigenstate eigenfunction(const PotentialModel& model, int n) {
    if (n < 0 || n % 2 == 0 || model.sigma.contains(n))
        throw SpectrumError("spectralmodel: level " + std::to_string(n) + " is not in the spectrum of {" +
                            model.sigma.to_string() + "}");
    const auto nd = norm_data(model.sigma, n);
    if (nd.nsq <= 0)
        throw SpectrumError("spectralmodel: non-positive normalization square at level " + std::to_string(n));
    Eigenstate e;
    e.n = n;
    e.energy = n + 0.5;
    // 2 N_n^2 p_n^2 = 2 nsq / (n! sqrt(2 pi))
    const long double ratio = to_long_double(Rational(nd.nsq / Rational(factorial(n))));
    e.amplitude = std::sqrt(2.0L * ratio / std::sqrt(2.0L * std::numbers::pi_v<long double>));
    e.shape = rf_simplify(model.seed->augmented(n), model.seed->what());
    return e;
}

Eigenstate eigenfunction(const GapSequence& sigma, int n) { return eigenfunction(build_potential(sigma), n); }

WellReport analyze_wells(const PotentialModel& model) {
    const auto& v = model.v;
    UniPoly p = v.num().derivative() * v.den() - v.num() * v.den().derivative();
    WellReport report;
    if (p.is_zero()) return report;

    // V is even, so p is odd: work in u = x^2 where p(x) = x q(x^2).
    bool squared = false;
    if (p.parity() == -1) {
        p = p.divide_by_x_power(1).even_part_in_square();
        squared = true;
    }
    const UniPoly multiple = gcd(p, p.derivative());
    const auto roots = isolate_roots(p, 0, std::nullopt);
    auto to_x = [&](const Rational& u) { return squared ? std::sqrt(u.get_d()) : u.get_d(); };

    for (const auto& iv : roots) {
        const int left = p.sign_right_of(iv.lo);
        const int right = p.sign_right_of(iv.hi);
        CriticalPoint cp{to_x(iv.lo), to_x(iv.hi), CriticalPoint::Kind::degenerate};
        const bool simple = multiple.degree() < 1 || sturm_count(multiple, iv.lo, iv.hi) == 0;
        if (simple && left < 0 && right > 0) cp.kind = CriticalPoint::Kind::minimum;
        if (simple && left > 0 && right < 0) cp.kind = CriticalPoint::Kind::maximum;
        switch (cp.kind) {
            case CriticalPoint::Kind::minimum: ++report.minima; break;
            case CriticalPoint::Kind::maximum: ++report.maxima; break;
            case CriticalPoint::Kind::degenerate: ++report.degenerate; break;
        }
        report.points.push_back(cp);
    }
    return report;
}

int count_wells(const PotentialModel& model) {
    const auto r = analyze_wells(model);
    if (r.degenerate > 0)
        throw std::domain_error("spectralmodel: " + std::to_string(r.degenerate) +
                                " degenerate critical point(s) of V; minima are not well defined");
    return r.minima;
}

double susy_check(const PotentialModel& model, int n, const UniformGrid& grid, double h) {
    if (grid.x_min - h <= 0) throw std::domain_error("spectralmodel: susy_check grid must stay inside (0, inf)");
    const Eigenstate psi = eigenfunction(model, n);
    const long double e = n + 0.5L;
    const long double hl = h;
    long double worst = 0, scale = 0;
    for (int k = 0; k < grid.n_points; ++k) {
        const long double x = grid.at(k);
        const long double f0 = psi(x), fp = psi(x + hl), fm = psi(x - hl);
        const long double second = (fp - 2 * f0 + fm) / (hl * hl);
        const long double r = -second + model(x) * f0 - e * f0;
        worst = std::max(worst, std::fabs(r));
        scale = std::max(scale, std::fabs(f0));
    }
    return static_cast<double>(worst / scale);
}

}  // namespace rext
