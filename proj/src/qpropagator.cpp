#include "rext/qpropagator.hpp"

#include "rext/spectralmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rext {

ComplexTime::ComplexTime(Complex t, double floor) : t_(t) {
    const double pi = std::numbers::pi;
    if (t.imag() > 0) throw TimeDomainError("qpropagator: Im t must be <= 0");
    if (t.real() < 0 || t.real() >= pi)
        throw TimeDomainError("qpropagator: Re t must lie in [0, pi); times across the caustic t = k pi are not supported");
    if (std::abs(std::sin(t)) <= floor)
        throw TimeDomainError("qpropagator: |sin t| below floor; t is at a caustic");
}

QTable build_qtable(const GapSequence& sigma) {
    const auto cert = certify_regular(sigma);
    if (!cert.passes())
        throw RegularityError("qpropagator: gap sequence {" + sigma.to_string() + "} is not admissible");
    const SeedSet seed(sigma);

    QTable t{sigma, {}, {}, 0};
    const int top = sigma.last() + 1;
    std::vector<BiPoly> hermite_products;  // He_j(x) He_j(y) / j!
    hermite_products.emplace_back();
    for (int j = 1; j <= top; ++j) {
        const Rational inv(Integer(1), factorial(j));
        hermite_products.push_back(BiPoly::separable(he(j), he(j)) * inv);
    }
    for (int k = 0; k <= top; ++k) {
        const auto nd = norm_data(sigma, k);
        BiPoly rk;
        if (nd.a != 0) {
            const UniPoly aug = seed.augmented(k);
            rk = BiPoly::separable(aug, aug) * nd.a;
        }
        for (int j = 1; j <= k; ++j) rk -= t.r[static_cast<std::size_t>(k - j)] * hermite_products[static_cast<std::size_t>(j)];
        t.sum += rk;
        t.r.push_back(std::move(rk));
    }

    const auto quotient = t.sum.divide_separable(seed.what(), seed.what());
    if (!quotient || quotient->degree_x() > 0 || quotient->degree_y() > 0 || quotient->is_zero())
        throw std::logic_error("qpropagator: Q-sum does not factor as C W(x) W(y)");
    t.c = quotient->coeff(0, 0);
    return t;
}

Complex k_osc(double x, double y, const ComplexTime& time) {
    const Complex t = time.value();
    const Complex i(0, 1);
    const Complex s = std::sin(t), c = std::cos(t);
    const Complex pref = 1.0 / std::sqrt(4.0 * std::numbers::pi * i * s);
    return pref * std::exp(i * ((x * x + y * y) * c - 2.0 * x * y) / (4.0 * s));
}

PropagatorModel::PropagatorModel(const GapSequence& sigma)
    : PropagatorModel(build_qtable(sigma), std::make_shared<const SeedSet>(sigma)) {}

PropagatorModel::PropagatorModel(QTable table, std::shared_ptr<const SeedSet> seed)
    : table_(std::move(table)), seed_(std::move(seed)) {
    l_number_ = table_.sigma.l_number();
    what_ = NumericPoly(seed_->what());
    image_sign_ = (l_number_ % 2 == 0 ? 1 : -1) * seed_->parity();
    lead_order_ = seed_->ord0() + std::max(l_number_, 0) + 1;
    prepare();
}

void PropagatorModel::prepare() {
    dense_.clear();
    for (const auto& rk : table_.r) dense_.push_back(rk.dense_long_double());

    // Floating tables must reproduce exact values at a few rational points;
    // dyadic so the points themselves carry no rounding.
    const Rational pts[3][2] = {{Rational(11, 8), Rational(13, 16)}, {Rational(35, 16), Rational(7, 16)}, {Rational(5, 16), Rational(23, 8)}};
    for (std::size_t k = 0; k < table_.r.size(); ++k) {
        for (const auto& p : pts) {
            const Rational exact = table_.r[k](p[0], p[1]);
            if (exact == 0) continue;
            const long double approx = r_value(static_cast<int>(k), p[0].get_d(), p[1].get_d());
            const long double ref = to_long_double(exact);
            if (std::fabs(approx - ref) > 1e-14L * std::fabs(ref)) {
                std::ostringstream os;
                os << "qpropagator: floating evaluation of R_" << k << " deviates from exact value";
                throw std::logic_error(os.str());
            }
        }
    }
}

long double PropagatorModel::r_value(int k, double x, double y) const {
    const auto& t = dense_[static_cast<std::size_t>(k)];
    const long double xl = x, yl = y;
    long double acc = 0;
    for (auto row = t.rbegin(); row != t.rend(); ++row) {
        long double inner = 0;
        for (auto c = row->rbegin(); c != row->rend(); ++c) inner = inner * yl + *c;
        acc = acc * xl + inner;
    }
    return acc;
}

long double PropagatorModel::r_sum(double x, double y) const {
    long double s = 0;
    for (std::size_t k = 0; k < dense_.size(); ++k) s += r_value(static_cast<int>(k), x, y);
    return s;
}

std::complex<long double> PropagatorModel::r_weighted(double x, double y, const ComplexTime& t) const {
    const std::complex<long double> step = std::exp(std::complex<long double>(0, -1) * std::complex<long double>(t.value()));
    std::complex<long double> phase = 1, acc = 0;
    for (std::size_t k = 0; k < dense_.size(); ++k) {
        acc += phase * r_value(static_cast<int>(k), x, y);
        phase *= step;
    }
    return acc;
}

Complex PropagatorModel::k_formal(double x, double y, const ComplexTime& t) const {
    const NumericPoly& w = what_;
    if (w(x) * w(y) == 0) throw std::domain_error("qpropagator: formal propagator is singular where W(x) W(y) = 0");
    const long double plain = r_sum(x, y);
    const std::complex<long double> ratio = r_weighted(x, y, t) / plain;
    return k_osc(x, y, t) * Complex(static_cast<double>(ratio.real()), static_cast<double>(ratio.imag()));
}

Complex PropagatorModel::operator()(double x, double y, const ComplexTime& t) const {
    if (y <= 0) throw std::domain_error("qpropagator: propagator requires y > 0");
    if (x < 0) throw std::domain_error("qpropagator: propagator is defined on the half line x >= 0");
    if (x == 0) return 0.0;
    // K is symmetric; put the smaller argument where the series expands.
    // The series needs |beta x| small; beyond that the image terms no longer cancel.
    const double lo = std::min(x, y), hi = std::max(x, y);
    const double beta = hi / (2 * std::abs(std::sin(t.value())));
    return lo < kSeriesCut && beta * lo <= 2 ? image_series(lo, hi, t) : image_direct(x, y, t);
}

Complex PropagatorModel::image_direct(double x, double y, const ComplexTime& t) const {
    const double sign = l_number_ % 2 == 0 ? 1.0 : -1.0;  // (-1)^{l_N}
    return k_formal(x, y, t) - sign * k_formal(-x, y, t);
}

// K_s(x) = A e^{i(x^2+y^2)c/4s} F(x) / W(x) with F(x) = e^{-i beta x} N(x), beta = y / 2s
// and N(x) = Sum_k R_k(x, y) e^{-ikt}. Since W(-x) = +-W(x) the image pair is
// A e^{...} (F(x) - tau F(-x)) / W(x): twice the odd or even part of F, whose
// Taylor coefficients below lead_order_ vanish identically (K ~ x^{l+1}).
Complex PropagatorModel::image_series(double x, double y, const ComplexTime& time) const {
    using C = std::complex<long double>;
    const C t(time.value());
    const C s = std::sin(t), c = std::cos(t), i(0, 1);
    const long double xl = x, yl = y;

    std::vector<C> n;  // N(x) = Sum_j n_j x^j
    const C step = std::exp(-i * t);
    C phase = 1;
    for (const auto& rk : dense_) {
        for (std::size_t j = 0; j < rk.size(); ++j) {
            long double inner = 0;
            for (auto a = rk[j].rbegin(); a != rk[j].rend(); ++a) inner = inner * yl + *a;
            if (n.size() <= j) n.resize(j + 1);
            n[j] += phase * inner;
        }
        phase *= step;
    }

    // Coefficients of e^{-i beta x}: e_m = (-i beta)^m / m!.
    const C mib = -i * yl / (2.0L * s);
    const int parity = image_sign_ == 1 ? 1 : 0;  // keep odd m when tau = +1
    C acc = 0;
    C xm = 1;
    for (int m = 0; m < lead_order_; ++m) xm *= xl;
    for (int m = lead_order_;; ++m) {
        if (m % 2 == parity) {
            C fm = 0, e = 1;  // e runs over (-i beta)^{m-j}/(m-j)!, j descending
            for (int j = m; j >= 0; --j) {
                if (j < static_cast<int>(n.size())) fm += n[static_cast<std::size_t>(j)] * e;
                e *= mib / static_cast<long double>(m - j + 1);
            }
            const C term = fm * xm;
            acc += term;
            if (m >= static_cast<int>(n.size()) && std::abs(term) <= 1e-21L * std::abs(acc)) break;
        }
        xm *= xl;
        if (m > 400) throw std::logic_error("qpropagator: image series failed to converge");
    }
    const C pref = 1.0L / std::sqrt(4.0L * std::numbers::pi_v<long double> * i * s);
    const C gauss = std::exp(i * (xl * xl + yl * yl) * c / (4.0L * s));
    const C k = pref * gauss * 2.0L * acc /
                  (what_(xl) * what_(yl) * to_long_double(table_.c));
    return Complex(static_cast<double>(k.real()), static_cast<double>(k.imag()));
}

}  // namespace rext
