#include "rext/magnetics.hpp"

#include <cmath>
#include <sstream>

namespace rext {

namespace {

const RationalFunction& rho() {
    static const RationalFunction r(UniPoly::x());
    return r;
}

// First sign change of p on (0, inf), or nullopt.
std::optional<RootInterval> first_positive_root(const UniPoly& p) {
    const auto roots = isolate_roots(p, 0, std::nullopt);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

}  // namespace

double FieldProfile::f2(double r) const {
    const long double sv = s.eval(static_cast<long double>(r));
    return static_cast<double>(to_long_double(Rational(l) + mu) + std::sqrt(sv) / 2);
}

double FieldProfile::bz(double r) const {
    const long double x = r;
    return static_cast<double>(bz_num.eval(x) / std::sqrt(s.eval(x)));
}

FieldProfile build_field(const PotentialModel& model, int l, const Rational& mu, const Rational& e_reg) {
    const RationalFunction shifted = model.v + RationalFunction(UniPoly::constant(e_reg));
    const RationalFunction s = RationalFunction(UniPoly::constant(1)) +
                               RationalFunction(UniPoly::monomial(Rational(4), 2)) * shifted;

    // S = num / den with den monic; both must keep one sign on (0, inf).
    for (const UniPoly* p : {&s.num(), &s.den()}) {
        if (auto root = first_positive_root(*p)) {
            std::ostringstream os;
            os << "magnetics: S = 1 + 4 rho^2 (V + E_reg) changes sign in (" << root->lo.get_d() << ", "
               << root->hi.get_d() << "]; raise E_reg";
            throw PositivityError(os.str(), root);
        }
    }
    if (s(Rational(1)) <= 0) throw PositivityError("magnetics: S is negative on (0, inf)", std::nullopt);

    FieldProfile f{model, l, mu, e_reg, s, {}};
    f.bz_num = RationalFunction(UniPoly::constant(2 * e_reg)) + model.v * RationalFunction(UniPoly::constant(2)) +
               rho() * model.v.derivative();
    if (f.bz_num.den()(Rational(0)) == 0)
        throw std::logic_error("magnetics: 1/rho^2 poles failed to cancel in the B_z numerator");
    return f;
}

RationalFunction forward_check(const FieldProfile& field) {
    return rf_simplify(field.s.num() - field.s.den(), field.s.den() * UniPoly::monomial(Rational(4), 2));
}

SingularityReport singularity_match_report(const PotentialModel& model, int l, const Rational& mu) {
    SingularityReport r;
    r.singular_coeff = model.singular_coeff;
    const int disc = 1 + 4 * r.singular_coeff;
    const int root = static_cast<int>(std::lround(std::sqrt(static_cast<double>(disc))));
    r.l_s_integer = root * root == disc;
    r.l_s = (std::sqrt(static_cast<double>(disc)) - 1) / 2;
    r.l_c = r.l_s + 0.5;
    r.l = l;
    r.mu = mu;
    const Rational lm = Rational(l) + mu;
    r.residual = lm * lm - Rational(1, 4) - Rational(r.singular_coeff);
    return r;
}

}  // namespace rext
