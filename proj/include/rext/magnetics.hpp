#pragma once

// Axially symmetric magnetic fields whose radial problem reproduces a given
// potential, with an Aharonov-Bohm flux of mantissa mu.

#include "rext/spectralmodel.hpp"

#include <optional>
#include <stdexcept>

namespace rext {

class PositivityError : public std::domain_error {
public:
    PositivityError(const std::string& what, std::optional<RootInterval> where)
        : std::domain_error(what), interval(std::move(where)) {}
    std::optional<RootInterval> interval;  // first sign change of S on (0, inf), if any
};

struct FieldProfile {
    PotentialModel model;
    int l = 0;
    Rational mu;
    Rational e_reg;
    RationalFunction s;       // 1 + 4 rho^2 (V + E_reg)
    RationalFunction bz_num;  // 2 E_reg + 2 V + rho V', 1/rho^2 poles cancelled

    double f2(double rho) const;  // (l + mu) + sqrt(S) / 2
    double bz(double rho) const;  // bz_num / sqrt(S); finite at rho = 0
};

// Throws PositivityError unless S > 0 on (0, inf), certified by Sturm counts.
FieldProfile build_field(const PotentialModel& model, int l, const Rational& mu = Rational(1, 2),
                         const Rational& e_reg = 0);

// ((f2 - l - mu)^2 - 1/4) / rho^2 on the positive branch, i.e. (S - 1) / (4 rho^2).
RationalFunction forward_check(const FieldProfile& field);

struct SingularityReport {
    int singular_coeff = 0;        // c in V ~ c / rho^2
    double l_s = 0;                // l_s (l_s + 1) = c
    bool l_s_integer = false;
    double l_c = 0;                // l_s + 1/2
    int l = 0;
    Rational mu;
    Rational residual;             // (l + mu)^2 - 1/4 - c
    bool matches() const { return residual == 0; }
};

SingularityReport singularity_match_report(const PotentialModel& model, int l, const Rational& mu = Rational(1, 2));

}  // namespace rext
