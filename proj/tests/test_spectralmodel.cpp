#include "doctest.h"

#include "rext/spectralmodel.hpp"

#include <cmath>

using namespace rext;

namespace {

UniPoly poly(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long a : c) v.emplace_back(a);
    return UniPoly(std::move(v));
}

RationalFunction rf(const UniPoly& p) { return RationalFunction(p); }
RationalFunction rf(const UniPoly& n, const UniPoly& d) { return rf_simplify(n, d); }

// x^2/4 + c/x^2 + k
RationalFunction sho(long c, long k) {
    return rf(poly({0, 0, 1}) * Rational(1, 4)) + rf(poly({c}), poly({0, 0, 1})) + rf(poly({k}));
}

}  // namespace

TEST_CASE("singular oscillator family") {
    for (int s = 0; s <= 4; ++s) {
        std::vector<int> lv;
        for (int k = 0; k <= s; ++k) lv.push_back(2 * k + 1);
        const auto model = build_potential(GapSequence::validate(lv));
        CHECK((model.v == sho((s + 1) * (s + 2), s + 1)));
        CHECK(model.singular_coeff == (s + 1) * (s + 2));
    }
    const auto m1 = build_potential(GapSequence::parse("1"));
    CHECK(m1(2.0) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("two- and three-well potentials match the closed displays") {
    const UniPoly d = poly({315, 0, 105, 0, -42, 0, 66, 0, -13, 0, 1});
    const RationalFunction v167 = sho(2, 3) + rf(poly({-16273, 0, -1798, 0, 8, 0, -26, 0, 5}) * Rational(4), d) -
                                  rf(poly({-636615, 0, -295680, 0, 101682, 0, -137040, 0, 12017}) * Rational(32), d * d);
    CHECK((build_potential(GapSequence::parse("1,6,7")).v == v167));

    const UniPoly d9 = poly({14175, 0, 4725, 0, -2835, 0, 6075, 0, -2355, 0, 423, 0, -33, 0, 1});
    const RationalFunction v189 =
        sho(2, 3) + rf(poly({-7200549, 0, -746064, 0, -46791, 0, -6828, 0, 909, 0, -132, 0, 7}) * Rational(4), d9) -
        rf(poly({-78704325, 0, -34615350, 0, 13526415, 0, -33010860, 0, 9811005, 0, -1255862, 0, 31305}) * Rational(5184),
           d9 * d9);
    CHECK((build_potential(GapSequence::parse("1,8,9")).v == v189));
}

TEST_CASE("regularity certificates") {
    const auto c167 = certify_regular(GapSequence::parse("1,6,7"));
    CHECK(c167.passes());
    CHECK(c167.ord0 == 1);
    const auto c13 = certify_regular(GapSequence::parse("1,3"));
    CHECK(c13.passes());
    CHECK(c13.ord0 == 3);
    const std::vector<int> bad{1, 4};
    const auto c14 = certify_regular(bad);
    CHECK_FALSE(c14.passes());
    CHECK(c14.positive_roots == 1);
    REQUIRE(c14.first_root.has_value());
    // Wr[He_1, He_4] = 3x^4 - 6x^2 - 3; its positive root is sqrt(1 + sqrt 2).
    const double r = std::sqrt(1 + std::sqrt(2.0));
    CHECK(c14.first_root->lo.get_d() < r);
    CHECK(r < c14.first_root->hi.get_d());
}

TEST_CASE("singular coefficient and proper remainder across the family") {
    for (const char* s : {"1", "1,3", "1,6,7", "1,8,9", "1,3,4", "2,3", "1,5,7", "1,3,6,7,10,11", "1,4,5"}) {
        const auto sigma = GapSequence::parse(s);
        const auto model = build_potential(sigma);
        const int l = sigma.l_number();
        CHECK(model.singular_coeff == l * (l + 1));
        const RationalFunction rest =
            model.v - rf(poly({0, 0, 1}) * Rational(1, 4)) - rf(poly({static_cast<long>(sigma.size())}));
        CHECK(rest.is_proper());
    }
}

TEST_CASE("eigenstates") {
    const auto m1 = build_potential(GapSequence::parse("1"));
    const auto psi3 = eigenfunction(m1, 3);
    CHECK(psi3.energy == 3.5);
    CHECK((psi3.shape == rf(poly({0, 0, 2}))));
    CHECK(psi3(0.0L) == 0.0L);
    CHECK_THROWS_AS(eigenfunction(m1, 1), SpectrumError);
    CHECK_THROWS_AS(eigenfunction(m1, 4), SpectrumError);
    CHECK_THROWS_AS(eigenfunction(GapSequence::parse("1,6,7"), 2), SpectrumError);

    // k-th state has k nodes on (0, inf).
    const auto m = build_potential(GapSequence::parse("1,6,7"));
    const auto levels = spectrum(m.sigma, 6).quanta;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const auto st = eigenfunction(m, levels[k]);
        const UniPoly num = st.shape.num().divide_by_x_power(st.shape.num().order_at_zero());
        CHECK(sturm_positive_roots(num) == static_cast<int>(k));
        CHECK(st.shape.num().parity() != 0);
    }
}

TEST_CASE("stationary points and wells") {
    CHECK(count_wells(build_potential(GapSequence::parse("1,4,5"))) == 1);
    const auto w167 = analyze_wells(build_potential(GapSequence::parse("1,6,7")));
    CHECK(w167.points.size() == 3);
    CHECK(w167.minima == 2);
    CHECK(w167.maxima == 1);
    CHECK(w167.degenerate == 0);
    // Stationary points located by an independent 40-digit scan.
    const double located[3] = {1.198, 1.926, 2.649};
    for (int k = 0; k < 3; ++k) {
        CHECK(w167.points[static_cast<std::size_t>(k)].x_lo < located[k] + 1e-3);
        CHECK(w167.points[static_cast<std::size_t>(k)].x_hi > located[k] - 1e-3);
    }
    const auto w189 = analyze_wells(build_potential(GapSequence::parse("1,8,9")));
    CHECK(w189.points.size() == 5);
    CHECK(w189.minima == 3);
    for (int m = 2; m <= 6; ++m) {
        const std::vector<int> lv{1, 2 * m, 2 * m + 1};
        CHECK(count_wells(build_potential(GapSequence::validate(lv))) == m - 1);
    }
    // Oscillator: one minimum.
    CHECK(count_wells(build_potential(GapSequence::parse("1"))) == 1);
}

TEST_CASE("supersymmetric intertwining") {
    const UniformGrid grid{0.5, 4.0, 3501};
    CHECK(susy_check(build_potential(GapSequence::parse("1")), 3, grid) <= 1e-5);
    CHECK(susy_check(build_potential(GapSequence::parse("1,6,7")), 5, grid) <= 1e-5);
    CHECK_THROWS_AS(susy_check(build_potential(GapSequence::parse("1")), 1, grid), SpectrumError);
    CHECK_THROWS_AS(susy_check(build_potential(GapSequence::parse("1")), 3, UniformGrid{0.0, 1.0, 10}),
                    std::domain_error);
}

TEST_CASE("structurally invalid sequences never reach the model") {
    // {2} fails structurally; regularity is the second gate.
    CHECK_THROWS_AS(GapSequence::parse("2"), SequenceError);
}
