#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "expd/measure.hpp"
#include "expd/parse.hpp"
#include "expd/verify.hpp"

using namespace expd;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYZ = {"x", "y", "z"};
const std::vector<std::string> X = {"x"};

PolyTuple T(std::initializer_list<std::string> entries, const std::vector<std::string>& vars) {
    std::vector<Polynomial> ps;
    for (const auto& e : entries) ps.push_back(parse_poly(e, vars));
    return PolyTuple(std::move(ps));
}

const Direction DX{0};
const Direction DY{1};
const Direction DZ{2};

Spot S(std::initializer_list<long> cs) {
    Spot s;
    for (long c : cs) s.coords.push_back(Rational(c));
    return s;
}

// Independent oracle: monomial-by-monomial closed-form box integration.
Rational oracle_integral(const Polynomial& p, const std::vector<IntegrationLimit>& limits) {
    Rational total(0);
    for (const auto& [m, c] : p.terms()) {
        Rational term = c;
        for (const auto& lim : limits) {
            std::uint32_t e = m.exps[lim.var];
            Rational hi_pow(1), lo_pow(1);
            for (std::uint32_t k = 0; k <= e; ++k) {
                hi_pow *= lim.hi;
                lo_pow *= lim.lo;
            }
            term *= (hi_pow - lo_pow) / Rational(e + 1);
        }
        total += term;
    }
    return total;
}

// Independent oracle: determinant by permutation expansion.
Rational perm_det(const std::vector<std::vector<Rational>>& mat) {
    int n = static_cast<int>(mat.size());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Rational acc(0);
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Rational prod(inversions % 2 == 0 ? 1 : -1);
        for (int i = 0; i < n; ++i) prod *= mat[i][perm[i]];
        acc += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

Spot oracle_cross(const std::vector<Spot>& vs) {
    int l = static_cast<int>(vs.front().coords.size());
    Spot out;
    out.coords.resize(l);
    for (int skip = 0; skip < l; ++skip) {
        std::vector<std::vector<Rational>> minor;
        for (const auto& v : vs) {
            std::vector<Rational> row;
            for (int c = 0; c < l; ++c)
                if (c != skip) row.push_back(v.coords[c]);
            minor.push_back(std::move(row));
        }
        int sign = ((l - 1 + skip) % 2 == 0) ? 1 : -1;
        out.coords[skip] = Rational(sign) * perm_det(minor);
    }
    return out;
}

} // namespace

TEST_CASE("area of the worked instance") {
    PolyTuple t = T({"x^2*y", "x*y^2"}, XY);
    BoxDomain unit{{{0, 0, 1}, {1, 0, 1}}};
    CHECK(area(t, {DX, DY}, unit).constant_value() == 2);

    BoxDomain degenerate{{{0, 0, 0}, {1, 0, 1}}};
    CHECK(area(t, {DX, DY}, degenerate).is_zero());

    PolyTuple one_var = T({"x^2", "x^3"}, X);
    CHECK(area(one_var, {DX}, BoxDomain{{{0, 0, 1}}}).constant_value() == 2);

    CHECK_THROWS_AS(area(t, {DX, DY}, BoxDomain{{{0, 0, 1}}}), std::invalid_argument);
}

TEST_CASE("area is linear") {
    GenConfig cfg;
    cfg.seed = 21;
    for (int i = 0; i < 50; ++i) {
        PolyTuple a = gen_random_tuple(cfg, 2 * i);
        PolyTuple b = gen_random_tuple(cfg, 2 * i + 1);
        if (a.size() != b.size() || a.arity() != b.arity()) continue;
        MixedDirection m = {Direction{i % a.arity()}};
        BoxDomain box{{{m[0].var, Rational(-1), Rational(2)}}};
        Rational om(3), mu(-1, 2);
        mu.canonicalize();
        CHECK(area(om * a + mu * b, m, box) ==
              area(a, m, box) * om + area(b, m, box) * mu);
    }
}

TEST_CASE("norm2_integral base cases") {
    BoxDomain unit{{{0, 0, 1}, {1, 0, 1}}};
    auto zero = norm2_integral(PolyTuple::null(2, 2), unit, 1e-9);
    CHECK(zero.value == 0.0);
    CHECK(zero.converged);

    PolyTuple c = T({"3/2", "0"}, XY);
    auto r = norm2_integral(c, unit, 1e-9);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(1.5).epsilon(1e-12));

    PolyTuple dep = T({"x*y", "y"}, XY);
    CHECK_THROWS_AS(norm2_integral(dep, BoxDomain{{{0, 0, 1}}}, 1e-9), std::invalid_argument);
}

TEST_CASE("norm2_integral matches exact integration on perfect squares") {
    GenConfig cfg;
    cfg.seed = 31;
    cfg.max_degree = 3;
    BoxDomain unit{{{0, 0, 1}, {1, 0, 1}}};
    for (int i = 0; i < 25; ++i) {
        PolyTuple t = gen_random_tuple(cfg, i);
        if (t.arity() != 2) continue;
        Polynomial q2 = t[0] * t[0];
        PolyTuple g({q2, Polynomial::zero(2)});
        auto r = norm2_integral(g, unit, 1e-9);
        double exact = integrate_box(q2, unit.limits).constant_value().get_d();
        CHECK(r.value == doctest::Approx(exact).epsilon(1e-9));
    }
}

TEST_CASE("norm2_integral on the worked instance against the closed form") {
    PolyTuple g = T({"2*x", "2*y"}, XY); // the mixed expansion of the worked tuple
    BoxDomain unit{{{0, 0, 1}, {1, 0, 1}}};
    auto r = norm2_integral(g, unit, 1e-9);
    CHECK(r.converged);
    double closed = 2.0 * (std::sqrt(2.0) + std::asinh(1.0)) / 3.0;
    CHECK(r.value == doctest::Approx(closed).epsilon(1e-9));
}

TEST_CASE("integral inequality") {
    PolyTuple t = T({"x^2*y", "x*y^2"}, XY);
    BoxDomain unit{{{0, 0, 1}, {1, 0, 1}}};
    auto rep = check_integral_inequality(t, {DX, DY}, unit, 1e-9);
    CHECK(rep.holds);
    CHECK(rep.rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    double closed = 2.0 * (std::sqrt(2.0) + std::asinh(1.0)) / 3.0;
    CHECK(rep.lhs == doctest::Approx(closed).epsilon(1e-6));

    auto zero = check_integral_inequality(PolyTuple::null(2, 2), {DX, DY}, unit, 1e-9);
    CHECK(zero.holds);
    CHECK(zero.margin == 0.0);

    // single nonnegative entry: lhs equals rhs within tolerance
    Polynomial h = parse_poly("x", X);
    PolyTuple single({h * h, Polynomial::zero(1)});
    PolyTuple t2 = contract(single, DX); // E_x(t2) == single
    auto rep2 = check_integral_inequality(t2, {DX}, BoxDomain{{{0, 0, 1}}}, 1e-9);
    CHECK(rep2.holds);
    CHECK(std::abs(rep2.margin) < 1e-9);
}

TEST_CASE("min gap corollary") {
    // g = (1/2, 0) constant: E_x(t) with t = (0, x/2)
    PolyTuple t = T({"0", "1/2*x"}, X);
    auto rep = check_min_gap(t, {DX}, BoxDomain{{{0, 0, 1}}});
    CHECK(rep.applicable);
    CHECK(rep.holds);
    CHECK(rep.lhs == doctest::Approx(1.0));
    CHECK(rep.rhs == doctest::Approx(0.5));

    // sum of squares exceeds 1 somewhere: inapplicable
    PolyTuple big = T({"0", "x^3"}, X); // E_x = (3x^2, 0), 9x^4 > 1 near 1
    auto rep2 = check_min_gap(big, {DX}, BoxDomain{{{0, 0, 1}}});
    CHECK_FALSE(rep2.applicable);

    // a leftover dependent variable is rejected up front
    PolyTuple two = T({"x*y", "x^2"}, XY);
    CHECK_THROWS_AS(check_min_gap(two, {DX}, BoxDomain{{{0, 0, 1}}}),
                    std::invalid_argument);

    // random small-coefficient instances hold with positive margin
    GenConfig cfg;
    cfg.seed = 99;
    cfg.arity = 2;
    cfg.max_degree = 2;
    int tested = 0;
    for (int i = 0; i < 40 && tested < 10; ++i) {
        PolyTuple raw = gen_random_tuple(cfg, i);
        if (raw.arity() != 2) continue;
        PolyTuple small = rational(1, 1000) * raw;
        BoxDomain unit{{{0, 0, 1}, {1, 0, 1}}};
        auto r = check_min_gap(small, {DX, DY}, unit);
        if (!r.applicable) continue;
        CHECK(r.holds);
        CHECK(r.margin > 0.0);
        ++tested;
    }
    CHECK(tested > 0);
}

TEST_CASE("cross product") {
    CHECK(cross_product({S({1, 0, 0}), S({0, 1, 0})}).coords ==
          std::vector<Rational>{0, 0, 1});
    CHECK(cross_product({S({2, 3})}).coords == std::vector<Rational>{-3, 2});
    CHECK(cross_product({S({1, 2, 3}), S({2, 4, 6})}).coords ==
          std::vector<Rational>{0, 0, 0});
    CHECK(cross_product({S({1, 0, 0, 0}), S({0, 1, 0, 0}), S({0, 0, 1, 0})}).coords ==
          std::vector<Rational>{0, 0, 0, 1});
    CHECK_THROWS_AS(cross_product({S({1, 0, 0})}), std::invalid_argument);

    // alternating and multilinear, against the permutation-determinant oracle
    Rng rng(404);
    for (int i = 0; i < 50; ++i) {
        std::vector<Spot> vs;
        for (int k = 0; k < 2; ++k) {
            Spot s;
            for (int c = 0; c < 3; ++c) s.coords.push_back(Rational(rng.range(-5, 5)));
            vs.push_back(s);
        }
        Spot got = cross_product(vs);
        Spot want = oracle_cross(vs);
        CHECK(got.coords == want.coords);

        Spot swapped = cross_product({vs[1], vs[0]});
        for (int c = 0; c < 3; ++c) CHECK(swapped.coords[c] == -got.coords[c]);
    }
}

TEST_CASE("volume") {
    // null mixed expansion
    PolyTuple consts = T({"1", "2"}, XYZ);
    CHECK(volume(consts, {DX, DY, DZ}, {S({0, 0, 0}), S({1, 0, 0}), S({0, 1, 0})}) == 0.0);

    // every pair of spots shares a coordinate: all boxes degenerate
    PolyTuple t = T({"x*y*z", "x^2*y"}, XYZ);
    CHECK(volume(t, {DX, DY, DZ}, {S({0, 0, 0}), S({0, 0, 1}), S({0, 1, 0})}) == 0.0);

    CHECK_THROWS_AS(volume(t, {DX, DY, DZ}, {S({0, 0, 0}), S({1, 1, 1})}),
                    std::invalid_argument);
    CHECK_THROWS_AS(volume(t, {DX, DY, DZ}, {S({0, 0, 0}), S({0, 0, 0}), S({1, 1, 1})}),
                    std::invalid_argument);
}

TEST_CASE("volume agrees with a term-by-term oracle") {
    PolyTuple t = T({"x^2*y*z", "x*y^2", "z^2"}, XYZ);
    MixedDirection m = {DX, DY, DZ};
    std::vector<Spot> spots = {S({0, 0, 0}), S({1, 2, 1}), S({2, 1, 3})};

    double got = volume(t, m, spots);

    // Independent evaluation of the defining sum.
    PolyTuple g = expand_mixed(t, m);
    auto dirs = distinct_directions(m);
    double want = 0.0;
    for (int s = 0; s < 3; ++s) {
        for (int u = s + 1; u < 3; ++u) {
            std::vector<IntegrationLimit> lims;
            for (int a = 0; a < 3; ++a)
                lims.push_back({dirs[a].var,
                                std::min(spots[s].coords[a], spots[u].coords[a]),
                                std::max(spots[s].coords[a], spots[u].coords[a])});
            Rational pair_area(0);
            for (int j = 0; j < g.size(); ++j) pair_area += oracle_integral(g[j], lims);
            for (int v = 0; v < 3; ++v) {
                if (v == s || v == u) continue;
                std::vector<Spot> rest;
                for (int k = 0; k < 3; ++k)
                    if (k != v) rest.push_back(spots[k]);
                Spot cp = oracle_cross(rest);
                Rational nsq(0);
                for (const auto& c : cp.coords) nsq += c * c;
                want += pair_area.get_d() * std::sqrt(nsq.get_d());
            }
        }
    }
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("average inequality") {
    PolyTuple t = T({"x^2*y*z", "x*y^2*z"}, XYZ);
    MixedDirection m = {DX, DY, DZ};

    // null tuple: holds trivially
    auto z = check_average_inequality(PolyTuple::null(2, 3), m,
                                      {S({0, 0, 0}), S({1, 1, 1}), S({2, 2, 2})}, 1e-9);
    CHECK(z.applicable);
    CHECK(z.holds);

    // negative entry integrals: inapplicable
    PolyTuple neg = Rational(-1) * t;
    auto r = check_average_inequality(neg, m, {S({0, 0, 0}), S({1, 1, 1}), S({2, 2, 2})},
                                      1e-9);
    CHECK_FALSE(r.applicable);

    // monotone entries: maxima sit at the upper corner, inequality holds
    auto ok = check_average_inequality(t, m, {S({0, 0, 0}), S({1, 1, 1}), S({2, 2, 2})},
                                       1e-9);
    CHECK(ok.applicable);
    CHECK(ok.approximate);
    CHECK(ok.holds);

    // the grid includes the corner, so the estimate matches the corner value
    PolyTuple g = expand_mixed(t, m);
    auto corner_rhs = [&](const Spot& lo, const Spot& hi) {
        std::vector<Rational> corner = {hi.coords[0], hi.coords[1], hi.coords[2]};
        double max_sq = 0.0;
        for (int k = 0; k < g.size(); ++k) {
            double mk = g[k].eval(corner).get_d();
            max_sq += mk * mk;
        }
        Rational vol(1);
        for (int a = 0; a < 3; ++a) vol *= hi.coords[a] - lo.coords[a];
        return vol.get_d() * std::sqrt(max_sq);
    };
    double expected_rhs = 2.0 * 1.0 * std::sqrt(2.0) *
                          (corner_rhs(S({0, 0, 0}), S({1, 1, 1})) +
                           corner_rhs(S({0, 0, 0}), S({2, 2, 2})) +
                           corner_rhs(S({1, 1, 1}), S({2, 2, 2})));
    CHECK(ok.rhs == doctest::Approx(expected_rhs).epsilon(1e-9));
}
