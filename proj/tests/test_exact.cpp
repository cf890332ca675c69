#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "gvb/exact.hpp"

using namespace gvb;

namespace {

MultiPoly P(const std::string& s) { return parse_poly(s); }

MultiPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int max_deg, int terms) {
    std::uniform_int_distribution<int> coef(-4, 4), deg(0, max_deg);
    MultiPoly p(vars);
    for (int t = 0; t < terms; ++t) {
        Exponents e(vars.size());
        for (auto& x : e) x = deg(rng);
        p.add_term(e, coef(rng));
    }
    return p;
}

// Roots by brute force over p/q with |p| <= 30, 1 <= q <= 12.
std::vector<Rational> brute_roots(const MultiPoly& f) {
    std::set<Rational> out;
    std::string v = f.vars().empty() ? "x1" : f.vars()[0];
    for (int q = 1; q <= 12; ++q)
        for (int p = -30; p <= 30; ++p)
            if (f.eval({{v, frac(p, q)}}) == 0) out.insert(frac(p, q));
    return {out.begin(), out.end()};
}

}  // namespace

TEST_CASE("rational canonical form") {
    Rational q = frac(6, -4);
    CHECK(q.get_num() == -3);
    CHECK(q.get_den() == 2);
    CHECK(parse_rational("10/-4") == frac(-5, 2));
    CHECK(to_string(frac(-5, 2)) == "-5/2");
    CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
}

TEST_CASE("gcd examples") {
    MultiPoly a = P("x1^2+8*x1+12"), b = P("x1+2");
    unify(a, b);
    MultiPoly g = poly_gcd(a, b);
    CHECK(g == P("x1+2"));
    // brute-force factorization oracle
    CHECK(brute_roots(P("x1^2+8*x1+12")) == std::vector<Rational>{-6, -2});

    MultiPoly p = P("-2*x1^2+4"), z(p.vars());
    CHECK(poly_gcd(p, z) == P("x1^2-2"));

    MultiPoly x = P("x1"), y = P("x2");
    unify(x, y);
    CHECK(poly_gcd(x, y).is_one());

    MultiPoly u = P("x1"), w = P("x2");
    CHECK_THROWS_AS(poly_gcd(u, w), UsageError);
}

TEST_CASE("gcd property on random polynomials") {
    std::mt19937 rng(7);
    std::vector<std::string> vars{"x1", "x2"};
    for (int it = 0; it < 40; ++it) {
        MultiPoly a = random_poly(rng, vars, 2, 3), b = random_poly(rng, vars, 2, 3), c = random_poly(rng, vars, 2, 2);
        if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
        MultiPoly lhs = poly_gcd(a * c, b * c);
        MultiPoly rhs = (poly_gcd(a, b) * c).primitive();
        CHECK(lhs == rhs);
        CHECK(poly_exact_div(a * c, c) == a);
    }
}

TEST_CASE("univariate rational roots match brute force") {
    for (const char* s : {"x1^2+8*x1+12", "x1^2+x1", "6*x1^3-5*x1^2-2*x1+1", "4*x1^2+4*x1+1", "x1^2+1"}) {
        MultiPoly f = P(s);
        CHECK(rational_roots(f) == brute_roots(f));
    }
}

TEST_CASE("evaluation") {
    CHECK(P("x1^2+8*x1+12").eval({{"x1", -2}}) == 0);
    RF r(P("x1"), P("x1"));
    CHECK(r.eval({{"x1", 5}}) == 1);
    RF p1 = parse_rf("1/12*x1^2+2/3*x1+1");
    CHECK(p1.eval({{"x1", 0}}) == 1);
    RF pole = parse_rf("1/(x1+2)");
    CHECK_THROWS_AS(pole.eval({{"x1", -2}}), PoleError);
}

TEST_CASE("evaluation is a ring homomorphism") {
    std::mt19937 rng(11);
    std::vector<std::string> vars{"x1", "x2", "x3"};
    std::map<std::string, Rational> pt{{"x1", frac(3, 2)}, {"x2", -2}, {"x3", frac(1, 3)}};
    for (int it = 0; it < 30; ++it) {
        RF f(random_poly(rng, vars, 2, 3), random_poly(rng, vars, 1, 2) + MultiPoly(Rational(7)));
        RF g(random_poly(rng, vars, 2, 3), MultiPoly(Rational(3)));
        try {
            Rational fv = f.eval(pt), gv = g.eval(pt);
            CHECK((f + g).eval(pt) == fv + gv);
            CHECK((f * g).eval(pt) == fv * gv);
        } catch (const PoleError&) {
        }
    }
}

TEST_CASE("canonical form is idempotent") {
    RF f = parse_rf("(x1^2-1)/(2*x1+2)");
    CHECK(f == parse_rf("(x1-1)/2"));
    RF g(f.num(), f.den());
    CHECK(g.num() == f.num());
    CHECK(g.den() == f.den());
    RF h = parse_rf("(x1+1)/(-x1-x2)");
    CHECK(h.den().leading_coeff() > 0);
}

TEST_CASE("polynomial printing") {
    MultiPoly f = P("1/12*x1^2+2/3*x1+1");
    CHECK(f.str() == "1/12*x1^2+2/3*x1+1");
    CHECK(P(f.str()) == f);
    CHECK(P("1/12*x1^2+2/3*x1+1").str(Style::Latex) == "\\frac{1}{12}x_{1}^{2}+\\frac{2}{3}x_{1}+1");
}

TEST_CASE("nullspace") {
    ExactMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id(i, i) = 1;
    CHECK(nullspace(id).empty());
    ExactMatrix z(2, 3);
    CHECK(nullspace(z).size() == 3);

    ExactMatrix m(2, 4);
    m(0, 0) = parse_rf("x1");
    m(0, 1) = 1;
    m(0, 2) = parse_rf("x1+2");
    m(1, 1) = parse_rf("x2");
    m(1, 3) = parse_rf("1/(x1+1)");
    auto ker = nullspace(m);
    CHECK(ker.size() == 2);
    CHECK(rank(m) == 2);
    for (const auto& v : ker)
        for (int i = 0; i < 2; ++i) {
            RF s;
            for (int j = 0; j < 4; ++j) s += m(i, j) * v[j];
            CHECK(s.is_zero());
        }
}

TEST_CASE("random kernels are annihilated and independent") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int it = 0; it < 20; ++it) {
        ExactMatrix m(3, 5);
        QMatrix q(3, QVector(5));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 5; ++j) {
                int c = d(rng) * (d(rng) > 0 ? 1 : 0);
                m(i, j) = c;
                q[i][j] = c;
            }
        auto ker = nullspace(m);
        CHECK(ker.size() == 5 - rank_q(q));
        QMatrix kq;
        for (const auto& v : ker) {
            QVector row;
            for (const auto& x : v) row.push_back(x.constant_value());
            for (int i = 0; i < 3; ++i) {
                Rational s = 0;
                for (int j = 0; j < 5; ++j) s += q[i][j] * row[j];
                CHECK(s == 0);
            }
            kq.push_back(row);
        }
        CHECK(rank_q(kq) == ker.size());
    }
}

TEST_CASE("dense rational solve and inverse") {
    QMatrix a{{2, 1}, {1, 3}};
    QVector x = solve_q(a, {3, 5});
    CHECK(x == QVector{frac(4, 5), frac(7, 5)});
    QMatrix inv = inverse_q(a);
    CHECK(inv[0][0] == frac(3, 5));
    CHECK(inv[0][1] == frac(-1, 5));
}

TEST_CASE("weight parsing") {
    auto w = parse_weight("x1*w1+w2", "w", 3);
    CHECK(w[0] == parse_rf("x1"));
    CHECK(w[1] == RF(1));
    CHECK(w[2].is_zero());
    auto l = parse_weight("(x_{1}+1)\\psi_{1}+2\\psi_{2}", "psi", 2);
    CHECK(l[0] == parse_rf("x1+1"));
    CHECK(l[1] == RF(2));
    CHECK(parse_weight("0", "w", 2)[0].is_zero());
    CHECK_THROWS_AS(parse_weight("", "w", 3), UsageError);
    CHECK_THROWS_AS(parse_weight("w4", "w", 3), UsageError);
    CHECK_THROWS_AS(parse_weight("w1+1", "w", 3), UsageError);
    CHECK_THROWS_AS(parse_weight("w1*w2", "w", 3), UsageError);
}
