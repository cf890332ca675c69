#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "gvb/roots.hpp"

using namespace gvb;

namespace {

IntMat identity(int n) {
    IntMat m(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Positive roots by closing the simple roots under simple reflections.
std::set<IntVec> roots_by_reflection(const RootSystem& rs) {
    std::set<IntVec> all;
    std::vector<IntVec> todo;
    for (int i = 0; i < rs.rank(); ++i) {
        IntVec e(rs.rank(), 0);
        e[i] = 1;
        todo.push_back(e);
    }
    while (!todo.empty()) {
        IntVec v = todo.back();
        todo.pop_back();
        if (!all.insert(v).second) continue;
        for (int i = 0; i < rs.rank(); ++i) todo.push_back(gvb::apply(rs.reflection(i), v));
    }
    std::set<IntVec> pos;
    for (const auto& v : all) {
        bool nonneg = true;
        for (int c : v) nonneg &= c >= 0;
        if (nonneg) pos.insert(v);
    }
    return pos;
}

}  // namespace

TEST_CASE("B3 and G2 positive roots") {
    RootSystem b3('B', 3), g2('G', 2), a1('A', 1);
    CHECK(b3.num_positive() == 9);
    CHECK(g2.positive_roots() == std::vector<IntVec>{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}});
    CHECK(b3.positive_roots() ==
          std::vector<IntVec>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}, {0, 1, 2}, {1, 1, 2},
                              {1, 2, 2}});
    CHECK(a1.num_positive() == 1);
    CHECK(a1.cartan() == IntMat{{2}});
    for (const RootSystem* rs : {&b3, &g2}) {
        auto oracle = roots_by_reflection(*rs);
        std::set<IntVec> got(rs->positive_roots().begin(), rs->positive_roots().end());
        CHECK(got == oracle);
    }
    CHECK_THROWS_AS(RootSystem('H', 3), CapabilityError);
    CHECK(RootSystem::parse("G2").name() == "G2");
}

TEST_CASE("bilinear form normalization") {
    RootSystem g2('G', 2), b3('B', 3);
    CHECK(g2.form()[1][1] == 6);
    CHECK(g2.form()[0][1] == -3);
    CHECK(g2.form()[0][0] == 2);
    // epsilon coordinates are orthonormal
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            QVector ei(3, 0), ej(3, 0);
            ei[i] = 1;
            ej[j] = 1;
            // simple coordinates of e_i: e3 = a3, e2 = a2+a3, e1 = a1+a2+a3
            QVector si(3, 0), sj(3, 0);
            for (int k = i; k < 3; ++k) si[k] = 1;
            for (int k = j; k < 3; ++k) sj[k] = 1;
            CHECK(b3.pairing(si, sj) == (i == j ? 1 : 0));
            CHECK(b3.simple_to_epsilon(si) == ei);
        }
    for (const RootSystem* rs : {&b3, &g2})
        for (const auto& r : rs->positive_roots()) {
            QVector q(r.begin(), r.end());
            Rational n = rs->pairing(q, q);
            CHECK((n == 1 || n == 2 || n == 6));
        }
}

TEST_CASE("fundamental weights are dual to coroots") {
    RootSystem b3('B', 3), g2('G', 2);
    for (const RootSystem* rs : {&b3, &g2})
        for (int i = 0; i < rs->rank(); ++i) {
            QVector w(rs->rank(), 0);
            w[i] = 1;
            QVector s = rs->fundamental_to_simple(w);
            for (int j = 0; j < rs->rank(); ++j) {
                IntVec a(rs->rank(), 0);
                a[j] = 1;
                CHECK(rs->coroot_pairing(s, a) == (i == j ? 1 : 0));
            }
        }
    // omega1 = e1, omega2 = e1+e2, omega3 = (e1+e2+e3)/2
    CHECK(b3.simple_to_epsilon(b3.fundamental_to_simple(QVector{0, 0, 1})) == QVector{frac(1, 2), frac(1, 2), frac(1, 2)});
    CHECK(b3.simple_to_epsilon(b3.fundamental_to_simple(QVector{0, 1, 0})) == QVector{1, 1, 0});
}

TEST_CASE("basis conversion round trip") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-9, 9);
    RootSystem b3('B', 3), g2('G', 2);
    for (const RootSystem* rs : {&b3, &g2})
        for (int it = 0; it < 50; ++it) {
            QVector v(rs->rank());
            for (auto& x : v) x = frac(d(rng), 1 + (d(rng) & 3));
            CHECK(rs->simple_to_fundamental(rs->fundamental_to_simple(v)) == v);
        }
}

TEST_CASE("rho") {
    RootSystem g2('G', 2), b3('B', 3);
    CHECK(g2.rho() == QVector{5, 3});
    CHECK(g2.simple_to_fundamental(g2.rho()) == QVector{1, 1});
    CHECK(g2.rho({}) == QVector{0, 0});
    CHECK(b3.rho({1, 2}) == QVector{0, frac(3, 2), 2});
    // oracle: half-sum over enumerated roots
    QVector half(3, 0);
    for (const auto& r : roots_by_reflection(b3))
        for (int i = 0; i < 3; ++i) half[i] += frac(r[i], 2);
    CHECK(b3.rho() == half);
}

TEST_CASE("Weyl groups") {
    RootSystem g2('G', 2), b3('B', 3);
    auto wg = weyl_group(g2, {0, 1});
    CHECK(wg.size() == 12);
    CHECK(wg[0].length() == 0);
    CHECK(weyl_group(b3, {0, 1, 2}).size() == 48);
    CHECK(weyl_group(b3, {}).size() == 1);
    CHECK(weyl_group(b3, {1, 2}).size() == 8);
    for (const auto& w : weyl_group(b3, {0, 1, 2})) {
        IntMat m = identity(3);
        for (int s : w.word) m = multiply(m, b3.reflection(s));
        CHECK(m == w.matrix);
        CHECK(w.sign() == (w.length() % 2 ? -1 : 1));
    }
    CHECK(longest_word(g2, {0, 1}).size() == 6);
    CHECK(longest_word(b3, {0, 1, 2}).size() == 9);
}

TEST_CASE("Coxeter relations") {
    RootSystem g2('G', 2), b3('B', 3);
    for (const RootSystem* rs : {&b3, &g2}) {
        int r = rs->rank();
        for (int i = 0; i < r; ++i) {
            CHECK(multiply(rs->reflection(i), rs->reflection(i)) == identity(r));
            for (int j = i + 1; j < r; ++j) {
                int prod = rs->cartan()[i][j] * rs->cartan()[j][i];
                int order = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : 6;
                IntMat st = multiply(rs->reflection(i), rs->reflection(j)), acc = identity(r);
                for (int k = 1; k <= order; ++k) {
                    acc = multiply(acc, st);
                    CHECK((acc == identity(r)) == (k == order));
                }
            }
        }
    }
}

TEST_CASE("Weyl dimension") {
    RootSystem b3('B', 3), g2('G', 2);
    CHECK(weyl_dimension(b3, IntVec{0, 1, 0}) == 21);
    CHECK(weyl_dimension(b3, IntVec{0, 2, 0}) == 168);
    CHECK(weyl_dimension(b3, IntVec{0, 0, 1}) == 8);
    CHECK(weyl_dimension(g2, IntVec{1, 0}) == 7);
    CHECK(weyl_dimension(g2, IntVec{0, 1}) == 14);
    CHECK(weyl_dimension(g2, IntVec{0, 0}) == 1);
    CHECK_THROWS_AS(weyl_dimension(g2, IntVec{-1, 0}), UsageError);
    CHECK(weyl_dimension(b3, {1, 2}, IntVec{0, 1}) == 4);
}
