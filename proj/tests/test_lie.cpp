#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gvb/lie.hpp"

using namespace gvb;

namespace {

AlgElement basis(int b) { return AlgElement{{b, Rational(1)}}; }

AlgElement sum(const AlgElement& a, const AlgElement& b) {
    AlgElement r = a;
    axpy(r, 1, b);
    return r;
}

// Killing form from traces of ad matrices built out of the bracket table.
QMatrix killing_oracle(const LieAlgebra& g) {
    int n = g.dim();
    std::vector<QMatrix> ad(n, QMatrix(n, QVector(n, 0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (const auto& [c, v] : g.bracket(a, b)) ad[a][c][b] = v;
    QMatrix k(n, QVector(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Rational t = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) t += ad[a][i][j] * ad[b][j][i];
            k[a][b] = t;
        }
    return k;
}

UEAElement casimir_oracle(const LieAlgebra& g) {
    QMatrix kinv = inverse_q(killing_oracle(g));
    UEAElement c(&g);
    for (int a = 0; a < g.dim(); ++a)
        for (int b = 0; b < g.dim(); ++b)
            if (kinv[a][b] != 0) c.add({a, b}, RF(kinv[a][b]));
    return c.normal_ordered();
}

bool is_zero_after_ordering(const UEAElement& u) { return u.normal_ordered().is_zero(); }

}  // namespace

TEST_CASE("so(7) bracket examples") {
    LieAlgebra g = build_orthogonal_odd(3);
    CHECK(g.dim() == 21);
    CHECK(g.bracket(g.pos(0), g.neg(0)) == basis(g.cartan(0)));
    CHECK(g.bracket(g.pos(2), g.neg(2)) == AlgElement{{g.cartan(2), Rational(2)}});
    for (int b = 0; b < g.dim(); ++b) CHECK(g.bracket(b, b).empty());
    CHECK(g.name(g.neg(2)) == "g_{-3}");
    CHECK(g.basis_from_name("g_{-3}") == g.neg(2));
    CHECK(g.basis_from_name("h_{2}") == g.cartan(1));
}

TEST_CASE("structure constants: integrality, antisymmetry, Jacobi") {
    for (const char* name : {"B3", "G2", "A2"}) {
        LieAlgebra g = build_chevalley(name);
        INFO(name);
        CHECK(g.consistency_errors() == 0);
        int n = g.dim();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                for (const auto& [c, v] : g.bracket(a, b))
                    if (!g.is_cartan(c)) CHECK(v.get_den() == 1);
                AlgElement s = g.bracket(a, b);
                axpy(s, 1, g.bracket(b, a));
                CHECK(s.empty());
            }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c) {
                    AlgElement j = g.bracket(basis(a), g.bracket(b, c));
                    axpy(j, 1, g.bracket(basis(b), g.bracket(c, a)));
                    axpy(j, 1, g.bracket(basis(c), g.bracket(a, b)));
                    CHECK(j.empty());
                }
    }
}

TEST_CASE("simple sl2 triples") {
    for (const char* name : {"B3", "G2"}) {
        LieAlgebra g = build_chevalley(name);
        const RootSystem& rs = g.roots();
        for (int i = 0; i < g.rank(); ++i) {
            IntVec a(g.rank(), 0);
            a[i] = 1;
            int e = g.root_vector(a), f = g.neg(g.root_of(e));
            AlgElement h = g.bracket(e, f);
            CHECK(g.bracket(h, basis(e)) == AlgElement{{e, Rational(2)}});
            CHECK(g.bracket(h, basis(f)) == AlgElement{{f, Rational(-2)}});
            // [g_b, g_-b] = (2/<b,b>) h_b
            QVector q(a.begin(), a.end());
            CHECK(h == scaled(basis(g.cartan(i)), 2 / rs.pairing(q, q)));
        }
    }
}

TEST_CASE("subalgebra generation") {
    LieAlgebra g = build_orthogonal_odd(3);
    std::vector<AlgElement> seeds{sum(basis(g.pos(0)), basis(g.pos(2))), sum(basis(g.neg(0)), basis(g.neg(2))),
                                  basis(g.pos(1)), basis(g.neg(1))};
    auto r = generate_subalgebra(g, seeds);
    CHECK(r.dim == 14);
    CHECK(r.type == "G2");
    CHECK(generate_subalgebra(g, {basis(g.cartan(0))}).dim == 1);
    auto a1 = generate_subalgebra(g, {basis(g.pos(0)), basis(g.neg(0))});
    CHECK(a1.dim == 3);
    CHECK(a1.type == "A1");
}

TEST_CASE("G2 inside so(7)") {
    Embedding e = g2_in_so7();
    const LieAlgebra& s = *e.source;
    const LieAlgebra& t = *e.target;
    const RootSystem& b3 = t.roots();
    const RootSystem& g2 = s.roots();
    auto pr_fund = [&](int i) {
        QVector w(3, 0);
        w[i] = 1;
        return g2.simple_to_fundamental(e.project(b3.fundamental_to_simple(w)));
    };
    CHECK(pr_fund(0) == QVector{1, 0});
    CHECK(pr_fund(2) == QVector{1, 0});
    CHECK(pr_fund(1) == QVector{0, 1});
    CHECK(e.lift(QVector{0, 1}) == QVector{0, 3, 0});
    CHECK(e.images[s.neg(0)] == sum(basis(t.neg(0)), basis(t.neg(2))));
    CHECK(e.images[s.pos(1)] == basis(t.pos(1)));
    // D <a,b> = <i(a), i(b)>
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            QVector a(2, 0), b(2, 0);
            a[i] = 1;
            b[j] = 1;
            CHECK(e.dynkin_index * g2.pairing(a, b) == b3.pairing(e.lift(a), e.lift(b)));
        }
    // homomorphism on all basis pairs
    for (int a = 0; a < s.dim(); ++a)
        for (int b = 0; b < s.dim(); ++b)
            CHECK(e.image(s.bracket(a, b)) == t.bracket(e.images[a], e.images[b]));
}

TEST_CASE("enveloping algebra embedding") {
    Embedding e = g2_in_so7();
    const LieAlgebra& s = *e.source;
    const LieAlgebra& t = *e.target;
    CHECK(e.image(UEAElement::generator(&s, s.neg(1))).terms() == UEAElement::generator(&t, t.neg(1)).terms());
    auto one = e.image(UEAElement::scalar(&s, RF(1)));
    CHECK(one.terms().size() == 1);
    CHECK(one.terms().begin()->first.empty());
    auto g = UEAElement::generator(&s, s.neg(0));
    CHECK(e.image(g * g).terms().size() == 4);
}

TEST_CASE("Casimir matches the Killing-dual oracle") {
    for (const char* name : {"A1", "G2", "B3"}) {
        LieAlgebra g = build_chevalley(name);
        INFO(name);
        CHECK(killing_oracle(g) == g.killing_form());
        CHECK(casimir(g).terms() == casimir_oracle(g).terms());
    }
    // sl2: (h^2 + 2h + 4fe)/8
    LieAlgebra a1 = build_chevalley("A1");
    UEAElement expect(&a1);
    expect.add({a1.cartan(0), a1.cartan(0)}, frac(1, 8));
    expect.add({a1.cartan(0)}, frac(1, 4));
    expect.add({a1.neg(0), a1.pos(0)}, frac(1, 2));
    CHECK(casimir(a1).terms() == expect.normal_ordered().terms());
}

TEST_CASE("Casimir is central") {
    for (const char* name : {"G2", "B3"}) {
        LieAlgebra g = build_chevalley(name);
        UEAElement c = casimir(g);
        for (int b = 0; b < g.dim(); ++b) {
            UEAElement x = UEAElement::generator(&g, b);
            CHECK(is_zero_after_ordering(c * x - x * c));
        }
    }
    Embedding e = g2_in_so7();
    UEAElement ic = e.image(casimir(*e.source));
    for (int b = 0; b < e.source->dim(); ++b) {
        UEAElement x = e.image(UEAElement::generator(e.source.get(), b));
        CHECK(is_zero_after_ordering(ic * x - x * ic));
    }
}

TEST_CASE("normal ordering preserves the product in a faithful check") {
    // [x, y] = xy - yx holds after normal ordering
    LieAlgebra g = build_orthogonal_odd(3);
    for (int a = 0; a < g.dim(); ++a)
        for (int b = 0; b < g.dim(); ++b) {
            UEAElement x = UEAElement::generator(&g, a), y = UEAElement::generator(&g, b);
            UEAElement br(&g);
            for (const auto& [c, v] : g.bracket(a, b)) br.add({c}, RF(v));
            CHECK(is_zero_after_ordering(x * y - y * x - br));
        }
}

TEST_CASE("transpose anti-automorphism") {
    LieAlgebra g = build_orthogonal_odd(3);
    UEAElement u(&g);
    u.add({g.neg(2), g.neg(1)}, 1);
    UEAElement expect(&g);
    expect.add({g.pos(1), g.pos(2)}, 1);
    CHECK(u.transposed().terms() == expect.terms());
    UEAElement h = UEAElement::generator(&g, g.cartan(0));
    CHECK(h.transposed().terms() == h.terms());
    std::mt19937 rng(2);
    std::uniform_int_distribution<int> d(0, g.dim() - 1);
    for (int it = 0; it < 20; ++it) {
        UEAElement w(&g);
        w.add({d(rng), d(rng), d(rng)}, parse_rf("x1+1"));
        CHECK(w.transposed().transposed().terms() == w.terms());
        // anti-multiplicative
        UEAElement a = UEAElement::generator(&g, d(rng)), b = UEAElement::generator(&g, d(rng));
        CHECK((a * b).transposed().terms() == (b.transposed() * a.transposed()).terms());
    }
}

TEST_CASE("enveloping algebra parsing and printing") {
    LieAlgebra g = build_orthogonal_odd(3);
    UEAElement u = parse_uea("(-x1-2)g_{-3}g_{-2} - 4g_{-4} + 2g_{-2}g_{-1}", &g);
    CHECK(u.terms().size() == 3);
    CHECK(u.terms().at(Word{g.neg(2), g.neg(1)}) == parse_rf("-x1-2"));
    CHECK(u.terms().at(Word{g.neg(3)}) == RF(-4));
    CHECK(parse_uea(u.str(), &g).terms() == u.terms());
    CHECK(parse_uea(u.str(Style::Latex), &g).terms() == u.terms());
    UEAElement v = parse_uea("g_{-1}^2 v_\\lambda - v_\\lambda", &g);
    CHECK(v.terms().at(Word{g.neg(0), g.neg(0)}) == RF(1));
    CHECK(v.terms().at(Word{}) == RF(-1));
    CHECK_THROWS(u.weight());
    CHECK(parse_uea("g_{-4} + g_{-2}g_{-1}", &g).weight() == IntVec{-1, -1, 0});
    CHECK_THROWS(parse_uea("g_{-3", &g));
}
