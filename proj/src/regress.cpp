#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "gvb/cli.hpp"
#include "gvb/verma.hpp"

namespace gvb::cli {

const std::vector<std::string> kSuites{"structure", "fd-tables", "branching", "singular", "certificates"};

std::string default_data_dir() { return GVB_DATA_DIR; }

namespace {

const Embedding& pair() {
    static Embedding e = g2_in_so7();
    return e;
}
const LieAlgebra& so7() { return *pair().target; }
const LieAlgebra& g2() { return *pair().source; }

class Recorder {
public:
    Recorder(std::string suite, std::vector<RegressCase>& out) : suite_(std::move(suite)), out_(out) {}

    // Starts a case; failures recorded until the next start belong to it.
    void start(const std::string& name) {
        out_.push_back({suite_, name, true, ""});
    }
    void expect(bool cond, const std::string& what) {
        if (cond) return;
        RegressCase& c = out_.back();
        c.pass = false;
        c.detail += (c.detail.empty() ? "" : "; ") + what;
    }

private:
    std::string suite_;
    std::vector<RegressCase>& out_;
};

Json load(const std::string& dir, const std::string& name) {
    std::ifstream in(dir + "/reference/" + name);
    if (!in) throw UsageError("missing golden file " + dir + "/reference/" + name);
    return Json::parse(in);
}

std::string strip(std::string s, const std::string& pat) {
    for (std::size_t p; (p = s.find(pat)) != std::string::npos;) s.erase(p, pat.size());
    return s;
}

UEAElement parse_vector(const std::string& s) {
    std::string t = strip(s, "\\cdot");
    if (t == "v_\\lambda") return UEAElement::scalar(&so7(), RF(1));
    return parse_uea(t, &so7());
}

IntVec crossings(const std::string& key) {
    IntVec c;
    for (char ch : key) c.push_back(ch - '0');
    return c;
}

std::string fund(const std::vector<RF>& simple) {
    return weight_string(g2().roots().simple_to_fundamental(simple), "psi", Style::Ascii);
}

std::vector<RF> at(const std::vector<RF>& w, const std::map<std::string, Rational>& pt) {
    std::vector<RF> out;
    for (const auto& x : w) out.push_back(x.partial_eval(pt));
    return out;
}

UEAElement swap_simple_labels(const UEAElement& u) {
    const LieAlgebra& s = g2();
    std::map<int, int> perm;
    for (int b = 0; b < s.dim(); ++b) perm[b] = b;
    for (auto [a, b] : {std::pair{s.pos(0), s.pos(1)}, {s.neg(0), s.neg(1)}, {s.cartan(0), s.cartan(1)}}) {
        perm[a] = b;
        perm[b] = a;
    }
    UEAElement out(&s);
    for (const auto& [w, c] : u.terms()) {
        Word v;
        for (int b : w) v.push_back(perm[b]);
        out.add(v, c);
    }
    return out.normal_ordered();
}

std::string unbar(std::string s) {
    for (const std::string pat : {"{\\bar h}", "{\\bar g}"})
        for (std::size_t p; (p = s.find(pat)) != std::string::npos;) s.replace(p, pat.size(), std::string(1, pat[6]));
    return s;
}

void structure_suite(Recorder& r, const std::string& dir) {
    const LieAlgebra& g = so7();
    r.start("subalgebra closure");
    AlgElement e1{{g.pos(0), 1}, {g.pos(2), 1}}, f1{{g.neg(0), 1}, {g.neg(2), 1}};
    auto sub = generate_subalgebra(g, {e1, f1, {{g.pos(1), 1}}, {{g.neg(1), 1}}});
    r.expect(sub.dim == 14, "dimension " + std::to_string(sub.dim));
    r.expect(sub.type == "G2", "type " + sub.type);

    r.start("projections of fundamental weights");
    const RootSystem& b3 = g.roots();
    std::vector<QVector> expect{{1, 0}, {0, 1}, {1, 0}};
    for (int i = 0; i < 3; ++i) {
        QVector w(3, 0);
        w[i] = 1;
        QVector got = g2().roots().simple_to_fundamental(pair().project(b3.fundamental_to_simple(w)));
        r.expect(got == expect[i], "pr(w" + std::to_string(i + 1) + ")");
    }

    auto cas = load(dir, "casimir.json");
    r.start("36 cbar1");
    UEAElement bar = (bar_casimir(pair()) * RF(36)).normal_ordered();
    UEAElement printed = swap_simple_labels(parse_uea(unbar(cas["bar_casimir_36"]), &g2()).normal_ordered());
    r.expect(bar.terms() == printed.terms(), "ours " + bar.str() + " golden " + printed.str());
    r.start("12 i(cbar1)");
    UEAElement img = (image_casimir(pair()) * RF(12)).normal_ordered();
    UEAElement gold = parse_uea(cas["image_casimir_12"], &g).normal_ordered();
    r.expect(img.terms() == gold.terms(), "ours " + img.str() + " golden " + gold.str());

    for (const auto& fam : load(dir, "p1_table.json")) {
        std::string name = fam["lambda"];
        r.start("p1 " + name);
        for (const auto& row : fam["rows"]) {
            auto mu = parse_weight(row["projection"], "alpha", 2);
            RF p = p1_scalar(pair(), mu);
            r.expect(p == parse_rf(row["p1"]), fund(mu) + ": ours " + p.str());
            auto w = parse_weight(row["weight"], "omega", 3);
            r.expect(pair().project(b3.fundamental_to_simple(w)) == mu, "projection of " + row["weight"].get<std::string>());
        }
    }
}

void fd_suite(Recorder& r, const std::string& dir) {
    const RootSystem& srs = g2().roots();
    for (const auto& mod : load(dir, "fd_decompositions.json")) {
        std::string name = mod["module"];
        r.start("decomposition " + name);
        auto m = build_fd_module(so7(), {0, 1, 2}, parse_weight(name, "omega", 3));
        r.expect(m.dim() == mod["dim"].get<int>(), "dimension " + std::to_string(m.dim()));
        std::multiset<std::pair<std::vector<RF>, Integer>> ours, gold;
        for (const auto& c : decompose_over_bar_levi(m, pair(), {0, 1}))
            for (Integer k = 0; k < c.multiplicity; ++k) ours.insert({c.weight, c.dim});
        for (const auto& c : mod["constituents"]) {
            auto mu = srs.fundamental_to_simple(parse_weight(c["weight"], "psi", 2));
            gold.insert({mu, Integer(c["dim"].get<int>())});
            auto w = evaluate_on_top(m, parse_vector(c["vector"]));
            bool nonzero = false, killed = true, weight_ok = true;
            for (int i = 0; i < m.dim(); ++i)
                if (!w[i].is_zero()) {
                    nonzero = true;
                    weight_ok &= pair().project(m.weight_simple(i)) == mu;
                }
            for (int s = 0; s < g2().rank(); ++s)
                for (const auto& x : m.act(pair().images[g2().pos(s)], w)) killed &= x.is_zero();
            r.expect(nonzero && killed && weight_ok, "vector of weight " + fund(mu));
        }
        r.expect(ours == gold, "constituents");
    }
    for (const auto& fam : load(dir, "monomial_bases.json")) {
        std::string name = fam["lambda"];
        r.start("monomial basis " + name);
        auto m = build_fd_module(so7(), {1, 2}, parse_weight(name, "omega", 3));
        const auto& rows = fam["rows"];
        r.expect(rows.size() == static_cast<std::size_t>(m.dim()), "dimension");
        std::vector<std::vector<RF>> vecs;
        for (const auto& row : rows) vecs.push_back(evaluate_on_top(m, parse_uea(row["monomial"], &so7())));
        ExactMatrix b(m.dim(), vecs.size());
        for (std::size_t j = 0; j < vecs.size(); ++j)
            for (int i = 0; i < m.dim(); ++i) b(i, j) = vecs[j][i];
        r.expect(rank(b) == vecs.size(), "basis rank");
        for (std::size_t j = 0; j < rows.size(); ++j) {
            auto w = parse_weight(rows[j]["weight"], "omega", 3);
            for (int i = 0; i < m.dim(); ++i)
                if (!vecs[j][i].is_zero()) r.expect(m.weight_fundamental(i) == w, "weight of m" + std::to_string(j + 1));
            for (int gen : {2, 3}) {
                std::vector<RF> expect(m.dim());
                std::string img = rows[j]["g" + std::to_string(gen)];
                static const std::regex term(R"(([+-]?)([0-9/]*)m_\{([0-9]+)\})");
                for (auto it = std::sregex_iterator(img.begin(), img.end(), term); it != std::sregex_iterator(); ++it) {
                    Rational c = (*it)[2].str().empty() ? Rational(1) : parse_rational((*it)[2].str());
                    if ((*it)[1].str() == "-") c = -c;
                    int k = std::stoi((*it)[3].str());
                    for (int i = 0; i < m.dim(); ++i) expect[i] += RF(c) * vecs[k - 1][i];
                }
                int op = so7().basis_from_name("g_{" + std::to_string(gen) + "}");
                r.expect(m.act(op, vecs[j]) == expect, "g" + std::to_string(gen) + " on m" + std::to_string(j + 1));
            }
        }
    }
}

void branching_suite(Recorder& r, const std::string& dir) {
    std::set<IntVec> compatible, finite;
    r.start("condition reports");
    for (const auto& p : all_parabolics(so7().roots())) {
        auto c = quotient_weights(p, pair());
        r.expect(c.weakly_compatible, p.str() + " weakly compatible");
        r.expect(c.condition_a, p.str() + " Condition A");
        if (c.compatible) compatible.insert(p.crossings);
        if (c.finite_branching) finite.insert(p.crossings);
    }
    r.expect(compatible == std::set<IntVec>{{1, 0, 1}, {0, 1, 0}, {1, 1, 1}, {0, 0, 0}}, "compatible set");
    r.expect(finite == std::set<IntVec>{{1, 0, 0}, {0, 0, 0}}, "finite branching set");

    Parabolic p = make_parabolic(so7().roots(), {1, 0, 0});
    for (const auto& item : load(dir, "direct_sums.json")) {
        std::string name = item["lambda"];
        r.start("direct sum " + name);
        auto lam = parse_weight(name, "omega", 3);
        auto m = build_fd_module(so7(), p.levi, lam);
        std::multiset<std::vector<RF>> ours, gold;
        std::vector<std::vector<RF>> ws;
        for (const auto& c : decompose_over_bar_levi(m, pair(), {1})) {
            ws.push_back(c.weight);
            for (Integer k = 0; k < c.multiplicity; ++k) ours.insert(c.weight);
        }
        for (const auto& s : item["summands"]) gold.insert(g2().roots().fundamental_to_simple(parse_weight(s, "psi", 2)));
        r.expect(ours == gold, "summands");
        std::set<Rational> roots, excluded;
        for (const auto& q : strong_condition_b(pair(), ws).inequalities)
            for (const auto& x : rational_roots(q)) roots.insert(x);
        for (const auto& x : item["excluded"]) excluded.insert(parse_rational(x));
        r.expect(roots == excluded, "excluded parameters");
        std::map<std::string, Rational> pt{{"x1", 10}};
        std::multiset<std::vector<RF>> rows, want;
        for (const auto& row : branch_up_to_degree(p, pair(), at(lam, pt), 0)) {
            r.expect(!row.mult.infinite, "finite multiplicity at " + fund(row.mu));
            for (Integer k = 0; k < row.mult.value; ++k) rows.insert(row.mu);
        }
        for (const auto& w : gold) want.insert(at(w, pt));
        r.expect(rows == want, "branching rows at x1 = 10");
    }
}

void singular_suite(Recorder& r, const std::string& dir) {
    Parabolic p100 = make_parabolic(so7().roots(), {1, 0, 0});
    auto tv = load(dir, "theorem_vectors.json");
    {
        r.start("theorem x1*w1");
        GeneralizedVerma M(p100, so7(), parse_weight("x1*w1", "w", 3));
        auto built = build_all_singular_vectors(M, pair());
        r.expect(built.size() == 1 && proportional(built[0].vector, M.highest_vector()), "only the highest vector");
    }
    for (const auto& fam : tv["families"]) {
        std::string name = fam["lambda"];
        r.start("theorem " + name);
        GeneralizedVerma M(p100, so7(), parse_weight(name, "w", 3));
        auto built = build_all_singular_vectors(M, pair());
        std::vector<VermaVector> cons, printed;
        for (const auto& b : built) cons.push_back(b.vector);
        r.expect(built.size() == fam["vectors"].size(), "vector count");
        for (const auto& v : fam["vectors"]) {
            std::string label = "v" + std::to_string(v["index"].get<int>());
            VermaVector w = M.act(parse_vector(v["latex"]), M.highest_vector());
            printed.push_back(w);
            r.expect(verify_singular(M, pair(), w).pass, label + " singular");
            r.expect(std::any_of(cons.begin(), cons.end(), [&](const VermaVector& b) { return proportional(b, w); }),
                     label + " reproduced");
        }
        r.expect(same_span(printed, cons), "span");
    }

    auto psv = load(dir, "parabolic_singular_vectors.json");
    for (const auto& [key, rows] : psv.items()) {
        Parabolic p = make_parabolic(so7().roots(), crossings(key));
        for (const auto& row : rows) {
            std::string name = row["module"];
            r.start(p.str() + " " + name);
            GeneralizedVerma M(p, so7(), parse_weight(name, "omega", 3));
            r.expect(M.inducing().dim() == row["dim"].get<int>(), "inducing dimension");
            auto built = build_all_singular_vectors(M, pair());
            for (const auto& c : row["constituents"]) {
                auto mu = g2().roots().fundamental_to_simple(parse_weight(c["weight"], "psi", 2));
                VermaVector w = M.act(parse_uea(c["vector"], &so7()), M.highest_vector());
                r.expect(verify_singular(M, pair(), w).pass, fund(mu) + " singular");
                const SingularVectorResult* hit = nullptr;
                for (const auto& b : built)
                    if (b.mu == mu && proportional(b.vector, w)) hit = &b;
                r.expect(hit != nullptr, fund(mu) + " reproduced");
                if (!hit) continue;
                std::multiset<std::string> ours, gold;
                for (const auto& s : hit->projector_scalars) ours.insert(s.str());
                for (const auto& s : c["projector_p1"]) gold.insert(parse_rf(s).str());
                r.expect(ours == gold, fund(mu) + " projector");
            }
        }
    }

    auto scb = load(dir, "strong_condition_b.json");
    for (const auto& [key, rows] : scb.items()) {
        Parabolic p = make_parabolic(so7().roots(), crossings(key));
        Parabolic bar = induced_bar_parabolic(p, pair());
        for (const auto& row : rows) {
            std::string name = row["module"];
            r.start("Condition B " + p.str() + " " + name);
            auto m = build_fd_module(so7(), p.levi, parse_weight(name, "omega", 3));
            std::multiset<std::pair<std::vector<RF>, Integer>> ours, gold;
            std::vector<std::vector<RF>> ws;
            for (const auto& c : decompose_over_bar_levi(m, pair(), bar.levi)) {
                ours.insert({c.weight, c.multiplicity});
                ws.push_back(c.weight);
            }
            for (const auto& d : row["decomposition"])
                gold.insert({g2().roots().fundamental_to_simple(parse_weight(d["weight"], "psi", 2)), Integer(d["mult"].get<int>())});
            r.expect(ours == gold, "decomposition");
            std::set<std::string> mine, theirs;
            ConditionBReport rep = strong_condition_b(pair(), ws);
            for (const auto& q : rep.inequalities) {
                ConditionBReport one;
                one.inequalities = {q};
                mine.insert(one.inequality_string(Style::Latex));
            }
            if (!row["strong_b"].is_null())
                for (const auto& s : row["strong_b"]) theirs.insert(s);
            std::string got;
            for (const auto& s : mine) got += (got.empty() ? "" : ", ") + s;
            r.expect(mine == theirs, "inequalities " + got);
        }
    }
}

void certificate_suite(Recorder& r, const std::string& dir) {
    Parabolic p100 = make_parabolic(so7().roots(), {1, 0, 0});
    auto tv = load(dir, "theorem_vectors.json");
    std::map<std::string, Json> printed;
    for (const auto& f : tv["families"]) {
        auto w = parse_weight(f["lambda"].get<std::string>(), "w", 3);
        std::string key;
        for (const auto& x : w) key += x.str() + ";";
        printed[key] = f["vectors"];
    }
    for (const auto& fam : load(dir, "certificates.json")) {
        auto lam = parse_weight(fam["lambda"], "omega", 3);
        std::string key;
        for (const auto& x : lam) key += x.str() + ";";
        GeneralizedVerma M(p100, so7(), lam);
        auto built = build_all_singular_vectors(M, pair());
        for (const auto& row : fam["rows"]) {
            int idx = row["index"];
            r.start(fam["lambda"].get<std::string>() + " v" + std::to_string(idx));
            VermaVector w;
            for (const auto& v : printed[key])
                if (v["index"] == idx) w = M.act(parse_vector(v["latex"]), M.highest_vector());
            const SingularVectorResult* hit = nullptr;
            for (const auto& b : built)
                if (!w.empty() && proportional(b.vector, w)) hit = &b;
            r.expect(hit != nullptr, "constructed vector");
            if (!hit) continue;
            auto cert = shapovalov_certificate(M, pair(), M.to_uea(hit->raw));
            r.expect(cert.poly == parse_poly(row["poly"]), "polynomial " + cert.poly.str());
            std::vector<Rational> roots;
            for (const auto& x : row["roots"]) roots.push_back(parse_rational(x));
            std::sort(roots.begin(), roots.end());
            r.expect(cert.roots == roots, "roots");
        }
    }
}

}  // namespace

std::vector<RegressCase> run_suite(const std::string& suite, const std::string& data_dir) {
    if (suite.empty()) throw UsageError("empty suite name");
    std::vector<std::string> names;
    if (suite == "all")
        names = kSuites;
    else if (std::find(kSuites.begin(), kSuites.end(), suite) != kSuites.end())
        names = {suite};
    else
        throw UsageError("unknown suite '" + suite + "'");
    std::vector<RegressCase> out;
    for (const auto& n : names) {
        Recorder r(n, out);
        if (n == "structure") structure_suite(r, data_dir);
        if (n == "fd-tables") fd_suite(r, data_dir);
        if (n == "branching") branching_suite(r, data_dir);
        if (n == "singular") singular_suite(r, data_dir);
        if (n == "certificates") certificate_suite(r, data_dir);
    }
    return out;
}

}  // namespace gvb::cli
