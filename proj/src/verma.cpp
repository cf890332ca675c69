#include "gvb/verma.hpp"

#include <algorithm>
#include <set>

namespace gvb {

void add_term(VermaVector& v, const VermaIndex& i, const RF& c) {
    if (c.is_zero()) return;
    auto it = v.find(i);
    if (it == v.end()) {
        v.emplace(i, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
}

VermaVector& axpy(VermaVector& y, const RF& a, const VermaVector& x) {
    if (a.is_zero()) return y;
    for (auto& [i, c] : x) add_term(y, i, a * c);
    return y;
}

GeneralizedVerma::GeneralizedVerma(const Parabolic& p, const LieAlgebra& alg, const std::vector<RF>& lambda)
    : alg_(&alg), p_(p), fd_(build_fd_module(alg, p.levi, lambda)) {
    for (int k : p.nil_roots) ops_.push_back(alg.neg(k));
    std::sort(ops_.begin(), ops_.end(), [&](int a, int b) { return pbw_key(alg, a) < pbw_key(alg, b); });
    for (std::size_t i = 0; i < ops_.size(); ++i) op_pos_[ops_[i]] = static_cast<int>(i);
}

int GeneralizedVerma::op_position(int b) const {
    auto it = op_pos_.find(b);
    return it == op_pos_.end() ? -1 : it->second;
}

VermaVector GeneralizedVerma::highest_vector() const {
    VermaVector v;
    v[VermaIndex{std::vector<int>(ops_.size(), 0), 0}] = RF(1);
    return v;
}

VermaVector GeneralizedVerma::from_inducing(const std::vector<RF>& w) const {
    VermaVector v;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!w[i].is_zero()) v[VermaIndex{std::vector<int>(ops_.size(), 0), static_cast<int>(i)}] = w[i];
    return v;
}

std::vector<RF> GeneralizedVerma::weight(const VermaIndex& i) const {
    std::vector<RF> w = fd_.weight_simple(i.m);
    for (std::size_t k = 0; k < ops_.size(); ++k) {
        if (!i.exps[k]) continue;
        IntVec r = alg_->weight(ops_[k]);
        for (std::size_t t = 0; t < w.size(); ++t)
            if (r[t]) w[t] += RF(i.exps[k] * r[t]);
    }
    return w;
}

int GeneralizedVerma::degree(const VermaIndex& i) const {
    int d = 0;
    for (int e : i.exps) d += e;
    return d;
}

Integer GeneralizedVerma::degree_dimension(int d) const {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(d + ops_.size() - 1), static_cast<unsigned long>(d));
    if (ops_.empty()) c = d == 0 ? 1 : 0;
    return c * fd_.dim();
}

const VermaVector& GeneralizedVerma::act_basis(int b, const VermaIndex& i) const {
    auto key = std::make_tuple(b, i.exps, i.m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const LieAlgebra& g = *alg_;
    VermaVector out;
    int first = -1;
    for (std::size_t k = 0; k < i.exps.size(); ++k)
        if (i.exps[k]) {
            first = static_cast<int>(k);
            break;
        }
    int pb = op_position(b);
    if (pb >= 0 && (first < 0 || pb <= first)) {
        VermaIndex j = i;
        ++j.exps[pb];
        out[j] = RF(1);
    } else if (first < 0) {
        if (g.is_cartan(b)) {
            add_term(out, i, fd_.cartan_value(b, i.m));
        } else if (fd_.acts(b)) {
            for (auto& [row, val] : fd_.matrix(b)[i.m]) add_term(out, VermaIndex{i.exps, row}, RF(val));
        }
    } else {
        int y = ops_[first];
        VermaIndex rest = i;
        --rest.exps[first];
        for (auto& [c, val] : g.bracket(b, y)) axpy(out, RF(val), VermaVector(act_basis(c, rest)));
        VermaVector inner = act_basis(b, rest);
        for (auto& [j, c] : inner) axpy(out, c, VermaVector(act_basis(y, j)));
    }
    return memo_.emplace(key, std::move(out)).first->second;
}

VermaVector GeneralizedVerma::act(int b, const VermaVector& v) const {
    VermaVector out;
    for (auto& [i, c] : v) axpy(out, c, act_basis(b, i));
    return out;
}

VermaVector GeneralizedVerma::act(const AlgElement& x, const VermaVector& v) const {
    VermaVector out;
    for (auto& [b, c] : x) axpy(out, RF(c), act(b, v));
    return out;
}

VermaVector GeneralizedVerma::act(const UEAElement& u, const VermaVector& v) const {
    VermaVector out;
    for (auto& [w, c] : u.terms()) {
        VermaVector t = v;
        for (auto it = w.rbegin(); it != w.rend() && !t.empty(); ++it) t = act(*it, t);
        axpy(out, c, t);
    }
    return out;
}

Word GeneralizedVerma::word(const VermaIndex& i) const {
    Word w;
    for (std::size_t k = 0; k < ops_.size(); ++k)
        for (int t = 0; t < i.exps[k]; ++t) w.push_back(ops_[k]);
    const Word& m = fd_.monomial(i.m);
    w.insert(w.end(), m.begin(), m.end());
    return w;
}

std::string GeneralizedVerma::str(const VermaVector& v, Style st) const {
    if (v.empty()) return "0";
    std::string vl = st == Style::Latex ? "v_\\lambda" : (st == Style::Unicode ? "v_λ" : "v");
    std::string dot = st == Style::Latex ? "\\cdot " : (st == Style::Unicode ? "·" : "*");
    std::string s;
    bool first = true;
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        Word w = word(it->first);
        std::string prefix = coefficient_prefix(it->second, first, true, st);
        if (!first) prefix = (prefix[0] == '-' ? " - " : " + ") + prefix.substr(1);
        s += prefix + word_string(*alg_, w, st) + (w.empty() ? "" : dot) + vl;
        first = false;
    }
    return s;
}

UEAElement GeneralizedVerma::to_uea(const VermaVector& v) const {
    UEAElement u(alg_);
    for (auto& [i, c] : v) u.add(word(i), c);
    return u;
}

VermaVector verma_act(const GeneralizedVerma& M, const UEAElement& u, const VermaVector& v) { return M.act(u, v); }

VermaVector specialize(const VermaVector& v, const std::map<std::string, Rational>& point) {
    VermaVector out;
    for (auto& [i, c] : v) add_term(out, i, c.partial_eval(point));
    return out;
}

VermaVector normalize(const VermaVector& v) {
    std::vector<RF> c;
    for (auto& [i, x] : v) c.push_back(x);
    c = normalize_vector(c);
    VermaVector out;
    std::size_t k = 0;
    for (auto& [i, x] : v) out[i] = c[k++];
    return out;
}

bool proportional(const VermaVector& a, const VermaVector& b) {
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    if (a.size() != b.size()) return false;
    auto ia = a.begin();
    auto ib = b.begin();
    RF ratio = ia->second / ib->second;
    for (; ia != a.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first)) return false;
        if (ia->second != ratio * ib->second) return false;
    }
    return true;
}

namespace {

std::size_t span_rank(const std::vector<const VermaVector*>& vs) {
    std::set<VermaIndex> support;
    for (auto* v : vs)
        for (auto& [i, c] : *v) support.insert(i);
    std::vector<VermaIndex> idx(support.begin(), support.end());
    ExactMatrix m(idx.size(), vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
        for (std::size_t r = 0; r < idx.size(); ++r) {
            auto it = vs[j]->find(idx[r]);
            if (it != vs[j]->end()) m(r, j) = it->second;
        }
    return rank(m);
}

}  // namespace

bool same_span(const std::vector<VermaVector>& a, const std::vector<VermaVector>& b) {
    std::vector<const VermaVector*> pa, pb, all;
    for (auto& v : a) pa.push_back(&v), all.push_back(&v);
    for (auto& v : b) pb.push_back(&v), all.push_back(&v);
    std::size_t ra = span_rank(pa), rb = span_rank(pb), r = span_rank(all);
    return ra == r && rb == r;
}

UEAElement bar_casimir(const Embedding& e) { return casimir(*e.source); }

UEAElement image_casimir(const Embedding& e) { return e.image(bar_casimir(e)).normal_ordered(); }

RF p1_scalar(const Embedding& e, const std::vector<RF>& mu) {
    const LieAlgebra& s = *e.source;
    const RootSystem& rs = s.roots();
    std::vector<RF> hval(s.rank());
    for (int j = 0; j < s.rank(); ++j) {
        RF v;
        for (int t = 0; t < s.rank(); ++t)
            if (rs.form()[j][t] != 0) v += RF(rs.form()[j][t]) * mu[t];
        hval[j] = v;
    }
    RF out;
    UEAElement cas = bar_casimir(e);
    for (auto& [w, c] : cas.terms()) {
        bool cartan_only = std::all_of(w.begin(), w.end(), [&](int b) { return s.is_cartan(b); });
        if (!cartan_only) continue;
        RF t = c;
        for (int b : w) t *= hval[b - 2 * s.num_positive()];
        out += t;
    }
    return out;
}

std::string ConditionBReport::inequality_string(Style st) const {
    std::string s;
    for (std::size_t i = 0; i < inequalities.size(); ++i) {
        if (i) s += ", ";
        const MultiPoly& p = inequalities[i];
        std::string body = p.str(st);
        bool wrap = p.size() > 1;
        s += (wrap ? "(" + body + ")" : body) + (st == Style::Latex ? "\\neq 0" : (st == Style::Unicode ? "≠0" : "!=0"));
    }
    return s;
}

ConditionBReport strong_condition_b(const Embedding& e, const std::vector<std::vector<RF>>& cons) {
    ConditionBReport r;
    std::vector<RF> p1;
    for (auto& mu : cons) p1.push_back(p1_scalar(e, mu));
    const RootSystem& srs = e.source->roots();
    auto weyl = weyl_group(srs, [&] {
        std::vector<int> all(srs.rank());
        for (int i = 0; i < srs.rank(); ++i) all[i] = i;
        return all;
    }());
    QVector rho = srs.rho();
    for (std::size_t i = 0; i < cons.size(); ++i)
        for (std::size_t j = i + 1; j < cons.size(); ++j) {
            RF d = p1[i] - p1[j];
            if (d.is_zero()) {
                r.failing.emplace_back(static_cast<int>(i), static_cast<int>(j));
            } else {
                MultiPoly q = d.num().primitive();
                q = -q;
                if (std::find(r.inequalities.begin(), r.inequalities.end(), q) == r.inequalities.end())
                    r.inequalities.push_back(q);
            }
            std::vector<RF> shifted = cons[i];
            for (std::size_t t = 0; t < shifted.size(); ++t) shifted[t] += RF(rho[t]);
            for (auto& w : weyl) {
                std::vector<RF> x = gvb::apply(w.matrix, shifted);
                bool eq = true;
                for (std::size_t t = 0; t < x.size() && eq; ++t) eq = (x[t] - RF(rho[t])) == cons[j][t];
                if (eq) {
                    r.linked.emplace_back(static_cast<int>(i), static_cast<int>(j));
                    break;
                }
            }
        }
    r.holds = r.failing.empty();
    r.weak_holds = r.linked.empty();
    return r;
}

int constituent_depth(const GeneralizedVerma& M, const Embedding& e, const std::vector<RF>& mu) {
    Parabolic bar = induced_bar_parabolic(M.parabolic(), e);
    std::vector<RF> top = e.project(M.algebra().roots().fundamental_to_simple(M.lambda()));
    int d = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (!bar.crossings[i]) continue;
        RF x = top[i] - mu[i];
        if (!x.is_constant() || x.constant_value().get_den() != 1)
            throw InternalError("constituent offset is not integral");
        d += static_cast<int>(x.constant_value().get_num().get_si());
    }
    return d;
}

bool constituent_above(const GeneralizedVerma& M, const Embedding& e, const std::vector<RF>& nu,
                       const std::vector<RF>& mu) {
    std::vector<RF> top = e.project(M.algebra().roots().fundamental_to_simple(M.lambda()));
    auto key = [&](const std::vector<RF>& w) {
        std::vector<Rational> k{Rational(-constituent_depth(M, e, w)), Rational(0)};
        for (std::size_t i = 0; i < w.size(); ++i) {
            RF x = w[i] - top[i];
            if (!x.is_constant()) throw InternalError("constituent offset is not constant");
            k[1] += x.constant_value();
            k.push_back(x.constant_value());
        }
        return k;
    };
    return key(nu) > key(mu);
}

SingularVectorResult build_singular_vector(const GeneralizedVerma& M, const Embedding& e, const std::vector<RF>& mu,
                                           const std::vector<RF>& fd_vector) {
    Parabolic bar = induced_bar_parabolic(M.parabolic(), e);
    auto cons = decompose_over_bar_levi(M.inducing(), e, bar.levi);
    SingularVectorResult res;
    res.mu = mu;
    RF pmu = p1_scalar(e, mu);
    for (auto& c : cons) {
        if (!constituent_above(M, e, c.weight, mu)) continue;
        RF pn = p1_scalar(e, c.weight);
        if (pn == pmu) {
            const RootSystem& srs = e.source->roots();
            auto f = [&](const std::vector<RF>& w) {
                std::string s;
                for (auto& x : srs.simple_to_fundamental(w)) s += (s.empty() ? "" : ",") + x.str();
                return "(" + s + ")";
            };
            throw MathRefusal("strong Condition B fails: p1" + f(mu) + " = p1" + f(c.weight));
        }
        for (Integer k = 0; k < c.multiplicity; ++k) {
            res.projector_weights.push_back(c.weight);
            res.projector_scalars.push_back(pn);
        }
    }
    VermaVector v = M.from_inducing(fd_vector);
    if (!res.projector_scalars.empty()) {
        UEAElement c = image_casimir(e);
        for (auto& s : res.projector_scalars) {
            VermaVector cv = M.act(c, v);
            axpy(cv, -s, v);
            v = std::move(cv);
        }
    }
    res.raw = v;
    res.zero = v.empty();
    res.vector = res.zero ? v : normalize(v);
    return res;
}

std::vector<SingularVectorResult> build_all_singular_vectors(const GeneralizedVerma& M, const Embedding& e) {
    Parabolic bar = induced_bar_parabolic(M.parabolic(), e);
    std::vector<SingularVectorResult> out;
    std::set<std::vector<RF>> done;
    for (auto& c : decompose_over_bar_levi(M.inducing(), e, bar.levi)) {
        if (!done.insert(c.weight).second) continue;
        for (auto& w : fd_singular_vectors(M.inducing(), e, bar.levi, c.weight))
            out.push_back(build_singular_vector(M, e, c.weight, w));
    }
    return out;
}

SingularReport verify_singular(const GeneralizedVerma& M, const Embedding& e, const VermaVector& v) {
    SingularReport r;
    const LieAlgebra& s = *e.source;
    r.pass = true;
    for (int i = 0; i < s.rank(); ++i) {
        bool ok = M.act(e.images[s.pos(i)], v).empty();
        r.generator_pass.push_back(ok);
        r.pass = r.pass && ok;
    }
    r.homogeneous = true;
    bool first = true;
    for (auto& [i, c] : v) {
        std::vector<RF> w = e.project(M.weight(i));
        if (first) r.mu = w;
        else if (w != r.mu) r.homogeneous = false;
        first = false;
    }
    r.pass = r.pass && r.homogeneous && !v.empty();
    return r;
}

UEAElement transpose_antiautomorphism(const UEAElement& u) { return u.transposed(); }

ShapovalovCertificate shapovalov_certificate(const GeneralizedVerma& M, const Embedding& e, const UEAElement& u) {
    const LieAlgebra& g = M.algebra();
    std::set<IntVec> weights;
    for (auto& [w, c] : u.terms()) {
        IntVec s(g.rank(), 0);
        for (int b : w) {
            IntVec x = g.weight(b);
            for (int i = 0; i < g.rank(); ++i) s[i] += x[i];
        }
        weights.insert(e.project(s));
    }
    if (weights.size() > 1) throw UsageError("Shapovalov certificate needs an element of a single weight");
    VermaVector v = M.act(u, M.highest_vector());
    VermaVector t = M.act(transpose_antiautomorphism(u), v);
    ShapovalovCertificate c;
    auto top = M.highest_vector().begin()->first;
    for (auto& [i, x] : t)
        if (i == top) c.raw = x;
    if (!c.raw.is_polynomial()) throw InternalError("Shapovalov value is not polynomial");
    c.poly = c.raw.is_zero() ? MultiPoly() : c.raw.num().primitive();
    if (!c.poly.is_zero() && !c.poly.is_constant()) c.roots = rational_roots(c.poly);
    return c;
}

}  // namespace gvb
