#include "gvb/fd.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

namespace gvb {

QVector apply(const SparseQ& m, const QVector& v) {
    QVector r(v.size(), Rational(0));
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j] == 0) continue;
        for (auto& [i, c] : m[j]) r[i] += c * v[j];
    }
    return r;
}

namespace {

std::vector<RF> apply_rf(const SparseQ& m, const std::vector<RF>& v) {
    std::vector<RF> r(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        for (auto& [i, c] : m[j]) r[i] += RF(c) * v[j];
    }
    return r;
}

SparseQ sparse_mul(const SparseQ& a, const SparseQ& b) {
    SparseQ c(b.size());
    for (std::size_t j = 0; j < b.size(); ++j)
        for (auto& [k, v] : b[j])
            for (auto& [i, w] : a[k]) {
                auto& x = c[j][i];
                x += v * w;
                if (x == 0) c[j].erase(i);
            }
    return c;
}

SparseQ sparse_lin(const SparseQ& a, const Rational& s, const SparseQ& b, const Rational& t) {
    SparseQ c(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        for (auto& [i, v] : a[j]) c[j][i] += s * v;
        for (auto& [i, v] : b[j]) {
            auto& x = c[j][i];
            x += t * v;
            if (x == 0) c[j].erase(i);
        }
    }
    return c;
}

bool is_positive_multiple(const QVector& u, const QVector& v) {
    Rational t = 0;
    bool set = false;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k] == 0) {
            if (v[k] != 0) return false;
            continue;
        }
        Rational s = v[k] / u[k];
        if (!set) t = s, set = true;
        else if (s != t) return false;
    }
    return t > 0;
}

void canonicalize(LSPath& p) {
    std::vector<QVector> out;
    for (auto& s : p.segments) {
        if (std::all_of(s.begin(), s.end(), [](const Rational& x) { return x == 0; })) continue;
        if (!out.empty() && is_positive_multiple(out.back(), s)) {
            for (std::size_t k = 0; k < s.size(); ++k) out.back()[k] += s[k];
        } else {
            out.push_back(s);
        }
    }
    p.segments = out;
}

}  // namespace

QVector LSPath::endpoint() const {
    QVector e;
    for (auto& s : segments) {
        if (e.empty()) e.assign(s.size(), Rational(0));
        for (std::size_t k = 0; k < s.size(); ++k) e[k] += s[k];
    }
    return e;
}

std::string LSPath::key() const {
    std::string k;
    for (auto& s : segments) {
        for (auto& x : s) k += x.get_str() + ",";
        k += ";";
    }
    return k;
}

// ---- Crystal ----

Crystal::Crystal(const IntMat& a, const IntVec& labels) : a_(a) {
    LSPath top;
    QVector s(labels.begin(), labels.end());
    top.segments.push_back(s);
    canonicalize(top);
    elems_.push_back(top);
    std::set<std::string> seen{top.key()};
    for (std::size_t k = 0; k < elems_.size(); ++k)
        for (std::size_t i = 0; i < a_.size(); ++i) {
            LSPath q;
            LSPath cur = elems_[k];
            if (!f(static_cast<int>(i), cur, q)) continue;
            if (seen.insert(q.key()).second) elems_.push_back(q);
        }
}

namespace {

std::vector<Rational> heights(const LSPath& p, int i) {
    std::vector<Rational> h{Rational(0)};
    for (auto& s : p.segments) h.push_back(h.back() + s[i]);
    return h;
}

QVector reflect(const QVector& v, const IntVec& alpha_row, int i) {
    QVector r(v);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] -= v[i] * alpha_row[k];
    return r;
}

QVector scale(const QVector& v, const Rational& t) {
    QVector r(v);
    for (auto& x : r) x *= t;
    return r;
}

}  // namespace

int Crystal::epsilon(int i, const LSPath& p) const {
    auto h = heights(p, i);
    Rational m = *std::min_element(h.begin(), h.end());
    if (m.get_den() != 1) throw InternalError("LS path has a non-integral local minimum");
    return static_cast<int>(-m.get_num().get_si());
}

int Crystal::phi(int i, const LSPath& p) const {
    auto h = heights(p, i);
    Rational m = *std::min_element(h.begin(), h.end());
    Rational d = h.back() - m;
    return static_cast<int>(d.get_num().get_si());
}

bool Crystal::f(int i, const LSPath& p, LSPath& out) const {
    auto h = heights(p, i);
    Rational m = *std::min_element(h.begin(), h.end());
    if (h.back() - m < 1) return false;
    std::size_t kp = 0;
    for (std::size_t k = 0; k < h.size(); ++k)
        if (h[k] == m) kp = k;
    std::size_t kc = kp;
    while (h[kc + 1] < m + 1) ++kc;
    Rational t = (m + 1 - h[kc]) / (h[kc + 1] - h[kc]);
    out.segments.clear();
    const IntVec& alpha = a_[i];
    for (std::size_t k = 0; k < p.segments.size(); ++k) {
        const QVector& s = p.segments[k];
        if (k < kp || k > kc) {
            out.segments.push_back(s);
        } else if (k < kc) {
            out.segments.push_back(reflect(s, alpha, i));
        } else {
            out.segments.push_back(reflect(scale(s, t), alpha, i));
            if (t < 1) out.segments.push_back(scale(s, 1 - t));
        }
    }
    canonicalize(out);
    return true;
}

bool Crystal::e(int i, const LSPath& p, LSPath& out) const {
    auto h = heights(p, i);
    Rational m = *std::min_element(h.begin(), h.end());
    if (m > -1) return false;
    std::size_t kq = 0;
    while (h[kq] != m) ++kq;
    std::size_t kc = kq - 1;
    while (h[kc] < m + 1) --kc;
    // crossing inside segment kc: from h[kc] >= m+1 down to h[kc+1] < m+1
    Rational t = (h[kc] - (m + 1)) / (h[kc] - h[kc + 1]);
    out.segments.clear();
    const IntVec& alpha = a_[i];
    for (std::size_t k = 0; k < p.segments.size(); ++k) {
        const QVector& s = p.segments[k];
        if (k < kc || k >= kq) {
            out.segments.push_back(s);
        } else if (k > kc) {
            out.segments.push_back(reflect(s, alpha, i));
        } else {
            if (t > 0) out.segments.push_back(scale(s, t));
            out.segments.push_back(reflect(scale(s, 1 - t), alpha, i));
        }
    }
    canonicalize(out);
    return true;
}

std::vector<int> Crystal::string(const LSPath& p, const std::vector<int>& word) const {
    std::vector<int> out;
    LSPath cur = p;
    for (int i : word) {
        int a = epsilon(i, cur);
        out.push_back(a);
        for (int k = 0; k < a; ++k) {
            LSPath n;
            if (!e(i, cur, n)) throw InternalError("raising operator failed along string");
            cur = n;
        }
    }
    if (!cur.segments.empty() && cur.key() != elems_[0].key()) throw InternalError("string does not end at the top");
    return out;
}

// ---- FiniteModule ----

std::vector<RF> FiniteModule::weight_simple(int i) const {
    std::vector<RF> w = lambda_simple_;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (depth_[i][k]) w[k] -= RF(depth_[i][k]);
    return w;
}

std::vector<RF> FiniteModule::weight_fundamental(int i) const {
    return alg_->roots().simple_to_fundamental(weight_simple(i));
}

std::string FiniteModule::monomial_string(int i, Style st) const {
    if (monomials_[i].empty()) return "v";
    UEAElement u(alg_);
    u.add(monomials_[i], RF(1));
    return u.str(st) + (st == Style::Ascii ? "*v" : "v");
}

bool FiniteModule::acts(int b) const { return alg_->is_cartan(b) || action_.count(b); }

const SparseQ& FiniteModule::matrix(int b) const {
    auto it = action_.find(b);
    if (it == action_.end()) throw UsageError(alg_->name(b) + " does not act on the Levi module");
    return it->second;
}

RF FiniteModule::cartan_value(int j, int i) const {
    const auto& f = alg_->roots().form();
    int c = j - 2 * alg_->num_positive();
    std::vector<RF> w = weight_simple(i);
    RF s;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (f[c][k] != 0) s += RF(f[c][k]) * w[k];
    return s;
}

std::vector<RF> FiniteModule::act(int b, const std::vector<RF>& v) const {
    if (alg_->is_cartan(b)) {
        std::vector<RF> r(v.size());
        for (int i = 0; i < dim(); ++i)
            if (!v[i].is_zero()) r[i] = cartan_value(b, i) * v[i];
        return r;
    }
    return apply_rf(matrix(b), v);
}

std::vector<RF> FiniteModule::act(const AlgElement& x, const std::vector<RF>& v) const {
    std::vector<RF> r(v.size());
    for (auto& [b, c] : x) {
        auto t = act(b, v);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!t[i].is_zero()) r[i] += RF(c) * t[i];
    }
    return r;
}

std::vector<RF> FiniteModule::act(const UEAElement& u, const std::vector<RF>& v) const {
    std::vector<RF> r(v.size());
    for (auto& [w, c] : u.terms()) {
        std::vector<RF> t = v;
        for (auto it = w.rbegin(); it != w.rend(); ++it) t = act(*it, t);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (!t[i].is_zero()) r[i] += c * t[i];
    }
    return r;
}

std::vector<RF> FiniteModule::top() const {
    std::vector<RF> v(dim());
    v[0] = RF(1);
    return v;
}

namespace {

// Solves A X = B column by column for injective A (dense rows x cols).
std::vector<QVector> solve_many(const QMatrix& a, std::size_t cols, const std::vector<QVector>& rhs) {
    std::size_t rows = a.size();
    QMatrix m = a;
    for (std::size_t i = 0; i < rows; ++i)
        for (auto& b : rhs) m[i].push_back(b[i]);
    std::size_t total = cols + rhs.size();
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < total; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < total; ++j)
                if (m[r][j] != 0) m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    if (piv.size() != cols) throw InternalError("raising images are not injective on a weight space");
    for (std::size_t i = r; i < rows; ++i)
        for (std::size_t j = cols; j < total; ++j)
            if (m[i][j] != 0) throw InternalError("lowering image leaves the weight space");
    std::vector<QVector> out(rhs.size(), QVector(cols));
    for (std::size_t k = 0; k < rhs.size(); ++k)
        for (std::size_t t = 0; t < cols; ++t) out[k][piv[t]] = m[t][cols + k];
    return out;
}

}  // namespace

FiniteModule build_fd_module(const LieAlgebra& alg, const std::vector<int>& levi0, const std::vector<RF>& lambda) {
    const RootSystem& rs = alg.roots();
    int r = rs.rank();
    if (static_cast<int>(lambda.size()) != r) throw UsageError("highest weight has the wrong number of coordinates");
    std::vector<int> levi = levi0;
    std::sort(levi.begin(), levi.end());
    int s = static_cast<int>(levi.size());
    IntVec labels(s);
    for (int k = 0; k < s; ++k) {
        const RF& c = lambda[levi[k]];
        if (!c.is_constant() || c.constant_value().get_den() != 1 || c.constant_value() < 0)
            throw UsageError("highest weight is not dominant integral on the Levi subalgebra");
        labels[k] = static_cast<int>(c.constant_value().get_num().get_si());
    }
    IntMat a(s, IntVec(s));
    for (int k = 0; k < s; ++k)
        for (int l = 0; l < s; ++l) a[k][l] = rs.cartan()[levi[k]][levi[l]];
    FiniteModule m;
    m.alg_ = &alg;
    m.levi_ = levi;
    m.lambda_ = lambda;
    m.lambda_simple_ = rs.fundamental_to_simple(lambda);
    std::vector<int> local(r, -1);
    for (int k = 0; k < s; ++k) local[levi[k]] = k;
    m.word_ = s ? longest_word(rs, levi) : std::vector<int>{};
    std::vector<int> lword;
    for (int g : m.word_) lword.push_back(local[g]);

    Crystal cr(a, labels);
    struct Entry {
        IntVec depth;
        std::vector<int> str;
        Word mono;
    };
    std::vector<Entry> entries;
    for (auto& p : cr.elements()) {
        Entry e;
        e.str = cr.string(p, lword);
        e.depth.assign(r, 0);
        for (std::size_t t = 0; t < lword.size(); ++t)
            for (int k = 0; k < e.str[t]; ++k) {
                e.mono.push_back(alg.neg(m.word_[t]));
                e.depth[m.word_[t]] += 1;
            }
        entries.push_back(e);
    }
    std::sort(entries.begin(), entries.end(), [&](const Entry& x, const Entry& y) {
        int hx = rs.height(x.depth), hy = rs.height(y.depth);
        if (hx != hy) return hx < hy;
        if (x.depth != y.depth) return x.depth > y.depth;
        return x.str > y.str;
    });
    int dim = static_cast<int>(entries.size());
    for (auto& e : entries) {
        m.monomials_.push_back(e.mono);
        m.strings_.push_back(e.str);
        m.depth_.push_back(e.depth);
    }
    std::map<IntVec, std::vector<int>> spaces;
    for (int i = 0; i < dim; ++i) spaces[m.depth_[i]].push_back(i);
    std::vector<SparseQ> E(s, SparseQ(dim)), F(s, SparseQ(dim));
    auto pairing = [&](const IntVec& d, int i) {
        // <wt, alpha_i^vee> for depth d
        int v = labels[i];
        for (int k = 0; k < s; ++k) v -= d[levi[k]] * a[k][i];
        return v;
    };
    // R(f_j y) as map (i, row) -> value
    auto raise_images = [&](int j, const QVector& y, const IntVec& ydepth) {
        std::map<std::pair<int, int>, Rational> out;
        for (int i = 0; i < s; ++i) {
            QVector t = gvb::apply(F[j], gvb::apply(E[i], y));
            if (i == j) {
                int pv = pairing(ydepth, i);
                for (int k = 0; k < dim; ++k)
                    if (y[k] != 0) t[k] += pv * y[k];
            }
            for (int k = 0; k < dim; ++k)
                if (t[k] != 0) out[{i, k}] = t[k];
        }
        return out;
    };
    std::vector<std::pair<IntVec, std::vector<int>>> order(spaces.begin(), spaces.end());
    std::sort(order.begin(), order.end(), [&](auto& x, auto& y) {
        return rs.height(x.first) < rs.height(y.first);
    });
    for (auto& [d, members] : order) {
        if (rs.height(d) == 0) continue;
        std::vector<std::map<std::pair<int, int>, Rational>> cols;
        for (int b : members) {
            const Word& w = m.monomials_[b];
            QVector y(dim, Rational(0));
            y[0] = 1;
            IntVec yd(r, 0);
            for (std::size_t t = w.size(); t-- > 1;) {
                int j = local[alg.root_of(w[t])];
                y = gvb::apply(F[j], y);
                yd[levi[j]] += 1;
            }
            int j1 = local[alg.root_of(w[0])];
            cols.push_back(raise_images(j1, y, yd));
        }
        std::vector<std::tuple<int, int, std::map<std::pair<int, int>, Rational>>> rhs;
        for (int j = 0; j < s; ++j) {
            IntVec below = d;
            below[levi[j]] -= 1;
            auto it = spaces.find(below);
            if (it == spaces.end()) continue;
            for (int c : it->second) {
                QVector y(dim, Rational(0));
                y[c] = 1;
                rhs.emplace_back(j, c, raise_images(j, y, below));
            }
        }
        std::set<std::pair<int, int>> keys;
        for (auto& c : cols)
            for (auto& [k, v] : c) keys.insert(k);
        for (auto& [j, c, mp] : rhs)
            for (auto& [k, v] : mp) keys.insert(k);
        std::vector<std::pair<int, int>> kv(keys.begin(), keys.end());
        std::map<std::pair<int, int>, int> row;
        for (std::size_t t = 0; t < kv.size(); ++t) row[kv[t]] = static_cast<int>(t);
        QMatrix A(kv.size(), QVector(members.size(), Rational(0)));
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (auto& [k, v] : cols[c]) A[row[k]][c] = v;
        std::vector<QVector> B;
        for (auto& [j, c, mp] : rhs) {
            QVector b(kv.size(), Rational(0));
            for (auto& [k, v] : mp) b[row[k]] = v;
            B.push_back(b);
        }
        auto X = solve_many(A, members.size(), B);
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (auto& [k, v] : cols[c]) E[k.first][members[c]][k.second] = v;
        for (std::size_t t = 0; t < rhs.size(); ++t) {
            auto& [j, c, mp] = rhs[t];
            for (std::size_t q = 0; q < members.size(); ++q)
                if (X[t][q] != 0) F[j][c][members[q]] = X[t][q];
        }
    }
    for (int k = 0; k < s; ++k) {
        m.action_[alg.pos(levi[k])] = E[k];
        m.action_[alg.neg(levi[k])] = F[k];
    }
    // remaining Levi root vectors through brackets
    for (int k : rs.levi_positive(levi)) {
        const IntVec& xi = rs.positive_roots()[k];
        if (rs.height(xi) == 1) continue;
        for (int sign : {1, -1}) {
            bool done = false;
            for (int i : levi) {
                IntVec rest = xi;
                rest[i] -= 1;
                int kr = rs.root_index(rest);
                if (kr < 0) continue;
                int gi = sign > 0 ? alg.pos(i) : alg.neg(i);
                int gr = sign > 0 ? alg.pos(kr) : alg.neg(kr);
                int gx = sign > 0 ? alg.pos(k) : alg.neg(k);
                auto br = alg.bracket(gi, gr);
                auto it = br.find(gx);
                if (it == br.end()) continue;
                if (!m.action_.count(gr)) continue;
                SparseQ c = sparse_lin(sparse_mul(m.action_.at(gi), m.action_.at(gr)), 1,
                                       sparse_mul(m.action_.at(gr), m.action_.at(gi)), -1);
                for (auto& col : c)
                    for (auto& [row, v] : col) v /= it->second;
                m.action_[gx] = c;
                done = true;
                break;
            }
            if (!done) throw InternalError("could not derive a Levi root action");
        }
    }
    return m;
}

// ---- characters ----

Character fd_character(const FiniteModule& m) {
    Character c;
    for (int i = 0; i < m.dim(); ++i) c[m.weight_simple(i)] += 1;
    return c;
}

Character freudenthal_character(const RootSystem& rs, const std::vector<int>& levi0,
                                const std::vector<RF>& lambda) {
    std::vector<int> levi = levi0;
    std::sort(levi.begin(), levi.end());
    int s = static_cast<int>(levi.size()), r = rs.rank();
    std::vector<RF> lam_simple = rs.fundamental_to_simple(lambda);
    if (s == 0) return Character{{lam_simple, 1}};
    const QMatrix& F = rs.form();
    IntVec labels(s);
    for (int k = 0; k < s; ++k) {
        const RF& c = lambda[levi[k]];
        if (!c.is_constant() || c.constant_value().get_den() != 1 || c.constant_value() < 0)
            throw UsageError("highest weight is not dominant integral on the Levi subalgebra");
        labels[k] = static_cast<int>(c.constant_value().get_num().get_si());
    }
    // <lambda, alpha_k> for k in levi
    QVector lp(r, Rational(0));
    for (int k : levi) {
        QVector ek(r, Rational(0));
        ek[k] = 1;
        lp[k] = labels[std::find(levi.begin(), levi.end(), k) - levi.begin()] * F[k][k] / 2;
    }
    QVector rho = rs.rho(levi);
    auto pair_lambda = [&](const QVector& d) {
        // <lambda, d> for d in the span of Levi simple roots
        Rational v = 0;
        for (int k : levi) v += lp[k] * d[k];
        return v;
    };
    auto pos = rs.levi_positive(levi);
    // lowest weight depth: lambda - w0 lambda
    auto w0 = weyl_group(rs, levi).back().matrix;
    QVector lam_ss(r, Rational(0));
    {
        QVector c(r, Rational(0));
        for (int k = 0; k < s; ++k) c[levi[k]] = labels[k];
        lam_ss = rs.fundamental_to_simple(c);
    }
    QVector low = gvb::apply(w0, lam_ss);
    IntVec dmax(r, 0);
    for (int k : levi) {
        Rational d = lam_ss[k] - low[k];
        dmax[k] = static_cast<int>(d.get_num().get_si() / d.get_den().get_si());
    }
    // enumerate depth vectors in the box by height
    std::vector<IntVec> box{IntVec(r, 0)};
    for (int k : levi) {
        std::vector<IntVec> next;
        for (auto& d : box)
            for (int t = 0; t <= dmax[k]; ++t) {
                IntVec e = d;
                e[k] = t;
                next.push_back(e);
            }
        box = next;
    }
    std::sort(box.begin(), box.end(), [&](const IntVec& x, const IntVec& y) { return rs.height(x) < rs.height(y); });
    std::map<IntVec, Integer> mult;
    QVector lr(r);
    auto qv = [](const IntVec& v) { return QVector(v.begin(), v.end()); };
    for (auto& d : box) {
        if (rs.height(d) == 0) {
            mult[d] = 1;
            continue;
        }
        QVector dq = qv(d);
        // denominator: <lambda+rho,lambda+rho> - <mu+rho,mu+rho> = 2<lambda+rho,d> - <d,d>
        Rational den = 2 * (pair_lambda(dq) + rs.pairing(rho, dq)) - rs.pairing(dq, dq);
        Rational num = 0;
        for (int k : pos) {
            const IntVec& al = rs.positive_roots()[k];
            QVector aq = qv(al);
            for (int j = 1;; ++j) {
                IntVec dd = d;
                bool ok = true;
                for (int t = 0; t < r; ++t) {
                    dd[t] -= j * al[t];
                    if (dd[t] < 0) ok = false;
                }
                if (!ok) break;
                auto it = mult.find(dd);
                if (it == mult.end() || it->second == 0) continue;
                // <mu + j alpha, alpha> with mu + j alpha = lambda - dd
                Rational p = pair_lambda(aq) - rs.pairing(qv(dd), aq);
                num += Rational(it->second) * p;
            }
        }
        if (den == 0) {
            if (num != 0) throw InternalError("Freudenthal recursion hit a zero denominator");
            continue;
        }
        Rational v = 2 * num / den;
        if (v.get_den() != 1 || v < 0) throw InternalError("Freudenthal produced a non-integral multiplicity");
        if (v != 0) mult[d] = v.get_num();
    }
    Character ch;
    for (auto& [d, c] : mult) {
        if (c == 0) continue;
        std::vector<RF> w = lam_simple;
        for (int t = 0; t < r; ++t)
            if (d[t]) w[t] -= RF(d[t]);
        ch[w] += c;
    }
    return ch;
}

Character project_character(const Character& c, const Embedding& e) {
    Character out;
    for (auto& [w, m] : c) out[e.project(w)] += m;
    return out;
}

Integer character_dimension(const Character& c) {
    Integer s = 0;
    for (auto& [w, m] : c) s += m;
    return s;
}

namespace {

// Numeric difference a-b; false if it is not constant.
bool constant_difference(const std::vector<RF>& a, const std::vector<RF>& b, QVector& out) {
    out.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
        RF d = a[i] - b[i];
        if (!d.is_constant()) return false;
        out.push_back(d.constant_value());
    }
    return true;
}

}  // namespace

std::vector<Constituent> decompose_over_bar_levi(const FiniteModule& m, const Embedding& e,
                                                 const std::vector<int>& bar_levi) {
    return decompose_character(project_character(fd_character(m), e), e.source->roots(), bar_levi);
}

std::vector<Constituent> decompose_character(Character p, const RootSystem& srs, const std::vector<int>& bar_levi) {
    std::vector<Constituent> out;
    auto in_cone = [&](const QVector& d) {
        bool nonzero = false;
        for (int i = 0; i < srs.rank(); ++i) {
            bool in = std::find(bar_levi.begin(), bar_levi.end(), i) != bar_levi.end();
            if (d[i] != 0) nonzero = true;
            if (d[i] < 0 || (!in && d[i] != 0) || d[i].get_den() != 1) return false;
        }
        return nonzero;
    };
    while (!p.empty()) {
        const std::vector<RF>* best = nullptr;
        for (auto& [w, c] : p) {
            bool maximal = true;
            QVector d;
            for (auto& [v, c2] : p)
                if (constant_difference(v, w, d) && in_cone(d)) {
                    maximal = false;
                    break;
                }
            if (maximal) {
                best = &w;
                break;
            }
        }
        if (!best) throw InternalError("no maximal weight in projected character");
        std::vector<RF> mu = *best;
        Integer n = p[mu];
        if (n < 0) throw InternalError("negative multiplicity in branching");
        std::vector<RF> fund = srs.simple_to_fundamental(mu);
        Character sub = freudenthal_character(srs, bar_levi, fund);
        for (auto& [w, c] : sub) {
            auto& x = p[w];
            x -= n * c;
            if (x == 0) p.erase(w);
        }
        Constituent con{mu, n, character_dimension(sub)};
        out.push_back(con);
    }
    for (auto& [w, c] : p)
        if (c != 0) throw InternalError("branching left a remainder");
    return out;
}

std::vector<std::vector<RF>> fd_singular_vectors(const FiniteModule& m, const Embedding& e,
                                                 const std::vector<int>& bar_levi, const std::vector<RF>& mu) {
    std::vector<int> sub;
    for (int i = 0; i < m.dim(); ++i)
        if (e.project(m.weight_simple(i)) == mu) sub.push_back(i);
    std::vector<std::vector<RF>> out;
    if (sub.empty()) return out;
    QMatrix rows;
    for (int i : bar_levi) {
        AlgElement x = e.images[e.source->pos(i)];
        std::vector<QVector> block(m.dim(), QVector(sub.size(), Rational(0)));
        for (std::size_t c = 0; c < sub.size(); ++c) {
            std::vector<RF> v(m.dim());
            v[sub[c]] = RF(1);
            auto t = m.act(x, v);
            for (int k = 0; k < m.dim(); ++k)
                if (!t[k].is_zero()) block[k][c] = t[k].constant_value();
        }
        for (auto& b : block) rows.push_back(b);
    }
    auto ker = nullspace_q(rows, sub.size());
    for (auto& k : ker) {
        std::vector<RF> v(m.dim());
        for (std::size_t c = 0; c < sub.size(); ++c) v[sub[c]] = RF(k[c]);
        out.push_back(normalize_vector(v));
    }
    return out;
}

std::vector<RF> evaluate_on_top(const FiniteModule& m, const UEAElement& u) { return m.act(u, m.top()); }

int find_monomial(const FiniteModule& m, const Word& w) {
    for (int i = 0; i < m.dim(); ++i)
        if (m.monomial(i) == w) return i;
    return -1;
}

bool proportional(const std::vector<RF>& a, const std::vector<RF>& b, RF* ratio) {
    if (a.size() != b.size()) return false;
    std::size_t k = 0;
    while (k < b.size() && b[k].is_zero()) ++k;
    if (k == b.size()) return false;
    RF r = a[k] / b[k];
    if (r.is_zero()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != r * b[i]) return false;
    if (ratio) *ratio = r;
    return true;
}

}  // namespace gvb
