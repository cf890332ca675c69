#include "gvb/lie.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace gvb {

void axpy(AlgElement& y, const Rational& a, const AlgElement& x) {
    if (a == 0) return;
    for (auto& [b, c] : x) {
        auto it = y.find(b);
        if (it == y.end()) {
            y.emplace(b, a * c);
        } else {
            it->second += a * c;
            if (it->second == 0) y.erase(it);
        }
    }
}

AlgElement scaled(const AlgElement& x, const Rational& a) {
    AlgElement r;
    axpy(r, a, x);
    return r;
}

// ---- LieAlgebra ----

LieAlgebra::LieAlgebra(RootSystem rs, std::vector<std::vector<AlgElement>> table, std::string label)
    : rs_(std::move(rs)), table_(std::move(table)), label_(std::move(label)) {
    n_ = rs_.num_positive();
    r_ = rs_.rank();
    dim_ = 2 * n_ + r_;
    if (static_cast<int>(table_.size()) != dim_) throw InternalError("structure table has wrong size");
}

int LieAlgebra::root_vector(const IntVec& root) const {
    int k = rs_.root_index(root);
    if (k >= 0) return pos(k);
    IntVec n(root);
    for (auto& x : n) x = -x;
    k = rs_.root_index(n);
    if (k >= 0) return neg(k);
    return -1;
}

IntVec LieAlgebra::weight(int b) const {
    if (is_cartan(b)) return IntVec(r_, 0);
    IntVec w = rs_.positive_roots()[root_of(b)];
    if (is_negative(b))
        for (auto& x : w) x = -x;
    return w;
}

std::string LieAlgebra::name(int b, Style st) const {
    std::string idx;
    char letter = 'g';
    if (is_cartan(b)) {
        letter = 'h';
        idx = std::to_string(b - 2 * n_ + 1);
    } else {
        idx = (is_negative(b) ? "-" : "") + std::to_string(root_of(b) + 1);
    }
    if (st == Style::Unicode) {
        static const char* sub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
        std::string s(1, letter);
        for (char c : idx) s += c == '-' ? "₋" : sub[c - '0'];
        return s;
    }
    return std::string(1, letter) + "_{" + idx + "}";
}

int LieAlgebra::basis_from_name(const std::string& s0) const {
    std::string s;
    for (char c : s0)
        if (c != '_' && c != '{' && c != '}' && !std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || (s[0] != 'g' && s[0] != 'h')) throw UsageError("bad generator name: " + s0);
    int v;
    try {
        v = std::stoi(s.substr(1));
    } catch (...) {
        throw UsageError("bad generator name: " + s0);
    }
    if (s[0] == 'h') {
        if (v < 1 || v > r_) throw UsageError("no such Cartan generator: " + s0);
        return cartan(v - 1);
    }
    if (v == 0 || std::abs(v) > n_) throw UsageError("no such root vector: " + s0);
    return v > 0 ? pos(v - 1) : neg(-v - 1);
}

AlgElement LieAlgebra::bracket(const AlgElement& x, const AlgElement& y) const {
    AlgElement r;
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y) axpy(r, ca * cb, table_[a][b]);
    return r;
}

AlgElement LieAlgebra::coroot_element(const IntVec& root) const {
    AlgElement h;
    for (int j = 0; j < r_; ++j)
        if (root[j]) h[cartan(j)] = root[j];
    return h;
}

QMatrix LieAlgebra::killing_form() const {
    // ad matrices: ad_a[c][b] = coeff of c in [a, b]
    std::vector<QMatrix> ad(dim_, QMatrix(dim_, QVector(dim_, Rational(0))));
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b)
            for (auto& [c, v] : table_[a][b]) ad[a][c][b] = v;
    QMatrix k(dim_, QVector(dim_, Rational(0)));
    for (int a = 0; a < dim_; ++a)
        for (int b = a; b < dim_; ++b) {
            Rational s = 0;
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j)
                    if (ad[a][i][j] != 0 && ad[b][j][i] != 0) s += ad[a][i][j] * ad[b][j][i];
            k[a][b] = k[b][a] = s;
        }
    return k;
}

int LieAlgebra::consistency_errors() const {
    int errs = 0;
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b) {
            AlgElement s = table_[a][b];
            axpy(s, 1, table_[b][a]);
            if (!s.empty()) ++errs;
        }
    for (int a = 0; a < dim_; ++a)
        for (int b = a + 1; b < dim_; ++b)
            for (int c = b + 1; c < dim_; ++c) {
                AlgElement ea{{a, 1}}, eb{{b, 1}}, ec{{c, 1}};
                AlgElement j = bracket(ea, table_[b][c]);
                axpy(j, 1, bracket(eb, table_[c][a]));
                axpy(j, 1, bracket(ec, table_[a][b]));
                if (!j.empty()) ++errs;
            }
    return errs;
}

// ---- matrix realizations ----

namespace {

QMatrix zero_matrix(std::size_t n) { return QMatrix(n, QVector(n, Rational(0))); }

QMatrix commutator(const QMatrix& a, const QMatrix& b) {
    std::size_t n = a.size();
    QMatrix c = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j)
                    if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
            if (b[i][k] != 0)
                for (std::size_t j = 0; j < n; ++j)
                    if (a[k][j] != 0) c[i][j] -= b[i][k] * a[k][j];
        }
    return c;
}

QMatrix lin(const QMatrix& a, const Rational& s) {
    QMatrix r = a;
    for (auto& row : r)
        for (auto& x : row) x *= s;
    return r;
}

// Scalar s with a == s*b, or 0 if not proportional.
Rational proportion(const QMatrix& a, const QMatrix& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (b[i][j] == 0) {
                if (a[i][j] != 0) return 0;
                continue;
            }
            Rational t = a[i][j] / b[i][j];
            if (s == 0) s = t;
            else if (s != t) return 0;
        }
    return s;
}

// Cartan matrices: h_j acts by the simple root alpha_j (in epsilon coordinates).
void set_cartan_and_normalize(const RootSystem& rs, std::vector<QMatrix>& mats,
                              const std::function<int(int)>& pos_index,
                              const std::function<int(int)>& neg_index) {
    int N = rs.num_positive();
    for (int k = 0; k < N; ++k) {
        IntVec b = rs.positive_roots()[k];
        QVector bq(b.begin(), b.end());
        Rational len = rs.pairing(bq, bq);
        QMatrix target = zero_matrix(mats[0].size());
        for (int j = 0; j < rs.rank(); ++j)
            if (b[j]) {
                QMatrix h = lin(mats[2 * N + j], Rational(2 * b[j]) / len);
                for (std::size_t i = 0; i < h.size(); ++i) target[i][i] += h[i][i];
            }
        QMatrix c = commutator(mats[pos_index(k)], mats[neg_index(k)]);
        Rational s = proportion(c, target);
        if (s == 0) throw InternalError("realization: [g_b,g_-b] is not proportional to the coroot");
        mats[neg_index(k)] = lin(mats[neg_index(k)], 1 / s);
    }
}

}  // namespace

LieAlgebra from_matrices(const RootSystem& rs, const std::vector<QMatrix>& mats, const std::string& label) {
    int dim = rs.dimension();
    if (static_cast<int>(mats.size()) != dim) throw UsageError("from_matrices: wrong number of matrices");
    std::size_t n = mats[0].size();
    // columns: basis elements as flattened vectors
    QMatrix mt(dim, QVector(n * n));
    for (int b = 0; b < dim; ++b)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mt[b][i * n + j] = mats[b][i][j];
    // pick independent coordinates
    QMatrix ech = mt;
    std::vector<std::size_t> piv;
    {
        std::size_t r = 0;
        for (std::size_t c = 0; c < n * n && r < ech.size(); ++c) {
            std::size_t p = r;
            while (p < ech.size() && ech[p][c] == 0) ++p;
            if (p == ech.size()) continue;
            std::swap(ech[p], ech[r]);
            for (std::size_t i = r + 1; i < ech.size(); ++i) {
                if (ech[i][c] == 0) continue;
                Rational f = ech[i][c] / ech[r][c];
                for (std::size_t j = c; j < n * n; ++j) ech[i][j] -= f * ech[r][j];
            }
            piv.push_back(c);
            ++r;
        }
    }
    if (static_cast<int>(piv.size()) != dim) throw InternalError("from_matrices: basis is dependent");
    QMatrix sq(dim, QVector(dim));
    for (int i = 0; i < dim; ++i)
        for (int b = 0; b < dim; ++b) sq[i][b] = mt[b][piv[i]];
    QMatrix inv = inverse_q(sq);
    std::vector<std::vector<AlgElement>> table(dim, std::vector<AlgElement>(dim));
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            if (b < a) {
                table[a][b] = scaled(table[b][a], -1);
                continue;
            }
            QMatrix c = commutator(mats[a], mats[b]);
            QVector rhs(dim);
            for (int i = 0; i < dim; ++i) rhs[i] = c[piv[i] / n][piv[i] % n];
            AlgElement e;
            for (int k = 0; k < dim; ++k) {
                Rational s = 0;
                for (int i = 0; i < dim; ++i)
                    if (inv[k][i] != 0 && rhs[i] != 0) s += inv[k][i] * rhs[i];
                if (s != 0) e[k] = s;
            }
            // verify
            QMatrix chk = zero_matrix(n);
            for (auto& [k, v] : e)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) chk[i][j] += v * mats[k][i][j];
            if (chk != c) {
                std::string d;
                for (std::size_t i = 0; i < n; ++i) { for (std::size_t j = 0; j < n; ++j) d += c[i][j].get_str() + "/" + chk[i][j].get_str() + " "; d += "\n"; }
                throw InternalError("from_matrices: bracket leaves the span (" + std::to_string(a) + "," + std::to_string(b) + ")\n" + d);
            }
            table[a][b] = e;
        }
    return LieAlgebra(rs, std::move(table), label);
}

namespace {

// Sign flips (applied to g_b and g_-b together) that match the reference normalization of so(7).
const std::vector<int>& b3_flips() {
    static const std::vector<int> flips = {};
    return flips;
}

}  // namespace

LieAlgebra build_orthogonal_odd_with_flips(int n, const std::vector<int>& flips);

LieAlgebra build_orthogonal_odd_with_flips(int n, const std::vector<int>& flips) {
    RootSystem rs('B', n);
    int N = rs.num_positive();
    std::size_t size = 2 * n + 1;
    // basis e_1..e_n, e_0, e_-1..e_-n; e_0 rescaled by sqrt 2 so all entries are rational
    auto idx = [n](int i) { return i > 0 ? i - 1 : (i == 0 ? n : n - i); };
    auto E = [&](int i, int j) {
        QMatrix m = zero_matrix(size);
        m[idx(i)][idx(j)] = 1;
        return m;
    };
    auto add = [](QMatrix a, const QMatrix& b, int s) {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += s * b[i][j];
        return a;
    };
    auto root_matrix = [&](const QVector& e) {
        std::vector<int> plus, minus;
        for (int i = 0; i < n; ++i) {
            if (e[i] == 1) plus.push_back(i + 1);
            if (e[i] == -1) minus.push_back(i + 1);
        }
        if (plus.size() == 1 && minus.size() == 1) return add(E(plus[0], minus[0]), E(-minus[0], -plus[0]), -1);
        if (plus.size() == 2) return add(E(plus[0], -plus[1]), E(plus[1], -plus[0]), -1);
        if (minus.size() == 2) return add(E(-minus[0], minus[1]), E(-minus[1], minus[0]), -1);
        if (plus.size() == 1) return add(lin(E(plus[0], 0), 2), E(0, -plus[0]), -1);
        if (minus.size() == 1) return add(lin(E(-minus[0], 0), 2), E(0, minus[0]), -1);
        throw InternalError("unexpected B_n root");
    };
    std::vector<QMatrix> mats(rs.dimension());
    for (int k = 0; k < N; ++k) {
        IntVec r = rs.positive_roots()[k];
        QVector e = rs.simple_to_epsilon(QVector(r.begin(), r.end()));
        mats[k] = root_matrix(e);
        for (auto& x : e) x = -x;
        mats[N + k] = root_matrix(e);
    }
    for (int j = 0; j < n; ++j) {
        IntVec a(n, 0);
        a[j] = 1;
        QVector e = rs.simple_to_epsilon(QVector(a.begin(), a.end()));
        QMatrix h = zero_matrix(size);
        for (int k = 1; k <= n; ++k) {
            h[idx(k)][idx(k)] = e[k - 1];
            h[idx(-k)][idx(-k)] = -e[k - 1];
        }
        mats[2 * N + j] = h;
    }
    set_cartan_and_normalize(
        rs, mats, [](int k) { return k; }, [N](int k) { return N + k; });
    for (int k : flips) {
        mats[k] = lin(mats[k], -1);
        mats[N + k] = lin(mats[N + k], -1);
    }
    return from_matrices(rs, mats, "so(" + std::to_string(2 * n + 1) + ")");
}

LieAlgebra build_orthogonal_odd(int n) {
    return build_orthogonal_odd_with_flips(n, n == 3 ? b3_flips() : std::vector<int>{});
}

LieAlgebra build_special_linear(int n) {
    RootSystem rs('A', n);
    int N = rs.num_positive();
    std::size_t size = n + 1;
    std::vector<QMatrix> mats(rs.dimension(), zero_matrix(size));
    for (int k = 0; k < N; ++k) {
        IntVec r = rs.positive_roots()[k];
        int i = -1, j = -1;
        for (int t = 0; t < n; ++t)
            if (r[t]) {
                if (i < 0) i = t;
                j = t + 1;
            }
        mats[k][i][j] = 1;
        mats[N + k][j][i] = 1;
    }
    for (int j = 0; j < n; ++j) {
        mats[2 * N + j][j][j] = 1;
        mats[2 * N + j][j + 1][j + 1] = -1;
    }
    set_cartan_and_normalize(
        rs, mats, [](int k) { return k; }, [N](int k) { return N + k; });
    return from_matrices(rs, mats, "sl(" + std::to_string(n + 1) + ")");
}

LieAlgebra build_chevalley(const std::string& name) {
    RootSystem rs = RootSystem::parse(name);
    switch (rs.type()) {
        case 'A':
            return build_special_linear(rs.rank());
        case 'B':
            return build_orthogonal_odd(rs.rank());
        case 'G':
            return *g2_in_so7().source;
        default:
            throw CapabilityError("structure constants are not implemented for type " + rs.name());
    }
}

// ---- UEA ----

int pbw_key(const LieAlgebra& alg, int b) {
    int N = alg.num_positive();
    if (alg.is_negative(b)) return N - 1 - alg.root_of(b);
    if (alg.is_cartan(b)) return N + (b - 2 * N);
    return N + alg.rank() + b;
}

UEAElement UEAElement::generator(const LieAlgebra* alg, int b) {
    UEAElement u(alg);
    u.terms_[Word{b}] = RF(1);
    return u;
}

UEAElement UEAElement::scalar(const LieAlgebra* alg, const RF& c) {
    UEAElement u(alg);
    if (!c.is_zero()) u.terms_[Word{}] = c;
    return u;
}

void UEAElement::add(const Word& w, const RF& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

UEAElement& UEAElement::operator+=(const UEAElement& o) {
    if (!alg_) alg_ = o.alg_;
    for (auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& o) {
    if (!alg_) alg_ = o.alg_;
    for (auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

UEAElement UEAElement::operator*(const UEAElement& o) const {
    UEAElement r(alg_ ? alg_ : o.alg_);
    for (auto& [w1, c1] : terms_)
        for (auto& [w2, c2] : o.terms_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            r.add(w, c1 * c2);
        }
    return r;
}

UEAElement UEAElement::operator*(const RF& c) const {
    UEAElement r(alg_);
    for (auto& [w, v] : terms_) r.add(w, v * c);
    return r;
}

UEAElement UEAElement::normal_ordered() const {
    const LieAlgebra& g = *alg_;
    UEAElement out(alg_);
    std::map<Word, RF> work = terms_;
    while (!work.empty()) {
        // process longest words first so that pending contributions merge
        auto it = std::max_element(work.begin(), work.end(),
                                   [](auto& a, auto& b) { return a.first.size() < b.first.size(); });
        Word w = it->first;
        RF c = it->second;
        work.erase(it);
        if (c.is_zero()) continue;
        std::size_t i = 0;
        while (i + 1 < w.size() && pbw_key(g, w[i]) <= pbw_key(g, w[i + 1])) ++i;
        if (i + 1 >= w.size()) {
            out.add(w, c);
            continue;
        }
        auto push = [&](const Word& x, const RF& v) {
            auto jt = work.find(x);
            if (jt == work.end()) {
                work.emplace(x, v);
            } else {
                jt->second += v;
                if (jt->second.is_zero()) work.erase(jt);
            }
        };
        Word sw = w;
        std::swap(sw[i], sw[i + 1]);
        push(sw, c);
        for (auto& [z, v] : g.bracket(w[i], w[i + 1])) {
            Word nw(w.begin(), w.begin() + i);
            nw.push_back(z);
            nw.insert(nw.end(), w.begin() + i + 2, w.end());
            push(nw, c * RF(v));
        }
    }
    return out;
}

UEAElement UEAElement::transposed() const {
    const LieAlgebra& g = *alg_;
    UEAElement out(alg_);
    for (auto& [w, c] : terms_) {
        Word r(w.rbegin(), w.rend());
        for (auto& b : r) {
            if (g.is_positive(b)) b = g.neg(g.root_of(b));
            else if (g.is_negative(b)) b = g.pos(g.root_of(b));
        }
        out.add(r, c);
    }
    return out;
}

IntVec UEAElement::weight() const {
    const LieAlgebra& g = *alg_;
    IntVec wt;
    bool first = true;
    for (auto& [w, c] : terms_) {
        IntVec s(g.rank(), 0);
        for (int b : w) {
            IntVec x = g.weight(b);
            for (int i = 0; i < g.rank(); ++i) s[i] += x[i];
        }
        if (first) wt = s;
        else if (wt != s) throw UsageError("element is not weight-homogeneous");
        first = false;
    }
    if (first) wt.assign(g.rank(), 0);
    return wt;
}

std::string word_string(const LieAlgebra& g, const Word& w, Style st) {
    std::string s;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        if (!s.empty() && st == Style::Ascii) s += "*";
        s += g.name(w[i], st);
        int k = static_cast<int>(j - i);
        if (k > 1) s += (st == Style::Latex ? "^{" + std::to_string(k) + "}" : "^" + std::to_string(k));
        i = j;
    }
    return s;
}

std::string coefficient_prefix(const RF& c, bool first, bool has_word, Style st) {
    std::string s;
    if (c.is_constant()) {
        Rational q = c.constant_value();
        if (q < 0) s += "-";
        else if (!first) s += "+";
        Rational a = abs(q);
        if (a != 1 || !has_word) s += a.get_str() + (has_word && st == Style::Ascii ? "*" : "");
        return s;
    }
    if (!first) s += "+";
    s += "(" + c.str(st) + ")" + (has_word && st == Style::Ascii ? "*" : "");
    return s;
}

std::string UEAElement::str(Style st) const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [w, c] : terms_) {
        s += coefficient_prefix(c, first, !w.empty(), st);
        s += word_string(*alg_, w, st);
        first = false;
    }
    return s;
}

UEAElement parse_uea(const std::string& src, const LieAlgebra* alg) {
    std::string s;
    // strip latex decorations
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (src.compare(i, 5, "\\cdot") == 0) {
            i += 4;
            continue;
        }
        if (src.compare(i, 9, "v_\\lambda") == 0) {
            s += 'v';
            i += 8;
            continue;
        }
        if (src.compare(i, 11, "v_{\\lambda}") == 0) {
            s += 'v';
            i += 10;
            continue;
        }
        if (src.compare(i, 3, "−") == 0) {  // unicode minus
            s += '-';
            i += 2;
            continue;
        }
        s += src[i];
    }
    UEAElement out(alg);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto read_sub = [&]() -> std::string {
        // after g/h: optional _, optional {, optional sign, digits, optional }
        std::string t;
        if (i < s.size() && s[i] == '_') ++i;
        bool brace = i < s.size() && s[i] == '{';
        if (brace) ++i;
        if (i < s.size() && s[i] == '-') t += s[i++];
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) t += s[i++];
        if (brace) {
            if (i >= s.size() || s[i] != '}') throw UsageError("bad generator in '" + src + "'");
            ++i;
        }
        return t;
    };
    auto read_exp = [&]() -> int {
        skip();
        if (i >= s.size() || s[i] != '^') return 1;
        ++i;
        bool brace = i < s.size() && s[i] == '{';
        if (brace) ++i;
        std::size_t j = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (j == i) throw UsageError("bad exponent in '" + src + "'");
        int k = std::stoi(s.substr(j, i - j));
        if (brace) ++i;
        return k;
    };
    bool any = false;
    while (true) {
        skip();
        if (i >= s.size()) break;
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
            skip();
        } else if (any) {
            throw UsageError("expected + or - in '" + src + "'");
        }
        RF coef(sign);
        Word w;
        bool got = false;
        while (true) {
            skip();
            if (i >= s.size() || s[i] == '+' || s[i] == '-') break;
            char c = s[i];
            if (c == '*') {
                ++i;
                continue;
            }
            if (c == '(') {
                int depth = 0;
                std::size_t j = i;
                for (; j < s.size(); ++j) {
                    if (s[j] == '(') ++depth;
                    if (s[j] == ')' && --depth == 0) break;
                }
                if (j >= s.size()) throw UsageError("unbalanced parenthesis in '" + src + "'");
                RF v = parse_rf(s.substr(i + 1, j - i - 1));
                i = j + 1;
                int k = read_exp();
                for (int t = 0; t < k; ++t) coef *= v;
                got = true;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
                coef *= RF(parse_rational(s.substr(j, i - j)));
                got = true;
                continue;
            }
            if (c == 'g' || c == 'h') {
                ++i;
                std::string sub = read_sub();
                int b = alg->basis_from_name(std::string(1, c) + sub);
                int k = read_exp();
                for (int t = 0; t < k; ++t) w.push_back(b);
                got = true;
                continue;
            }
            if (c == 'v') {
                ++i;
                if (i < s.size() && s[i] == '_') {
                    ++i;
                    if (i < s.size() && s[i] == '{') {
                        while (i < s.size() && s[i] != '}') ++i;
                        ++i;
                    } else {
                        while (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i]))) ++i;
                    }
                }
                got = true;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i])) && s[i] != 'g' && s[i] != 'h' &&
                       s[i] != 'v')
                    ++i;
                std::string name = s.substr(j, i - j);
                if (i < s.size() && s[i] == '_') {
                    ++i;
                    bool brace = i < s.size() && s[i] == '{';
                    if (brace) ++i;
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) name += s[i++];
                    if (brace) ++i;
                } else {
                    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) name += s[i++];
                }
                RF v(MultiPoly::variable(name));
                int k = read_exp();
                for (int t = 0; t < k; ++t) coef *= v;
                got = true;
                continue;
            }
            throw UsageError(std::string("unexpected '") + c + "' in '" + src + "'");
        }
        if (!got) throw UsageError("empty term in '" + src + "'");
        out.add(w, coef);
        any = true;
    }
    return out;
}

UEAElement casimir(const LieAlgebra& alg) {
    QMatrix k = alg.killing_form();
    QMatrix kinv = inverse_q(k);
    UEAElement c(&alg);
    for (int a = 0; a < alg.dim(); ++a)
        for (int b = 0; b < alg.dim(); ++b)
            if (kinv[b][a] != 0) c.add(Word{a, b}, RF(kinv[b][a]));
    return c.normal_ordered();
}

// ---- embeddings ----

AlgElement Embedding::image(const AlgElement& x) const {
    AlgElement r;
    for (auto& [b, c] : x) axpy(r, c, images[b]);
    return r;
}

UEAElement Embedding::image(const UEAElement& u) const {
    UEAElement out(target.get());
    for (auto& [w, c] : u.terms()) {
        std::map<Word, RF> cur{{Word{}, c}};
        for (int b : w) {
            std::map<Word, RF> next;
            for (auto& [pw, pc] : cur)
                for (auto& [t, tc] : images[b]) {
                    Word nw = pw;
                    nw.push_back(t);
                    auto it = next.find(nw);
                    RF v = pc * RF(tc);
                    if (it == next.end()) next.emplace(nw, v);
                    else it->second += v;
                }
            cur = std::move(next);
        }
        for (auto& [pw, pc] : cur) out.add(pw, pc);
    }
    return out;
}

QVector Embedding::project(const QVector& t) const {
    QVector s(pr.size(), Rational(0));
    for (std::size_t i = 0; i < pr.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) s[i] += pr[i][j] * t[j];
    return s;
}

std::vector<RF> Embedding::project(const std::vector<RF>& t) const {
    std::vector<RF> s(pr.size());
    for (std::size_t i = 0; i < pr.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j)
            if (pr[i][j] != 0) s[i] += RF(pr[i][j]) * t[j];
    return s;
}

IntVec Embedding::project(const IntVec& t) const {
    QVector q = project(QVector(t.begin(), t.end()));
    IntVec r;
    for (auto& x : q) {
        if (x.get_den() != 1) throw InternalError("projection of an integral weight is not integral");
        r.push_back(static_cast<int>(x.get_num().get_si()));
    }
    return r;
}

QVector Embedding::lift(const QVector& s) const {
    QVector t(iota.size(), Rational(0));
    for (std::size_t i = 0; i < iota.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) t[i] += iota[i][j] * s[j];
    return t;
}

namespace {

// Coefficients of x in the span of `basis` (vectors over the ambient basis); empty optional if outside.
struct SpanSolver {
    int ambient;
    std::vector<int> piv;
    QMatrix inv;
    std::vector<AlgElement> basis;

    SpanSolver(const std::vector<AlgElement>& b, int ambient_dim) : ambient(ambient_dim), basis(b) {
        int m = static_cast<int>(b.size());
        QMatrix rows(m, QVector(ambient, Rational(0)));
        for (int k = 0; k < m; ++k)
            for (auto& [i, c] : b[k]) rows[k][i] = c;
        QMatrix ech = rows;
        std::size_t r = 0;
        for (int c = 0; c < ambient && r < ech.size(); ++c) {
            std::size_t p = r;
            while (p < ech.size() && ech[p][c] == 0) ++p;
            if (p == ech.size()) continue;
            std::swap(ech[p], ech[r]);
            for (std::size_t i = r + 1; i < ech.size(); ++i) {
                if (ech[i][c] == 0) continue;
                Rational f = ech[i][c] / ech[r][c];
                for (int j = c; j < ambient; ++j) ech[i][j] -= f * ech[r][j];
            }
            piv.push_back(c);
            ++r;
        }
        if (static_cast<int>(piv.size()) != m) throw InternalError("span basis is dependent");
        QMatrix sq(m, QVector(m));
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) sq[i][k] = rows[k][piv[i]];
        inv = inverse_q(sq);
    }

    bool solve(const AlgElement& x, std::vector<Rational>& out) const {
        int m = static_cast<int>(basis.size());
        out.assign(m, Rational(0));
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < m; ++i) {
                auto it = x.find(piv[i]);
                if (it != x.end() && inv[k][i] != 0) out[k] += inv[k][i] * it->second;
            }
        AlgElement chk;
        for (int k = 0; k < m; ++k) axpy(chk, out[k], basis[k]);
        axpy(chk, -1, x);
        return chk.empty();
    }
};

}  // namespace

Embedding embedding_from_simple_images(const RootSystem& srs, std::shared_ptr<const LieAlgebra> target,
                                       const std::vector<AlgElement>& e, const std::vector<AlgElement>& f,
                                       const std::string& label) {
    const LieAlgebra& g = *target;
    int N = srs.num_positive(), r = srs.rank(), dim = srs.dimension();
    if (static_cast<int>(e.size()) != r || static_cast<int>(f.size()) != r)
        throw UsageError("need one image per simple root");
    std::vector<AlgElement> img(dim);
    const auto& roots = srs.positive_roots();
    auto len = [&](const IntVec& v) {
        QVector q(v.begin(), v.end());
        return srs.pairing(q, q);
    };
    // Cartan: h_j = (<a_j,a_j>/2) [e_j, f_j]
    for (int j = 0; j < r; ++j) img[2 * N + j] = scaled(g.bracket(e[j], f[j]), len(roots[j]) / 2);
    std::vector<int> simple_of(N, -1);
    for (int k = 0; k < N; ++k) {
        if (srs.height(roots[k]) == 1) {
            int j = static_cast<int>(std::find(roots[k].begin(), roots[k].end(), 1) - roots[k].begin());
            img[k] = e[j];
            img[N + k] = f[j];
            continue;
        }
        int i = -1;
        IntVec rest;
        for (int t = 0; t < r; ++t) {
            rest = roots[k];
            rest[t] -= 1;
            if (srs.root_index(rest) >= 0) {
                i = t;
                break;
            }
        }
        int p = 0;
        IntVec tmp = rest;
        while (true) {
            tmp[i] -= 1;
            if (srs.root_index(tmp) < 0) break;
            ++p;
        }
        int kr = srs.root_index(rest);
        img[k] = scaled(g.bracket(e[i], img[kr]), frac(1, p + 1));
        img[N + k] = scaled(g.bracket(f[i], img[N + kr]), frac(1, p + 1));
        // normalize negative so that [g_x, g_-x] = (2/<x,x>) h_x
        AlgElement h;
        for (int j = 0; j < r; ++j) axpy(h, Rational(2 * roots[k][j]) / len(roots[k]), img[2 * N + j]);
        AlgElement c = g.bracket(img[k], img[N + k]);
        if (c.empty() || h.empty()) throw InternalError("degenerate subalgebra image");
        Rational s = c.begin()->second / h.at(c.begin()->first);
        if (scaled(h, s) != c) throw InternalError("subalgebra images are not normalized coroots");
        img[N + k] = scaled(img[N + k], 1 / s);
    }
    SpanSolver sol(img, g.dim());
    std::vector<std::vector<AlgElement>> table(dim, std::vector<AlgElement>(dim));
    std::vector<Rational> coeffs;
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            if (!sol.solve(g.bracket(img[a], img[b]), coeffs))
                throw MathRefusal("images do not close into a subalgebra of type " + srs.name());
            for (int k = 0; k < dim; ++k)
                if (coeffs[k] != 0) table[a][b][k] = coeffs[k];
        }
    Embedding emb;
    auto src = std::make_shared<LieAlgebra>(srs, table, label);
    if (src->consistency_errors() != 0) throw InternalError("induced structure table is inconsistent");
    emb.source = src;
    emb.target = target;
    emb.images = img;
    int tr = g.rank();
    emb.iota.assign(tr, QVector(r, Rational(0)));
    for (int j = 0; j < r; ++j)
        for (auto& [b, c] : img[2 * N + j]) {
            if (!g.is_cartan(b)) throw MathRefusal("Cartan images leave the ambient Cartan subalgebra");
            emb.iota[b - 2 * g.num_positive()][j] = c;
        }
    // pr = Fs^{-1} iota^T Ft
    QMatrix fsinv = inverse_q(srs.form());
    const QMatrix& ft = g.roots().form();
    QMatrix tmp(r, QVector(tr, Rational(0)));
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < tr; ++k)
            for (int l = 0; l < tr; ++l) tmp[j][k] += emb.iota[l][j] * ft[l][k];
    emb.pr.assign(r, QVector(tr, Rational(0)));
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < tr; ++k)
            for (int j = 0; j < r; ++j) emb.pr[i][k] += fsinv[i][j] * tmp[j][k];
    // Dynkin index
    Rational d = 0;
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            QVector ia(tr), ib(tr);
            for (int k = 0; k < tr; ++k) {
                ia[k] = emb.iota[k][a];
                ib[k] = emb.iota[k][b];
            }
            Rational lhs = g.roots().pairing(ia, ib), rhs = srs.form()[a][b];
            if (rhs == 0) {
                if (lhs != 0) throw InternalError("embedding does not scale the form");
                continue;
            }
            if (d == 0) d = lhs / rhs;
            else if (d != lhs / rhs) throw InternalError("embedding does not scale the form uniformly");
        }
    emb.dynkin_index = d;
    // weights of images must project correctly
    for (int b = 0; b < dim; ++b)
        for (auto& [t, c] : img[b]) {
            IntVec pw = emb.project(g.weight(t));
            if (pw != src->weight(b)) throw InternalError("image component has the wrong weight");
        }
    return emb;
}

Embedding g2_in_so7() {
    static const Embedding cached = [] {
        auto so7 = std::make_shared<const LieAlgebra>(build_orthogonal_odd(3));
        const LieAlgebra& g = *so7;
        std::vector<AlgElement> e{{{g.pos(0), 1}, {g.pos(2), 1}}, {{g.pos(1), 1}}};
        std::vector<AlgElement> f{{{g.neg(0), 1}, {g.neg(2), 1}}, {{g.neg(1), 1}}};
        return embedding_from_simple_images(RootSystem('G', 2), so7, e, f, "G2");
    }();
    return cached;
}

// ---- subalgebra closure ----

namespace {

std::string identify_component(const std::vector<std::vector<int>>& a) {
    int n = static_cast<int>(a.size());
    if (n == 1) return "A1";
    // count bond multiplicities
    int maxbond = 1;
    std::vector<int> degree(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && a[i][j]) {
                ++degree[i];
                maxbond = std::max(maxbond, a[i][j] * a[j][i]);
            }
    bool branch = std::any_of(degree.begin(), degree.end(), [](int d) { return d > 2; });
    if (maxbond == 3) return "G2";
    if (maxbond == 2) {
        if (n == 2) return "B2";
        if (n == 4) return "F4";
        // B vs C: in B_n the short root is at an end; find the double bond
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (a[i][j] == -2) {
                    // a_ij = -2 means a_j is shorter than a_i? a_ij = 2<ai,aj>/<aj,aj>
                    // |a_ij| > |a_ji| means a_j short
                    bool j_end = degree[j] == 1;
                    return std::string(j_end ? "B" : "C") + std::to_string(n);
                }
    }
    if (branch) {
        if (n >= 6) {
            // E or D
            int b = static_cast<int>(std::find_if(degree.begin(), degree.end(), [](int d) { return d > 2; }) -
                                     degree.begin());
            std::vector<int> arms;
            for (int j = 0; j < n; ++j)
                if (j != b && a[b][j]) {
                    int len = 1, prev = b, cur = j;
                    while (true) {
                        int next = -1;
                        for (int t = 0; t < n; ++t)
                            if (t != prev && t != cur && a[cur][t]) next = t;
                        if (next < 0) break;
                        prev = cur;
                        cur = next;
                        ++len;
                    }
                    arms.push_back(len);
                }
            std::sort(arms.begin(), arms.end());
            if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
            return "E" + std::to_string(n);
        }
        return "D" + std::to_string(n);
    }
    return "A" + std::to_string(n);
}

}  // namespace

SubalgebraReport generate_subalgebra(const LieAlgebra& g, const std::vector<AlgElement>& seeds) {
    int D = g.dim();
    // echelon basis as dense rows
    QMatrix ech;
    std::vector<int> piv;
    std::vector<AlgElement> basis;
    auto reduce = [&](QVector v) {
        for (std::size_t k = 0; k < ech.size(); ++k) {
            if (v[piv[k]] == 0) continue;
            Rational f = v[piv[k]] / ech[k][piv[k]];
            for (int j = 0; j < D; ++j)
                if (ech[k][j] != 0) v[j] -= f * ech[k][j];
        }
        return v;
    };
    auto insert = [&](const AlgElement& x) {
        QVector v(D, Rational(0));
        for (auto& [b, c] : x) v[b] = c;
        v = reduce(v);
        int p = -1;
        for (int j = 0; j < D; ++j)
            if (v[j] != 0) {
                p = j;
                break;
            }
        if (p < 0) return false;
        ech.push_back(v);
        piv.push_back(p);
        AlgElement e;
        for (int j = 0; j < D; ++j)
            if (v[j] != 0) e[j] = v[j];
        basis.push_back(e);
        return true;
    };
    for (auto& s : seeds) insert(s);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) insert(g.bracket(basis[i], basis[j]));
    SubalgebraReport rep;
    rep.dim = static_cast<int>(basis.size());
    rep.basis = basis;
    // toral part: elements of the closure inside the ambient Cartan
    std::vector<AlgElement> toral;
    {
        // intersect span(basis) with span(h): kernel of the projection to root coordinates
        int m = rep.dim;
        QMatrix rows;
        for (int b = 0; b < 2 * g.num_positive(); ++b) {
            QVector row(m, Rational(0));
            for (int k = 0; k < m; ++k) {
                auto it = basis[k].find(b);
                if (it != basis[k].end()) row[k] = it->second;
            }
            rows.push_back(row);
        }
        for (auto& ker : nullspace_q(rows, m)) {
            AlgElement h;
            for (int k = 0; k < m; ++k) axpy(h, ker[k], basis[k]);
            toral.push_back(h);
        }
    }
    rep.rank = static_cast<int>(toral.size());
    if (rep.rank == 0) {
        rep.type = "unknown";
        return rep;
    }
    // restricted weights of ambient root vectors on the toral part
    auto restricted = [&](int b) {
        QVector w(rep.rank, Rational(0));
        IntVec wt = g.weight(b);
        for (int t = 0; t < rep.rank; ++t)
            for (auto& [hb, c] : toral[t]) {
                int j = hb - 2 * g.num_positive();
                QVector aj(g.rank(), Rational(0));
                aj[j] = 1;
                w[t] += c * g.roots().pairing(aj, QVector(wt.begin(), wt.end()));
            }
        return w;
    };
    std::map<QVector, std::vector<int>> groups;
    for (int b = 0; b < 2 * g.num_positive(); ++b) groups[restricted(b)].push_back(b);
    std::vector<QVector> sroots;
    for (auto& [w, members] : groups) {
        QMatrix proj;
        for (auto& x : basis) {
            QVector v;
            for (int b : members) {
                auto it = x.find(b);
                v.push_back(it == x.end() ? Rational(0) : it->second);
            }
            proj.push_back(v);
        }
        std::size_t d = rank_q(proj);
        bool zero = std::all_of(w.begin(), w.end(), [](const Rational& q) { return q == 0; });
        if (d == 0) continue;
        if (zero || d != 1) {
            rep.type = "unknown";
            return rep;
        }
        sroots.push_back(w);
    }
    if (sroots.empty()) {
        rep.type = "abelian";
        return rep;
    }
    std::set<QVector> rootset(sroots.begin(), sroots.end());
    auto positive = [](const QVector& v) {
        for (auto& x : v)
            if (x != 0) return x > 0;
        return false;
    };
    std::vector<QVector> posr;
    for (auto& v : sroots)
        if (positive(v)) posr.push_back(v);
    std::vector<QVector> simple;
    for (auto& v : posr) {
        bool dec = false;
        for (auto& a : posr) {
            QVector d(v);
            for (std::size_t i = 0; i < d.size(); ++i) d[i] -= a[i];
            if (positive(d) && rootset.count(d)) dec = true;
        }
        if (!dec) simple.push_back(v);
    }
    int n = static_cast<int>(simple.size());
    if (n != rep.rank) {
        rep.type = "unknown";
        return rep;
    }
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 2));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int p = 0;
            QVector t = simple[i];
            while (true) {
                for (std::size_t k = 0; k < t.size(); ++k) t[k] += simple[j][k];
                if (!rootset.count(t)) break;
                ++p;
            }
            a[i][j] = -p;
        }
    rep.cartan_matrix = a;
    // connected components
    std::vector<int> comp(n, -1);
    std::vector<std::string> names;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> mem{s};
        comp[s] = static_cast<int>(names.size());
        for (std::size_t k = 0; k < mem.size(); ++k)
            for (int t = 0; t < n; ++t)
                if (comp[t] < 0 && a[mem[k]][t]) {
                    comp[t] = comp[s];
                    mem.push_back(t);
                }
        std::vector<std::vector<int>> sub(mem.size(), std::vector<int>(mem.size()));
        for (std::size_t x = 0; x < mem.size(); ++x)
            for (std::size_t y = 0; y < mem.size(); ++y) sub[x][y] = a[mem[x]][mem[y]];
        names.push_back(identify_component(sub));
    }
    std::sort(names.begin(), names.end());
    std::string t;
    for (auto& x : names) t += (t.empty() ? "" : "x") + x;
    rep.type = t;
    return rep;
}

}  // namespace gvb
