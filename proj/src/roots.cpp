#include "gvb/roots.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace gvb {

namespace {

IntMat cartan_matrix(char type, int n) {
    IntMat a(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (type) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case 'B':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            if (n >= 2) a[n - 2][n - 1] = -2;
            break;
        case 'C':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            if (n >= 2) a[n - 1][n - 2] = -2;
            break;
        case 'D':
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            link(n - 3, n - 1);
            break;
        case 'E':
            link(0, 2);
            link(1, 3);
            for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
            break;
        case 'F':
            link(0, 1);
            link(1, 2);
            link(2, 3);
            a[1][2] = -2;
            break;
        case 'G':
            a[0][1] = -1;
            a[1][0] = -3;
            break;
        default:
            throw UsageError(std::string("unknown Dynkin type ") + type);
    }
    return a;
}

// Squared lengths of simple roots.
std::vector<int> simple_lengths(char type, int n) {
    std::vector<int> d(n, 2);
    if (type == 'B') d[n - 1] = 1;
    if (type == 'C') {
        for (int i = 0; i + 1 < n; ++i) d[i] = 2;
        d[n - 1] = 4;
    }
    if (type == 'F') d = {4, 4, 2, 2};
    if (type == 'G') d = {2, 6};
    return d;
}

}  // namespace

RootSystem::RootSystem(char type, int rank) : type_(type), rank_(rank) {
    bool ok = (type == 'A' && rank >= 1) || (type == 'B' && rank >= 2) || (type == 'C' && rank >= 2) ||
              (type == 'D' && rank >= 4) || (type == 'E' && rank >= 6 && rank <= 8) ||
              (type == 'F' && rank == 4) || (type == 'G' && rank == 2);
    if (!ok) throw CapabilityError("unsupported root system " + std::string(1, type) + std::to_string(rank));
    cartan_ = cartan_matrix(type, rank);
    auto d = simple_lengths(type, rank);
    form_.assign(rank, QVector(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) form_[i][j] = frac(cartan_[i][j] * d[j], 2);
    // positive roots by strings
    std::vector<IntVec> roots;
    std::set<IntVec> seen;
    for (int i = 0; i < rank; ++i) {
        IntVec e(rank, 0);
        e[i] = 1;
        roots.push_back(e);
        seen.insert(e);
    }
    for (std::size_t k = 0; k < roots.size(); ++k) {
        IntVec b = roots[k];
        for (int i = 0; i < rank; ++i) {
            int pair = 0;
            for (int j = 0; j < rank; ++j) pair += b[j] * cartan_[j][i];
            int q = 0;
            IntVec t = b;
            while (true) {
                t[i] -= 1;
                if (!seen.count(t)) break;
                ++q;
            }
            int p = q - pair;
            if (p > 0) {
                IntVec n = b;
                n[i] += 1;
                if (!seen.count(n)) {
                    seen.insert(n);
                    roots.push_back(n);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [&](const IntVec& a, const IntVec& b) {
        int ha = height(a), hb = height(b);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    pos_ = roots;
    for (std::size_t k = 0; k < pos_.size(); ++k) index_[pos_[k]] = static_cast<int>(k);
    QMatrix at(rank, QVector(rank));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) at[i][j] = cartan_[j][i];
    cartan_inv_t_ = inverse_q(at);
}

RootSystem RootSystem::parse(const std::string& name) {
    if (name.size() < 2) throw UsageError("bad root system name: " + name);
    char t = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    int r;
    try {
        r = std::stoi(name.substr(1));
    } catch (...) {
        throw UsageError("bad root system name: " + name);
    }
    return RootSystem(t, r);
}

int RootSystem::root_index(const IntVec& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? -1 : it->second;
}

bool RootSystem::is_root(const IntVec& v) const {
    if (root_index(v) >= 0) return true;
    IntVec n(v);
    for (auto& x : n) x = -x;
    return root_index(n) >= 0;
}

int RootSystem::height(const IntVec& v) const {
    int h = 0;
    for (int x : v) h += x;
    return h;
}

Rational RootSystem::pairing(const QVector& a, const QVector& b) const {
    Rational s = 0;
    for (int i = 0; i < rank_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < rank_; ++j)
            if (b[j] != 0) s += a[i] * form_[i][j] * b[j];
    }
    return s;
}

Rational RootSystem::coroot_pairing(const QVector& a, const IntVec& root) const {
    QVector r(root.begin(), root.end());
    return 2 * pairing(a, r) / pairing(r, r);
}

QVector RootSystem::fundamental_to_simple(const QVector& c) const {
    QVector s(rank_, Rational(0));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) s[i] += cartan_inv_t_[i][j] * c[j];
    return s;
}

QVector RootSystem::simple_to_fundamental(const QVector& s) const {
    QVector c(rank_, Rational(0));
    for (int j = 0; j < rank_; ++j)
        for (int i = 0; i < rank_; ++i) c[j] += Rational(cartan_[i][j]) * s[i];
    return c;
}

std::vector<RF> RootSystem::fundamental_to_simple(const std::vector<RF>& c) const {
    std::vector<RF> s(rank_);
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            if (cartan_inv_t_[i][j] != 0) s[i] += RF(cartan_inv_t_[i][j]) * c[j];
    return s;
}

std::vector<RF> RootSystem::simple_to_fundamental(const std::vector<RF>& s) const {
    std::vector<RF> c(rank_);
    for (int j = 0; j < rank_; ++j)
        for (int i = 0; i < rank_; ++i)
            if (cartan_[i][j]) c[j] += RF(cartan_[i][j]) * s[i];
    return c;
}

QVector RootSystem::simple_to_epsilon(const QVector& s) const {
    int n = rank_;
    switch (type_) {
        case 'A': {
            QVector e(n + 1, Rational(0));
            for (int i = 0; i < n; ++i) {
                e[i] += s[i];
                e[i + 1] -= s[i];
            }
            return e;
        }
        case 'B':
        case 'C':
        case 'D': {
            QVector e(n, Rational(0));
            for (int i = 0; i + 1 < n; ++i) {
                e[i] += s[i];
                e[i + 1] -= s[i];
            }
            if (type_ == 'B') e[n - 1] += s[n - 1];
            if (type_ == 'C') e[n - 1] += 2 * s[n - 1];
            if (type_ == 'D') {
                // D: last two simple roots e_{n-1}-e_n (index n-2), e_{n-1}+e_n (index n-1)
                e.assign(n, Rational(0));
                for (int i = 0; i + 2 < n; ++i) {
                    e[i] += s[i];
                    e[i + 1] -= s[i];
                }
                e[n - 2] += s[n - 2] + s[n - 1];
                e[n - 1] += s[n - 1] - s[n - 2];
            }
            return e;
        }
        default:
            throw CapabilityError("epsilon coordinates are only available for classical types");
    }
}

std::string RootSystem::epsilon_string(const IntVec& root) const {
    QVector s(root.begin(), root.end());
    QVector e = simple_to_epsilon(s);
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        std::string name = "e" + std::to_string(i + 1);
        if (e[i] < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        if (abs(e[i]) != 1) out += Rational(abs(e[i])).get_str();
        out += name;
    }
    return out.empty() ? "0" : out;
}

std::vector<int> RootSystem::levi_positive(const std::vector<int>& levi) const {
    std::vector<int> out;
    for (int k = 0; k < num_positive(); ++k) {
        bool in = true;
        for (int i = 0; i < rank_; ++i)
            if (pos_[k][i] && std::find(levi.begin(), levi.end(), i) == levi.end()) in = false;
        if (in) out.push_back(k);
    }
    return out;
}

QVector RootSystem::rho(const std::vector<int>& levi) const {
    QVector r(rank_, Rational(0));
    for (int k : levi_positive(levi))
        for (int i = 0; i < rank_; ++i) r[i] += frac(pos_[k][i], 2);
    return r;
}

QVector RootSystem::rho() const {
    std::vector<int> all(rank_);
    for (int i = 0; i < rank_; ++i) all[i] = i;
    return rho(all);
}

IntMat RootSystem::reflection(int i) const {
    // s_i(a_j) = a_j - A_ji a_i ; column j is the image of a_j
    IntMat m(rank_, IntVec(rank_, 0));
    for (int j = 0; j < rank_; ++j) {
        m[j][j] += 1;
        m[i][j] -= cartan_[j][i];
    }
    return m;
}

IntVec apply(const IntMat& m, const IntVec& v) {
    IntVec r(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

QVector apply(const IntMat& m, const QVector& v) {
    QVector r(m.size(), Rational(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (m[i][j]) r[i] += m[i][j] * v[j];
    return r;
}

std::vector<RF> apply(const IntMat& m, const std::vector<RF>& v) {
    std::vector<RF> r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            if (m[i][j]) r[i] += RF(m[i][j]) * v[j];
    return r;
}

IntMat multiply(const IntMat& a, const IntMat& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMat c(n, IntVec(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if (a[i][l])
                for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

std::vector<WeylElement> weyl_group(const RootSystem& rs, const std::vector<int>& gens) {
    int n = rs.rank();
    IntMat id(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) id[i][i] = 1;
    std::vector<WeylElement> out{{{}, id}};
    std::set<IntMat> seen{id};
    for (std::size_t k = 0; k < out.size(); ++k) {
        for (int g : gens) {
            IntMat m = multiply(out[k].matrix, rs.reflection(g));
            if (seen.count(m)) continue;
            seen.insert(m);
            WeylElement w{out[k].word, m};
            w.word.push_back(g);
            out.push_back(w);
        }
        if (out.size() > 100000) throw CapabilityError("Weyl group too large");
    }
    return out;
}

std::vector<int> longest_word(const RootSystem& rs, const std::vector<int>& gens) {
    // w0 of the subsystem: the element of maximal length; peel left descents greedily.
    auto group = weyl_group(rs, gens);
    IntMat w = group.back().matrix;
    auto levi_pos = rs.levi_positive(gens);
    auto len = [&](const IntMat& m) {
        int l = 0;
        for (int k : levi_pos) {
            IntVec im = apply(m, rs.positive_roots()[k]);
            if (rs.height(im) < 0) ++l;
        }
        return l;
    };
    std::vector<int> word;
    int l = len(w);
    while (l > 0) {
        for (int g : gens) {
            IntMat m = multiply(rs.reflection(g), w);
            int lm = len(m);
            if (lm < l) {
                word.push_back(g);
                w = m;
                l = lm;
                break;
            }
        }
    }
    return word;
}

Integer weyl_dimension(const RootSystem& rs, const std::vector<int>& levi, const IntVec& labels) {
    if (labels.size() != levi.size()) throw UsageError("label count does not match the subsystem rank");
    QVector c(rs.rank(), Rational(0));
    for (std::size_t k = 0; k < levi.size(); ++k) {
        if (labels[k] < 0) throw UsageError("weight is not dominant");
        c[levi[k]] = labels[k];
    }
    // only the semisimple part matters; pair with coroots of subsystem roots
    Rational num = 1;
    auto rho_l = rs.rho(levi);
    QVector lam = rs.fundamental_to_simple(c);
    for (int k : rs.levi_positive(levi)) {
        QVector b(rs.positive_roots()[k].begin(), rs.positive_roots()[k].end());
        QVector lr(lam);
        for (int i = 0; i < rs.rank(); ++i) lr[i] += rho_l[i];
        num *= rs.pairing(lr, b) / rs.pairing(rho_l, b);
    }
    if (num.get_den() != 1) throw InternalError("non-integral Weyl dimension");
    return num.get_num();
}

Integer weyl_dimension(const RootSystem& rs, const IntVec& fundamental) {
    std::vector<int> all(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) all[i] = i;
    return weyl_dimension(rs, all, fundamental);
}

}  // namespace gvb
