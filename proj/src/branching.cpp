#include "gvb/branching.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gvb {

bool Parabolic::in_levi(int root) const {
    return std::find(levi_roots.begin(), levi_roots.end(), root) != levi_roots.end();
}

std::string Parabolic::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < crossings.size(); ++i) os << (i ? "," : "") << crossings[i];
    os << ')';
    return os.str();
}

Parabolic make_parabolic(const RootSystem& rs, const IntVec& crossings) {
    if (static_cast<int>(crossings.size()) != rs.rank())
        throw UsageError("crossing vector has length " + std::to_string(crossings.size()) + ", expected " +
                         std::to_string(rs.rank()));
    Parabolic p;
    p.rs = &rs;
    p.crossings = crossings;
    for (int i = 0; i < rs.rank(); ++i) {
        if (crossings[i] != 0 && crossings[i] != 1) throw UsageError("crossing vector entries must be 0 or 1");
        if (!crossings[i]) p.levi.push_back(i);
    }
    p.levi_roots = rs.levi_positive(p.levi);
    for (int k = 0; k < rs.num_positive(); ++k)
        if (!p.in_levi(k)) p.nil_roots.push_back(k);
    return p;
}

std::vector<Parabolic> all_parabolics(const RootSystem& rs) {
    std::vector<Parabolic> out;
    int r = rs.rank();
    for (int mask = (1 << r) - 1; mask >= 0; --mask) {
        IntVec c(r);
        for (int i = 0; i < r; ++i) c[i] = (mask >> (r - 1 - i)) & 1;
        out.push_back(make_parabolic(rs, c));
    }
    return out;
}

Parabolic induced_bar_parabolic(const Parabolic& p, const Embedding& e) {
    const LieAlgebra& g = *e.target;
    const LieAlgebra& s = *e.source;
    IntVec c(s.rank(), 0);
    for (int i = 0; i < s.rank(); ++i)
        for (auto& [b, v] : e.images[s.neg(i)])
            if (g.is_negative(b) && !p.in_levi(g.root_of(b))) c[i] = 1;
    return make_parabolic(s.roots(), c);
}

IntWeights projected_nil_weights(const Parabolic& p, const Embedding& e) {
    IntWeights out;
    for (int k : p.nil_roots) {
        IntVec w = e.project(p.rs->positive_roots()[k]);
        for (int& x : w) x = -x;
        out.push_back(w);
    }
    return out;
}

IntWeights bar_nil_weights(const Parabolic& bar) {
    IntWeights out;
    for (int k : bar.nil_roots) {
        IntVec w = bar.rs->positive_roots()[k];
        for (int& x : w) x = -x;
        out.push_back(w);
    }
    return out;
}

namespace {

IntWeights multiset_minus(IntWeights a, const IntWeights& b) {
    for (auto& w : b) {
        auto it = std::find(a.begin(), a.end(), w);
        if (it == a.end()) throw InternalError("weight of the smaller nilradical missing from the projection");
        a.erase(it);
    }
    return a;
}

QVector qv(const IntVec& v) { return QVector(v.begin(), v.end()); }

bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

}  // namespace

bool fm_feasible(const QMatrix& a0, const QVector& b0, QVector* witness) {
    std::size_t n = a0.empty() ? (witness ? witness->size() : 0) : a0[0].size();
    using Row = std::pair<QVector, Rational>;
    std::vector<std::vector<Row>> stages;
    std::vector<Row> cur;
    for (std::size_t i = 0; i < a0.size(); ++i) cur.emplace_back(a0[i], b0[i]);
    for (std::size_t k = n; k-- > 0;) {
        stages.push_back(cur);
        std::vector<Row> next, pos, neg;
        for (auto& r : cur) {
            if (r.first[k] > 0) pos.push_back(r);
            else if (r.first[k] < 0) neg.push_back(r);
            else next.push_back(r);
        }
        for (auto& p : pos)
            for (auto& q : neg) {
                Rational sp = -q.first[k], sq = p.first[k];
                QVector row(n);
                for (std::size_t j = 0; j < n; ++j) row[j] = sp * p.first[j] + sq * q.first[j];
                Rational rhs = sp * p.second + sq * q.second;
                // scale to keep numbers small
                Rational m = 0;
                for (auto& x : row) m = std::max(m, Rational(abs(x)));
                if (m != 0) {
                    for (auto& x : row) x /= m;
                    rhs /= m;
                }
                next.emplace_back(row, rhs);
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = next;
    }
    for (auto& r : cur)
        if (r.second > 0) return false;
    if (witness) {
        QVector x(n, Rational(0));
        for (std::size_t k = 0; k < n; ++k) {
            const auto& sys = stages[n - 1 - k];
            bool has_lo = false, has_hi = false;
            Rational lo, hi;
            for (auto& r : sys) {
                if (r.first[k] == 0) continue;
                Rational rest = r.second;
                for (std::size_t j = 0; j < k; ++j) rest -= r.first[j] * x[j];
                Rational bound = rest / r.first[k];
                if (r.first[k] > 0) {
                    if (!has_lo || bound > lo) lo = bound;
                    has_lo = true;
                } else {
                    if (!has_hi || bound < hi) hi = bound;
                    has_hi = true;
                }
            }
            x[k] = has_lo ? lo : (has_hi ? hi : Rational(0));
        }
        *witness = x;
    }
    return true;
}

bool zero_in_cone(const IntWeights& w) {
    if (w.empty()) return false;
    for (auto& v : w)
        if (is_zero(v)) return true;
    QMatrix a;
    QVector b;
    for (auto& v : w) {
        a.push_back(qv(v));
        b.push_back(1);
    }
    return !fm_feasible(a, b);
}

ConeReport quotient_weights(const Parabolic& p, const Embedding& e) {
    ConeReport r;
    Parabolic bar = induced_bar_parabolic(p, e);
    IntWeights all = projected_nil_weights(p, e);
    r.bar_nil_weights = bar_nil_weights(bar);
    r.quotient_weights = multiset_minus(all, r.bar_nil_weights);
    r.zero_in_c = zero_in_cone(r.quotient_weights);
    r.zero_in_c_prime = zero_in_cone(all);
    r.condition_a = r.zero_in_c || !r.zero_in_c_prime;
    r.finite_branching = r.quotient_weights.empty();

    const RootSystem& srs = *bar.rs;
    std::size_t n = srs.rank();
    auto proj = [&](int k) { return qv(e.project(p.rs->positive_roots()[k])); };
    {
        QMatrix a;
        QVector b;
        for (int k : bar.nil_roots) {
            a.push_back(qv(srs.positive_roots()[k]));
            b.push_back(1);
        }
        for (int k : p.nil_roots) {
            a.push_back(proj(k));
            b.push_back(0);
        }
        QVector w(n);
        r.weakly_compatible = fm_feasible(a, b, &w);
    }
    {
        QMatrix a;
        QVector b;
        for (int k : p.nil_roots) {
            a.push_back(proj(k));
            b.push_back(1);
        }
        for (int k : p.levi_roots) {
            QVector v = proj(k);
            a.push_back(v);
            b.push_back(0);
            for (auto& x : v) x = -x;
            a.push_back(v);
            b.push_back(0);
        }
        QVector w(n);
        r.compatible = fm_feasible(a, b, &w);
    }
    return r;
}

PartitionContext make_partition_context(const IntWeights& x) {
    PartitionContext ctx;
    ctx.x = x;
    ctx.zero_in_cone = zero_in_cone(x);
    if (!ctx.zero_in_cone && !x.empty()) {
        QMatrix a;
        QVector b;
        for (auto& v : x) {
            a.push_back(qv(v));
            b.push_back(1);
        }
        QVector w(x[0].size());
        fm_feasible(a, b, &w);
        ctx.grading = w;
    }
    return ctx;
}

Mult kostant_partition(const PartitionContext& ctx, const IntVec& alpha, int bound) {
    const IntWeights& x = ctx.x;
    if (x.empty()) return Mult::finite(is_zero(alpha) ? 1 : 0);
    if (ctx.zero_in_cone) {
        std::set<IntVec> reach{IntVec(alpha.size(), 0)};
        for (int t = 0; t <= bound; ++t) {
            if (reach.count(alpha)) return Mult::inf();
            std::set<IntVec> next = reach;
            for (auto& v : reach)
                for (auto& w : x) {
                    IntVec s = v;
                    for (std::size_t i = 0; i < s.size(); ++i) s[i] += w[i];
                    next.insert(s);
                }
            reach.swap(next);
        }
        return Mult::finite(0);
    }
    auto level = [&](const IntVec& v) {
        Rational s = 0;
        for (std::size_t i = 0; i < v.size(); ++i) s += ctx.grading[i] * v[i];
        return s;
    };
    std::map<std::pair<std::size_t, IntVec>, Integer> memo;
    auto rec = [&](auto&& self, std::size_t k, const IntVec& a) -> Integer {
        if (level(a) < 0) return 0;
        if (k == x.size()) return is_zero(a) ? 1 : 0;
        auto key = std::make_pair(k, a);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        Integer total = 0;
        IntVec rest = a;
        while (level(rest) >= 0) {
            total += self(self, k + 1, rest);
            for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= x[k][i];
        }
        memo[key] = total;
        return total;
    };
    return Mult::finite(rec(rec, 0, alpha));
}

IntWeights borel_quotient_weights(const Embedding& e) {
    IntWeights all, bar;
    for (auto& r : e.target->roots().positive_roots()) {
        IntVec w = e.project(r);
        for (int& v : w) v = -v;
        all.push_back(w);
    }
    for (auto& r : e.source->roots().positive_roots()) {
        IntVec w = r;
        for (int& v : w) v = -v;
        bar.push_back(w);
    }
    return multiset_minus(all, bar);
}

namespace {

bool constant_offset(const std::vector<RF>& a, const std::vector<RF>& b, IntVec& out) {
    out.assign(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        RF d = a[i] - b[i];
        if (!d.is_constant()) return false;
        Rational q = d.constant_value();
        if (q.get_den() != 1) return false;
        out[i] = static_cast<int>(q.get_num().get_si());
    }
    return true;
}

bool dominant_on(const RootSystem& rs, const std::vector<int>& levi, const std::vector<RF>& simple) {
    std::vector<RF> f = rs.simple_to_fundamental(simple);
    for (int i : levi) {
        if (!f[i].is_constant()) return false;
        Rational q = f[i].constant_value();
        if (q.get_den() != 1 || q < 0) return false;
    }
    return true;
}

std::vector<RF> add_offset(std::vector<RF> v, const IntVec& o) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (o[i]) v[i] += RF(o[i]);
    return v;
}

void require_condition_a(const Parabolic& p, const Embedding& e) {
    if (!quotient_weights(p, e).condition_a)
        throw CapabilityError("Condition A fails for parabolic " + p.str() + "; branching is unsupported");
}

}  // namespace

Mult branching_multiplicity(const Parabolic& p, const Embedding& e, const std::vector<RF>& lambda,
                            const std::vector<RF>& mu) {
    require_condition_a(p, e);
    const RootSystem& rs = *p.rs;
    const RootSystem& srs = e.source->roots();
    Parabolic bar = induced_bar_parabolic(p, e);
    if (!dominant_on(srs, bar.levi, mu)) return Mult::finite(0);
    for (int i : p.levi) {
        const RF& c = lambda[i];
        if (!c.is_constant() || c.constant_value().get_den() != 1 || c.constant_value() < 0)
            throw UsageError("highest weight is not dominant integral on the Levi subalgebra");
    }
    static thread_local std::map<const Embedding*, PartitionContext> cache;
    auto it = cache.find(&e);
    if (it == cache.end()) it = cache.emplace(&e, make_partition_context(borel_quotient_weights(e))).first;
    const PartitionContext& ctx = it->second;

    std::vector<RF> lr = rs.fundamental_to_simple(lambda);
    QVector rho = rs.rho(p.levi);
    for (std::size_t i = 0; i < lr.size(); ++i) lr[i] += RF(rho[i]);
    Integer total = 0;
    for (auto& w : weyl_group(rs, p.levi)) {
        std::vector<RF> v = gvb::apply(w.matrix, lr);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= RF(rho[i]);
        IntVec delta;
        if (!constant_offset(mu, e.project(v), delta))
            throw UsageError("partition argument depends on symbolic parameters; specialize them");
        Mult m = kostant_partition(ctx, delta);
        if (m.infinite) return Mult::inf();
        total += w.sign() * m.value;
    }
    if (total < 0) throw InternalError("negative branching multiplicity");
    return Mult::finite(total);
}

namespace {

// Complete homogeneous characters h_0..h_max of a multiset of weights.
std::vector<std::map<IntVec, Integer>> symmetric_powers(const IntWeights& q, std::size_t rank, int max_degree) {
    std::vector<std::map<IntVec, Integer>> h(max_degree + 1);
    h[0][IntVec(rank, 0)] = 1;
    for (auto& w : q) {
        for (int d = 1; d <= max_degree; ++d) {
            // h_d += w * h_{d-1} (already updated with w), processing in increasing d
            for (auto& [v, c] : h[d - 1]) {
                IntVec s = v;
                for (std::size_t i = 0; i < rank; ++i) s[i] += w[i];
                h[d][s] += c;
            }
        }
    }
    return h;
}

}  // namespace

std::vector<BranchRow> branch_up_to_degree(const Parabolic& p, const Embedding& e, const std::vector<RF>& lambda,
                                           int cutoff) {
    if (cutoff < 0) throw UsageError("cutoff must be non-negative");
    require_condition_a(p, e);
    const RootSystem& srs = e.source->roots();
    Parabolic bar = induced_bar_parabolic(p, e);
    ConeReport cone = quotient_weights(p, e);
    Character top = project_character(freudenthal_character(*p.rs, p.levi, lambda), e);
    auto h = symmetric_powers(cone.quotient_weights, srs.rank(), cutoff);
    std::vector<BranchRow> rows;
    std::set<std::vector<RF>> seen;
    for (int d = 0; d <= cutoff; ++d) {
        if (h[d].empty()) break;
        Character c;
        for (auto& [w, m] : top)
            for (auto& [o, k] : h[d]) c[add_offset(w, o)] += m * k;
        for (auto& con : decompose_character(c, srs, bar.levi)) {
            if (!seen.insert(con.weight).second) continue;
            rows.push_back(BranchRow{con.weight, d, branching_multiplicity(p, e, lambda, con.weight)});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const BranchRow& a, const BranchRow& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return b.mu < a.mu;
    });
    return rows;
}

int offset_level(const Parabolic& bar, const IntVec& offset) {
    int s = 0;
    for (std::size_t i = 0; i < offset.size(); ++i)
        if (bar.crossings[i]) s -= offset[i];
    return s;
}

namespace {

void multiply_geometric(OffsetCharacter& ch, const Parabolic& bar, const IntWeights& ws, int max_level) {
    for (auto& w : ws) {
        int lw = offset_level(bar, w);
        if (lw <= 0) throw InternalError("nilradical weight of non-positive level");
        OffsetCharacter next;
        for (auto& [o, c] : ch) {
            IntVec v = o;
            while (offset_level(bar, v) <= max_level) {
                next[v] += c;
                for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
            }
        }
        ch.swap(next);
    }
}

OffsetCharacter offsets_of(const Character& c, const std::vector<RF>& origin, const Parabolic& bar, int max_level) {
    OffsetCharacter out;
    for (auto& [w, m] : c) {
        IntVec o;
        if (!constant_offset(w, origin, o)) throw UsageError("truncated characters need numeric weights");
        if (offset_level(bar, o) <= max_level) out[o] += m;
    }
    return out;
}

}  // namespace

OffsetCharacter truncated_verma_character(const Parabolic& p, const Embedding& e, const std::vector<RF>& lambda,
                                          int max_level) {
    Parabolic bar = induced_bar_parabolic(p, e);
    std::vector<RF> origin = e.project(p.rs->fundamental_to_simple(lambda));
    Character top = project_character(freudenthal_character(*p.rs, p.levi, lambda), e);
    OffsetCharacter ch = offsets_of(top, origin, bar, max_level);
    multiply_geometric(ch, bar, projected_nil_weights(p, e), max_level);
    return ch;
}

OffsetCharacter truncated_bar_verma_character(const Parabolic& bar, const std::vector<RF>& mu,
                                              const std::vector<RF>& origin, int max_level) {
    const RootSystem& srs = *bar.rs;
    Character top = freudenthal_character(srs, bar.levi, srs.simple_to_fundamental(mu));
    OffsetCharacter ch = offsets_of(top, origin, bar, max_level);
    multiply_geometric(ch, bar, bar_nil_weights(bar), max_level);
    return ch;
}

IdentityReport check_character_identity(const Parabolic& p, const Embedding& e, const std::vector<RF>& lambda,
                                        int max_level) {
    IdentityReport rep;
    Parabolic bar = induced_bar_parabolic(p, e);
    const RootSystem& srs = e.source->roots();
    std::vector<RF> origin = e.project(p.rs->fundamental_to_simple(lambda));
    rep.lhs = truncated_verma_character(p, e, lambda, max_level);
    for (auto& [o, c] : rep.lhs) {
        std::vector<RF> mu = add_offset(origin, o);
        if (!dominant_on(srs, bar.levi, mu)) continue;
        Mult m = branching_multiplicity(p, e, lambda, mu);
        if (m.infinite) return rep;
        if (m.value == 0) continue;
        rep.terms.push_back(BranchRow{mu, 0, m});
        for (auto& [o2, c2] : truncated_bar_verma_character(bar, mu, origin, max_level)) rep.rhs[o2] += m.value * c2;
    }
    rep.holds = rep.lhs == rep.rhs;
    return rep;
}

std::optional<int> quasipoly_degree_bound(int dim_g, int rank_g, int dim_gbar, int rank_gbar) {
    if (dim_g <= dim_gbar) return std::nullopt;
    int d = dim_g - dim_gbar - rank_g - rank_gbar;
    if (d < 0 || d % 2) return std::nullopt;
    return d / 2;
}

std::optional<int> quasipoly_degree_bound(const LieAlgebra& g, const LieAlgebra& gbar) {
    return quasipoly_degree_bound(g.dim(), g.rank(), gbar.dim(), gbar.rank());
}

}  // namespace gvb
