#include "gvb/exact.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace gvb {

Rational parse_rational(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw UsageError("empty rational");
    if (t[0] == '+') t = t.substr(1);
    Rational q;
    if (q.set_str(t, 10) != 0) throw UsageError("bad rational: " + s);
    if (q.get_den() == 0) throw UsageError("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da > db;
    return a > b;
}

bool natural_less(const std::string& a, const std::string& b) {
    auto split = [](const std::string& s) {
        std::size_t i = s.size();
        while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
        long n = i < s.size() ? std::stol(s.substr(i)) : -1;
        return std::make_pair(s.substr(0, i), n);
    };
    auto pa = split(a), pb = split(b);
    if (pa.first != pb.first) return pa.first < pb.first;
    return pa.second < pb.second;
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a == b || b.empty()) return a;
    if (a.empty()) return b;
    std::vector<std::string> out(a);
    for (auto& v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    std::sort(out.begin(), out.end(), natural_less);
    return out;
}

// ---- MultiPoly ----

MultiPoly::MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end(), natural_less);
}

MultiPoly::MultiPoly(const Rational& c) {
    if (c != 0) terms_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::variable(const std::string& name) {
    MultiPoly p(std::vector<std::string>{name});
    p.terms_.emplace(Exponents{1}, Rational(1));
    return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, Exponents e, const Rational& c) {
    if (vars.size() != e.size()) throw UsageError("monomial arity mismatch");
    MultiPoly p;
    p.vars_ = std::move(vars);
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int x : terms_.begin()->first)
        if (x) return false;
    return true;
}

bool MultiPoly::is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second == 1; }

Rational MultiPoly::constant_value() const {
    if (!is_constant()) throw UsageError("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (int x : terms_.begin()->first) d += x;
    return d;
}

int MultiPoly::degree_in(int var) const {
    int d = terms_.empty() ? -1 : 0;
    for (auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
}

int MultiPoly::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return static_cast<int>(i);
    return -1;
}

const Exponents& MultiPoly::leading_exponents() const {
    if (terms_.empty()) throw UsageError("zero polynomial has no leading term");
    return terms_.begin()->first;
}

const Rational& MultiPoly::leading_coeff() const {
    if (terms_.empty()) throw UsageError("zero polynomial has no leading term");
    return terms_.begin()->second;
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    std::vector<int> map(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(vars.begin(), vars.end(), vars_[i]);
        if (it == vars.end()) throw InternalError("with_vars: variable " + vars_[i] + " missing");
        map[i] = static_cast<int>(it - vars.begin());
    }
    MultiPoly out;
    out.vars_ = vars;
    for (auto& [e, c] : terms_) {
        Exponents ne(vars.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i) ne[map[i]] = e[i];
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

MultiPoly MultiPoly::trimmed() const {
    std::vector<std::string> keep;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (auto& [e, c] : terms_)
            if (e[i]) {
                keep.push_back(vars_[i]);
                break;
            }
    if (keep.size() == vars_.size()) return *this;
    MultiPoly out;
    out.vars_ = keep;
    for (auto& [e, c] : terms_) {
        Exponents ne;
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (std::find(keep.begin(), keep.end(), vars_[i]) != keep.end()) ne.push_back(e[i]);
        out.terms_.emplace(std::move(ne), c);
    }
    return out;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    if (e.size() != vars_.size()) throw InternalError("add_term arity mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void unify(MultiPoly& a, MultiPoly& b) {
    if (a.vars() == b.vars()) return;
    auto v = merge_vars(a.vars(), b.vars());
    a = a.with_vars(v);
    b = b.with_vars(v);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    if (o.terms_.empty()) {
        if (vars_ != o.vars_ && !o.vars_.empty()) *this = with_vars(merge_vars(vars_, o.vars_));
        return *this;
    }
    if (vars_ == o.vars_) {
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly b = o;
    unify(*this, b);
    for (auto& [e, c] : b.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly& a0, const MultiPoly& b0) {
    if (a0.is_constant() && a0.vars_ == b0.vars_) return b0 * a0.constant_value();
    MultiPoly a = a0, b = b0;
    unify(a, b);
    MultiPoly out;
    out.vars_ = a.vars_;
    if (a.terms_.empty() || b.terms_.empty()) return out;
    Exponents e(a.vars_.size());
    for (auto& [ea, ca] : a.terms_)
        for (auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly r(Rational(1));
    r = r.with_vars(vars_);
    MultiPoly b = *this;
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    MultiPoly x = a.trimmed(), y = b.trimmed();
    return x.vars_ == y.vars_ && x.terms_ == y.terms_;
}

bool operator<(const MultiPoly& a0, const MultiPoly& b0) {
    MultiPoly a = a0, b = b0;
    unify(a, b);
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    GrlexGreater gt;
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return gt(ib->first, ia->first);
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
}

Rational MultiPoly::eval(const std::map<std::string, Rational>& point) const {
    std::vector<Rational> vals(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = point.find(vars_[i]);
        bool used = false;
        for (auto& [e, c] : terms_)
            if (e[i]) used = true;
        if (it == point.end()) {
            if (used) throw UsageError("no value for variable " + vars_[i]);
            continue;
        }
        vals[i] = it->second;
    }
    Rational s = 0;
    for (auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= vals[i];
        s += t;
    }
    return s;
}

MultiPoly MultiPoly::partial_eval(const std::map<std::string, Rational>& point) const {
    MultiPoly out(vars_);
    for (auto& [e, c] : terms_) {
        Exponents ne = e;
        Rational t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            auto it = point.find(vars_[i]);
            if (it == point.end()) continue;
            for (int k = 0; k < e[i]; ++k) t *= it->second;
            ne[i] = 0;
        }
        out.add_term(ne, t);
    }
    return out.trimmed();
}

MultiPoly MultiPoly::primitive(Rational* content) const {
    if (terms_.empty()) {
        if (content) *content = 0;
        return *this;
    }
    Integer l = 1, g = 0;
    for (auto& [e, c] : terms_) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    }
    Rational k(l, g);
    k.canonicalize();
    if (leading_coeff() < 0) k = -k;
    if (content) *content = 1 / k;
    MultiPoly r = *this;
    r *= k;
    return r;
}

namespace {

const char* kSup[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
const char* kSub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};

std::string digits_map(const std::string& d, const char* const* table) {
    std::string s;
    for (char c : d) s += table[c - '0'];
    return s;
}

std::string var_name(const std::string& v, Style st) {
    if (st == Style::Ascii) return v;
    std::size_t i = v.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(v[i - 1]))) --i;
    if (i == v.size()) return v;
    if (st == Style::Unicode) return v.substr(0, i) + digits_map(v.substr(i), kSub);
    return v.substr(0, i) + "_{" + v.substr(i) + "}";
}

std::string power(int k, Style st) {
    if (k == 1) return "";
    std::string d = std::to_string(k);
    if (st == Style::Ascii) return "^" + d;
    if (st == Style::Unicode) return digits_map(d, kSup);
    return "^{" + d + "}";
}

}  // namespace

std::string MultiPoly::str(Style st) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        Rational a = abs(c);
        bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
        if (c < 0)
            out += first ? "-" : "-";
        else if (!first)
            out += "+";
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (st == Style::Ascii && !mono.empty()) mono += "*";
            mono += var_name(vars_[i], st) + power(e[i], st);
        }
        if (constant) {
            out += a.get_str();
        } else if (a == 1) {
            out += mono;
        } else {
            std::string coeff = a.get_str();
            if (st == Style::Latex && a.get_den() != 1)
                coeff = "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
            out += coeff + (st == Style::Ascii ? "*" : "") + mono;
        }
        first = false;
    }
    return out;
}

// ---- gcd machinery ----

namespace {

std::vector<MultiPoly> coeffs_in(const MultiPoly& p, int v) {
    std::vector<MultiPoly> out(std::max(0, p.degree_in(v)) + 1, MultiPoly(p.vars()));
    for (auto& [e, c] : p.terms()) {
        Exponents ne = e;
        ne[v] = 0;
        out[e[v]].add_term(ne, c);
    }
    return out;
}

MultiPoly lead_in(const MultiPoly& p, int v) {
    int d = p.degree_in(v);
    MultiPoly out(p.vars());
    for (auto& [e, c] : p.terms())
        if (e[v] == d) {
            Exponents ne = e;
            ne[v] = 0;
            out.add_term(ne, c);
        }
    return out;
}

MultiPoly var_power(const std::vector<std::string>& vars, int v, int k) {
    Exponents e(vars.size(), 0);
    e[v] = k;
    return MultiPoly::monomial(vars, e, 1);
}

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b);

MultiPoly content_in(const MultiPoly& p, int v) {
    auto cs = coeffs_in(p, v);
    MultiPoly g(p.vars());
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? c.primitive() : gcd_rec(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b) {
    const auto& vars = a.vars();
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    int v = -1;
    for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i)
        if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
            v = i;
            break;
        }
    MultiPoly one = MultiPoly(Rational(1)).with_vars(vars);
    if (v < 0) return one;
    MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly g = gcd_rec(ca, cb);
    MultiPoly pa = poly_exact_div(a, ca), pb = poly_exact_div(b, cb);
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (!pb.is_zero() && pb.degree_in(v) > 0) {
        MultiPoly r = pa;
        MultiPoly lb = lead_in(pb, v);
        int db = pb.degree_in(v);
        while (!r.is_zero() && r.degree_in(v) >= db) {
            MultiPoly lr = lead_in(r, v);
            int s = r.degree_in(v) - db;
            r = lb * r - lr * var_power(vars, v, s) * pb;
        }
        pa = pb;
        pb = r.is_zero() ? r : poly_exact_div(r, content_in(r, v));
    }
    MultiPoly res = pb.is_zero() ? poly_exact_div(pa, content_in(pa, v)) : one;
    return (res * g).primitive();
}

}  // namespace

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars() != b.vars()) throw UsageError("poly_gcd: variable lists differ");
    return gcd_rec(a, b);
}

std::pair<MultiPoly, MultiPoly> poly_divmod(const MultiPoly& a0, const MultiPoly& b0) {
    if (b0.is_zero()) throw PoleError("division by zero polynomial");
    MultiPoly a = a0, b = b0;
    unify(a, b);
    MultiPoly q(a.vars()), r(a.vars()), p = a;
    const Exponents& lb = b.leading_exponents();
    const Rational& cb = b.leading_coeff();
    while (!p.is_zero()) {
        const Exponents& lp = p.leading_exponents();
        bool divides = true;
        for (std::size_t i = 0; i < lp.size(); ++i)
            if (lp[i] < lb[i]) divides = false;
        if (divides) {
            Exponents e(lp.size());
            for (std::size_t i = 0; i < lp.size(); ++i) e[i] = lp[i] - lb[i];
            MultiPoly t = MultiPoly::monomial(a.vars(), e, p.leading_coeff() / cb);
            q += t;
            p -= t * b;
        } else {
            r.add_term(lp, p.leading_coeff());
            p.add_term(Exponents(lp), -Rational(p.leading_coeff()));
        }
    }
    return {q, r};
}

MultiPoly poly_exact_div(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_constant()) {
        if (b.is_zero()) throw PoleError("division by zero polynomial");
        MultiPoly r = a;
        r *= 1 / b.constant_value();
        return r;
    }
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw InternalError("inexact polynomial division");
    return q;
}

namespace {

std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<std::pair<Integer, int>> f;
    for (Integer p = 2; p * p <= n; ++p) {
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        if (k) f.push_back({p, k});
    }
    if (n > 1) f.push_back({n, 1});
    std::vector<Integer> ds{1};
    for (auto& [p, k] : f) {
        std::size_t m = ds.size();
        Integer pk = 1;
        for (int j = 1; j <= k; ++j) {
            pk *= p;
            for (std::size_t i = 0; i < m; ++i) ds.push_back(ds[i] * pk);
        }
    }
    return ds;
}

}  // namespace

std::vector<Rational> rational_roots(const MultiPoly& p0) {
    MultiPoly p = p0.trimmed();
    if (p.vars().size() > 1) throw UsageError("rational_roots: polynomial is not univariate");
    if (p.is_zero()) throw UsageError("rational_roots: zero polynomial");
    p = p.primitive();
    std::vector<Rational> roots;
    if (p.vars().empty()) return roots;
    int d = p.degree_in(0);
    std::vector<Integer> c(d + 1, 0);
    for (auto& [e, v] : p.terms()) c[e[0]] = v.get_num();
    int low = 0;
    while (c[low] == 0) ++low;
    if (low > 0) roots.push_back(0);
    if (low == d) return roots;
    auto horner = [&](const Rational& x) {
        Rational s = 0;
        for (int k = d; k >= low; --k) s = s * x + Rational(c[k]);
        return s;
    };
    for (auto& num : divisors(c[low]))
        for (auto& den : divisors(c[d]))
            for (int sg : {1, -1}) {
                Rational x(sg * num, den);
                x.canonicalize();
                if (std::find(roots.begin(), roots.end(), x) != roots.end()) continue;
                if (horner(x) == 0) roots.push_back(x);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---- RationalFunction ----

RationalFunction::RationalFunction(const MultiPoly& p) : num_(p), den_(Rational(1)) {}

RationalFunction::RationalFunction(const MultiPoly& n, const MultiPoly& d) : num_(n), den_(d) { normalize(); }

void RationalFunction::normalize() {
    if (den_.is_zero()) throw PoleError("zero denominator");
    if (num_.is_zero()) {
        num_ = MultiPoly();
        den_ = MultiPoly(Rational(1));
        return;
    }
    if (den_.is_constant()) {
        num_ *= 1 / den_.constant_value();
        den_ = MultiPoly(Rational(1));
        return;
    }
    unify(num_, den_);
    MultiPoly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = poly_exact_div(num_, g);
        den_ = poly_exact_div(den_, g);
    }
    Rational c;
    den_ = den_.primitive(&c);
    num_ *= 1 / c;
    if (den_.is_constant()) den_ = MultiPoly(Rational(1));
    num_ = num_.trimmed();
    den_ = den_.trimmed();
}

Rational RationalFunction::constant_value() const {
    if (!is_constant()) throw UsageError("rational function is not constant");
    return num_.constant_value();
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) {
        num_ += o.num_;
        return *this;
    }
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (den_.is_one() && o.den_.is_one()) {
        num_ *= o.num_;
        if (num_.is_zero()) num_ = MultiPoly();
        return *this;
    }
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
    if (o.is_zero()) throw PoleError("division by zero rational function");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

bool operator<(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ != b.den_) return a.den_ < b.den_;
    return a.num_ < b.num_;
}

Rational RationalFunction::eval(const std::map<std::string, Rational>& point) const {
    Rational d = den_.eval(point);
    if (d == 0) throw PoleError("pole at evaluation point");
    return num_.eval(point) / d;
}

RationalFunction RationalFunction::partial_eval(const std::map<std::string, Rational>& point) const {
    MultiPoly d = den_.partial_eval(point);
    if (d.is_zero()) throw PoleError("pole at evaluation point");
    return RationalFunction(num_.partial_eval(point), d);
}

std::string RationalFunction::str(Style st) const {
    if (den_.is_one()) return num_.str(st);
    if (st == Style::Latex) return "\\frac{" + num_.str(st) + "}{" + den_.str(st) + "}";
    return "(" + num_.str(st) + ")/(" + den_.str(st) + ")";
}

// ---- parsing ----

namespace {

struct PolyParser {
    std::string s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw UsageError("parse error (" + what + ") at position " + std::to_string(i) + " in '" + s + "'");
    }
    int read_int() {
        skip();
        bool brace = false;
        if (i < s.size() && s[i] == '{') {
            brace = true;
            ++i;
        }
        std::size_t j = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (j == i) fail("expected integer");
        int v = std::stoi(s.substr(j, i - j));
        if (brace) {
            if (i >= s.size() || s[i] != '}') fail("expected }");
            ++i;
        }
        return v;
    }
    RF expr() {
        RF acc;
        skip();
        bool neg = false;
        if (peek('+')) ++i;
        else if (peek('-')) {
            neg = true;
            ++i;
        }
        acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (peek('+')) {
                ++i;
                acc += term();
            } else if (peek('-')) {
                ++i;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }
    bool starts_factor() {
        skip();
        if (i >= s.size()) return false;
        char c = s[i];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
    }
    RF term() {
        RF acc = power();
        while (true) {
            if (peek('*')) {
                ++i;
                acc *= power();
            } else if (peek('/')) {
                ++i;
                acc /= power();
            } else if (starts_factor()) {
                acc *= power();
            } else {
                break;
            }
        }
        return acc;
    }
    RF power() {
        RF b = atom();
        if (peek('^')) {
            ++i;
            int k = read_int();
            if (b.is_polynomial()) return RF(b.num().pow(k));
            return RF(b.num().pow(k), b.den().pow(k));
        }
        return b;
    }
    RF atom() {
        skip();
        if (i >= s.size()) fail("unexpected end");
        char c = s[i];
        if (c == '(') {
            ++i;
            RF e = expr();
            if (!peek(')')) fail("expected )");
            ++i;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            std::string num = s.substr(j, i - j);
            // p/q written without spaces is one literal, so 1/12x1 reads as (1/12)x1
            if (i + 1 < s.size() && s[i] == '/' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
                ++i;
                std::size_t k = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                return RF(parse_rational(num + "/" + s.substr(k, i - k)));
            }
            return RF(parse_rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
            std::string name = s.substr(j, i - j);
            if (i < s.size() && s[i] == '_') {
                ++i;
                name += std::to_string(read_int());
            } else {
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) name += s[i++];
            }
            return RF(MultiPoly::variable(name));
        }
        fail("unexpected character");
    }
};

}  // namespace

RationalFunction parse_rf(const std::string& s) {
    PolyParser p{s};
    RF r = p.expr();
    p.skip();
    if (p.i != s.size()) p.fail("trailing input");
    return r;
}

std::vector<RationalFunction> parse_weight(const std::string& src, const std::string& basis, int n) {
    std::string s;
    for (char c : src)
        if (c != '\\') s += c;
    if (s.find_first_not_of(" ") == std::string::npos) throw UsageError("empty weight");
    RF p = s == "0" ? RF() : parse_rf(s);
    if (!p.is_polynomial()) throw UsageError("weight is not linear: " + src);
    std::map<std::string, Rational> zero;
    for (int k = 1; k <= n; ++k) zero[basis + std::to_string(k)] = 0;
    for (auto& v : p.vars())
        if (v.rfind(basis, 0) == 0 && !zero.count(v)) throw UsageError("unknown basis element " + v + " in " + src);
    if (!p.partial_eval(zero).is_zero()) throw UsageError("weight has a constant term: " + src);
    std::vector<RF> out;
    RF check;
    for (int k = 1; k <= n; ++k) {
        auto pt = zero;
        pt[basis + std::to_string(k)] = 1;
        out.push_back(p.partial_eval(pt));
        check += out.back() * RF(MultiPoly::variable(basis + std::to_string(k)));
    }
    if (check != p) throw UsageError("weight is not linear: " + src);
    return out;
}

MultiPoly parse_poly(const std::string& s) {
    RF r = parse_rf(s);
    if (!r.is_polynomial()) throw UsageError("not a polynomial: " + s);
    return r.num();
}

// ---- matrices ----

std::vector<RF> normalize_vector(std::vector<RF> v) {
    std::vector<std::string> vars;
    for (auto& x : v) vars = merge_vars(vars, x.vars());
    MultiPoly l = MultiPoly(Rational(1)).with_vars(vars);
    for (auto& x : v) {
        if (x.is_zero() || x.den().is_one()) continue;
        MultiPoly d = x.den().with_vars(vars);
        MultiPoly g = poly_gcd(l, d);
        l = poly_exact_div(l * d, g);
    }
    std::vector<MultiPoly> nums;
    MultiPoly g(vars);
    for (auto& x : v) {
        MultiPoly n = x.is_zero() ? MultiPoly(vars) : (RF(l) * x).num().with_vars(vars);
        nums.push_back(n);
        if (!n.is_zero()) g = g.is_zero() ? n.primitive() : poly_gcd(g, n);
    }
    if (g.is_zero()) return v;
    Rational sign = 1;
    for (auto& n : nums)
        if (!n.is_zero()) {
            Rational c;
            poly_exact_div(n, g).primitive(&c);
            sign = c < 0 ? -1 : 1;
            break;
        }
    std::vector<RF> out;
    for (auto& n : nums) {
        MultiPoly q = n.is_zero() ? n : poly_exact_div(n, g);
        // content-1 integral over all entries jointly
        out.push_back(RF(q.trimmed()));
    }
    // joint integer content
    Integer den = 1, num = 0;
    for (auto& x : out)
        for (auto& [e, c] : x.num().terms()) {
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
        }
    Rational k(den, num);
    k.canonicalize();
    k *= sign;
    for (auto& x : out) x *= RF(k);
    return out;
}

std::vector<std::vector<RF>> nullspace(const ExactMatrix& m) {
    std::size_t R = m.rows(), C = m.cols();
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j) vars = merge_vars(vars, m(i, j).vars());
    // clear row denominators
    std::vector<std::vector<MultiPoly>> a(R, std::vector<MultiPoly>(C));
    for (std::size_t i = 0; i < R; ++i) {
        std::vector<RF> row(C);
        for (std::size_t j = 0; j < C; ++j) row[j] = m(i, j);
        bool any = std::any_of(row.begin(), row.end(), [](const RF& x) { return !x.is_zero(); });
        if (any) row = normalize_vector(row);
        for (std::size_t j = 0; j < C; ++j) a[i][j] = row[j].num().with_vars(vars);
    }
    MultiPoly prev = MultiPoly(Rational(1)).with_vars(vars);
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t p = r;
        while (p < R && a[p][c].is_zero()) ++p;
        if (p == R) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j)
                a[i][j] = poly_exact_div(a[r][c] * a[i][j] - a[i][c] * a[r][j], prev);
            a[i][c] = MultiPoly(vars);
        }
        prev = a[r][c];
        pivots.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(C, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<RF>> basis;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        std::vector<RF> x(C);
        x[f] = RF(1);
        for (std::size_t k = pivots.size(); k-- > 0;) {
            std::size_t pc = pivots[k];
            RF s;
            for (std::size_t j = pc + 1; j < C; ++j)
                if (!a[k][j].is_zero() && !x[j].is_zero()) s += RF(a[k][j]) * x[j];
            x[pc] = -s / RF(a[k][pc]);
        }
        basis.push_back(normalize_vector(x));
    }
    return basis;
}

std::size_t rank(const ExactMatrix& m) { return m.cols() - nullspace(m).size(); }

// ---- dense rational ----

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& a, std::size_t cols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::vector<QVector> nullspace_q(const QMatrix& m, std::size_t cols) {
    QMatrix a = m;
    for (auto& row : a)
        if (row.size() != cols) throw InternalError("nullspace_q: ragged matrix");
    auto piv = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<QVector> out;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        QVector x(cols, Rational(0));
        x[f] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = -a[k][f];
        out.push_back(x);
    }
    return out;
}

QVector solve_q(const QMatrix& m, const QVector& b) {
    if (m.empty()) throw InternalError("solve_q: empty system");
    std::size_t cols = m[0].size();
    QMatrix a = m;
    for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
    auto piv = rref(a, cols + 1);
    if (!piv.empty() && piv.back() == cols) throw InternalError("solve_q: inconsistent system");
    if (piv.size() != cols) throw InternalError("solve_q: system not injective");
    QVector x(cols);
    for (std::size_t k = 0; k < cols; ++k) x[piv[k]] = a[k][cols];
    return x;
}

QMatrix inverse_q(const QMatrix& m) {
    std::size_t n = m.size();
    QMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) {
        a[i].resize(2 * n, Rational(0));
        a[i][n + i] = 1;
    }
    auto piv = rref(a, 2 * n);
    if (piv.size() < n || piv[n - 1] != n - 1) throw MathRefusal("matrix is singular");
    QMatrix inv(n, QVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

std::size_t rank_q(QMatrix m) {
    if (m.empty()) return 0;
    return rref(m, m[0].size()).size();
}

}  // namespace gvb
