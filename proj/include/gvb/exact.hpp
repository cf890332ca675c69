#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gvb {

using Integer = mpz_class;
using Rational = mpq_class;

/// Malformed input or inconsistent arguments.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
/// A mathematical precondition fails (e.g. a required condition does not hold).
struct MathRefusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Evaluation hits a zero denominator.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};
/// The requested operation is not implemented for the given input.
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// An internal consistency check failed.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

enum class Style { Ascii, Unicode, Latex };

inline Rational frac(long a, long b) {
    Rational q(a, b);
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

using Exponents = std::vector<int>;

// Graded-lex, greatest first.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Compares variable names so that x2 < x10.
bool natural_less(const std::string& a, const std::string& b);

class MultiPoly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars);
    MultiPoly(const Rational& c);  // NOLINT implicit constant
    MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT
    MultiPoly(int c) : MultiPoly(Rational(c)) {}  // NOLINT

    static MultiPoly variable(const std::string& name);
    static MultiPoly monomial(std::vector<std::string> vars, Exponents e, const Rational& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    Rational constant_value() const;  // requires is_constant
    int total_degree() const;
    int degree_in(int var) const;
    int var_index(const std::string& name) const;
    const Exponents& leading_exponents() const;
    const Rational& leading_coeff() const;

    /// Re-express over a superset of the variables (sorted).
    MultiPoly with_vars(const std::vector<std::string>& vars) const;
    /// Drops variables that occur in no term.
    MultiPoly trimmed() const;

    void add_term(const Exponents& e, const Rational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    MultiPoly operator-() const;
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    MultiPoly pow(unsigned k) const;

    /// Structural equality (variable lists are unified first).
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
    /// Total order used for canonical sorting.
    friend bool operator<(const MultiPoly& a, const MultiPoly& b);

    Rational eval(const std::map<std::string, Rational>& point) const;
    /// Substitutes a subset of variables; returns a polynomial in the rest.
    MultiPoly partial_eval(const std::map<std::string, Rational>& point) const;

    /// Integral, content 1, positive leading coefficient. *this == content * result.
    MultiPoly primitive(Rational* content = nullptr) const;

    std::string str(Style style = Style::Ascii) const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);
void unify(MultiPoly& a, MultiPoly& b);

/// Greatest common divisor, normalized primitive. Both operands must share the variable list.
MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);
/// Multivariate division by the graded-lex leading term.
std::pair<MultiPoly, MultiPoly> poly_divmod(const MultiPoly& a, const MultiPoly& b);
/// Throws InternalError if b does not divide a.
MultiPoly poly_exact_div(const MultiPoly& a, const MultiPoly& b);
/// Distinct rational roots of a univariate polynomial, ascending.
std::vector<Rational> rational_roots(const MultiPoly& p);

class RationalFunction {
public:
    RationalFunction() : num_(), den_(Rational(1)) {}
    RationalFunction(const MultiPoly& p);  // NOLINT
    RationalFunction(const Rational& c) : RationalFunction(MultiPoly(c)) {}  // NOLINT
    RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT
    RationalFunction(int c) : RationalFunction(Rational(c)) {}  // NOLINT
    RationalFunction(const MultiPoly& n, const MultiPoly& d);

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return den_.is_one() && num_.is_constant(); }
    Rational constant_value() const;
    std::vector<std::string> vars() const { return merge_vars(num_.vars(), den_.vars()); }

    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    RationalFunction operator-() const;
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b);
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }
    friend bool operator<(const RationalFunction& a, const RationalFunction& b);

    /// Throws PoleError if the denominator vanishes.
    Rational eval(const std::map<std::string, Rational>& point) const;
    RationalFunction partial_eval(const std::map<std::string, Rational>& point) const;

    std::string str(Style style = Style::Ascii) const;

private:
    void normalize();
    MultiPoly num_, den_;
};

using RF = RationalFunction;

MultiPoly parse_poly(const std::string& s);
RationalFunction parse_rf(const std::string& s);
/// Coefficients of basis1..basisN in a linear expression such as "x1*w1+w2" or "(x_{1}+1)\psi_{1}".
std::vector<RationalFunction> parse_weight(const std::string& s, const std::string& basis, int n);

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RF& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const RF& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<RF> data_;
};

/// Kernel basis by fraction-free elimination. Entries are polynomials with
/// cleared denominators and content 1; the first nonzero entry has positive leading coefficient.
std::vector<std::vector<RF>> nullspace(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);

/// Clears denominators and content of a vector of rational functions.
std::vector<RF> normalize_vector(std::vector<RF> v);

// Dense rational linear algebra for numeric blocks.
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;  // row-major

std::vector<QVector> nullspace_q(const QMatrix& m, std::size_t cols);
/// Solves m x = b for an injective m; throws InternalError if inconsistent.
QVector solve_q(const QMatrix& m, const QVector& b);
QMatrix inverse_q(const QMatrix& m);
std::size_t rank_q(QMatrix m);

}  // namespace gvb
