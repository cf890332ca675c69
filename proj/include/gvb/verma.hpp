#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "gvb/branching.hpp"
#include "gvb/exact.hpp"
#include "gvb/fd.hpp"
#include "gvb/lie.hpp"

namespace gvb {

/// Basis vector: monomial in the opposite nilradical (exponents in PBW order) tensor an inducing basis vector.
struct VermaIndex {
    std::vector<int> exps;
    int m = 0;
    friend bool operator<(const VermaIndex& a, const VermaIndex& b) {
        return std::tie(a.exps, a.m) < std::tie(b.exps, b.m);
    }
    friend bool operator==(const VermaIndex& a, const VermaIndex& b) { return a.exps == b.exps && a.m == b.m; }
};

using VermaVector = std::map<VermaIndex, RF>;

void add_term(VermaVector& v, const VermaIndex& i, const RF& c);
VermaVector& axpy(VermaVector& y, const RF& a, const VermaVector& x);

/// M_lambda(g, p) = U(n_-) tensor V_lambda(l).
class GeneralizedVerma {
public:
    GeneralizedVerma(const Parabolic& p, const LieAlgebra& alg, const std::vector<RF>& lambda);

    const LieAlgebra& algebra() const { return *alg_; }
    const Parabolic& parabolic() const { return p_; }
    const FiniteModule& inducing() const { return fd_; }
    const std::vector<RF>& lambda() const { return fd_.lambda(); }
    /// Basis indices of the opposite nilradical, in PBW order.
    const std::vector<int>& ops() const { return ops_; }
    int op_position(int b) const;

    VermaVector highest_vector() const;
    /// 1 tensor w for an inducing-module vector.
    VermaVector from_inducing(const std::vector<RF>& w) const;
    /// Simple coordinates of the weight of a basis vector.
    std::vector<RF> weight(const VermaIndex& i) const;
    int degree(const VermaIndex& i) const;
    /// Dimension of the span of basis vectors with total exponent d.
    Integer degree_dimension(int d) const;

    VermaVector act(int b, const VermaVector& v) const;
    VermaVector act(const AlgElement& x, const VermaVector& v) const;
    VermaVector act(const UEAElement& u, const VermaVector& v) const;

    /// Word of a basis vector: nilradical letters followed by the inducing monomial.
    Word word(const VermaIndex& i) const;
    std::string str(const VermaVector& v, Style st = Style::Ascii) const;
    UEAElement to_uea(const VermaVector& v) const;

private:
    const VermaVector& act_basis(int b, const VermaIndex& i) const;

    const LieAlgebra* alg_;
    Parabolic p_;
    FiniteModule fd_;
    std::vector<int> ops_;
    std::map<int, int> op_pos_;
    mutable std::map<std::tuple<int, std::vector<int>, int>, VermaVector> memo_;
};

VermaVector verma_act(const GeneralizedVerma& M, const UEAElement& u, const VermaVector& v);

/// Evaluates all terms at a point.
VermaVector specialize(const VermaVector& v, const std::map<std::string, Rational>& point);
/// Integral coefficients with content 1; the first term in basis order has positive leading coefficient.
VermaVector normalize(const VermaVector& v);
bool proportional(const VermaVector& a, const VermaVector& b);
/// Whether two families span the same subspace.
bool same_span(const std::vector<VermaVector>& a, const std::vector<VermaVector>& b);

/// Quadratic Casimir of the smaller algebra (Killing normalization) and its image.
UEAElement bar_casimir(const Embedding& e);
UEAElement image_casimir(const Embedding& e);

/// Harish-Chandra value of the quadratic Casimir on a highest weight (simple coordinates).
RF p1_scalar(const Embedding& e, const std::vector<RF>& mu);

struct ConditionBReport {
    bool holds = true;                            // generic or numeric answer
    std::vector<std::pair<int, int>> failing;     // equal p1 values
    std::vector<MultiPoly> inequalities;          // primitive, negative leading coefficient, "p != 0"
    bool weak_holds = true;                       // no two constituents are linked
    std::vector<std::pair<int, int>> linked;
    std::string inequality_string(Style st = Style::Ascii) const;
};

ConditionBReport strong_condition_b(const Embedding& e, const std::vector<std::vector<RF>>& constituents);

struct SingularVectorResult {
    std::vector<RF> mu;
    VermaVector vector;           // normalized
    VermaVector raw;              // before normalization
    std::vector<std::vector<RF>> projector_weights;
    std::vector<RF> projector_scalars;
    bool zero = false;
};

/// Distance below the projected top on the crossed roots of the induced parabolic.
int constituent_depth(const GeneralizedVerma& M, const Embedding& e, const std::vector<RF>& mu);

/// Level order on constituents with graded-lex tie break on offsets from the top.
bool constituent_above(const GeneralizedVerma& M, const Embedding& e, const std::vector<RF>& nu,
                       const std::vector<RF>& mu);

/// Applies the product of (i(c1) - p1(nu)) over constituent copies nu above mu to 1 tensor w.
SingularVectorResult build_singular_vector(const GeneralizedVerma& M, const Embedding& e, const std::vector<RF>& mu,
                                           const std::vector<RF>& fd_vector);

/// All top-level singular vectors, one per constituent copy, in decomposition order.
std::vector<SingularVectorResult> build_all_singular_vectors(const GeneralizedVerma& M, const Embedding& e);

struct SingularReport {
    bool pass = false;
    std::vector<bool> generator_pass;  // per simple raising generator of the smaller algebra
    bool homogeneous = false;
    std::vector<RF> mu;
};

SingularReport verify_singular(const GeneralizedVerma& M, const Embedding& e, const VermaVector& v);

struct ShapovalovCertificate {
    RF raw;
    MultiPoly poly;
    std::vector<Rational> roots;
};

/// Coefficient of the top vector in tau(u) u v_lambda; u must have a single weight for the smaller Cartan.
ShapovalovCertificate shapovalov_certificate(const GeneralizedVerma& M, const Embedding& e, const UEAElement& u);

UEAElement transpose_antiautomorphism(const UEAElement& u);

}  // namespace gvb
