#pragma once

#include <map>
#include <string>
#include <vector>

#include "gvb/exact.hpp"
#include "gvb/lie.hpp"
#include "gvb/roots.hpp"

namespace gvb {

/// Column-major sparse rational matrix: col -> {row -> value}.
using SparseQ = std::vector<std::map<int, Rational>>;

QVector apply(const SparseQ& m, const QVector& v);

/// Element of the crystal of an irreducible module of the semisimple subsystem on `levi`,
/// as a Lakshmibai-Seshadri path (segments in Dynkin-label coordinates of the subsystem).
struct LSPath {
    std::vector<QVector> segments;
    QVector endpoint() const;
    std::string key() const;
};

class Crystal {
public:
    Crystal(const IntMat& cartan_sub, const IntVec& labels);
    const std::vector<LSPath>& elements() const { return elems_; }
    /// Raising/lowering operator; false if it annihilates the path.
    bool e(int i, const LSPath& p, LSPath& out) const;
    bool f(int i, const LSPath& p, LSPath& out) const;
    int epsilon(int i, const LSPath& p) const;
    int phi(int i, const LSPath& p) const;
    /// String parametrization along a word (indices into the subsystem).
    std::vector<int> string(const LSPath& p, const std::vector<int>& word) const;

private:
    IntMat a_;
    std::vector<LSPath> elems_;
};

/// Irreducible module V_lambda of the Levi subalgebra with semisimple part on `levi`.
/// Basis vectors are PBW-type monomials in lowering operators applied to the top vector.
class FiniteModule {
public:
    FiniteModule() = default;

    const LieAlgebra& algebra() const { return *alg_; }
    const std::vector<int>& levi() const { return levi_; }
    const std::vector<RF>& lambda() const { return lambda_; }  // fundamental coordinates
    int dim() const { return static_cast<int>(monomials_.size()); }
    /// Letters (basis indices of lowering operators), applied right to left.
    const Word& monomial(int i) const { return monomials_[i]; }
    const std::vector<Word>& monomials() const { return monomials_; }
    /// Simple-root depth below the top, over all simple roots of the ambient algebra.
    const IntVec& depth(int i) const { return depth_[i]; }
    std::vector<RF> weight_simple(int i) const;
    std::vector<RF> weight_fundamental(int i) const;
    std::string monomial_string(int i, Style st = Style::Ascii) const;
    const std::vector<int>& reduced_word() const { return word_; }
    const std::vector<std::vector<int>>& strings() const { return strings_; }

    bool acts(int b) const;  // whether basis element b of the algebra acts
    const SparseQ& matrix(int b) const;
    /// Eigenvalue of the Cartan basis element with algebra index j on basis vector i.
    RF cartan_value(int j, int i) const;

    std::vector<RF> act(int b, const std::vector<RF>& v) const;
    std::vector<RF> act(const AlgElement& x, const std::vector<RF>& v) const;
    std::vector<RF> act(const UEAElement& u, const std::vector<RF>& v) const;
    std::vector<RF> top() const;

    friend FiniteModule build_fd_module(const LieAlgebra& alg, const std::vector<int>& levi,
                                        const std::vector<RF>& lambda);

private:
    const LieAlgebra* alg_ = nullptr;
    std::vector<int> levi_;
    std::vector<RF> lambda_;
    std::vector<RF> lambda_simple_;
    std::vector<int> word_;
    std::vector<Word> monomials_;
    std::vector<std::vector<int>> strings_;
    std::vector<IntVec> depth_;
    std::map<int, SparseQ> action_;
};

/// lambda in fundamental coordinates; entries on `levi` must be non-negative integers.
FiniteModule build_fd_module(const LieAlgebra& alg, const std::vector<int>& levi, const std::vector<RF>& lambda);

/// Character: simple-root coordinates -> multiplicity.
using Character = std::map<std::vector<RF>, Integer>;

Character fd_character(const FiniteModule& m);
/// Freudenthal multiplicities for the subsystem on `levi` with highest weight lambda (fundamental coords).
Character freudenthal_character(const RootSystem& rs, const std::vector<int>& levi, const std::vector<RF>& lambda);
Character project_character(const Character& c, const Embedding& e);
Integer character_dimension(const Character& c);

struct Constituent {
    std::vector<RF> weight;  // simple coordinates of the smaller algebra
    Integer multiplicity;
    Integer dim;
};

/// Highest weights of the restriction to the Levi of the smaller algebra with semisimple part `bar_levi`.
std::vector<Constituent> decompose_over_bar_levi(const FiniteModule& m, const Embedding& e,
                                                 const std::vector<int>& bar_levi);

/// Peels a character of the Levi of the smaller algebra into irreducible highest weights.
std::vector<Constituent> decompose_character(Character c, const RootSystem& rs, const std::vector<int>& bar_levi);

/// Vectors of projected weight mu killed by the raising operators of the smaller Levi.
std::vector<std::vector<RF>> fd_singular_vectors(const FiniteModule& m, const Embedding& e,
                                                 const std::vector<int>& bar_levi, const std::vector<RF>& mu);

/// Evaluates a word expression (e.g. parsed "g_{-2}g_{-3}^2 v") on the top vector.
std::vector<RF> evaluate_on_top(const FiniteModule& m, const UEAElement& u);

/// Index of the basis vector whose monomial is `w`, or -1.
int find_monomial(const FiniteModule& m, const Word& w);

/// Returns c with a == c*b for nonzero b, or nullopt-like false.
bool proportional(const std::vector<RF>& a, const std::vector<RF>& b, RF* ratio = nullptr);

}  // namespace gvb
