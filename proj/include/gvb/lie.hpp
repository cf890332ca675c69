#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gvb/exact.hpp"
#include "gvb/roots.hpp"

namespace gvb {

/// Sparse element of a Lie algebra over Q, keyed by basis index.
using AlgElement = std::map<int, Rational>;

void axpy(AlgElement& y, const Rational& a, const AlgElement& x);
AlgElement scaled(const AlgElement& x, const Rational& a);

/// Basis g_1..g_N (positive roots), g_-1..g_-N, h_1..h_r with h_j the dual of the
/// j-th simple root: [h_j, g_c] = <a_j, c> g_c. Normalized so that
/// [g_b, g_-b] = (2/<b,b>) h_b.
class LieAlgebra {
public:
    LieAlgebra(RootSystem rs, std::vector<std::vector<AlgElement>> table, std::string label);

    const RootSystem& roots() const { return rs_; }
    const std::string& label() const { return label_; }
    int dim() const { return dim_; }
    int num_positive() const { return n_; }
    int rank() const { return r_; }

    int pos(int k) const { return k; }
    int neg(int k) const { return n_ + k; }
    int cartan(int j) const { return 2 * n_ + j; }
    bool is_positive(int b) const { return b < n_; }
    bool is_negative(int b) const { return b >= n_ && b < 2 * n_; }
    bool is_cartan(int b) const { return b >= 2 * n_; }
    /// Index of the positive root underlying a root vector.
    int root_of(int b) const { return b < n_ ? b : b - n_; }
    /// Basis index of g_{+-root}.
    int root_vector(const IntVec& root) const;
    IntVec weight(int b) const;

    std::string name(int b, Style st = Style::Ascii) const;
    int basis_from_name(const std::string& s) const;

    const AlgElement& bracket(int a, int b) const { return table_[a][b]; }
    AlgElement bracket(const AlgElement& x, const AlgElement& y) const;
    /// Dual Cartan element h_c for a weight c in simple coordinates.
    AlgElement coroot_element(const IntVec& root) const;

    QMatrix killing_form() const;
    /// Largest violation count of antisymmetry and Jacobi (0 when consistent).
    int consistency_errors() const;

private:
    RootSystem rs_;
    std::vector<std::vector<AlgElement>> table_;
    std::string label_;
    int n_, r_, dim_;
};

/// so(2n+1) realized in (2n+1)x(2n+1) rational matrices; signs fixed for B3.
LieAlgebra build_orthogonal_odd(int n);
LieAlgebra build_special_linear(int n);  // A_n
/// Any supported type: A_n, B_n, G2 (G2 through its rank three embedding).
LieAlgebra build_chevalley(const std::string& name);

/// Rule for deriving a table from matrices: each basis element's matrix, in basis order.
LieAlgebra from_matrices(const RootSystem& rs, const std::vector<QMatrix>& mats, const std::string& label);

// ---- universal enveloping algebra ----

using Word = std::vector<int>;

class UEAElement {
public:
    UEAElement() = default;
    explicit UEAElement(const LieAlgebra* alg) : alg_(alg) {}
    static UEAElement generator(const LieAlgebra* alg, int b);
    static UEAElement scalar(const LieAlgebra* alg, const RF& c);

    const LieAlgebra* algebra() const { return alg_; }
    const std::map<Word, RF>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const Word& w, const RF& c);

    UEAElement& operator+=(const UEAElement& o);
    UEAElement& operator-=(const UEAElement& o);
    UEAElement operator*(const UEAElement& o) const;
    UEAElement operator*(const RF& c) const;
    UEAElement operator+(const UEAElement& o) const {
        UEAElement r = *this;
        return r += o;
    }
    UEAElement operator-(const UEAElement& o) const {
        UEAElement r = *this;
        return r -= o;
    }

    /// PBW form: negative root vectors (g_-N first), then Cartan, then positive.
    UEAElement normal_ordered() const;
    /// Anti-automorphism g_b <-> g_-b, h fixed.
    UEAElement transposed() const;
    /// Sum of the roots of each word in simple coordinates; throws if not homogeneous.
    IntVec weight() const;

    std::string str(Style st = Style::Ascii) const;

private:
    const LieAlgebra* alg_ = nullptr;
    std::map<Word, RF> terms_;
};

std::string word_string(const LieAlgebra& g, const Word& w, Style st);
/// Sign and coefficient printed in front of a term.
std::string coefficient_prefix(const RF& c, bool first, bool has_word, Style st);

/// Normal-order position key for the PBW ordering.
int pbw_key(const LieAlgebra& alg, int b);

/// Parses e.g. "(-x1-2)g_{-3}g_{-2} - 4g_{-4} + 2g-2 g-1^2"; a trailing "v" is ignored.
UEAElement parse_uea(const std::string& s, const LieAlgebra* alg);

/// Casimir element for the Killing form, normal ordered.
UEAElement casimir(const LieAlgebra& alg);

// ---- embeddings ----

struct Embedding {
    std::shared_ptr<const LieAlgebra> source, target;
    std::vector<AlgElement> images;  // per source basis element
    QMatrix pr;                      // target simple coords -> source simple coords (rows: source)
    QMatrix iota;                    // source simple coords -> target simple coords (rows: target)
    Rational dynkin_index;

    AlgElement image(const AlgElement& x) const;
    UEAElement image(const UEAElement& u) const;
    QVector project(const QVector& target_simple) const;
    std::vector<RF> project(const std::vector<RF>& target_simple) const;
    IntVec project(const IntVec& target_simple) const;
    QVector lift(const QVector& source_simple) const;
};

/// Builds the source algebra from images of its simple generators e_i, f_i and the
/// induced embedding. Throws if the images do not generate a copy of the source type.
Embedding embedding_from_simple_images(const RootSystem& source, std::shared_ptr<const LieAlgebra> target,
                                       const std::vector<AlgElement>& e, const std::vector<AlgElement>& f,
                                       const std::string& label);

/// Built-in pair: G2 inside so(7) via g_{+-1} -> g_{+-1}+g_{+-3}, g_{+-2} -> g_{+-2}.
Embedding g2_in_so7();

struct SubalgebraReport {
    std::vector<AlgElement> basis;  // echelon basis of the closure
    int dim = 0;
    int rank = 0;        // dimension of the toral part inside the ambient Cartan
    std::string type;    // e.g. "G2", "A1xA1", "abelian", "unknown"
    std::vector<std::vector<int>> cartan_matrix;
};

SubalgebraReport generate_subalgebra(const LieAlgebra& alg, const std::vector<AlgElement>& seeds);

}  // namespace gvb
