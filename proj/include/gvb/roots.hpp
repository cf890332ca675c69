#pragma once

#include <map>
#include <string>
#include <vector>

#include "gvb/exact.hpp"

namespace gvb {

using IntVec = std::vector<int>;
using IntMat = std::vector<IntVec>;

/// Root data of a simple Lie algebra. Weights are handled in simple-root
/// coordinates unless a function says otherwise.
class RootSystem {
public:
    RootSystem(char type, int rank);
    static RootSystem parse(const std::string& name);  // e.g. "B3", "G2"

    char type() const { return type_; }
    int rank() const { return rank_; }
    std::string name() const { return std::string(1, type_) + std::to_string(rank_); }
    /// A_ij = 2<a_i,a_j>/<a_j,a_j>.
    const IntMat& cartan() const { return cartan_; }
    /// Symmetric form on simple roots; long roots have squared length 2 (A,B,D,E), 4 (C,F), 6 (G).
    const QMatrix& form() const { return form_; }
    /// Positive roots in simple coordinates: height ascending, then lex descending.
    const std::vector<IntVec>& positive_roots() const { return pos_; }
    int num_positive() const { return static_cast<int>(pos_.size()); }
    int dimension() const { return 2 * num_positive() + rank_; }
    /// Index into positive_roots, or -1.
    int root_index(const IntVec& simple_coords) const;
    bool is_root(const IntVec& v) const;  // positive or negative
    int height(const IntVec& v) const;

    Rational pairing(const QVector& a, const QVector& b) const;
    /// <a, b^vee> for a root b.
    Rational coroot_pairing(const QVector& a, const IntVec& root) const;

    /// Simple coordinates of sum c_i omega_i.
    QVector fundamental_to_simple(const QVector& c) const;
    QVector simple_to_fundamental(const QVector& s) const;
    std::vector<RF> fundamental_to_simple(const std::vector<RF>& c) const;
    std::vector<RF> simple_to_fundamental(const std::vector<RF>& s) const;
    /// Orthonormal epsilon coordinates; classical types only.
    QVector simple_to_epsilon(const QVector& s) const;
    std::string epsilon_string(const IntVec& root) const;

    /// Half sum of positive roots supported on the given simple roots (all if empty and full=true).
    QVector rho(const std::vector<int>& levi) const;
    QVector rho() const;
    /// Positive roots supported on a subset of simple roots.
    std::vector<int> levi_positive(const std::vector<int>& levi) const;

    /// Integer action of s_i on simple coordinates (columns are images of simple roots).
    IntMat reflection(int i) const;

private:
    char type_;
    int rank_;
    IntMat cartan_;
    QMatrix form_;
    std::vector<IntVec> pos_;
    std::map<IntVec, int> index_;
    QMatrix cartan_inv_t_;
};

struct WeylElement {
    std::vector<int> word;  // s_{w0} s_{w1} ... applied right to left
    IntMat matrix;          // action on simple coordinates
    int length() const { return static_cast<int>(word.size()); }
    int sign() const { return word.size() % 2 ? -1 : 1; }
};

/// Elements of the Weyl group generated by the listed simple reflections, in BFS (length) order.
std::vector<WeylElement> weyl_group(const RootSystem& rs, const std::vector<int>& gens);
/// Lexicographically smallest reduced word of the longest element.
std::vector<int> longest_word(const RootSystem& rs, const std::vector<int>& gens);

IntVec apply(const IntMat& m, const IntVec& v);
QVector apply(const IntMat& m, const QVector& v);
std::vector<RF> apply(const IntMat& m, const std::vector<RF>& v);
IntMat multiply(const IntMat& a, const IntMat& b);

/// Weyl dimension formula for a dominant weight given in fundamental coordinates.
Integer weyl_dimension(const RootSystem& rs, const IntVec& fundamental);
/// Same for the semisimple subsystem on `levi`, with labels indexed like `levi`.
Integer weyl_dimension(const RootSystem& rs, const std::vector<int>& levi, const IntVec& labels);

}  // namespace gvb
