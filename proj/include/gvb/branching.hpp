#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gvb/exact.hpp"
#include "gvb/fd.hpp"
#include "gvb/lie.hpp"
#include "gvb/roots.hpp"

namespace gvb {

/// Parabolic subalgebra containing the standard Borel, given by crossed simple roots.
struct Parabolic {
    const RootSystem* rs = nullptr;
    IntVec crossings;
    std::vector<int> levi;          // uncrossed simple roots
    std::vector<int> levi_roots;    // positive roots of the Levi part
    std::vector<int> nil_roots;     // positive roots of the nilradical

    bool in_levi(int root) const;
    std::string str() const;  // e.g. "(1,0,0)"
};

Parabolic make_parabolic(const RootSystem& rs, const IntVec& crossings);
/// All 2^rank parabolics, crossings read as binary numbers in descending order.
std::vector<Parabolic> all_parabolics(const RootSystem& rs);

/// Preimage of the parabolic under the embedding, as a parabolic of the smaller algebra.
Parabolic induced_bar_parabolic(const Parabolic& p, const Embedding& e);

using IntWeights = std::vector<IntVec>;

/// Multiset of projected weights of the ambient opposite nilradical.
IntWeights projected_nil_weights(const Parabolic& p, const Embedding& e);
/// Weights of the opposite nilradical of the induced parabolic.
IntWeights bar_nil_weights(const Parabolic& bar);

/// Is 0 a nontrivial non-negative integral combination of the weights.
bool zero_in_cone(const IntWeights& w);

/// Feasibility of a x >= b over Q by Fourier-Motzkin; fills a witness when feasible.
bool fm_feasible(const QMatrix& a, const QVector& b, QVector* witness = nullptr);

struct ConeReport {
    IntWeights quotient_weights;
    IntWeights bar_nil_weights;
    bool zero_in_c = false;
    bool zero_in_c_prime = false;
    bool condition_a = false;
    bool weakly_compatible = false;
    bool compatible = false;
    bool finite_branching = false;
};

ConeReport quotient_weights(const Parabolic& p, const Embedding& e);

struct PartitionContext {
    IntWeights x;
    bool zero_in_cone = false;
    QVector grading;  // strictly positive on every element of x when zero_in_cone is false
};

PartitionContext make_partition_context(const IntWeights& x);

struct Mult {
    bool infinite = false;
    Integer value = 0;
    static Mult finite(Integer v) { return Mult{false, std::move(v)}; }
    static Mult inf() { return Mult{true, 0}; }
    std::string str() const { return infinite ? "inf" : value.get_str(); }
    friend bool operator==(const Mult& a, const Mult& b) { return a.infinite == b.infinite && a.value == b.value; }
};

/// Number of ways to write alpha as a non-negative integral combination of ctx.x.
/// When 0 lies in the cone, representable arguments (found within `bound` parts) give inf.
Mult kostant_partition(const PartitionContext& ctx, const IntVec& alpha, int bound = 64);

/// Difference pr(negative roots of the ambient algebra) minus negative roots of the smaller one.
IntWeights borel_quotient_weights(const Embedding& e);

/// m(mu, lambda); lambda in ambient fundamental coordinates, mu in smaller simple coordinates.
Mult branching_multiplicity(const Parabolic& p, const Embedding& e, const std::vector<RF>& lambda,
                            const std::vector<RF>& mu);

struct BranchRow {
    std::vector<RF> mu;  // simple coordinates of the smaller algebra
    int degree = 0;      // smallest symmetric degree where mu appears as a highest weight
    Mult mult;
};

/// Highest weights occurring in V_lambda(l) tensor S^d(quotient) for d <= cutoff, with m(mu, lambda).
std::vector<BranchRow> branch_up_to_degree(const Parabolic& p, const Embedding& e, const std::vector<RF>& lambda,
                                           int cutoff);

/// Truncated characters keyed by integral offsets from the projected top weight.
using OffsetCharacter = std::map<IntVec, Integer>;

/// Level of an offset: minus the sum of its coordinates on the crossed roots of `bar`.
int offset_level(const Parabolic& bar, const IntVec& offset);

/// Projected character of M_lambda(g, p) up to the given level of the induced parabolic.
OffsetCharacter truncated_verma_character(const Parabolic& p, const Embedding& e, const std::vector<RF>& lambda,
                                          int max_level);
/// Character of M_mu(gbar, bar) as offsets from `origin`, up to the given level.
OffsetCharacter truncated_bar_verma_character(const Parabolic& bar, const std::vector<RF>& mu,
                                              const std::vector<RF>& origin, int max_level);

struct IdentityReport {
    bool holds = false;
    OffsetCharacter lhs, rhs;
    std::vector<BranchRow> terms;  // mu with m(mu, lambda) used on the right
};

/// Checks Ch M_lambda = sum m(mu,lambda) Ch M_mu(gbar, pbar) term by term up to max_level.
IdentityReport check_character_identity(const Parabolic& p, const Embedding& e, const std::vector<RF>& lambda,
                                        int max_level);

/// Half of (dim g - dim gbar - rank g - rank gbar); nullopt for an equal-dimension pair.
std::optional<int> quasipoly_degree_bound(int dim_g, int rank_g, int dim_gbar, int rank_gbar);
std::optional<int> quasipoly_degree_bound(const LieAlgebra& g, const LieAlgebra& gbar);

}  // namespace gvb
