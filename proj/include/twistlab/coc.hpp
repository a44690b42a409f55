#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twistlab/galg.hpp"
#include "twistlab/grp.hpp"
#include "twistlab/symp.hpp"

namespace twistlab {

/// A bijective 1-cocycle pi: G -> A for an action rho of G on A:
///     pi(g g') = pi(g) * (rho(g) pi(g'))
/// with pi a bijection and pi(e) = e. pi_inv may be left empty on
/// hand-built instances; verified factories always fill it.
struct Cocycle {
    FiniteGroup g;
    FiniteGroup a;
    GroupAction rho;          // G acting on A by automorphisms
    std::vector<int> pi;      // G-index -> A-index
    std::vector<int> pi_inv;  // A-index -> G-index, two-sided

    int apply(int gi) const { return pi[static_cast<size_t>(gi)]; }
    int invert(int ai) const { return pi_inv[static_cast<size_t>(ai)]; }
};

struct CocycleCheck {
    bool ok = true;
    std::string detail;  // first failure, rendered with element names
    // Failing pair for cocycle-law violations (-1 otherwise).
    int g_fail = -1;
    int gp_fail = -1;
    explicit operator bool() const { return ok; }
};

/// Exhaustive verification: table shapes, rho a genuine action, pi a
/// bijection with pi(e) = e, the cocycle law over all |G|^2 pairs, and
/// two-sided consistency of pi_inv when present. Stops at the first
/// failure and reports it.
CocycleCheck verify_cocycle(const Cocycle& c);

/// Verified constructor: fills the inverse table, runs verify_cocycle and
/// throws std::invalid_argument carrying the counterexample on failure.
Cocycle make_cocycle(FiniteGroup g, FiniteGroup a, GroupAction rho, std::vector<int> pi);

/// The table g -> pi(g^{-1}), which trades our cocycle law for the
/// transposed one (see satisfies_reversed_law).
std::vector<int> reversed_cocycle_table(const Cocycle& c);

/// Law under the opposite composition convention:
///     pi(g g') = pi(g') * (rho(g'^{-1}) pi(g)).
/// A table satisfies it exactly when its g -> g^{-1} pullback satisfies
/// ours.
bool satisfies_reversed_law(const FiniteGroup& g, const FiniteGroup& a, const GroupAction& rho,
                            const std::vector<int>& pi);

/// Iterated semidirect tower G_1 = H_1, G_i = G_{i-1} |x H_i along
/// rho_{i-1}: G_{i-1} -> Aut(H_i), together with the plain product group
/// A = H_1 x ... x H_n and the induced action of the tower on A. Levels
/// are arbitrary finite groups here; no form data is involved.
class HierarchyData {
  public:
    explicit HierarchyData(FiniteGroup h1);

    /// Append the next level. rho_prev must be a verified action of the
    /// current total group on h by automorphisms.
    void add_level(FiniteGroup h, GroupAction rho_prev);

    int length() const { return static_cast<int>(levels_.size()); }
    const FiniteGroup& level(int i) const { return levels_[static_cast<size_t>(i)]; }
    /// rho_i for i >= 1: group(i-1) acting on level(i).
    const GroupAction& action(int i) const { return actions_[static_cast<size_t>(i - 1)]; }
    /// Accumulated tower group through level i.
    const FiniteGroup& group(int i) const { return groups_[static_cast<size_t>(i)]; }
    const FiniteGroup& total_group() const { return groups_.back(); }
    /// A = H_1 x ... x H_n with level 0 the fastest index component.
    const FiniteGroup& product_group() const { return product_; }
    /// The induced action of the total group on A: component j of
    /// rho(x_n...x_1)(y_1,...,y_n) is rho_{j-1}(x_{j-1}...x_1) y_j.
    const GroupAction& product_action() const { return product_action_; }

    /// Index of a level-i element inside the total group (all other
    /// normal-form coordinates at the identity).
    int embed(int i, int x) const;
    /// Normal-form coordinates (x_1, ..., x_n) of a total-group element.
    std::vector<int> coordinates(int g) const;
    int product_index(const std::vector<int>& comps) const;
    std::vector<int> product_coords(int a) const;

  private:
    void rebuild_product();

    std::vector<FiniteGroup> levels_;
    std::vector<GroupAction> actions_;
    std::vector<FiniteGroup> groups_;
    FiniteGroup product_;
    GroupAction product_action_;
};

/// The normal-form coordinate map pi(x_n ... x_1) = (x_1, ..., x_n) as a
/// verified cocycle for the induced action of the tower on A.
Cocycle hierarchy_cocycle(const HierarchyData& h);

/// J_1 (x) ... (x) J_n as one element over A (disjoint components, so the
/// embedded factors commute).
Tensor2 tensor_product_twist(const HierarchyData& h, const std::vector<TwistWithInverse>& local);

/// The tower product Jbar = J_n ... J_1 over the total group, with the
/// closed-form inverse J_1^{-1} ... J_n^{-1}. Each local twist must be
/// invariant under the lower tower's action (checked always); full
/// verification additionally re-checks each local pair and the twist
/// axioms per level, plus the inverse pair of the product.
TwistWithInverse product_twist(const HierarchyData& h, const std::vector<TwistWithInverse>& local,
                               VerifyLevel verify = VerifyLevel::full);

struct PullbackResult {
    Tensor2 jbar;
    TwistCheck equation;  // coassociativity + counit identities for jbar
    bool invertible_known = false;
    std::optional<Tensor2> inverse;  // present when invertible_known
    bool twist = false;              // equation.ok && invertible_known
    std::string status;              // one-line summary
};

/// (pi^{-1} (x) pi^{-1})(J) for a twist J over A. J must be G-invariant:
/// (rho(g) (x) rho(g))(J) = J for every g, or std::invalid_argument names
/// the failing element. The twist identities for the result are
/// re-verified; invertibility comes from the supplied closed form when
/// given, else from generic inversion when the dimension cap allows, else
/// stays undetermined (never assumed).
PullbackResult pullback_twist(const Cocycle& c, const Tensor2& j,
                              const std::optional<Tensor2>& known_inverse = std::nullopt);

/// Complete backtracking enumeration of every bijective 1-cocycle for
/// (G, A, rho), smallest-index branching with the cocycle law as the
/// propagation rule. Deterministic output in lexicographic pi-table
/// order; single-threaded by design. Requires |G| = |A| <= 36.
std::vector<Cocycle> search_cocycles(const FiniteGroup& g, const FiniteGroup& a,
                                     const GroupAction& rho);

}  // namespace twistlab
