#pragma once

#include <string>
#include <vector>

#include "twistlab/galg.hpp"
#include "twistlab/grp.hpp"

namespace twistlab {

/// An odd abelian group H together with an isomorphism B: H -> H^ whose
/// associated form <x,y> := pair(x, B y) is skew (<x,y> = -<y,x> mod the
/// exponent). Construction validates both properties exhaustively.
class SymplecticStructure {
  public:
    SymplecticStructure(AbelianGroup h, IntMatrix b);

    const AbelianGroup& group() const { return h_; }
    const GroupHom& b_map() const { return b_; }
    const IntMatrix& b_matrix() const { return mat_; }

    /// Exponent of H; form values live in Z_conductor.
    int conductor() const { return n_; }

    /// <x,y> in [0, conductor), by element index.
    int form_exponent(int x, int y) const;

    /// form(phi x, phi y) = form(x, y) for every pair; phi must act on H.
    bool preserves_form(const GroupHom& phi) const;

    /// The structure B' with B'y = B(y^{1/2}), i.e. form'(x,y) = <x, y^{1/2}>.
    SymplecticStructure halved() const;

  private:
    AbelianGroup h_;
    GroupHom b_;
    IntMatrix mat_;
    int n_ = 1;
};

/// On H = K x K (factors concatenated): B(a,b) = (b, -a), giving the form
/// <(a,b),(c,d)> = pair(a,d) - pair(b,c). Requires |K| odd.
SymplecticStructure standard_symplectic(const AbelianGroup& k);

struct TwistWithInverse {
    Tensor2 j;
    Tensor2 jinv;
};

/// J_B = |H|^{-1} sum_{x,y} e^{<x,y>} x (x) y together with its closed-form
/// inverse (negated exponents), verified by multiplication on both sides.
TwistWithInverse symplectic_twist(const SymplecticStructure& s);

/// R_B = |H|^{-1} sum_{x,y} e^{<x, y^{1/2}>} x (x) y.
Tensor2 symplectic_R(const SymplecticStructure& s);

/// Verifies J_B^2 = J_{B'} (B' = halved B) and flip(J_B) = J_B^{-1} exactly.
TwistCheck square_identity_check(const SymplecticStructure& s);

/// The literal quadruple sum
///   sum_{z,z',t,t' in K} e^{<z,t> + <z',t'> + <rho(z^{-1})x, rho(t^{-1})y^{1/2}>} zz' (x) tt'
/// as an element of C[K] (x) C[K]; x, y are element indices in H.
Tensor2 lemma32_quadruple_sum(const SymplecticStructure& k, const SymplecticStructure& h,
                              const GroupAction& rho, int x, int y);

/// The closed form
///   |K| sum_{u,v in K} e^{<u,v^{1/2}> + <rho(u^{-1/2})x, rho(v^{-1/2})y^{1/2}>} u (x) v.
Tensor2 lemma32_closed_form(const SymplecticStructure& k, const SymplecticStructure& h,
                            const GroupAction& rho, int x, int y);

/// Exact equality of the two sides above. Throws std::invalid_argument when
/// rho does not act on h's group or fails to preserve its form.
bool lemma32_check(const SymplecticStructure& k, const SymplecticStructure& h,
                   const GroupAction& rho, int x, int y);

enum class VerifyLevel { none, inverse, full };

/// An iterated semidirect tower G_i = G_{i-1} |x H_i where every level
/// carries a symplectic structure and every structural action preserves the
/// form on its level (checked exhaustively at add_level).
class SymplecticHierarchy {
  public:
    explicit SymplecticHierarchy(SymplecticStructure first);

    /// Appends H_{i+1} with the action of the current total group on it.
    void add_level(SymplecticStructure next, GroupAction rho_prev);

    int length() const { return static_cast<int>(levels_.size()); }
    const SymplecticStructure& level(int i) const { return levels_[static_cast<size_t>(i)]; }

    /// Action of group(i-1) on level(i); defined for i >= 1.
    const GroupAction& action(int i) const { return actions_[static_cast<size_t>(i - 1)]; }

    /// Accumulated group after absorbing levels 0..i.
    const FiniteGroup& group(int i) const { return groups_[static_cast<size_t>(i)]; }
    const FiniteGroup& total_group() const { return groups_.back(); }

    /// lcm of the level conductors.
    int conductor() const;

    /// Index of an H_i element inside the total group.
    int embed(int i, int x) const;

    /// Normal-form coordinates of g: out[i] lies in level(i)'s group.
    std::vector<int> coordinates(int g) const;

  private:
    std::vector<SymplecticStructure> levels_;
    std::vector<GroupAction> actions_;  // actions_[i-1] acts on levels_[i]
    std::vector<FiniteGroup> groups_;
};

/// The product twist J_n ... J_1 on the total group, each factor embedded
/// along its level, with the closed-form inverse J_1^{-1} ... J_n^{-1}.
/// VerifyLevel::inverse checks the inverse pair; VerifyLevel::full also runs
/// the full twist-axiom check. Verification failures throw std::logic_error.
TwistWithInverse hierarchy_twist(const SymplecticHierarchy& hier, VerifyLevel level = VerifyLevel::full);

/// The closed-form R-matrix of the hierarchy: coefficient
///   |G|^{-1} e^{sum_j <rho_{j-1}(x_{j-1}^{1/2}...x_1^{1/2})^{-1} x_j,
///                     rho_{j-1}(y_{j-1}^{1/2}...y_1^{1/2})^{-1} y_j^{1/2}>}
/// at the normal-form key pair; the j = 1 summand uses the identity
/// automorphism (empty product).
Tensor2 theorem31_R(const SymplecticHierarchy& hier);

}  // namespace twistlab
