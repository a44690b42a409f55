#pragma once

#include <string>
#include <vector>

#include "twistlab/coc.hpp"
#include "twistlab/galg.hpp"
#include "twistlab/grp.hpp"
#include "twistlab/symp.hpp"

namespace twistlab {

/// The double of a base cocycle (G, A, rho, pi) with A abelian:
///   Gt = G |x A*  (dual action; index a* + |A*| g, the normal form a* g),
///   At = A x A*   (concatenated factor lists, A fastest),
///   rhot(a* g) = rho(g) x dual(g)  (A* factors act trivially),
///   pit(a* g) = pi(g) a*,
///   tmap: A -> A the bijection with pi^{-1}(x^{-1}) pi^{-1}(tmap x) = e.
/// Every piece is verified exhaustively on build.
struct DoubleData {
    Cocycle base;
    AbelianGroup a;        // the base A
    AbelianGroup astar;    // its character group
    FiniteGroup gt;        // G |x A*
    AbelianGroup at;       // A x A*
    FiniteGroup at_group;  // from_abelian(at)
    Cocycle pit;           // the double cocycle; carries rhot as pit.rho
    std::vector<int> tmap;

    int emb_g(int g) const { return astar.order() * g; }
    int emb_astar(int s) const { return s; }
    int at_index(int x, int s) const { return x + a.order() * s; }
};

/// Builds and verifies the double. Throws std::invalid_argument for a
/// non-abelian A or an unverified base.
DoubleData build_double(const Cocycle& base);

/// |A|^{-1} sum_{x in A, y* in A*} e^{(x,y*)} x (x) y* over A x A*, with
/// the sign-flipped sum as inverse. The twist axioms and the inverse pair
/// are verified on build.
TwistWithInverse fourier_twist(const AbelianGroup& a);

/// The double twist over Gt: coefficient |A|^{-1} e^{(x,y*)} at
/// (pi^{-1}(x), y*), and its closed-form inverse |A|^{-1} e^{-(z,t*)} at
/// (pi^{-1}(tmap z), t*). Inverse pair and twist axioms verified.
TwistWithInverse double_twist(const DoubleData& d);

/// Character evaluations against the second legs: for every a in A,
/// evaluating a on the second leg of J yields the lone element
/// pi^{-1}(-a), and on the second leg of J^{-1} the lone element
/// pi^{-1}(tmap a). Exhaustive over all |A| characters; false with a
/// rendered witness on the first failure.
bool evaluation_identities(const DoubleData& d, const TwistWithInverse& tw,
                           std::string* detail = nullptr);

/// Closed-form R-matrix over Gt: coefficient |A|^{-2} e^{(x,y*) - (y,x*)}
/// at (x* pi^{-1}(x), pi^{-1}(tmap y) y*).
Tensor2 double_R(const DoubleData& d);

/// The order-36 flagship double: S3 (as Z2 |x Z3) with the sign action on
/// Z2 x Z3 and the parity/shift coordinate table.
DoubleData example_4_3();

/// The same twist as double_twist(example_4_3()).j, rebuilt as a two-level
/// tower product — (Z2 x Z2) |x (Z3 x Z3) with odd elements negating both
/// order-3 coordinates, local Fourier twists on each level — and
/// transported onto Gt along the generator-matching isomorphism.
Tensor2 example_4_3_tower_twist(const DoubleData& d);

}  // namespace twistlab
