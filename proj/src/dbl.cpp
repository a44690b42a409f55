#include "twistlab/dbl.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace twistlab {

namespace {

// zeta_N^e / scale for e in [0, N), shared by all the sums below.
std::vector<CycScalar> scaled_roots(int n, int scale_den) {
    CycScalar w = CycScalar::from_rational(Rational(1, scale_den));
    std::vector<CycScalar> out;
    out.reserve(static_cast<size_t>(n));
    for (int e = 0; e < n; ++e) out.push_back(CycScalar::root_of_unity(n, e) * w);
    return out;
}

AbelianGroup concat_with_dual(const AbelianGroup& a) {
    std::vector<int> f = a.factors();
    AbelianGroup astar = character_group(a);
    for (int x : astar.factors()) f.push_back(x);
    return AbelianGroup(std::move(f));
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

DoubleData build_double(const Cocycle& base) {
    CocycleCheck bc = verify_cocycle(base);
    if (!bc.ok) throw std::invalid_argument("build_double: base cocycle fails: " + bc.detail);
    if (base.a.kind() != FiniteGroup::Kind::Abelian)
        throw std::invalid_argument("build_double: A must be an abelian-kind group");

    DoubleData d;
    d.base = base;
    if (d.base.pi_inv.empty()) {
        d.base.pi_inv.assign(d.base.pi.size(), 0);
        for (int g = 0; g < static_cast<int>(d.base.pi.size()); ++g)
            d.base.pi_inv[static_cast<size_t>(d.base.pi[static_cast<size_t>(g)])] = g;
    }
    d.a = base.a.abelian();
    d.astar = character_group(d.a);
    GroupAction dual = dual_action(base.rho);
    d.gt = FiniteGroup::semidirect(base.g, FiniteGroup::from_abelian(d.astar), dual);
    d.at = concat_with_dual(d.a);
    d.at_group = FiniteGroup::from_abelian(d.at);

    const int na = d.a.order();
    const int ns = d.astar.order();
    const int ngt = d.gt.order();

    // rhot(a* g) = rho(g) x dual(g), independent of the a* part.
    std::vector<GroupHom> per_element;
    per_element.reserve(static_cast<size_t>(ngt));
    std::vector<int> pit_tab(static_cast<size_t>(ngt));
    for (int w = 0; w < ngt; ++w) {
        auto [s, g] = d.gt.parts(w);
        std::vector<int> images(static_cast<size_t>(d.at.order()));
        for (int x = 0; x < na; ++x)
            for (int t = 0; t < ns; ++t)
                images[static_cast<size_t>(d.at_index(x, t))] =
                    d.at_index(base.rho.apply(g, x), dual.apply(g, t));
        per_element.emplace_back(d.at_group, d.at_group, std::move(images));
        pit_tab[static_cast<size_t>(w)] = d.at_index(d.base.apply(g), s);
    }
    GroupAction rhot(d.gt, d.at_group, std::move(per_element));
    d.pit = make_cocycle(d.gt, d.at_group, std::move(rhot), std::move(pit_tab));

    // tmap by enumeration; bijectivity and the defining identity checked.
    d.tmap.assign(static_cast<size_t>(na), 0);
    std::vector<char> seen(static_cast<size_t>(na), 0);
    for (int x = 0; x < na; ++x) {
        int g1 = d.base.invert(d.a.neg(x));
        int tx = d.base.apply(base.g.inv(g1));
        d.tmap[static_cast<size_t>(x)] = tx;
        if (seen[static_cast<size_t>(tx)]) throw std::logic_error("build_double: tmap is not injective");
        seen[static_cast<size_t>(tx)] = 1;
        if (base.g.mul(g1, d.base.invert(tx)) != FiniteGroup::identity)
            throw std::logic_error("build_double: tmap defining identity fails");
    }
    return d;
}

// ---------------------------------------------------------------------------
// Twists

TwistWithInverse fourier_twist(const AbelianGroup& a) {
    const int na = a.order();
    const int n = a.exponent();
    AbelianGroup at = concat_with_dual(a);
    FiniteGroup g = FiniteGroup::from_abelian(at);
    std::vector<CycScalar> roots = scaled_roots(n, na);

    Tensor2 j(g, n), jinv(g, n);
    for (int x = 0; x < na; ++x)
        for (int s = 0; s < na; ++s) {
            long e = pair_exponent(a, x, s);
            j.add_to(x, na * s, roots[static_cast<size_t>(e)]);
            jinv.add_to(x, na * s, roots[static_cast<size_t>((n - e) % n)]);
        }
    if (!verify_inverse_pair(j, jinv)) throw std::logic_error("fourier_twist: inverse pair fails");
    TwistCheck tc = is_twist(j);
    if (!tc.ok) throw std::logic_error("fourier_twist: " + tc.failed_condition);
    return TwistWithInverse{std::move(j), std::move(jinv)};
}

TwistWithInverse double_twist(const DoubleData& d) {
    const int na = d.a.order();
    const int n = d.a.exponent();
    std::vector<CycScalar> roots = scaled_roots(n, na);

    Tensor2 j(d.gt, n), jinv(d.gt, n);
    for (int x = 0; x < na; ++x)
        for (int t = 0; t < d.astar.order(); ++t) {
            long e = pair_exponent(d.a, x, t);
            j.add_to(d.emb_g(d.base.invert(x)), d.emb_astar(t), roots[static_cast<size_t>(e)]);
            jinv.add_to(d.emb_g(d.base.invert(d.tmap[static_cast<size_t>(x)])), d.emb_astar(t),
                        roots[static_cast<size_t>((n - e) % n)]);
        }
    if (!verify_inverse_pair(j, jinv))
        throw std::logic_error("double_twist: closed-form inverse fails the multiplication check");
    TwistCheck tc = is_twist(j);
    if (!tc.ok) throw std::logic_error("double_twist: " + tc.failed_condition);
    return TwistWithInverse{std::move(j), std::move(jinv)};
}

bool evaluation_identities(const DoubleData& d, const TwistWithInverse& tw, std::string* detail) {
    const int n = d.a.exponent();
    auto evaluate = [&](const Tensor2& t, int alpha, std::map<int, CycScalar>& acc) -> bool {
        acc.clear();
        for (const auto& [k, s] : t.entries()) {
            KeyPair p = Tensor2::unpack2(k);
            if (p.b >= d.astar.order()) return false;  // second leg not in A*
            CycScalar term = s * CycScalar::root_of_unity(n, pair_exponent(d.a, alpha, p.b));
            auto it = acc.find(p.a);
            if (it == acc.end())
                acc.emplace(p.a, std::move(term));
            else {
                it->second = it->second + term;
                if (it->second.is_zero()) acc.erase(it);
            }
        }
        return true;
    };
    CycScalar one = CycScalar::one(1);
    std::map<int, CycScalar> acc;
    for (int alpha = 0; alpha < d.a.order(); ++alpha) {
        int want_j = d.emb_g(d.base.invert(d.a.neg(alpha)));
        int want_jinv = d.emb_g(d.base.invert(d.tmap[static_cast<size_t>(alpha)]));
        for (auto [tensor, want] : {std::pair{&tw.j, want_j}, std::pair{&tw.jinv, want_jinv}}) {
            if (!evaluate(*tensor, alpha, acc) || acc.size() != 1 || acc.begin()->first != want ||
                !(acc.begin()->second == one)) {
                if (detail)
                    *detail = "evaluation against " + d.a.elem_to_string(alpha) +
                              " does not collapse to " + d.gt.elem_to_string(want);
                return false;
            }
        }
    }
    return true;
}

Tensor2 double_R(const DoubleData& d) {
    const int na = d.a.order();
    const int ns = d.astar.order();
    const int n = d.a.exponent();
    std::vector<CycScalar> roots = scaled_roots(n, na * na);

    Tensor2 r(d.gt, n);
    for (int x = 0; x < na; ++x)
        for (int s = 0; s < ns; ++s) {
            int first = d.gt.pair_index(s, d.base.invert(x));  // the normal form x* pi^{-1}(x)
            for (int y = 0; y < na; ++y)
                for (int t = 0; t < ns; ++t) {
                    int second = d.gt.mul(d.emb_g(d.base.invert(d.tmap[static_cast<size_t>(y)])),
                                          d.emb_astar(t));
                    long e = (pair_exponent(d.a, x, t) - pair_exponent(d.a, y, s) + n) % n;
                    r.add_to(first, second, roots[static_cast<size_t>(e)]);
                }
        }
    return r;
}

// ---------------------------------------------------------------------------
// The order-36 flagship

DoubleData example_4_3() {
    FiniteGroup z2 = FiniteGroup::cyclic(2);
    FiniteGroup z3 = FiniteGroup::cyclic(3);
    GroupHom neg3(z3, z3, {0, 2, 1});
    GroupAction negact = GroupAction::from_generator_images(z2, z3, {{1, neg3}});
    FiniteGroup s3 = FiniteGroup::semidirect(z2, z3, negact);

    AbelianGroup a23({2, 3});
    FiniteGroup a23g = FiniteGroup::from_abelian(a23);
    IntMatrix sign(2, 2);
    sign.at(0, 0) = 1;
    sign.at(1, 1) = -1;
    GroupAction signact = GroupAction::from_generator_images(
        s3, a23g, {{1, GroupHom::identity_map(a23g)}, {3, GroupHom::from_matrix(a23, a23, sign)}});

    // pi = (parity, shift): identity->(0,0), the 3-cycles->(0,1),(0,2), the
    // transpositions->(1,2),(1,0),(1,1) in normal-form order.
    std::vector<int> pi = {0, 2, 4, 5, 1, 3};
    return build_double(make_cocycle(s3, a23g, signact, std::move(pi)));
}

Tensor2 example_4_3_tower_twist(const DoubleData& d) {
    if (d.a.factors() != std::vector<int>{2, 3} || d.base.g.order() != 6)
        throw std::invalid_argument("example_4_3_tower_twist: only defined for the standard order-36 double");

    AbelianGroup a22({2, 2}), a33({3, 3});
    FiniteGroup h1 = FiniteGroup::from_abelian(a22);
    FiniteGroup h2 = FiniteGroup::from_abelian(a33);
    std::vector<int> neg_images(static_cast<size_t>(a33.order()));
    for (int x = 0; x < a33.order(); ++x) neg_images[static_cast<size_t>(x)] = a33.neg(x);
    GroupHom negate(h2, h2, std::move(neg_images));
    GroupAction rho1 = GroupAction::from_generator_images(
        h1, h2, {{a22.index_of({1, 0}), negate}, {a22.index_of({0, 1}), GroupHom::identity_map(h2)}});

    HierarchyData tower(h1);
    tower.add_level(h2, rho1);
    TwistWithInverse tw =
        product_twist(tower, {fourier_twist(AbelianGroup({2})), fourier_twist(AbelianGroup({3}))},
                      VerifyLevel::full);

    // The relabeling is forced by matching the tower's coordinate cocycle
    // with pit under the factor shuffle (k,h,m,n) <-> ((k,m),(h,n)): tower
    // coords ((k,m),(h,n)) map to the normal form (m,n) pi^{-1}(k,h).
    // Exhaustively checked to be an isomorphism.
    const FiniteGroup& tg = tower.total_group();
    std::vector<int> images(static_cast<size_t>(tg.order()));
    for (int w = 0; w < tg.order(); ++w) {
        std::vector<int> c = tower.coordinates(w);
        int k = c[0] % 2, m = c[0] / 2;
        int h = c[1] % 3, n = c[1] / 3;
        images[static_cast<size_t>(w)] = d.gt.pair_index(m + 2 * n, d.base.invert(k + 2 * h));
    }
    GroupHom phi(tg, d.gt, std::move(images));
    if (!phi.is_homomorphism() || !phi.is_bijective())
        throw std::logic_error("example_4_3_tower_twist: relabeling is not an isomorphism");
    return transport(tw.j, phi);
}

}  // namespace twistlab
