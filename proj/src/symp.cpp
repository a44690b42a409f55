#include "twistlab/symp.hpp"

#include <numeric>
#include <stdexcept>

namespace twistlab {

namespace {

long mod_pos(long v, long m) {
    long r = v % m;
    return r < 0 ? r + m : r;
}

Rational inv_of(int n) { return Rational(1, n); }

}  // namespace

// ---------------------------------------------------------------------------
// SymplecticStructure

SymplecticStructure::SymplecticStructure(AbelianGroup h, IntMatrix b) : h_(std::move(h)), mat_(std::move(b)) {
    if (!h_.odd_order()) throw std::invalid_argument("SymplecticStructure: group order must be odd");
    if (mat_.rows != h_.rank() || mat_.cols != h_.rank())
        throw std::invalid_argument("SymplecticStructure: matrix shape does not match the group rank");
    n_ = h_.exponent();
    b_ = GroupHom::from_matrix(h_, character_group(h_), mat_);
    if (!b_.is_bijective()) throw std::invalid_argument("SymplecticStructure: B is not an isomorphism");
    for (int x = 0; x < h_.order(); ++x)
        for (int y = 0; y < h_.order(); ++y)
            if ((form_exponent(x, y) + form_exponent(y, x)) % n_ != 0)
                throw std::invalid_argument("SymplecticStructure: form is not skew at (" + h_.elem_to_string(x) +
                                            ", " + h_.elem_to_string(y) + ")");
}

int SymplecticStructure::form_exponent(int x, int y) const {
    return static_cast<int>(pair_exponent(h_, x, b_.apply(y)));
}

bool SymplecticStructure::preserves_form(const GroupHom& phi) const {
    if (!phi.valid() || phi.source().order() != h_.order()) return false;
    for (int x = 0; x < h_.order(); ++x)
        for (int y = 0; y < h_.order(); ++y)
            if (form_exponent(phi.apply(x), phi.apply(y)) != form_exponent(x, y)) return false;
    return true;
}

SymplecticStructure SymplecticStructure::halved() const {
    long c = (static_cast<long>(n_) + 1) / 2;  // 2^{-1} mod every factor
    IntMatrix m = mat_;
    for (long& v : m.v) v = mod_pos(v * c, n_);
    return SymplecticStructure(h_, m);
}

SymplecticStructure standard_symplectic(const AbelianGroup& k) {
    if (!k.odd_order()) throw std::invalid_argument("standard_symplectic: |K| must be odd");
    std::vector<int> factors = k.factors();
    factors.insert(factors.end(), k.factors().begin(), k.factors().end());
    AbelianGroup h(factors);
    int r = k.rank();
    IntMatrix m(2 * r, 2 * r);
    for (int i = 0; i < r; ++i) {
        m.at(i, r + i) = 1;
        m.at(r + i, i) = -1;
    }
    return SymplecticStructure(h, m);
}

// ---------------------------------------------------------------------------
// J_B, R_B and the square identities

TwistWithInverse symplectic_twist(const SymplecticStructure& s) {
    const AbelianGroup& h = s.group();
    FiniteGroup g = FiniteGroup::from_abelian(h);
    int n = s.conductor();
    Rational w = inv_of(h.order());
    Tensor2 j(g, n), jinv(g, n);
    for (int x = 0; x < h.order(); ++x)
        for (int y = 0; y < h.order(); ++y) {
            int e = s.form_exponent(x, y);
            j.set_coefficient(x, y, CycScalar::root_of_unity(n, e) * w);
            jinv.set_coefficient(x, y, CycScalar::root_of_unity(n, mod_pos(-e, n)) * w);
        }
    if (!verify_inverse_pair(j, jinv))
        throw std::logic_error("symplectic_twist: closed-form inverse failed verification");
    return TwistWithInverse{std::move(j), std::move(jinv)};
}

Tensor2 symplectic_R(const SymplecticStructure& s) {
    const AbelianGroup& h = s.group();
    FiniteGroup g = FiniteGroup::from_abelian(h);
    int n = s.conductor();
    Rational w = inv_of(h.order());
    Tensor2 r(g, n);
    for (int x = 0; x < h.order(); ++x)
        for (int y = 0; y < h.order(); ++y)
            r.set_coefficient(x, y, CycScalar::root_of_unity(n, s.form_exponent(x, h.sqrt_elem(y))) * w);
    return r;
}

TwistCheck square_identity_check(const SymplecticStructure& s) {
    TwistCheck out;
    TwistWithInverse t = symplectic_twist(s);
    Tensor2 square = mul2(t.j, t.j);
    Tensor2 halved_twist = symplectic_twist(s.halved()).j;
    if (auto diff = first_difference(square, halved_twist)) {
        out.ok = false;
        out.failed_condition = "J_B^2 = J_{B'}";
        out.counterexample = "(" + t.j.group().elem_to_string(diff->a) + ", " + t.j.group().elem_to_string(diff->b) + ")";
        return out;
    }
    if (auto diff = first_difference(flip(t.j), t.jinv)) {
        out.ok = false;
        out.failed_condition = "flip(J_B) = J_B^{-1}";
        out.counterexample = "(" + t.j.group().elem_to_string(diff->a) + ", " + t.j.group().elem_to_string(diff->b) + ")";
        return out;
    }
    out.ok = true;
    return out;
}

// ---------------------------------------------------------------------------
// Lemma 3.2

namespace {

void require_symplectic_action(const SymplecticStructure& h, const GroupAction& rho, const FiniteGroup& k_group) {
    if (!rho.valid() || !rho.group().same_group(k_group))
        throw std::invalid_argument("lemma32: action group is not K");
    if (rho.space().order() != h.group().order() || !rho.space().is_abelian())
        throw std::invalid_argument("lemma32: action space is not H");
    std::string detail;
    if (!rho.verify(&detail)) throw std::invalid_argument("lemma32: invalid action: " + detail);
    for (int g = 0; g < k_group.order(); ++g)
        if (!h.preserves_form(rho.at(g)))
            throw std::invalid_argument("lemma32: action does not preserve the form on H (element " +
                                        k_group.elem_to_string(g) + ")");
}

}  // namespace

Tensor2 lemma32_quadruple_sum(const SymplecticStructure& k, const SymplecticStructure& h,
                              const GroupAction& rho, int x, int y) {
    const AbelianGroup& ka = k.group();
    FiniteGroup kg = FiniteGroup::from_abelian(ka);
    require_symplectic_action(h, rho, kg);
    int n = static_cast<int>(std::lcm(k.conductor(), h.conductor()));
    long sk = n / k.conductor(), sh = n / h.conductor();
    int ysqrt = h.group().sqrt_elem(y);
    std::vector<CycScalar> roots;
    roots.reserve(static_cast<size_t>(n));
    for (int e = 0; e < n; ++e) roots.push_back(CycScalar::root_of_unity(n, e));
    Tensor2 out(kg, n);
    for (int z = 0; z < ka.order(); ++z) {
        for (int t = 0; t < ka.order(); ++t) {
            long base = sk * k.form_exponent(z, t) +
                        sh * h.form_exponent(rho.apply(ka.neg(z), x), rho.apply(ka.neg(t), ysqrt));
            for (int zp = 0; zp < ka.order(); ++zp)
                for (int tp = 0; tp < ka.order(); ++tp) {
                    long e = mod_pos(base + sk * k.form_exponent(zp, tp), n);
                    out.add_to(ka.add(z, zp), ka.add(t, tp), roots[static_cast<size_t>(e)]);
                }
        }
    }
    return out;
}

Tensor2 lemma32_closed_form(const SymplecticStructure& k, const SymplecticStructure& h,
                            const GroupAction& rho, int x, int y) {
    const AbelianGroup& ka = k.group();
    FiniteGroup kg = FiniteGroup::from_abelian(ka);
    require_symplectic_action(h, rho, kg);
    int n = static_cast<int>(std::lcm(k.conductor(), h.conductor()));
    long sk = n / k.conductor(), sh = n / h.conductor();
    int ysqrt = h.group().sqrt_elem(y);
    Rational scale(ka.order());
    Tensor2 out(kg, n);
    for (int u = 0; u < ka.order(); ++u)
        for (int v = 0; v < ka.order(); ++v) {
            long e = sk * k.form_exponent(u, ka.sqrt_elem(v)) +
                     sh * h.form_exponent(rho.apply(ka.neg(ka.sqrt_elem(u)), x),
                                          rho.apply(ka.neg(ka.sqrt_elem(v)), ysqrt));
            out.set_coefficient(u, v, CycScalar::root_of_unity(n, static_cast<int>(mod_pos(e, n))) * scale);
        }
    return out;
}

bool lemma32_check(const SymplecticStructure& k, const SymplecticStructure& h,
                   const GroupAction& rho, int x, int y) {
    return lemma32_quadruple_sum(k, h, rho, x, y) == lemma32_closed_form(k, h, rho, x, y);
}

// ---------------------------------------------------------------------------
// SymplecticHierarchy

SymplecticHierarchy::SymplecticHierarchy(SymplecticStructure first) {
    groups_.push_back(FiniteGroup::from_abelian(first.group()));
    levels_.push_back(std::move(first));
}

void SymplecticHierarchy::add_level(SymplecticStructure next, GroupAction rho_prev) {
    const FiniteGroup& g_prev = total_group();
    if (!rho_prev.valid() || !rho_prev.group().same_group(g_prev))
        throw std::invalid_argument("SymplecticHierarchy: action must act by the current total group");
    if (rho_prev.space().order() != next.group().order() || !rho_prev.space().is_abelian())
        throw std::invalid_argument("SymplecticHierarchy: action space is not the new level");
    std::string detail;
    if (!rho_prev.verify(&detail))
        throw std::invalid_argument("SymplecticHierarchy: invalid action: " + detail);
    for (int g = 0; g < g_prev.order(); ++g)
        if (!next.preserves_form(rho_prev.at(g)))
            throw std::invalid_argument("SymplecticHierarchy: action of " + g_prev.elem_to_string(g) +
                                        " does not preserve the level form");
    FiniteGroup h_grp = FiniteGroup::from_abelian(next.group());
    groups_.push_back(FiniteGroup::semidirect(g_prev, h_grp, rho_prev));
    levels_.push_back(std::move(next));
    actions_.push_back(std::move(rho_prev));
}

int SymplecticHierarchy::conductor() const {
    int n = 1;
    for (const auto& s : levels_) n = static_cast<int>(std::lcm(n, s.conductor()));
    return n;
}

int SymplecticHierarchy::embed(int i, int x) const {
    int idx = x;
    for (size_t j = static_cast<size_t>(i) + 1; j < levels_.size(); ++j) idx *= levels_[j].group().order();
    return idx;
}

std::vector<int> SymplecticHierarchy::coordinates(int g) const {
    std::vector<int> out(levels_.size());
    int rest = g;
    for (size_t i = levels_.size(); i-- > 1;) {
        auto [fast, slow] = groups_[i].parts(rest);
        out[i] = fast;
        rest = slow;
    }
    out[0] = rest;
    return out;
}

// ---------------------------------------------------------------------------
// Hierarchy twist and Theorem 3.1

namespace {

Tensor2 embed_level(const Tensor2& local, const SymplecticHierarchy& hier, int level) {
    Tensor2 out(hier.total_group(), local.conductor());
    for (const auto& [k, v] : local.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        out.set_coefficient(hier.embed(level, p.a), hier.embed(level, p.b), v);
    }
    return out;
}

}  // namespace

TwistWithInverse hierarchy_twist(const SymplecticHierarchy& hier, VerifyLevel level) {
    std::vector<TwistWithInverse> locals;
    locals.reserve(static_cast<size_t>(hier.length()));
    for (int i = 0; i < hier.length(); ++i) locals.push_back(symplectic_twist(hier.level(i)));

    Tensor2 j = embed_level(locals[0].j, hier, 0);
    for (int i = 1; i < hier.length(); ++i) j = mul2(embed_level(locals[static_cast<size_t>(i)].j, hier, i), j);
    Tensor2 jinv = embed_level(locals[0].jinv, hier, 0);
    for (int i = 1; i < hier.length(); ++i) jinv = mul2(jinv, embed_level(locals[static_cast<size_t>(i)].jinv, hier, i));

    if (level == VerifyLevel::inverse || level == VerifyLevel::full) {
        if (!verify_inverse_pair(j, jinv))
            throw std::logic_error("hierarchy_twist: closed-form inverse failed verification");
    }
    if (level == VerifyLevel::full) {
        TwistCheck tc = is_twist(j);
        if (!tc.ok)
            throw std::logic_error("hierarchy_twist: product is not a twist: " + tc.failed_condition + " at " +
                                   tc.counterexample);
    }
    return TwistWithInverse{std::move(j), std::move(jinv)};
}

Tensor2 theorem31_R(const SymplecticHierarchy& hier) {
    const FiniteGroup& g = hier.total_group();
    int n = hier.conductor();
    int len = hier.length();
    int order = g.order();

    // Per element, the transformed level components: for the left leg
    // a_j = rho_{j-1}(q_j)^{-1} x_j with q_j = x_{j-1}^{1/2} ... x_1^{1/2},
    // for the right leg the same with y_j^{1/2} in place of x_j. The prefix
    // q_j is accumulated once per element (memoized left-to-right).
    std::vector<std::vector<int>> left(static_cast<size_t>(order)), right(static_cast<size_t>(order));
    for (int e = 0; e < order; ++e) {
        std::vector<int> coords = hier.coordinates(e);
        std::vector<int> a(static_cast<size_t>(len)), b(static_cast<size_t>(len));
        a[0] = coords[0];
        b[0] = hier.level(0).group().sqrt_elem(coords[0]);
        // q = x_{i-1}^{1/2} ... x_1^{1/2}, an element of group(i-1); the same
        // prefix serves both legs since each leg is built from its own tuple.
        int q = -1;
        for (int i = 1; i < len; ++i) {
            const AbelianGroup& prev = hier.level(i - 1).group();
            int s = prev.sqrt_elem(coords[i - 1]);
            q = (i == 1) ? s : hier.group(i - 1).mul(s, prev.order() * q);
            const GroupAction& rho = hier.action(i);
            int qinv = hier.group(i - 1).inv(q);
            a[i] = rho.apply(qinv, coords[i]);
            b[i] = rho.apply(qinv, hier.level(i).group().sqrt_elem(coords[i]));
        }
        left[static_cast<size_t>(e)] = std::move(a);
        right[static_cast<size_t>(e)] = std::move(b);
    }

    Rational w(1, order);
    Tensor2 r(g, n);
    std::vector<long> scale(static_cast<size_t>(len));
    for (int i = 0; i < len; ++i) scale[static_cast<size_t>(i)] = n / hier.level(i).conductor();
    for (int gx = 0; gx < order; ++gx)
        for (int gy = 0; gy < order; ++gy) {
            long e = 0;
            for (int i = 0; i < len; ++i)
                e += scale[static_cast<size_t>(i)] *
                     hier.level(i).form_exponent(left[static_cast<size_t>(gx)][static_cast<size_t>(i)],
                                                 right[static_cast<size_t>(gy)][static_cast<size_t>(i)]);
            r.set_coefficient(gx, gy, CycScalar::root_of_unity(n, static_cast<int>(mod_pos(e, n))) * w);
        }
    return r;
}

}  // namespace twistlab
