#include "twistlab/coc.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace twistlab {

namespace {

std::string pair_str(const FiniteGroup& g, int x, int y) {
    return "(" + g.elem_to_string(x) + ", " + g.elem_to_string(y) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// Verification

CocycleCheck verify_cocycle(const Cocycle& c) {
    CocycleCheck bad;
    bad.ok = false;
    if (!c.g.valid() || !c.a.valid() || !c.rho.valid()) {
        bad.detail = "cocycle carries an empty group or action";
        return bad;
    }
    const int n = c.g.order();
    if (c.a.order() != n) {
        bad.detail = "|G| = " + std::to_string(n) + " but |A| = " + std::to_string(c.a.order()) +
                     "; pi cannot be a bijection";
        return bad;
    }
    if (!c.rho.group().same_group(c.g) || !c.rho.space().same_group(c.a)) {
        bad.detail = "action is not an action of G on A";
        return bad;
    }
    std::string action_detail;
    if (!c.rho.verify(&action_detail)) {
        bad.detail = "action fails to act by automorphisms: " + action_detail;
        return bad;
    }
    if (static_cast<int>(c.pi.size()) != n) {
        bad.detail = "pi table has " + std::to_string(c.pi.size()) + " entries for a group of order " +
                     std::to_string(n);
        return bad;
    }
    std::vector<int> seen(static_cast<size_t>(n), -1);
    for (int g = 0; g < n; ++g) {
        int v = c.pi[static_cast<size_t>(g)];
        if (v < 0 || v >= n) {
            bad.detail = "pi(" + c.g.elem_to_string(g) + ") = " + std::to_string(v) + " is out of range";
            return bad;
        }
        if (seen[static_cast<size_t>(v)] >= 0) {
            bad.g_fail = seen[static_cast<size_t>(v)];
            bad.gp_fail = g;
            bad.detail = "pi is not injective: pi(" + c.g.elem_to_string(bad.g_fail) + ") = pi(" +
                         c.g.elem_to_string(g) + ") = " + c.a.elem_to_string(v);
            return bad;
        }
        seen[static_cast<size_t>(v)] = g;
    }
    if (c.pi[0] != FiniteGroup::identity) {
        bad.detail = "pi(e) = " + c.a.elem_to_string(c.pi[0]) + ", not the identity";
        return bad;
    }
    for (int g = 0; g < n; ++g) {
        const int pig = c.pi[static_cast<size_t>(g)];
        for (int gp = 0; gp < n; ++gp) {
            int lhs = c.pi[static_cast<size_t>(c.g.mul(g, gp))];
            int rhs = c.a.mul(pig, c.rho.apply(g, c.pi[static_cast<size_t>(gp)]));
            if (lhs != rhs) {
                bad.g_fail = g;
                bad.gp_fail = gp;
                bad.detail = "cocycle law fails at " + pair_str(c.g, g, gp) + ": pi(g g') = " +
                             c.a.elem_to_string(lhs) + " but pi(g) * (rho(g) pi(g')) = " +
                             c.a.elem_to_string(rhs);
                return bad;
            }
        }
    }
    if (!c.pi_inv.empty()) {
        if (static_cast<int>(c.pi_inv.size()) != n) {
            bad.detail = "inverse table has the wrong size";
            return bad;
        }
        for (int g = 0; g < n; ++g) {
            int v = c.pi[static_cast<size_t>(g)];
            if (v < 0 || v >= n || c.pi_inv[static_cast<size_t>(v)] != g) {
                bad.detail = "inverse table disagrees with pi at " + c.g.elem_to_string(g);
                return bad;
            }
        }
    }
    return CocycleCheck{};
}

Cocycle make_cocycle(FiniteGroup g, FiniteGroup a, GroupAction rho, std::vector<int> pi) {
    Cocycle c{std::move(g), std::move(a), std::move(rho), std::move(pi), {}};
    CocycleCheck check = verify_cocycle(c);
    if (!check.ok) throw std::invalid_argument("make_cocycle: " + check.detail);
    c.pi_inv.assign(c.pi.size(), 0);
    for (int gi = 0; gi < static_cast<int>(c.pi.size()); ++gi)
        c.pi_inv[static_cast<size_t>(c.pi[static_cast<size_t>(gi)])] = gi;
    return c;
}

std::vector<int> reversed_cocycle_table(const Cocycle& c) {
    std::vector<int> out(c.pi.size());
    for (int g = 0; g < static_cast<int>(c.pi.size()); ++g)
        out[static_cast<size_t>(g)] = c.pi[static_cast<size_t>(c.g.inv(g))];
    return out;
}

bool satisfies_reversed_law(const FiniteGroup& g, const FiniteGroup& a, const GroupAction& rho,
                            const std::vector<int>& pi) {
    const int n = g.order();
    if (static_cast<int>(pi.size()) != n) return false;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int lhs = pi[static_cast<size_t>(g.mul(x, y))];
            int rhs = a.mul(pi[static_cast<size_t>(y)], rho.apply(g.inv(y), pi[static_cast<size_t>(x)]));
            if (lhs != rhs) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Hierarchies

HierarchyData::HierarchyData(FiniteGroup h1) {
    if (!h1.valid()) throw std::invalid_argument("HierarchyData: empty level group");
    levels_.push_back(h1);
    groups_.push_back(h1);
    rebuild_product();
}

void HierarchyData::add_level(FiniteGroup h, GroupAction rho_prev) {
    if (!h.valid()) throw std::invalid_argument("HierarchyData: empty level group");
    if (!rho_prev.valid() || !rho_prev.group().same_group(total_group()) || !rho_prev.space().same_group(h))
        throw std::invalid_argument("HierarchyData: action must take the current tower group onto the new level");
    std::string detail;
    if (!rho_prev.verify(&detail)) throw std::invalid_argument("HierarchyData: malformed action: " + detail);
    groups_.push_back(FiniteGroup::semidirect(total_group(), h, rho_prev));
    levels_.push_back(std::move(h));
    actions_.push_back(std::move(rho_prev));
    rebuild_product();
}

void HierarchyData::rebuild_product() {
    // All-abelian towers get the concatenated factor list (identical
    // mixed-radix indexing, but structurally the plain abelian group);
    // mixed towers fall back to nested direct products.
    bool all_abelian = true;
    for (const auto& l : levels_)
        if (l.kind() != FiniteGroup::Kind::Abelian) {
            all_abelian = false;
            break;
        }
    if (all_abelian) {
        std::vector<int> factors;
        for (const auto& l : levels_)
            for (int f : l.abelian().factors()) factors.push_back(f);
        product_ = FiniteGroup::from_abelian(AbelianGroup(std::move(factors)));
    } else {
        product_ = levels_[0];
        for (size_t i = 1; i < levels_.size(); ++i)
            product_ = FiniteGroup::direct_product(product_, levels_[i]);
    }

    const int n = total_group().order();
    const int len = length();
    std::vector<GroupHom> per_element;
    per_element.reserve(static_cast<size_t>(n));
    for (int g = 0; g < n; ++g) {
        std::vector<int> coords = coordinates(g);
        // prefix[j] = x_j ... x_1 as an element of group(j-1), consumed by
        // level j+1's transformation below.
        std::vector<int> prefix(static_cast<size_t>(len), 0);
        int p = coords[0];
        for (int j = 1; j < len; ++j) {
            prefix[static_cast<size_t>(j)] = p;
            p = coords[static_cast<size_t>(j)] + level(j).order() * p;
        }
        std::vector<int> images(static_cast<size_t>(product_.order()));
        std::vector<int> comps;
        for (int a = 0; a < product_.order(); ++a) {
            comps = product_coords(a);
            for (int j = 1; j < len; ++j)
                comps[static_cast<size_t>(j)] =
                    actions_[static_cast<size_t>(j - 1)].apply(prefix[static_cast<size_t>(j)],
                                                               comps[static_cast<size_t>(j)]);
            images[static_cast<size_t>(a)] = product_index(comps);
        }
        per_element.emplace_back(product_, product_, std::move(images));
    }
    product_action_ = GroupAction(total_group(), product_, std::move(per_element));
}

int HierarchyData::embed(int i, int x) const {
    int idx = x;
    for (int j = i + 1; j < length(); ++j) idx *= level(j).order();
    return idx;
}

std::vector<int> HierarchyData::coordinates(int g) const {
    std::vector<int> out(static_cast<size_t>(length()));
    for (int i = length() - 1; i >= 1; --i) {
        auto [fast, slow] = groups_[static_cast<size_t>(i)].parts(g);
        out[static_cast<size_t>(i)] = fast;
        g = slow;
    }
    out[0] = g;
    return out;
}

int HierarchyData::product_index(const std::vector<int>& comps) const {
    int idx = 0, radix = 1;
    for (int i = 0; i < length(); ++i) {
        idx += comps[static_cast<size_t>(i)] * radix;
        radix *= level(i).order();
    }
    return idx;
}

std::vector<int> HierarchyData::product_coords(int a) const {
    std::vector<int> out(static_cast<size_t>(length()));
    for (int i = 0; i < length(); ++i) {
        out[static_cast<size_t>(i)] = a % level(i).order();
        a /= level(i).order();
    }
    return out;
}

Cocycle hierarchy_cocycle(const HierarchyData& h) {
    const int n = h.total_group().order();
    std::vector<int> pi(static_cast<size_t>(n));
    for (int g = 0; g < n; ++g) pi[static_cast<size_t>(g)] = h.product_index(h.coordinates(g));
    return make_cocycle(h.total_group(), h.product_group(), h.product_action(), std::move(pi));
}

// ---------------------------------------------------------------------------
// Product twists over a tower

namespace {

// Re-keys a level twist into the given ambient group along an index map.
Tensor2 embed_along(const Tensor2& t, const FiniteGroup& ambient, const std::vector<int>& emb) {
    Tensor2 out(ambient, t.conductor());
    for (const auto& [k, s] : t.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        out.add_to(emb[static_cast<size_t>(p.a)], emb[static_cast<size_t>(p.b)], s);
    }
    return out;
}

std::vector<int> level_into_total(const HierarchyData& h, int i) {
    std::vector<int> emb(static_cast<size_t>(h.level(i).order()));
    for (int x = 0; x < h.level(i).order(); ++x) emb[static_cast<size_t>(x)] = h.embed(i, x);
    return emb;
}

std::vector<int> level_into_product(const HierarchyData& h, int i) {
    std::vector<int> emb(static_cast<size_t>(h.level(i).order()));
    std::vector<int> comps(static_cast<size_t>(h.length()), 0);
    for (int x = 0; x < h.level(i).order(); ++x) {
        comps[static_cast<size_t>(i)] = x;
        emb[static_cast<size_t>(x)] = h.product_index(comps);
    }
    return emb;
}

void require_local_shape(const HierarchyData& h, const std::vector<TwistWithInverse>& local) {
    if (static_cast<int>(local.size()) != h.length())
        throw std::invalid_argument("expected one local twist per level");
    for (int i = 0; i < h.length(); ++i)
        if (!local[static_cast<size_t>(i)].j.group().same_group(h.level(i)))
            throw std::invalid_argument("local twist at level " + std::to_string(i) +
                                        " lives over the wrong group");
}

}  // namespace

Tensor2 tensor_product_twist(const HierarchyData& h, const std::vector<TwistWithInverse>& local) {
    require_local_shape(h, local);
    Tensor2 acc = embed_along(local[0].j, h.product_group(), level_into_product(h, 0));
    for (int i = 1; i < h.length(); ++i)
        acc = mul2(acc, embed_along(local[static_cast<size_t>(i)].j, h.product_group(), level_into_product(h, i)));
    return acc;
}

TwistWithInverse product_twist(const HierarchyData& h, const std::vector<TwistWithInverse>& local,
                               VerifyLevel verify) {
    require_local_shape(h, local);
    // Lower-tower invariance is a correctness precondition of the whole
    // construction; check it regardless of the requested verify level.
    for (int i = 1; i < h.length(); ++i) {
        const Tensor2& ji = local[static_cast<size_t>(i)].j;
        for (int g = 0; g < h.group(i - 1).order(); ++g)
            if (transport(ji, h.action(i).at(g)) != ji)
                throw std::invalid_argument("level " + std::to_string(i) + " twist is not invariant under " +
                                            h.group(i - 1).elem_to_string(g));
    }
    if (verify == VerifyLevel::full) {
        for (int i = 0; i < h.length(); ++i) {
            const auto& tw = local[static_cast<size_t>(i)];
            if (!verify_inverse_pair(tw.j, tw.jinv))
                throw std::logic_error("level " + std::to_string(i) + " inverse pair fails");
            TwistCheck tc = is_twist(tw.j);
            if (!tc.ok)
                throw std::logic_error("level " + std::to_string(i) + " twist check fails: " +
                                       tc.failed_condition);
        }
    }

    std::vector<Tensor2> emb_j, emb_jinv;
    for (int i = 0; i < h.length(); ++i) {
        std::vector<int> emb = level_into_total(h, i);
        emb_j.push_back(embed_along(local[static_cast<size_t>(i)].j, h.total_group(), emb));
        emb_jinv.push_back(embed_along(local[static_cast<size_t>(i)].jinv, h.total_group(), emb));
    }
    Tensor2 j = emb_j.back();
    for (int i = h.length() - 2; i >= 0; --i) j = mul2(j, emb_j[static_cast<size_t>(i)]);
    Tensor2 jinv = emb_jinv.front();
    for (int i = 1; i < h.length(); ++i) jinv = mul2(jinv, emb_jinv[static_cast<size_t>(i)]);

    if (verify != VerifyLevel::none && !verify_inverse_pair(j, jinv))
        throw std::logic_error("tower product inverse pair fails");
    return TwistWithInverse{std::move(j), std::move(jinv)};
}

// ---------------------------------------------------------------------------
// Pullback along a cocycle

PullbackResult pullback_twist(const Cocycle& c, const Tensor2& j,
                              const std::optional<Tensor2>& known_inverse) {
    if (c.pi_inv.empty())
        throw std::invalid_argument("pullback_twist: cocycle has no inverse table (build with make_cocycle)");
    if (!j.valid() || !j.group().same_group(c.a))
        throw std::invalid_argument("pullback_twist: element does not live over A");
    for (int g = 0; g < c.g.order(); ++g)
        if (transport(j, c.rho.at(g)) != j)
            throw std::invalid_argument("pullback_twist: not G-invariant; rho(" + c.g.elem_to_string(g) +
                                        ") moves the element");

    PullbackResult res;
    res.jbar = Tensor2(c.g, j.conductor());
    for (const auto& [k, s] : j.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        res.jbar.add_to(c.invert(p.a), c.invert(p.b), s);
    }
    res.equation = is_twist(res.jbar);

    if (known_inverse) {
        if (!verify_inverse_pair(res.jbar, *known_inverse))
            throw std::invalid_argument("pullback_twist: supplied inverse fails verification");
        res.invertible_known = true;
        res.inverse = *known_inverse;
    } else {
        try {
            res.inverse = invert2(res.jbar);
            res.invertible_known = true;
        } catch (const size_limit_exceeded&) {
            res.status = "invertibility undetermined beyond the generic-inversion cap";
        } catch (const singular_element&) {
            res.status = "element is singular, not a twist";
        }
    }
    res.twist = res.equation.ok && res.invertible_known;
    if (res.status.empty())
        res.status = res.twist ? "twist verified (equation, counits, inverse)"
                               : "twist identities fail: " + res.equation.failed_condition;
    else if (res.equation.ok)
        res.status = "twist identities hold; " + res.status;
    return res;
}

// ---------------------------------------------------------------------------
// Search

namespace {

struct SearchState {
    std::vector<int> pi;
    std::vector<char> used;
};

// Assigns pi[g0] = a0 and closes under the cocycle law in both
// multiplication orders. False on any conflict (value clash or lost
// injectivity).
bool assign_and_close(const FiniteGroup& g, const FiniteGroup& a, const GroupAction& rho,
                      SearchState& st, int g0, int a0) {
    std::vector<std::pair<int, int>> pending{{g0, a0}};
    while (!pending.empty()) {
        auto [x, v] = pending.back();
        pending.pop_back();
        if (st.pi[static_cast<size_t>(x)] == v) continue;
        if (st.pi[static_cast<size_t>(x)] != -1 || st.used[static_cast<size_t>(v)]) return false;
        st.pi[static_cast<size_t>(x)] = v;
        st.used[static_cast<size_t>(v)] = 1;
        for (int y = 0; y < g.order(); ++y) {
            int piy = st.pi[static_cast<size_t>(y)];
            if (piy == -1) continue;
            int h1 = g.mul(x, y), v1 = a.mul(v, rho.apply(x, piy));
            int h2 = g.mul(y, x), v2 = a.mul(piy, rho.apply(y, v));
            for (auto [hh, vv] : {std::pair{h1, v1}, std::pair{h2, v2}}) {
                int cur = st.pi[static_cast<size_t>(hh)];
                if (cur == -1)
                    pending.emplace_back(hh, vv);
                else if (cur != vv)
                    return false;
            }
        }
    }
    return true;
}

void search_rec(const FiniteGroup& g, const FiniteGroup& a, const GroupAction& rho,
                const SearchState& st, std::vector<std::vector<int>>& out) {
    int next = -1;
    for (int x = 0; x < g.order(); ++x)
        if (st.pi[static_cast<size_t>(x)] == -1) {
            next = x;
            break;
        }
    if (next == -1) {
        out.push_back(st.pi);
        return;
    }
    for (int v = 0; v < a.order(); ++v) {
        if (st.used[static_cast<size_t>(v)]) continue;
        SearchState branch = st;
        if (assign_and_close(g, a, rho, branch, next, v)) search_rec(g, a, rho, branch, out);
    }
}

}  // namespace

std::vector<Cocycle> search_cocycles(const FiniteGroup& g, const FiniteGroup& a, const GroupAction& rho) {
    if (!g.valid() || !a.valid()) throw std::invalid_argument("search_cocycles: empty group");
    if (g.order() != a.order())
        throw std::invalid_argument("search_cocycles: |G| and |A| differ; no bijection exists");
    if (g.order() > 36)
        throw size_limit_exceeded("search_cocycles: supported up to order 36, got " +
                                  std::to_string(g.order()));
    if (!rho.valid() || !rho.group().same_group(g) || !rho.space().same_group(a))
        throw std::invalid_argument("search_cocycles: action shape mismatch");
    std::string detail;
    if (!rho.verify(&detail)) throw std::invalid_argument("search_cocycles: malformed action: " + detail);

    SearchState root;
    root.pi.assign(static_cast<size_t>(g.order()), -1);
    root.used.assign(static_cast<size_t>(a.order()), 0);
    std::vector<std::vector<int>> tables;
    if (assign_and_close(g, a, rho, root, FiniteGroup::identity, FiniteGroup::identity))
        search_rec(g, a, rho, root, tables);
    std::sort(tables.begin(), tables.end());

    std::vector<Cocycle> out;
    out.reserve(tables.size());
    for (auto& t : tables) out.push_back(make_cocycle(g, a, rho, std::move(t)));
    if (!out.empty() && !is_solvable(g))
        throw std::logic_error("search_cocycles: cocycle found on a non-solvable group; critical bug");
    return out;
}

}  // namespace twistlab
