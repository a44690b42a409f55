#include "twistlab/grp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twistlab {

namespace {

constexpr int kMulTableCap = 1024;

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
        h ^= (x >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
    }
    return h;
}

long mod_pos(long x, long m) {
    long r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// AbelianGroup

AbelianGroup::AbelianGroup(std::vector<int> factors) : factors_(std::move(factors)) {
    for (int n : factors_) {
        if (n < 1) throw std::invalid_argument("AbelianGroup: factors must be positive");
    }
    long order = 1;
    long expo = 1;
    for (int n : factors_) {
        order *= n;
        expo = std::lcm(expo, static_cast<long>(n));
        if (order > 1 << 24) throw std::invalid_argument("AbelianGroup: order too large");
    }
    order_ = static_cast<int>(order);
    exponent_ = static_cast<int>(expo);
}

int AbelianGroup::index_of(const std::vector<int>& coords) const {
    if (coords.size() != factors_.size()) throw std::invalid_argument("AbelianGroup::index_of: rank mismatch");
    long idx = 0;
    long stride = 1;
    for (size_t i = 0; i < factors_.size(); ++i) {
        long c = mod_pos(coords[i], factors_[i]);
        idx += c * stride;
        stride *= factors_[i];
    }
    return static_cast<int>(idx);
}

std::vector<int> AbelianGroup::coords_of(int index) const {
    if (index < 0 || index >= order_) throw std::out_of_range("AbelianGroup::coords_of: index out of range");
    std::vector<int> coords(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
        coords[i] = index % factors_[i];
        index /= factors_[i];
    }
    return coords;
}

int AbelianGroup::add(int a, int b) const {
    std::vector<int> ca = coords_of(a), cb = coords_of(b);
    for (size_t i = 0; i < factors_.size(); ++i) ca[i] = (ca[i] + cb[i]) % factors_[i];
    return index_of(ca);
}

int AbelianGroup::neg(int a) const {
    std::vector<int> ca = coords_of(a);
    for (size_t i = 0; i < factors_.size(); ++i) ca[i] = (factors_[i] - ca[i]) % factors_[i];
    return index_of(ca);
}

int AbelianGroup::scalar_mul(long k, int a) const {
    std::vector<int> ca = coords_of(a);
    for (size_t i = 0; i < factors_.size(); ++i)
        ca[i] = static_cast<int>(mod_pos(k * ca[i], factors_[i]));
    return index_of(ca);
}

int AbelianGroup::sqrt_elem(int a) const {
    if (!odd_order()) throw std::domain_error("AbelianGroup::sqrt_elem: group order must be odd");
    std::vector<int> ca = coords_of(a);
    for (size_t i = 0; i < factors_.size(); ++i)
        ca[i] = static_cast<int>((static_cast<long>(ca[i]) * ((factors_[i] + 1) / 2)) % factors_[i]);
    return index_of(ca);
}

std::string AbelianGroup::elem_to_string(int a) const {
    std::vector<int> c = coords_of(a);
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < c.size(); ++i) {
        if (i) out << ",";
        out << c[i];
    }
    out << ")";
    return out.str();
}

std::string AbelianGroup::describe() const {
    std::ostringstream out;
    out << "Z[";
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) out << ",";
        out << factors_[i];
    }
    out << "]";
    return out.str();
}

AbelianGroup character_group(const AbelianGroup& a) { return a; }

long pair_exponent(const AbelianGroup& a, int x, int chi) {
    long n = a.exponent();
    std::vector<int> cx = a.coords_of(x), cm = a.coords_of(chi);
    long acc = 0;
    const auto& f = a.factors();
    for (size_t i = 0; i < f.size(); ++i) {
        acc = mod_pos(acc + static_cast<long>(cx[i]) * cm[i] % n * (n / f[i]), n);
    }
    return acc;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

// ---------------------------------------------------------------------------
// FiniteGroup

struct FiniteGroup::Impl {
    Kind kind = Kind::Abelian;
    int order = 1;
    bool abelian_flag = true;
    std::optional<AbelianGroup> ab;
    FiniteGroup left, right;
    std::shared_ptr<const GroupAction> action;
    std::vector<std::vector<int>> literal_table;  // Kind::Table
    std::vector<int> mul_flat;                    // dense cache when order <= kMulTableCap
    std::vector<int> inv_tab;
    std::string desc;

    int mul_structural(int x, int y) const {
        switch (kind) {
            case Kind::Abelian:
                return ab->add(x, y);
            case Kind::Table:
                return literal_table[static_cast<size_t>(x)][static_cast<size_t>(y)];
            case Kind::DirectProduct: {
                int la = left.order();
                int a1 = x % la, b1 = x / la, a2 = y % la, b2 = y / la;
                return left.mul(a1, a2) + la * right.mul(b1, b2);
            }
            case Kind::Semidirect: {
                int nh = right.order();
                int h1 = x % nh, k1 = x / nh, h2 = y % nh, k2 = y / nh;
                int h = right.mul(h1, action->apply(k1, h2));
                int k = left.mul(k1, k2);
                return h + nh * k;
            }
        }
        throw std::logic_error("FiniteGroup: bad kind");
    }

    void finalize() {
        // dense multiplication cache
        if (order <= kMulTableCap) {
            mul_flat.resize(static_cast<size_t>(order) * order);
            for (int a = 0; a < order; ++a)
                for (int b = 0; b < order; ++b)
                    mul_flat[static_cast<size_t>(a) * order + b] = mul_structural(a, b);
        }
        auto prod = [&](int a, int b) {
            return !mul_flat.empty() ? mul_flat[static_cast<size_t>(a) * order + b] : mul_structural(a, b);
        };
        // inverses by row scan (also proves every row contains the identity)
        inv_tab.assign(static_cast<size_t>(order), -1);
        for (int a = 0; a < order; ++a) {
            for (int b = 0; b < order; ++b) {
                if (prod(a, b) == 0) {
                    inv_tab[static_cast<size_t>(a)] = b;
                    break;
                }
            }
            if (inv_tab[static_cast<size_t>(a)] < 0)
                throw std::invalid_argument("FiniteGroup: element without inverse");
        }
        abelian_flag = true;
        for (int a = 0; a < order && abelian_flag; ++a)
            for (int b = a + 1; b < order; ++b)
                if (prod(a, b) != prod(b, a)) {
                    abelian_flag = false;
                    break;
                }
    }
};

int FiniteGroup::order() const { return impl_->order; }

int FiniteGroup::mul(int a, int b) const {
    const Impl& im = *impl_;
    if (!im.mul_flat.empty()) return im.mul_flat[static_cast<size_t>(a) * im.order + b];
    return im.mul_structural(a, b);
}

int FiniteGroup::inv(int a) const { return impl_->inv_tab[static_cast<size_t>(a)]; }

FiniteGroup::Kind FiniteGroup::kind() const { return impl_->kind; }
bool FiniteGroup::is_abelian() const { return impl_->abelian_flag; }

const AbelianGroup& FiniteGroup::abelian() const {
    if (!impl_->ab) throw std::logic_error("FiniteGroup::abelian: not an abelian-kind group");
    return *impl_->ab;
}

const FiniteGroup& FiniteGroup::left_factor() const {
    if (!impl_->left.valid()) throw std::logic_error("FiniteGroup::left_factor: not a composite group");
    return impl_->left;
}

const FiniteGroup& FiniteGroup::right_factor() const {
    if (!impl_->right.valid()) throw std::logic_error("FiniteGroup::right_factor: not a composite group");
    return impl_->right;
}

const GroupAction& FiniteGroup::action() const {
    if (!impl_->action) throw std::logic_error("FiniteGroup::action: not a semidirect product");
    return *impl_->action;
}

int FiniteGroup::pair_index(int fast_part, int slow_part) const {
    int fast_order = impl_->kind == Kind::Semidirect ? impl_->right.order() : impl_->left.order();
    return fast_part + fast_order * slow_part;
}

std::pair<int, int> FiniteGroup::parts(int g) const {
    int fast_order = impl_->kind == Kind::Semidirect ? impl_->right.order() : impl_->left.order();
    return {g % fast_order, g / fast_order};
}

std::string FiniteGroup::elem_to_string(int g) const {
    switch (impl_->kind) {
        case Kind::Abelian:
            return impl_->ab->elem_to_string(g);
        case Kind::Table: {
            std::ostringstream out;
            out << g;
            return out.str();
        }
        case Kind::Semidirect: {
            auto [h, k] = parts(g);
            return "(" + impl_->right.elem_to_string(h) + "|" + impl_->left.elem_to_string(k) + ")";
        }
        case Kind::DirectProduct: {
            auto [a, b] = parts(g);
            return "(" + impl_->left.elem_to_string(a) + "|" + impl_->right.elem_to_string(b) + ")";
        }
    }
    return "?";
}

std::string FiniteGroup::describe() const { return impl_->desc; }

bool FiniteGroup::same_group(const FiniteGroup& o) const {
    if (impl_ == o.impl_) return true;
    return impl_->order == o.impl_->order && impl_->desc == o.impl_->desc;
}

FiniteGroup FiniteGroup::from_abelian(const AbelianGroup& a) {
    auto im = std::make_shared<Impl>();
    im->kind = Kind::Abelian;
    im->order = a.order();
    im->ab = a;
    im->desc = a.describe();
    im->finalize();
    return FiniteGroup(std::move(im));
}

FiniteGroup FiniteGroup::cyclic(int n) { return from_abelian(AbelianGroup({n})); }

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
    int n = static_cast<int>(table.size());
    if (n < 1 || n > 256) throw std::invalid_argument("FiniteGroup::from_table: order must be in 1..256");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("FiniteGroup::from_table: ragged table");
        for (int x : row)
            if (x < 0 || x >= n) throw std::invalid_argument("FiniteGroup::from_table: entry out of range");
    }
    auto im = std::make_shared<Impl>();
    im->kind = Kind::Table;
    im->order = n;
    im->literal_table = std::move(table);
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& row : im->literal_table)
        for (int x : row) h = fnv1a(h, static_cast<std::uint64_t>(x));
    std::ostringstream d;
    d << "TB(n=" << n << ",h=" << std::hex << h << ")";
    im->desc = d.str();
    im->finalize();
    FiniteGroup g(std::move(im));
    std::string detail;
    if (!check_group_axioms(g, &detail))
        throw std::invalid_argument("FiniteGroup::from_table: " + detail);
    return g;
}

FiniteGroup FiniteGroup::semidirect(const FiniteGroup& k, const FiniteGroup& h, const GroupAction& rho) {
    if (!rho.valid() || !rho.group().same_group(k) || !rho.space().same_group(h))
        throw std::invalid_argument("FiniteGroup::semidirect: action must be K acting on H");
    std::string detail;
    if (!rho.verify(&detail)) throw std::invalid_argument("FiniteGroup::semidirect: invalid action: " + detail);
    auto im = std::make_shared<Impl>();
    im->kind = Kind::Semidirect;
    im->order = k.order() * h.order();
    im->left = k;
    im->right = h;
    im->action = std::make_shared<const GroupAction>(rho);
    im->desc = "SD(" + k.describe() + "," + h.describe() + "," + rho.describe() + ")";
    im->finalize();
    return FiniteGroup(std::move(im));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    auto im = std::make_shared<Impl>();
    im->kind = Kind::DirectProduct;
    im->order = a.order() * b.order();
    im->left = a;
    im->right = b;
    im->desc = "PR(" + a.describe() + "," + b.describe() + ")";
    im->finalize();
    return FiniteGroup(std::move(im));
}

// ---------------------------------------------------------------------------
// GroupHom

GroupHom::GroupHom(FiniteGroup src, FiniteGroup dst, std::vector<int> images,
                   std::optional<IntMatrix> matrix)
    : src_(std::move(src)), dst_(std::move(dst)), images_(std::move(images)), matrix_(std::move(matrix)) {
    if (static_cast<int>(images_.size()) != src_.order())
        throw std::invalid_argument("GroupHom: image table size mismatch");
    for (int x : images_)
        if (x < 0 || x >= dst_.order()) throw std::invalid_argument("GroupHom: image out of range");
}

GroupHom GroupHom::identity_map(const FiniteGroup& g) {
    std::vector<int> images(static_cast<size_t>(g.order()));
    std::iota(images.begin(), images.end(), 0);
    return GroupHom(g, g, std::move(images));
}

GroupHom GroupHom::from_matrix(const AbelianGroup& src, const AbelianGroup& dst, const IntMatrix& m) {
    if (m.rows != dst.rank() || m.cols != src.rank())
        throw std::invalid_argument("GroupHom::from_matrix: matrix shape mismatch");
    // Entry (i,j) carries Z_{src_j} into Z_{dst_i}; well defined only when
    // dst_i divides m[i][j] * src_j.
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            if (mod_pos(m.at(i, j) * src.factors()[static_cast<size_t>(j)], dst.factors()[static_cast<size_t>(i)]) != 0)
                throw std::invalid_argument("GroupHom::from_matrix: entry incompatible with factor orders");
    FiniteGroup gs = FiniteGroup::from_abelian(src);
    FiniteGroup gd = FiniteGroup::from_abelian(dst);
    std::vector<int> images(static_cast<size_t>(src.order()));
    for (int x = 0; x < src.order(); ++x) {
        std::vector<int> cx = src.coords_of(x);
        std::vector<int> cy(static_cast<size_t>(dst.rank()));
        for (int i = 0; i < m.rows; ++i) {
            long acc = 0;
            for (int j = 0; j < m.cols; ++j) acc += m.at(i, j) * cx[static_cast<size_t>(j)];
            cy[static_cast<size_t>(i)] = static_cast<int>(mod_pos(acc, dst.factors()[static_cast<size_t>(i)]));
        }
        images[static_cast<size_t>(x)] = dst.index_of(cy);
    }
    return GroupHom(std::move(gs), std::move(gd), std::move(images), m);
}

bool GroupHom::is_homomorphism() const {
    int n = src_.order();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (apply(src_.mul(a, b)) != dst_.mul(apply(a), apply(b))) return false;
    return true;
}

bool GroupHom::is_bijective() const {
    if (src_.order() != dst_.order()) return false;
    std::vector<char> seen(static_cast<size_t>(dst_.order()), 0);
    for (int x : images_) {
        if (seen[static_cast<size_t>(x)]) return false;
        seen[static_cast<size_t>(x)] = 1;
    }
    return true;
}

GroupHom GroupHom::compose_after(const GroupHom& inner) const {
    if (!inner.dst_.same_group(src_))
        throw std::invalid_argument("GroupHom::compose_after: domain mismatch");
    std::vector<int> images(inner.images_.size());
    for (size_t i = 0; i < images.size(); ++i) images[i] = apply(inner.images_[i]);
    return GroupHom(inner.src_, dst_, std::move(images));
}

GroupHom GroupHom::inverse() const {
    if (!is_bijective()) throw std::invalid_argument("GroupHom::inverse: map is not bijective");
    std::vector<int> inv(images_.size());
    for (size_t i = 0; i < images_.size(); ++i) inv[static_cast<size_t>(images_[i])] = static_cast<int>(i);
    return GroupHom(dst_, src_, std::move(inv));
}

// ---------------------------------------------------------------------------
// GroupAction

GroupAction::GroupAction(FiniteGroup g, FiniteGroup a, std::vector<GroupHom> per_element)
    : g_(std::move(g)), a_(std::move(a)), per_element_(std::move(per_element)) {
    if (static_cast<int>(per_element_.size()) != g_.order())
        throw std::invalid_argument("GroupAction: one automorphism per group element required");
    for (const auto& hom : per_element_) {
        if (!hom.source().same_group(a_) || !hom.target().same_group(a_))
            throw std::invalid_argument("GroupAction: images must be endomaps of the space");
    }
}

GroupAction GroupAction::trivial(const FiniteGroup& g, const FiniteGroup& a) {
    std::vector<GroupHom> homs(static_cast<size_t>(g.order()), GroupHom::identity_map(a));
    return GroupAction(g, a, std::move(homs));
}

GroupAction GroupAction::from_generator_images(const FiniteGroup& g, const FiniteGroup& a,
                                               const std::vector<std::pair<int, GroupHom>>& gens) {
    for (const auto& [elem, hom] : gens) {
        if (elem < 0 || elem >= g.order())
            throw std::invalid_argument("GroupAction::from_generator_images: generator out of range");
        if (!hom.source().same_group(a) || !hom.target().same_group(a))
            throw std::invalid_argument("GroupAction::from_generator_images: image must act on the space");
        if (!hom.is_homomorphism() || !hom.is_bijective())
            throw std::invalid_argument("GroupAction::from_generator_images: image is not an automorphism");
    }
    std::vector<GroupHom> known(static_cast<size_t>(g.order()));
    std::vector<char> assigned(static_cast<size_t>(g.order()), 0);
    known[0] = GroupHom::identity_map(a);
    assigned[0] = 1;
    std::vector<int> queue{0};
    while (!queue.empty()) {
        int x = queue.back();
        queue.pop_back();
        for (const auto& [gi, hom] : gens) {
            int y = g.mul(x, gi);
            GroupHom cand = known[static_cast<size_t>(x)].compose_after(hom);
            if (!assigned[static_cast<size_t>(y)]) {
                known[static_cast<size_t>(y)] = std::move(cand);
                assigned[static_cast<size_t>(y)] = 1;
                queue.push_back(y);
            } else if (!known[static_cast<size_t>(y)].same_map(cand)) {
                throw std::invalid_argument(
                    "GroupAction::from_generator_images: generator images violate a group relation at element " +
                    g.elem_to_string(y));
            }
        }
    }
    for (int x = 0; x < g.order(); ++x)
        if (!assigned[static_cast<size_t>(x)])
            throw std::invalid_argument("GroupAction::from_generator_images: generators do not generate the group");
    GroupAction rho(g, a, std::move(known));
    std::string detail;
    if (!rho.verify(&detail))
        throw std::invalid_argument("GroupAction::from_generator_images: " + detail);
    return rho;
}

bool GroupAction::verify(std::string* detail) const {
    auto fail = [&](const std::string& msg) {
        if (detail) *detail = msg;
        return false;
    };
    if (!per_element_[0].same_map(GroupHom::identity_map(a_)))
        return fail("identity element does not act as the identity map");
    for (int x = 0; x < g_.order(); ++x) {
        const GroupHom& hom = per_element_[static_cast<size_t>(x)];
        if (!hom.is_bijective()) return fail("image of " + g_.elem_to_string(x) + " is not bijective");
        if (!hom.is_homomorphism()) return fail("image of " + g_.elem_to_string(x) + " is not a homomorphism");
    }
    for (int x = 0; x < g_.order(); ++x)
        for (int y = 0; y < g_.order(); ++y) {
            int xy = g_.mul(x, y);
            for (int s = 0; s < a_.order(); ++s)
                if (apply(xy, s) != apply(x, apply(y, s)))
                    return fail("homomorphism law fails at pair (" + g_.elem_to_string(x) + ", " +
                                g_.elem_to_string(y) + ")");
        }
    return true;
}

std::uint64_t GroupAction::table_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    h = fnv1a(h, static_cast<std::uint64_t>(g_.order()));
    h = fnv1a(h, static_cast<std::uint64_t>(a_.order()));
    for (const auto& hom : per_element_)
        for (int x : hom.images()) h = fnv1a(h, static_cast<std::uint64_t>(x));
    return h;
}

std::string GroupAction::describe() const {
    std::ostringstream out;
    out << "ACT[" << std::hex << table_hash() << "]";
    return out.str();
}

GroupAction dual_action(const GroupAction& rho) {
    if (rho.space().kind() != FiniteGroup::Kind::Abelian)
        throw std::invalid_argument("dual_action: the space must be an abelian-kind group");
    const AbelianGroup& a = rho.space().abelian();
    AbelianGroup astar = character_group(a);
    FiniteGroup astar_grp = FiniteGroup::from_abelian(astar);
    long n = a.exponent();
    const auto& f = a.factors();
    // Unit coordinate vectors of A, used to read off exponent vectors.
    std::vector<int> units(f.size());
    for (size_t j = 0; j < f.size(); ++j) {
        std::vector<int> c(f.size(), 0);
        c[j] = 1;
        units[j] = a.index_of(c);
    }
    const FiniteGroup& g = rho.group();
    std::vector<GroupHom> duals;
    duals.reserve(static_cast<size_t>(g.order()));
    for (int x = 0; x < g.order(); ++x) {
        // rho*(x) on exponent vectors: (rho*(x) chi)(e_j) = chi(rho(x) e_j).
        std::vector<int> star(static_cast<size_t>(astar.order()));
        for (int chi = 0; chi < astar.order(); ++chi) {
            std::vector<int> m(f.size());
            for (size_t j = 0; j < f.size(); ++j) {
                long p = pair_exponent(a, rho.apply(x, units[j]), chi);
                // chi'(e_j) = zeta_N^{m'_j * N/n_j}; p is a multiple of N/n_j.
                m[j] = static_cast<int>((p * f[j] / n) % f[j]);
            }
            star[static_cast<size_t>(chi)] = astar.index_of(m);
        }
        std::vector<int> dual(star.size());
        for (size_t chi = 0; chi < star.size(); ++chi) dual[static_cast<size_t>(star[chi])] = static_cast<int>(chi);
        duals.emplace_back(astar_grp, astar_grp, std::move(dual));
    }
    GroupAction result(g, astar_grp, std::move(duals));
    std::string detail;
    if (!result.verify(&detail)) throw std::logic_error("dual_action: constructed action invalid: " + detail);
    return result;
}

// ---------------------------------------------------------------------------
// Solvability and axioms

namespace {

std::vector<int> subgroup_closure(const FiniteGroup& g, std::set<int> gens) {
    gens.insert(0);
    std::vector<int> members(gens.begin(), gens.end());
    std::set<int> seen(gens.begin(), gens.end());
    for (size_t i = 0; i < members.size(); ++i) {
        for (size_t j = 0; j < members.size(); ++j) {
            int p = g.mul(members[i], members[j]);
            if (seen.insert(p).second) members.push_back(p);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

}  // namespace

bool is_solvable(const FiniteGroup& g) {
    std::vector<int> cur(static_cast<size_t>(g.order()));
    std::iota(cur.begin(), cur.end(), 0);
    while (cur.size() > 1) {
        std::set<int> comm;
        for (int a : cur)
            for (int b : cur) {
                int c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
                comm.insert(c);
            }
        std::vector<int> derived = subgroup_closure(g, std::move(comm));
        if (derived.size() == cur.size()) return false;  // series stalled above the identity
        cur = std::move(derived);
    }
    return true;
}

bool check_group_axioms(const FiniteGroup& g, std::string* detail) {
    auto fail = [&](const std::string& msg) {
        if (detail) *detail = msg;
        return false;
    };
    int n = g.order();
    for (int a = 0; a < n; ++a) {
        if (g.mul(0, a) != a || g.mul(a, 0) != a) return fail("identity law fails at " + g.elem_to_string(a));
        int b = g.inv(a);
        if (g.mul(a, b) != 0 || g.mul(b, a) != 0) return fail("inverse law fails at " + g.elem_to_string(a));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    return fail("associativity fails at (" + g.elem_to_string(a) + ", " + g.elem_to_string(b) +
                                ", " + g.elem_to_string(c) + ")");
    return true;
}

}  // namespace twistlab
