#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace twistlab {

/// Finite abelian group presented as a list of cyclic factors
/// Z_{n1} x ... x Z_{nk}. Elements are dense indices 0..order-1 in
/// mixed-radix order with the first factor varying fastest; index 0 is the
/// identity. An empty factor list is the trivial group.
class AbelianGroup {
public:
    AbelianGroup() = default;
    explicit AbelianGroup(std::vector<int> factors);

    int order() const { return order_; }
    int exponent() const { return exponent_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    const std::vector<int>& factors() const { return factors_; }

    int index_of(const std::vector<int>& coords) const;
    std::vector<int> coords_of(int index) const;

    int add(int a, int b) const;
    int neg(int a) const;
    int sub(int a, int b) const { return add(a, neg(b)); }
    int zero() const { return 0; }
    int scalar_mul(long k, int a) const;

    bool odd_order() const { return order_ % 2 == 1; }
    /// The unique y with 2y = a; defined factor-wise as a*(n_i+1)/2.
    /// Throws std::domain_error when any factor has even order.
    int sqrt_elem(int a) const;

    std::string elem_to_string(int a) const;
    std::string describe() const;
    bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }

private:
    std::vector<int> factors_;
    int order_ = 1;
    int exponent_ = 1;
};

/// The character group A* of an abelian A, presented on the same factor
/// list: the character with exponent vector m sends x to
/// zeta_N^{pair_exponent(A, x, m)} with N = exponent(A).
AbelianGroup character_group(const AbelianGroup& a);

/// Sum over factors of x_i * m_i * (N / n_i), reduced into [0, N).
long pair_exponent(const AbelianGroup& a, int x, int chi);

struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<long> v;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * static_cast<size_t>(c), 0) {}
    long& at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
    long at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }
    static IntMatrix identity(int n);
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && v == o.v; }
};

class GroupAction;

/// Finite group with dense element indices 0..order-1 and index 0 the
/// identity. Carries its construction (abelian, semidirect product, direct
/// product, or explicit table); multiplication for small orders goes
/// through a cached Cayley table. Cheap to copy (shared immutable state).
class FiniteGroup {
public:
    enum class Kind { Abelian, Semidirect, DirectProduct, Table };

    FiniteGroup() = default;
    bool valid() const { return impl_ != nullptr; }

    int order() const;
    int mul(int a, int b) const;
    int inv(int a) const;
    static constexpr int identity = 0;

    Kind kind() const;
    bool is_abelian() const;
    const AbelianGroup& abelian() const;  // Kind::Abelian only

    /// Pair layout for composite kinds. Semidirect K |x H stores an element
    /// h*k as index h + |H|*k (fast part = H, the normal factor, written
    /// first). A direct product A x B stores (a, b) as a + |A|*b (fast part
    /// = A, matching the mixed-radix index of a concatenated abelian factor
    /// list). pair_index/parts speak (fast, slow) in that sense.
    const FiniteGroup& left_factor() const;   // factory argument 1: K / A
    const FiniteGroup& right_factor() const;  // factory argument 2: H / B
    const GroupAction& action() const;        // Kind::Semidirect only
    int pair_index(int fast_part, int slow_part) const;
    std::pair<int, int> parts(int g) const;  // (fast_part, slow_part)

    std::string elem_to_string(int g) const;
    std::string describe() const;
    /// Structural identity: same construction recipe (and hence the same
    /// multiplication table under the canonical indexing).
    bool same_group(const FiniteGroup& o) const;

    static FiniteGroup from_abelian(const AbelianGroup& a);
    static FiniteGroup cyclic(int n);
    /// Table constructor; verifies full group axioms (closure, identity at
    /// index 0, inverses, associativity over all triples).
    static FiniteGroup from_table(std::vector<std::vector<int>> table);
    /// K |x H with K acting on H through rho (rho: K -> Aut(H)).
    /// Multiplication: (h1, k1)(h2, k2) = (h1 * rho(k1)(h2), k1 k2).
    static FiniteGroup semidirect(const FiniteGroup& k, const FiniteGroup& h, const GroupAction& rho);
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit FiniteGroup(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

/// Map between finite groups, stored as a total image table; for maps into
/// an abelian target an integer matrix on coordinates may be attached as
/// the defining representation.
class GroupHom {
public:
    GroupHom() = default;
    GroupHom(FiniteGroup src, FiniteGroup dst, std::vector<int> images,
             std::optional<IntMatrix> matrix = std::nullopt);

    static GroupHom identity_map(const FiniteGroup& g);
    /// Build from an integer matrix acting on abelian coordinates.
    /// Validates per-entry order compatibility: dst_i | m[i][j] * src_j.
    static GroupHom from_matrix(const AbelianGroup& src, const AbelianGroup& dst, const IntMatrix& m);

    bool valid() const { return src_.valid(); }
    const FiniteGroup& source() const { return src_; }
    const FiniteGroup& target() const { return dst_; }
    const std::vector<int>& images() const { return images_; }
    const std::optional<IntMatrix>& matrix() const { return matrix_; }

    int apply(int x) const { return images_[static_cast<size_t>(x)]; }
    bool is_homomorphism() const;  // exhaustive over all pairs
    bool is_bijective() const;

    GroupHom compose_after(const GroupHom& inner) const;  // this o inner
    GroupHom inverse() const;                             // requires bijective

    bool same_map(const GroupHom& o) const { return images_ == o.images_; }

private:
    FiniteGroup src_, dst_;
    std::vector<int> images_;
    std::optional<IntMatrix> matrix_;
};

/// Action of a group G on a group A by automorphisms: one GroupHom
/// (an automorphism of A) per element of G.
class GroupAction {
public:
    GroupAction() = default;
    GroupAction(FiniteGroup g, FiniteGroup a, std::vector<GroupHom> per_element);

    static GroupAction trivial(const FiniteGroup& g, const FiniteGroup& a);
    /// Extend generator images to the whole group by closure over the
    /// Cayley graph. Throws std::invalid_argument when the generators do
    /// not generate G or the images are inconsistent with some relation.
    static GroupAction from_generator_images(const FiniteGroup& g, const FiniteGroup& a,
                                             const std::vector<std::pair<int, GroupHom>>& gens);

    bool valid() const { return g_.valid(); }
    const FiniteGroup& group() const { return g_; }
    const FiniteGroup& space() const { return a_; }
    const GroupHom& at(int g) const { return per_element_[static_cast<size_t>(g)]; }
    int apply(int g, int x) const { return per_element_[static_cast<size_t>(g)].apply(x); }

    /// Every image an automorphism, identity at e, and the homomorphism
    /// law rho(g g') = rho(g) o rho(g') over all pairs.
    bool verify(std::string* detail = nullptr) const;

    std::uint64_t table_hash() const;
    std::string describe() const;

private:
    FiniteGroup g_, a_;
    std::vector<GroupHom> per_element_;
};

/// Dual action on the character group: dual(g) = (rho*(g))^{-1} where
/// (rho*(g) chi)(a) = chi(rho(g) a). Satisfies
/// pair(rho(g) a, dual(g) chi) = pair(a, chi). Requires an abelian space.
GroupAction dual_action(const GroupAction& rho);

/// Derived-series test by repeated commutator-subgroup closure.
bool is_solvable(const FiniteGroup& g);

/// Full axiom check (identity, inverses, associativity over all triples).
bool check_group_axioms(const FiniteGroup& g, std::string* detail = nullptr);

}  // namespace twistlab
