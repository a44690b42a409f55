#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twistlab/cyclo.hpp"
#include "twistlab/grp.hpp"

namespace twistlab {

/// Thrown by invert2 when the element has no inverse in C[G] x C[G].
class singular_element : public std::domain_error {
public:
    explicit singular_element(const std::string& what) : std::domain_error(what) {}
};

/// Thrown when the generic dense-solve inverter is asked for a group with
/// |G|^2 beyond its supported size.
class size_limit_exceeded : public std::length_error {
public:
    explicit size_limit_exceeded(const std::string& what) : std::length_error(what) {}
};

struct KeyPair {
    int a = 0, b = 0;
    bool operator==(const KeyPair&) const = default;
    auto operator<=>(const KeyPair&) const = default;
};

struct KeyTriple {
    int a = 0, b = 0, c = 0;
    bool operator==(const KeyTriple&) const = default;
    auto operator<=>(const KeyTriple&) const = default;
};

/// Sparse element of C[G] (x) C[G] over the cyclotomic field at a fixed
/// conductor. Keys are pairs of dense element indices; zero coefficients
/// are never stored.
class Tensor2 {
public:
    Tensor2() = default;
    Tensor2(FiniteGroup g, int conductor);

    bool valid() const { return g_.valid(); }
    const FiniteGroup& group() const { return g_; }
    int conductor() const { return n_; }
    size_t nnz() const { return m_.size(); }

    void add_to(int a, int b, const CycScalar& s);
    void set_coefficient(int a, int b, CycScalar s);
    CycScalar coefficient(int a, int b) const;

    const std::unordered_map<std::uint64_t, CycScalar>& entries() const { return m_; }
    /// Entries in canonical (first leg, second leg) index order.
    std::vector<std::pair<KeyPair, CycScalar>> sorted_entries() const;

    /// Same entries with every coefficient embedded at a larger conductor.
    Tensor2 embedded(int conductor) const;

    bool operator==(const Tensor2& o) const;
    bool operator!=(const Tensor2& o) const { return !(*this == o); }

    static std::uint64_t pack(int a, int b);
    static KeyPair unpack2(std::uint64_t k);

private:
    FiniteGroup g_;
    int n_ = 1;
    std::unordered_map<std::uint64_t, CycScalar> m_;
};

/// Sparse element of C[G] (x) C[G] (x) C[G]; same conventions as Tensor2.
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(FiniteGroup g, int conductor);

    const FiniteGroup& group() const { return g_; }
    int conductor() const { return n_; }
    size_t nnz() const { return m_.size(); }

    void add_to(int a, int b, int c, const CycScalar& s);
    CycScalar coefficient(int a, int b, int c) const;
    const std::unordered_map<std::uint64_t, CycScalar>& entries() const { return m_; }

    Tensor3 embedded(int conductor) const;
    bool operator==(const Tensor3& o) const;
    bool operator!=(const Tensor3& o) const { return !(*this == o); }

    static std::uint64_t pack(int a, int b, int c);
    static KeyTriple unpack3(std::uint64_t k);

private:
    FiniteGroup g_;
    int n_ = 1;
    std::unordered_map<std::uint64_t, CycScalar> m_;
};

/// 1 (x) 1: single entry (e, e) with coefficient one.
Tensor2 unit2(const FiniteGroup& g, int conductor = 1);

Tensor2 mul2(const Tensor2& x, const Tensor2& y);
Tensor3 mul3(const Tensor3& x, const Tensor3& y);
Tensor2 tensor_scale(const Tensor2& x, const CycScalar& s);

/// Leg swap a (x) b -> b (x) a (an algebra homomorphism).
Tensor2 flip(const Tensor2& x);

Tensor3 coproduct_left(const Tensor2& x);   // (Delta (x) I): (a,b) -> (a,a,b)
Tensor3 coproduct_right(const Tensor2& x);  // (I (x) Delta): (a,b) -> (a,b,b)
Tensor3 embed12(const Tensor2& x);          // J (x) 1
Tensor3 embed23(const Tensor2& x);          // 1 (x) J

/// First key, in canonical order, where the two tensors differ; nullopt when equal.
std::optional<KeyPair> first_difference(const Tensor2& x, const Tensor2& y);
std::optional<KeyTriple> first_difference(const Tensor3& x, const Tensor3& y);

/// Sum of coefficients over the first / second leg: the image under
/// (eps (x) I) respectively (I (x) eps), as a sparse element of C[G].
std::map<int, CycScalar> counit_contract_first(const Tensor2& x);
std::map<int, CycScalar> counit_contract_second(const Tensor2& x);

struct TwistCheck {
    bool ok = false;
    std::string failed_condition;  // empty when ok
    std::string counterexample;    // offending key, rendered with element names
};

/// Checks the twist axioms for J in C[G] (x) C[G]:
/// (Delta (x) I)(J) * J_{12} = (I (x) Delta)(J) * J_{23} and both counit
/// contractions equal to 1.
TwistCheck is_twist(const Tensor2& j);

/// Generic inverse in the algebra C[G] (x) C[G] ~ C[G x G] by dense
/// elimination on the left-multiplication matrix. Supported for
/// |G|^2 <= 4096; the result is verified by multiplication on both sides.
Tensor2 invert2(const Tensor2& t);

/// Exact check that x * y = y * x = 1 (x) 1.
bool verify_inverse_pair(const Tensor2& x, const Tensor2& y);

/// R = flip(J)^{-1} * J = flip(J^{-1}) * J. The one-argument form inverts
/// generically; the two-argument form takes a caller-supplied inverse and
/// validates the pair first.
Tensor2 twisted_R(const Tensor2& j);
Tensor2 twisted_R(const Tensor2& j, const Tensor2& jinv);

/// flip(R) * R = 1 (x) 1.
bool is_triangular(const Tensor2& r);

/// Re-keys both legs along phi (an algebra map C[src] -> C[dst] when phi is
/// a group homomorphism); colliding keys accumulate.
Tensor2 transport(const Tensor2& x, const GroupHom& phi);

/// Dense |G| x |G| coefficient matrix in canonical element order.
std::vector<std::vector<CycScalar>> coefficient_matrix(const Tensor2& x);

/// Exact rank by fraction-free (Bareiss) Gaussian elimination. Consumes
/// its argument.
int matrix_rank(std::vector<std::vector<CycScalar>> m);

struct MinimalityCheck {
    bool minimal = false;
    int rank = 0;
    int order = 0;
};

/// R-matrix minimality: the coefficient matrix has full rank |G|.
MinimalityCheck is_minimal(const Tensor2& r);

/// True when conjugation of every diagonal coproduct by J is flip-stable:
/// flip(J^{-1} (g (x) g) J) = J^{-1} (g (x) g) J for all g.
bool is_cocommutative(const Tensor2& j, const Tensor2& jinv);

enum class ExportMode { exact, complex_pairs };

/// CSV rendering of the coefficient matrix. Exact mode writes one CycScalar
/// text cell per entry and round-trips through import_matrix_csv; complex
/// mode writes re/im column pairs in decimal.
void export_matrix_csv(std::ostream& out, const Tensor2& x, ExportMode mode, const std::string& label);

struct ImportedMatrix {
    std::string label;
    int order = 0;
    int conductor = 1;
    std::string mode;
    std::vector<std::vector<CycScalar>> cells;
};

ImportedMatrix import_matrix_csv(std::istream& in);

/// Worker count honoring the TWISTLAB_THREADS environment variable
/// (unset or 0 = hardware auto-detect, otherwise the given cap).
int effective_thread_count();

}  // namespace twistlab
