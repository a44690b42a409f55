#include "twistlab/galg.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace twistlab {

namespace {

constexpr int kKeyBits = 21;
constexpr std::uint64_t kKeyMask = (1ull << kKeyBits) - 1;
constexpr size_t kParallelWorkThreshold = 1u << 18;
constexpr long kInvertDimensionCap = 4096;

void require_key_range(const FiniteGroup& g) {
    if (g.valid() && g.order() >= (1 << kKeyBits))
        throw std::invalid_argument("tensor keys support group orders below 2^21");
}

int common_conductor(int a, int b) { return static_cast<int>(std::lcm(static_cast<long>(a), static_cast<long>(b))); }

}  // namespace

// ---------------------------------------------------------------------------
// Tensor2 / Tensor3 basics

Tensor2::Tensor2(FiniteGroup g, int conductor) : g_(std::move(g)), n_(conductor) { require_key_range(g_); }

std::uint64_t Tensor2::pack(int a, int b) {
    return (static_cast<std::uint64_t>(a) << kKeyBits) | static_cast<std::uint64_t>(b);
}

KeyPair Tensor2::unpack2(std::uint64_t k) {
    return KeyPair{static_cast<int>(k >> kKeyBits), static_cast<int>(k & kKeyMask)};
}

void Tensor2::add_to(int a, int b, const CycScalar& s) {
    if (s.is_zero()) return;
    std::uint64_t k = pack(a, b);
    auto it = m_.find(k);
    if (it == m_.end()) {
        m_.emplace(k, s.conductor() == n_ ? s : s.embedded(n_));
        return;
    }
    it->second += s;
    if (it->second.is_zero()) m_.erase(it);
}

void Tensor2::set_coefficient(int a, int b, CycScalar s) {
    std::uint64_t k = pack(a, b);
    if (s.is_zero()) {
        m_.erase(k);
        return;
    }
    if (s.conductor() != n_) s = s.embedded(n_);
    m_[k] = std::move(s);
}

CycScalar Tensor2::coefficient(int a, int b) const {
    auto it = m_.find(pack(a, b));
    return it == m_.end() ? CycScalar::zero(n_) : it->second;
}

std::vector<std::pair<KeyPair, CycScalar>> Tensor2::sorted_entries() const {
    std::vector<std::pair<KeyPair, CycScalar>> out;
    out.reserve(m_.size());
    for (const auto& [k, v] : m_) out.emplace_back(unpack2(k), v);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

Tensor2 Tensor2::embedded(int conductor) const {
    if (conductor == n_) return *this;
    Tensor2 out(g_, conductor);
    for (const auto& [k, v] : m_) out.m_.emplace(k, v.embedded(conductor));
    return out;
}

bool Tensor2::operator==(const Tensor2& o) const {
    if (!g_.same_group(o.g_)) return false;
    if (m_.size() != o.m_.size()) return false;
    for (const auto& [k, v] : m_) {
        auto it = o.m_.find(k);
        if (it == o.m_.end() || !(v == it->second)) return false;
    }
    return true;
}

Tensor3::Tensor3(FiniteGroup g, int conductor) : g_(std::move(g)), n_(conductor) { require_key_range(g_); }

std::uint64_t Tensor3::pack(int a, int b, int c) {
    return (static_cast<std::uint64_t>(a) << (2 * kKeyBits)) | (static_cast<std::uint64_t>(b) << kKeyBits) |
           static_cast<std::uint64_t>(c);
}

KeyTriple Tensor3::unpack3(std::uint64_t k) {
    return KeyTriple{static_cast<int>(k >> (2 * kKeyBits)), static_cast<int>((k >> kKeyBits) & kKeyMask),
                     static_cast<int>(k & kKeyMask)};
}

void Tensor3::add_to(int a, int b, int c, const CycScalar& s) {
    if (s.is_zero()) return;
    std::uint64_t k = pack(a, b, c);
    auto it = m_.find(k);
    if (it == m_.end()) {
        m_.emplace(k, s.conductor() == n_ ? s : s.embedded(n_));
        return;
    }
    it->second += s;
    if (it->second.is_zero()) m_.erase(it);
}

CycScalar Tensor3::coefficient(int a, int b, int c) const {
    auto it = m_.find(pack(a, b, c));
    return it == m_.end() ? CycScalar::zero(n_) : it->second;
}

Tensor3 Tensor3::embedded(int conductor) const {
    if (conductor == n_) return *this;
    Tensor3 out(g_, conductor);
    for (const auto& [k, v] : m_) out.m_.emplace(k, v.embedded(conductor));
    return out;
}

bool Tensor3::operator==(const Tensor3& o) const {
    if (!g_.same_group(o.g_)) return false;
    if (m_.size() != o.m_.size()) return false;
    for (const auto& [k, v] : m_) {
        auto it = o.m_.find(k);
        if (it == o.m_.end() || !(v == it->second)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Construction helpers and products

Tensor2 unit2(const FiniteGroup& g, int conductor) {
    Tensor2 t(g, conductor);
    t.set_coefficient(FiniteGroup::identity, FiniteGroup::identity, CycScalar::one(conductor));
    return t;
}

int effective_thread_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const char* env = std::getenv("TWISTLAB_THREADS");
    if (env == nullptr || *env == '\0') return static_cast<int>(hw);
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v < 0) return static_cast<int>(hw);
    if (v == 0) return static_cast<int>(hw);
    return static_cast<int>(std::min<long>(v, 64));
}

namespace {

// Shared parallel skeleton for the two product kernels: partitions the
// left operand's entries, accumulates into per-thread maps, then merges.
// Exact arithmetic makes the merge order irrelevant.
template <class Entry, class Emit>
void parallel_pairs(const std::vector<Entry>& xs, size_t ys_count, const Emit& emit_range) {
    size_t work = xs.size() * ys_count;
    int threads = work >= kParallelWorkThreshold ? effective_thread_count() : 1;
    threads = static_cast<int>(std::min<size_t>(static_cast<size_t>(threads), xs.size() == 0 ? 1 : xs.size()));
    if (threads <= 1) {
        emit_range(0, xs.size(), 0);
        return;
    }
    std::vector<std::thread> pool;
    size_t chunk = (xs.size() + static_cast<size_t>(threads) - 1) / static_cast<size_t>(threads);
    for (int t = 0; t < threads; ++t) {
        size_t begin = static_cast<size_t>(t) * chunk;
        size_t end = std::min(xs.size(), begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end, t] { emit_range(begin, end, t); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

namespace {

// Integer-coordinate snapshot of one product operand: every coefficient is
// scaled by a common denominator so the convolution runs on mpz
// add-multiplies instead of mpq arithmetic.
struct ScaledEntries {
    std::vector<std::uint64_t> keys;
    std::vector<mpz_class> coords;  // keys.size() * phi, row-major
    mpz_class den{1};
};

ScaledEntries scale_entries(const std::unordered_map<std::uint64_t, CycScalar>& m, int phi) {
    ScaledEntries out;
    out.keys.reserve(m.size());
    for (const auto& [k, v] : m) {
        (void)v;
        out.keys.push_back(k);
    }
    std::sort(out.keys.begin(), out.keys.end());
    for (std::uint64_t k : out.keys)
        for (const Rational& r : m.at(k).coeffs())
            mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), r.get_den().get_mpz_t());
    out.coords.resize(out.keys.size() * static_cast<size_t>(phi));
    size_t at = 0;
    mpz_class f;
    for (std::uint64_t k : out.keys)
        for (const Rational& r : m.at(k).coeffs()) {
            mpz_divexact(f.get_mpz_t(), out.den.get_mpz_t(), r.get_den().get_mpz_t());
            out.coords[at++] = r.get_num() * f;
        }
    return out;
}

using RawMap = std::unordered_map<std::uint64_t, std::vector<mpz_class>>;

// Pairwise convolution of the scaled operands; key_mul combines packed keys
// through the group law. Returns unreduced coordinate vectors of length
// 2*phi-1 per output key.
template <class KeyMul>
RawMap convolve_scaled(const ScaledEntries& xs, const ScaledEntries& ys, int phi, const KeyMul& key_mul) {
    int len = 2 * phi - 1;
    size_t work = xs.keys.size() * ys.keys.size();
    size_t reserve_hint = std::min<size_t>(work, 1u << 22);
    int max_threads = effective_thread_count();
    std::vector<RawMap> locals(static_cast<size_t>(std::max(1, max_threads)));
    parallel_pairs(xs.keys, ys.keys.size(), [&](size_t begin, size_t end, int slot) {
        RawMap& local = locals[static_cast<size_t>(slot)];
        local.reserve(reserve_hint);
        for (size_t i = begin; i < end; ++i) {
            const mpz_class* xa = &xs.coords[i * static_cast<size_t>(phi)];
            for (size_t j = 0; j < ys.keys.size(); ++j) {
                std::uint64_t key = key_mul(xs.keys[i], ys.keys[j]);
                auto [it, fresh] = local.try_emplace(key);
                if (fresh) it->second.resize(static_cast<size_t>(len));
                mpz_class* acc = it->second.data();
                const mpz_class* yb = &ys.coords[j * static_cast<size_t>(phi)];
                for (int a = 0; a < phi; ++a) {
                    if (mpz_sgn(xa[a].get_mpz_t()) == 0) continue;
                    for (int b = 0; b < phi; ++b) {
                        if (mpz_sgn(yb[b].get_mpz_t()) == 0) continue;
                        mpz_addmul(acc[a + b].get_mpz_t(), xa[a].get_mpz_t(), yb[b].get_mpz_t());
                    }
                }
            }
        }
    });
    RawMap merged = std::move(locals[0]);
    for (size_t t = 1; t < locals.size(); ++t)
        for (auto& [k, v] : locals[t]) {
            auto [it, fresh] = merged.try_emplace(k);
            if (fresh) {
                it->second = std::move(v);
            } else {
                for (int i = 0; i < len; ++i) it->second[static_cast<size_t>(i)] += v[static_cast<size_t>(i)];
            }
        }
    return merged;
}

// Reduce an unreduced coordinate vector modulo Phi_n and divide by den;
// returns an empty optional for an exact zero.
std::optional<CycScalar> finalize_raw(std::vector<mpz_class>& raw, int n, int phi, const mpz_class& den) {
    const auto& fold = power_reduction_rows(n);
    for (int j = phi; j <= 2 * phi - 2; ++j) {
        if (mpz_sgn(raw[static_cast<size_t>(j)].get_mpz_t()) == 0) continue;
        const auto& row = fold[static_cast<size_t>(j - phi)];
        for (int i = 0; i < phi; ++i)
            mpz_addmul(raw[static_cast<size_t>(i)].get_mpz_t(), raw[static_cast<size_t>(j)].get_mpz_t(),
                       row[static_cast<size_t>(i)].get_mpz_t());
    }
    bool zero = true;
    for (int i = 0; i < phi && zero; ++i) zero = mpz_sgn(raw[static_cast<size_t>(i)].get_mpz_t()) == 0;
    if (zero) return std::nullopt;
    std::vector<Rational> c(static_cast<size_t>(phi));
    for (int i = 0; i < phi; ++i) {
        Rational r(raw[static_cast<size_t>(i)], den);
        r.canonicalize();
        c[static_cast<size_t>(i)] = std::move(r);
    }
    return CycScalar::from_coeff_vector(n, std::move(c));
}

}  // namespace

Tensor2 mul2(const Tensor2& x, const Tensor2& y) {
    if (!x.group().same_group(y.group())) throw std::invalid_argument("mul2: group mismatch");
    int n = common_conductor(x.conductor(), y.conductor());
    Tensor2 xe = x.embedded(n), ye = y.embedded(n);
    const FiniteGroup g = x.group();
    int phi = euler_phi(n);

    ScaledEntries xs = scale_entries(xe.entries(), phi);
    ScaledEntries ys = scale_entries(ye.entries(), phi);
    RawMap raw = convolve_scaled(xs, ys, phi, [&](std::uint64_t ka, std::uint64_t kb) {
        KeyPair a = Tensor2::unpack2(ka), b = Tensor2::unpack2(kb);
        return Tensor2::pack(g.mul(a.a, b.a), g.mul(a.b, b.b));
    });

    mpz_class den = xs.den * ys.den;
    Tensor2 out(g, n);
    for (auto& [k, v] : raw)
        if (auto s = finalize_raw(v, n, phi, den)) {
            KeyPair p = Tensor2::unpack2(k);
            out.set_coefficient(p.a, p.b, std::move(*s));
        }
    return out;
}

Tensor3 mul3(const Tensor3& x, const Tensor3& y) {
    if (!x.group().same_group(y.group())) throw std::invalid_argument("mul3: group mismatch");
    int n = common_conductor(x.conductor(), y.conductor());
    Tensor3 xe = x.embedded(n), ye = y.embedded(n);
    const FiniteGroup g = x.group();
    int phi = euler_phi(n);

    ScaledEntries xs = scale_entries(xe.entries(), phi);
    ScaledEntries ys = scale_entries(ye.entries(), phi);
    RawMap raw = convolve_scaled(xs, ys, phi, [&](std::uint64_t ka, std::uint64_t kb) {
        KeyTriple a = Tensor3::unpack3(ka), b = Tensor3::unpack3(kb);
        return Tensor3::pack(g.mul(a.a, b.a), g.mul(a.b, b.b), g.mul(a.c, b.c));
    });

    mpz_class den = xs.den * ys.den;
    Tensor3 out(g, n);
    for (auto& [k, v] : raw)
        if (auto s = finalize_raw(v, n, phi, den)) {
            KeyTriple p = Tensor3::unpack3(k);
            out.add_to(p.a, p.b, p.c, *s);
        }
    return out;
}

Tensor2 tensor_scale(const Tensor2& x, const CycScalar& s) {
    Tensor2 out(x.group(), common_conductor(x.conductor(), s.conductor()));
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        out.add_to(p.a, p.b, v * s);
    }
    return out;
}

Tensor2 flip(const Tensor2& x) {
    Tensor2 out(x.group(), x.conductor());
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        out.add_to(p.b, p.a, v);
    }
    return out;
}

Tensor3 coproduct_left(const Tensor2& x) {
    Tensor3 out(x.group(), x.conductor());
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        out.add_to(p.a, p.a, p.b, v);
    }
    return out;
}

Tensor3 coproduct_right(const Tensor2& x) {
    Tensor3 out(x.group(), x.conductor());
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        out.add_to(p.a, p.b, p.b, v);
    }
    return out;
}

Tensor3 embed12(const Tensor2& x) {
    Tensor3 out(x.group(), x.conductor());
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        out.add_to(p.a, p.b, FiniteGroup::identity, v);
    }
    return out;
}

Tensor3 embed23(const Tensor2& x) {
    Tensor3 out(x.group(), x.conductor());
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        out.add_to(FiniteGroup::identity, p.a, p.b, v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Differences and counit contractions

std::optional<KeyPair> first_difference(const Tensor2& x, const Tensor2& y) {
    std::vector<std::uint64_t> keys;
    for (const auto& [k, v] : x.entries())
        if (!(v == y.coefficient(Tensor2::unpack2(k).a, Tensor2::unpack2(k).b))) keys.push_back(k);
    for (const auto& [k, v] : y.entries())
        if (x.entries().find(k) == x.entries().end() && !v.is_zero()) keys.push_back(k);
    if (keys.empty()) return std::nullopt;
    return Tensor2::unpack2(*std::min_element(keys.begin(), keys.end()));
}

std::optional<KeyTriple> first_difference(const Tensor3& x, const Tensor3& y) {
    std::vector<std::uint64_t> keys;
    for (const auto& [k, v] : x.entries()) {
        KeyTriple p = Tensor3::unpack3(k);
        if (!(v == y.coefficient(p.a, p.b, p.c))) keys.push_back(k);
    }
    for (const auto& [k, v] : y.entries())
        if (x.entries().find(k) == x.entries().end() && !v.is_zero()) keys.push_back(k);
    if (keys.empty()) return std::nullopt;
    return Tensor3::unpack3(*std::min_element(keys.begin(), keys.end()));
}

std::map<int, CycScalar> counit_contract_first(const Tensor2& x) {
    std::map<int, CycScalar> out;
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        auto [it, fresh] = out.try_emplace(p.b, v);
        if (!fresh) it->second += v;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

std::map<int, CycScalar> counit_contract_second(const Tensor2& x) {
    std::map<int, CycScalar> out;
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        auto [it, fresh] = out.try_emplace(p.a, v);
        if (!fresh) it->second += v;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

namespace {

bool is_unit_element(const std::map<int, CycScalar>& elem) {
    if (elem.size() != 1) return false;
    const auto& [g, v] = *elem.begin();
    return g == FiniteGroup::identity && v == CycScalar::one(v.conductor());
}

std::string render_key(const FiniteGroup& g, KeyTriple k) {
    return "(" + g.elem_to_string(k.a) + ", " + g.elem_to_string(k.b) + ", " + g.elem_to_string(k.c) + ")";
}

}  // namespace

TwistCheck is_twist(const Tensor2& j) {
    TwistCheck out;
    const FiniteGroup& g = j.group();
    Tensor3 lhs = mul3(coproduct_left(j), embed12(j));
    Tensor3 rhs = mul3(coproduct_right(j), embed23(j));
    if (auto diff = first_difference(lhs, rhs)) {
        out.ok = false;
        out.failed_condition = "coassociativity constraint";
        out.counterexample = render_key(g, *diff) + ": " +
                             lhs.coefficient(diff->a, diff->b, diff->c).to_string() + " vs " +
                             rhs.coefficient(diff->a, diff->b, diff->c).to_string();
        return out;
    }
    auto left = counit_contract_first(j);
    if (!is_unit_element(left)) {
        out.ok = false;
        out.failed_condition = "left counit contraction";
        out.counterexample = "contraction over the first leg is not the unit";
        return out;
    }
    auto right = counit_contract_second(j);
    if (!is_unit_element(right)) {
        out.ok = false;
        out.failed_condition = "right counit contraction";
        out.counterexample = "contraction over the second leg is not the unit";
        return out;
    }
    out.ok = true;
    return out;
}

// ---------------------------------------------------------------------------
// Inversion and R-matrices

bool verify_inverse_pair(const Tensor2& x, const Tensor2& y) {
    Tensor2 unit = unit2(x.group(), common_conductor(x.conductor(), y.conductor()));
    return mul2(x, y) == unit && mul2(y, x) == unit;
}

Tensor2 invert2(const Tensor2& t) {
    const FiniteGroup& g = t.group();
    long order = g.order();
    long dim = order * order;
    if (dim > kInvertDimensionCap)
        throw size_limit_exceeded("invert2: generic inversion supports |G|^2 <= 4096, got " + std::to_string(dim));
    int n = t.conductor();
    CycScalar zero = CycScalar::zero(n);
    // Left-multiplication matrix over C[G x G], augmented with the unit.
    std::vector<std::vector<CycScalar>> m(static_cast<size_t>(dim),
                                          std::vector<CycScalar>(static_cast<size_t>(dim) + 1, zero));
    for (long v = 0; v < dim; ++v) {
        int va = static_cast<int>(v / order), vb = static_cast<int>(v % order);
        for (const auto& [key, coeff] : t.entries()) {
            KeyPair p = Tensor2::unpack2(key);
            long u = static_cast<long>(g.mul(p.a, va)) * order + g.mul(p.b, vb);
            m[static_cast<size_t>(u)][static_cast<size_t>(v)] += coeff;
        }
    }
    m[0][static_cast<size_t>(dim)] = CycScalar::one(n);

    // Gauss-Jordan over the field.
    std::vector<long> pivot_of_col(static_cast<size_t>(dim), -1);
    long rank = 0;
    for (long col = 0; col < dim && rank < dim; ++col) {
        long piv = -1;
        for (long r = rank; r < dim; ++r)
            if (!m[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(piv)]);
        CycScalar inv_p = m[static_cast<size_t>(rank)][static_cast<size_t>(col)].inverse();
        auto& prow = m[static_cast<size_t>(rank)];
        for (long c = col; c <= dim; ++c) prow[static_cast<size_t>(c)] = prow[static_cast<size_t>(c)] * inv_p;
        for (long r = 0; r < dim; ++r) {
            if (r == rank) continue;
            CycScalar f = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            auto& row = m[static_cast<size_t>(r)];
            for (long c = col; c <= dim; ++c) row[static_cast<size_t>(c)] -= f * prow[static_cast<size_t>(c)];
        }
        pivot_of_col[static_cast<size_t>(col)] = rank;
        ++rank;
    }
    if (rank < dim) throw singular_element("invert2: element is not invertible (left-multiplication rank " +
                                           std::to_string(rank) + " of " + std::to_string(dim) + ")");

    Tensor2 out(g, n);
    for (long col = 0; col < dim; ++col) {
        const CycScalar& val = m[static_cast<size_t>(pivot_of_col[static_cast<size_t>(col)])][static_cast<size_t>(dim)];
        if (!val.is_zero()) out.add_to(static_cast<int>(col / order), static_cast<int>(col % order), val);
    }
    if (!verify_inverse_pair(t, out))
        throw singular_element("invert2: solver produced a one-sided inverse only");
    return out;
}

Tensor2 twisted_R(const Tensor2& j) { return twisted_R(j, invert2(j)); }

Tensor2 twisted_R(const Tensor2& j, const Tensor2& jinv) {
    if (!verify_inverse_pair(j, jinv)) throw std::invalid_argument("twisted_R: supplied inverse fails verification");
    return mul2(flip(jinv), j);
}

bool is_triangular(const Tensor2& r) {
    return mul2(flip(r), r) == unit2(r.group(), r.conductor());
}

Tensor2 transport(const Tensor2& x, const GroupHom& phi) {
    if (!phi.valid() || !phi.source().same_group(x.group()))
        throw std::invalid_argument("transport: map source does not match the tensor's group");
    Tensor2 out(phi.target(), x.conductor());
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        out.add_to(phi.apply(p.a), phi.apply(p.b), v);
    }
    return out;
}

std::vector<std::vector<CycScalar>> coefficient_matrix(const Tensor2& x) {
    int order = x.group().order();
    std::vector<std::vector<CycScalar>> m(static_cast<size_t>(order),
                                          std::vector<CycScalar>(static_cast<size_t>(order), CycScalar::zero(x.conductor())));
    for (const auto& [k, v] : x.entries()) {
        KeyPair p = Tensor2::unpack2(k);
        m[static_cast<size_t>(p.a)][static_cast<size_t>(p.b)] = v;
    }
    return m;
}

int matrix_rank(std::vector<std::vector<CycScalar>> m) {
    if (m.empty() || m[0].empty()) return 0;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int n = 1;
    for (const auto& row : m)
        for (const auto& cell : row) n = common_conductor(n, cell.conductor());
    for (auto& row : m)
        for (auto& cell : row)
            if (cell.conductor() != n) cell = cell.embedded(n);
    // Scale each row to integral coordinates (rank-preserving); Bareiss then
    // works on algebraic integers with Hadamard-bounded growth instead of
    // rationals with compounding denominators.
    for (auto& row : m) {
        mpz_class den{1};
        for (const auto& cell : row)
            for (const Rational& r : cell.coeffs())
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
        if (den != 1) {
            Rational scale(den);
            for (auto& cell : row) cell = cell * scale;
        }
    }

    // Bareiss fraction-free elimination: the update divides exactly by the
    // previous step's pivot, keeping entries equal to minors of the input.
    CycScalar prev_inv = CycScalar::one(n);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (!m[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[static_cast<size_t>(rank)], m[static_cast<size_t>(piv)]);
        CycScalar pivot = m[static_cast<size_t>(rank)][static_cast<size_t>(col)];
        for (int r = rank + 1; r < rows; ++r) {
            auto& row = m[static_cast<size_t>(r)];
            const auto& prow = m[static_cast<size_t>(rank)];
            CycScalar factor = row[static_cast<size_t>(col)];
            for (int c = col + 1; c < cols; ++c) {
                row[static_cast<size_t>(c)] =
                    (pivot * row[static_cast<size_t>(c)] - factor * prow[static_cast<size_t>(c)]) * prev_inv;
            }
            row[static_cast<size_t>(col)] = CycScalar::zero(n);
        }
        prev_inv = pivot.inverse();
        ++rank;
    }
    return rank;
}

MinimalityCheck is_minimal(const Tensor2& r) {
    MinimalityCheck out;
    out.order = r.group().order();
    out.rank = matrix_rank(coefficient_matrix(r));
    out.minimal = out.rank == out.order;
    return out;
}

bool is_cocommutative(const Tensor2& j, const Tensor2& jinv) {
    if (!verify_inverse_pair(j, jinv))
        throw std::invalid_argument("is_cocommutative: supplied inverse fails verification");
    const FiniteGroup& g = j.group();
    for (int x = 0; x < g.order(); ++x) {
        Tensor2 diag(g, j.conductor());
        diag.set_coefficient(x, x, CycScalar::one(j.conductor()));
        Tensor2 conj = mul2(mul2(jinv, diag), j);
        if (flip(conj) != conj) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// CSV export / import

void export_matrix_csv(std::ostream& out, const Tensor2& x, ExportMode mode, const std::string& label) {
    int order = x.group().order();
    out << "# twistlab coefficient matrix\n";
    out << "# label = " << label << "\n";
    out << "# group = " << x.group().describe() << "\n";
    out << "# order = " << order << "\n";
    out << "# conductor = " << x.conductor() << "\n";
    out << "# mode = " << (mode == ExportMode::exact ? "exact" : "complex") << "\n";
    auto m = coefficient_matrix(x);
    for (int r = 0; r < order; ++r) {
        for (int c = 0; c < order; ++c) {
            if (c) out << ",";
            if (mode == ExportMode::exact) {
                out << m[static_cast<size_t>(r)][static_cast<size_t>(c)].to_string();
            } else {
                std::complex<double> z = m[static_cast<size_t>(r)][static_cast<size_t>(c)].to_complex();
                std::ostringstream cell;
                cell.precision(17);
                cell << z.real() << "," << z.imag();
                out << cell.str();
            }
        }
        out << "\n";
    }
}

ImportedMatrix import_matrix_csv(std::istream& in) {
    ImportedMatrix result;
    std::string line;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto eat = [&](const std::string& keyword) -> std::optional<std::string> {
                std::string prefix = "# " + keyword + " = ";
                if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
                return std::nullopt;
            };
            if (auto v = eat("label")) result.label = *v;
            if (auto v = eat("order")) result.order = std::stoi(*v);
            if (auto v = eat("conductor")) result.conductor = std::stoi(*v);
            if (auto v = eat("mode")) result.mode = *v;
            continue;
        }
        rows.push_back(line);
    }
    if (result.mode != "exact")
        throw std::invalid_argument("import_matrix_csv: only exact-mode files can be re-ingested");
    if (static_cast<int>(rows.size()) != result.order)
        throw std::invalid_argument("import_matrix_csv: row count disagrees with declared order");
    for (const auto& row : rows) {
        std::vector<CycScalar> cells;
        size_t pos = 0;
        while (pos <= row.size()) {
            size_t next = row.find(',', pos);
            std::string cell = row.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            cells.push_back(CycScalar::parse(cell));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (static_cast<int>(cells.size()) != result.order)
            throw std::invalid_argument("import_matrix_csv: column count disagrees with declared order");
        result.cells.push_back(std::move(cells));
    }
    return result;
}

}  // namespace twistlab
