#include "twistlab/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

namespace twistlab {

int euler_phi(int n) {
    if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
    int result = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// ---------------------------------------------------------------------------
// CycPoly

CycPoly::CycPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

void CycPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool CycPoly::is_monic() const { return !c.empty() && c.back() == 1; }

CycPoly CycPoly::x_pow_minus_one(int n) {
    std::vector<Rational> v(static_cast<size_t>(n) + 1);
    v[0] = -1;
    v[static_cast<size_t>(n)] = 1;
    return CycPoly(std::move(v));
}

CycPoly CycPoly::monomial(int deg, const Rational& coeff) {
    std::vector<Rational> v(static_cast<size_t>(deg) + 1);
    v[static_cast<size_t>(deg)] = coeff;
    return CycPoly(std::move(v));
}

CycPoly CycPoly::operator+(const CycPoly& o) const {
    std::vector<Rational> v(std::max(c.size(), o.c.size()));
    for (size_t i = 0; i < c.size(); ++i) v[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) v[i] += o.c[i];
    return CycPoly(std::move(v));
}

CycPoly CycPoly::operator-(const CycPoly& o) const {
    std::vector<Rational> v(std::max(c.size(), o.c.size()));
    for (size_t i = 0; i < c.size(); ++i) v[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) v[i] -= o.c[i];
    return CycPoly(std::move(v));
}

CycPoly CycPoly::operator*(const CycPoly& o) const {
    if (is_zero() || o.is_zero()) return CycPoly();
    std::vector<Rational> v(c.size() + o.c.size() - 1);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) v[i + j] += c[i] * o.c[j];
    }
    return CycPoly(std::move(v));
}

void CycPoly::divmod(const CycPoly& a, const CycPoly& b, CycPoly& q, CycPoly& r) {
    if (b.is_zero()) throw division_by_zero();
    r = a;
    q = CycPoly();
    if (a.degree() < b.degree()) return;
    std::vector<Rational> qc(static_cast<size_t>(a.degree() - b.degree()) + 1);
    const Rational& lead = b.c.back();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        Rational factor = r.c.back() / lead;
        qc[static_cast<size_t>(shift)] = factor;
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[static_cast<size_t>(shift) + i] -= factor * b.c[i];
        r.trim();
    }
    q = CycPoly(std::move(qc));
}

CycPoly CycPoly::divide_exact(const CycPoly& d) const {
    CycPoly q, r;
    divmod(*this, d, q, r);
    if (!r.is_zero()) throw std::invalid_argument("divide_exact: division is not exact");
    return q;
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomial cache

namespace {

std::mutex g_phi_mutex;
std::map<int, std::unique_ptr<CycPoly>> g_phi_cache;

const CycPoly& cyclotomic_locked(int n) {
    auto it = g_phi_cache.find(n);
    if (it != g_phi_cache.end()) return *it->second;
    CycPoly value = CycPoly::x_pow_minus_one(n);
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) value = value.divide_exact(cyclotomic_locked(d));
    }
    auto [pos, inserted] = g_phi_cache.emplace(n, std::make_unique<CycPoly>(std::move(value)));
    return *pos->second;
}

}  // namespace

const CycPoly& cyclotomic_polynomial(int n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    return cyclotomic_locked(n);
}

// ---------------------------------------------------------------------------
// Per-conductor reduction context

struct ConductorCtx {
    int n = 1;
    int phi = 1;
    // rows[j] = coefficients of x^j reduced mod Phi_n, for j up to
    // max(n-1, 2*phi-2): enough for both root_of_unity and the tails of
    // degree-(2*phi-2) convolution products.
    std::vector<std::vector<Rational>> rows;

    explicit ConductorCtx(int conductor) : n(conductor), phi(euler_phi(conductor)) {
        const CycPoly& reducer = cyclotomic_polynomial(n);
        int maxd = std::max(n - 1, 2 * phi - 2);
        rows.resize(static_cast<size_t>(maxd) + 1);
        for (int j = 0; j <= maxd; ++j) {
            std::vector<Rational> row(static_cast<size_t>(phi));
            if (j < phi) {
                row[static_cast<size_t>(j)] = 1;
            } else {
                // x^j = x * x^{j-1}: shift then fold the overflow through
                // x^phi = -(Phi - x^phi).
                const auto& prev = rows[static_cast<size_t>(j) - 1];
                Rational top = prev[static_cast<size_t>(phi) - 1];
                for (int i = phi - 1; i > 0; --i) row[static_cast<size_t>(i)] = prev[static_cast<size_t>(i) - 1];
                row[0] = 0;
                if (top != 0) {
                    for (int i = 0; i < phi; ++i)
                        row[static_cast<size_t>(i)] -= top * reducer.c[static_cast<size_t>(i)];
                }
            }
            rows[static_cast<size_t>(j)] = std::move(row);
        }
    }

    std::vector<Rational> reduce(const std::vector<Rational>& raw) const {
        std::vector<Rational> out(static_cast<size_t>(phi));
        for (size_t j = 0; j < raw.size(); ++j) {
            if (raw[j] == 0) continue;
            if (j < static_cast<size_t>(phi)) {
                out[j] += raw[j];
            } else {
                const auto& row = rows.at(j);
                for (int i = 0; i < phi; ++i) out[static_cast<size_t>(i)] += raw[j] * row[static_cast<size_t>(i)];
            }
        }
        return out;
    }
};

namespace {

std::mutex g_ctx_mutex;
std::map<int, std::unique_ptr<ConductorCtx>> g_ctx_cache;

const ConductorCtx& conductor_ctx(int n) {
    thread_local std::map<int, const ConductorCtx*> local;
    auto it = local.find(n);
    if (it != local.end()) return *it->second;
    const ConductorCtx* ptr = nullptr;
    {
        std::lock_guard<std::mutex> lock(g_ctx_mutex);
        auto git = g_ctx_cache.find(n);
        if (git == g_ctx_cache.end()) {
            git = g_ctx_cache.emplace(n, std::make_unique<ConductorCtx>(n)).first;
        }
        ptr = git->second.get();
    }
    local.emplace(n, ptr);
    return *ptr;
}

long lcm_int(long a, long b) {
    return a / std::gcd(a, b) * b;
}

}  // namespace

// ---------------------------------------------------------------------------
// CycScalar

CycScalar CycScalar::zero(int n) {
    const ConductorCtx& ctx = conductor_ctx(n);
    return CycScalar(n, std::vector<Rational>(static_cast<size_t>(ctx.phi)));
}

CycScalar CycScalar::one(int n) {
    CycScalar s = zero(n);
    s.c_[0] = 1;
    return s;
}

CycScalar CycScalar::from_rational(const Rational& r, int n) {
    CycScalar s = zero(n);
    s.c_[0] = r;
    return s;
}

CycScalar CycScalar::root_of_unity(int n, long k) {
    const ConductorCtx& ctx = conductor_ctx(n);
    long kk = k % n;
    if (kk < 0) kk += n;
    CycScalar s = zero(n);
    s.c_ = ctx.rows[static_cast<size_t>(kk)];
    return s;
}

CycScalar CycScalar::from_coeff_vector(int n, std::vector<Rational> c) {
    const ConductorCtx& ctx = conductor_ctx(n);
    if (static_cast<int>(c.size()) != ctx.phi)
        throw std::invalid_argument("CycScalar::from_coeff_vector: expected phi(n) coefficients");
    return CycScalar(n, std::move(c));
}

const std::vector<std::vector<BigInt>>& power_reduction_rows(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<std::vector<std::vector<BigInt>>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    const ConductorCtx& ctx = conductor_ctx(n);
    auto rows = std::make_unique<std::vector<std::vector<BigInt>>>();
    for (int j = ctx.phi; j <= 2 * ctx.phi - 2; ++j) {
        std::vector<BigInt> row(static_cast<size_t>(ctx.phi));
        for (int i = 0; i < ctx.phi; ++i) {
            const Rational& r = ctx.rows[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (r.get_den() != 1)
                throw std::logic_error("power_reduction_rows: non-integral reduction row");
            row[static_cast<size_t>(i)] = r.get_num();
        }
        rows->push_back(std::move(row));
    }
    return *cache.emplace(n, std::move(rows)).first->second;
}

bool CycScalar::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycScalar::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

CycScalar CycScalar::embedded(int m) const {
    if (m == n_) return *this;
    if (m % n_ != 0) throw std::invalid_argument("CycScalar::embedded: target conductor must be a multiple");
    const ConductorCtx& ctx = conductor_ctx(m);
    int step = m / n_;
    std::vector<Rational> raw;
    raw.resize(static_cast<size_t>((c_.size() - 1) * static_cast<size_t>(step)) + 1);
    for (size_t i = 0; i < c_.size(); ++i) raw[i * static_cast<size_t>(step)] = c_[i];
    return CycScalar(m, ctx.reduce(raw));
}

CycScalar CycScalar::operator-() const {
    CycScalar s = *this;
    for (auto& x : s.c_) x = -x;
    return s;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
    if (n_ == o.n_) {
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    int m = static_cast<int>(lcm_int(n_, o.n_));
    *this = embedded(m);
    CycScalar rhs = o.embedded(m);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
    *this += -o;
    return *this;
}

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
    if (a.n_ != b.n_) {
        int m = static_cast<int>(lcm_int(a.n_, b.n_));
        return a.embedded(m) * b.embedded(m);
    }
    const ConductorCtx& ctx = conductor_ctx(a.n_);
    std::vector<Rational> raw(2 * a.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            raw[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return CycScalar(a.n_, ctx.reduce(raw));
}

CycScalar operator*(const CycScalar& a, const Rational& r) {
    CycScalar s = a;
    for (auto& x : s.c_) x *= r;
    return s;
}

CycScalar CycScalar::inverse() const {
    if (is_zero()) throw division_by_zero();
    // Extended Euclid on (rep, Phi_N) over Q[x]: u*rep + v*Phi = gcd = const.
    CycPoly r0(std::vector<Rational>(c_.begin(), c_.end()));
    CycPoly r1 = cyclotomic_polynomial(n_);
    CycPoly u0 = CycPoly(std::vector<Rational>{Rational(1)});
    CycPoly u1;  // zero
    while (!r1.is_zero()) {
        CycPoly q, r;
        CycPoly::divmod(r0, r1, q, r);
        CycPoly u = u0 - q * u1;
        r0 = std::move(r1);
        r1 = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u);
    }
    // r0 = gcd, constant since Phi_N is irreducible and rep is nonzero mod Phi_N.
    if (r0.degree() != 0) throw std::logic_error("CycScalar::inverse: nonconstant gcd with an irreducible modulus");
    Rational scale = 1 / r0.c[0];
    const ConductorCtx& ctx = conductor_ctx(n_);
    std::vector<Rational> raw(u0.c.begin(), u0.c.end());
    for (auto& x : raw) x *= scale;
    return CycScalar(n_, ctx.reduce(raw));
}

bool CycScalar::operator==(const CycScalar& o) const {
    if (n_ == o.n_) return c_ == o.c_;
    int m = static_cast<int>(lcm_int(n_, o.n_));
    return embedded(m).c_ == o.embedded(m).c_;
}

std::complex<double> CycScalar::to_complex() const {
    std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(n_));
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * z + std::complex<double>(c_[i].get_d(), 0.0);
    return acc;
}

std::complex<double> to_complex(const CycScalar& s) { return s.to_complex(); }

std::string CycScalar::to_string() const {
    std::ostringstream out;
    bool any = false;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (any) out << " + ";
        out << c_[i].get_str();
        if (i == 1) out << "*z";
        if (i > 1) out << "*z^" << i;
        any = true;
    }
    if (!any) out << "0";
    out << " (N=" << n_ << ")";
    return out.str();
}

CycScalar CycScalar::parse(const std::string& text) {
    size_t mark = text.rfind("(N=");
    if (mark == std::string::npos || text.back() != ')')
        throw std::invalid_argument("CycScalar::parse: missing conductor suffix");
    int n = std::stoi(text.substr(mark + 3, text.size() - mark - 4));
    if (n < 1) throw std::invalid_argument("CycScalar::parse: bad conductor");
    CycScalar s = zero(n);
    std::string body = text.substr(0, mark);
    size_t pos = 0;
    while (pos < body.size()) {
        size_t next = body.find(" + ", pos);
        std::string term = body.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? body.size() : next + 3;
        // trim spaces
        size_t b = term.find_first_not_of(' ');
        size_t e = term.find_last_not_of(' ');
        if (b == std::string::npos) continue;
        term = term.substr(b, e - b + 1);
        if (term == "0") continue;
        size_t star = term.find("*z");
        std::string coeff = star == std::string::npos ? term : term.substr(0, star);
        size_t power = 0;
        if (star != std::string::npos) {
            std::string rest = term.substr(star + 2);
            if (rest.empty()) {
                power = 1;
            } else if (rest[0] == '^') {
                power = static_cast<size_t>(std::stol(rest.substr(1)));
            } else {
                throw std::invalid_argument("CycScalar::parse: malformed term '" + term + "'");
            }
        }
        if (power >= s.c_.size()) throw std::invalid_argument("CycScalar::parse: exponent out of basis range");
        Rational r(coeff);
        r.canonicalize();
        s.c_[power] += r;
    }
    return s;
}

}  // namespace twistlab
