#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace twistlab {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Thrown when a zero scalar is inverted or used as a divisor.
class division_by_zero : public std::domain_error {
public:
    division_by_zero() : std::domain_error("division by zero in cyclotomic field") {}
};

int euler_phi(int n);

/// Dense univariate polynomial over Q. Coefficient c[i] multiplies x^i.
/// Trailing zero coefficients are trimmed; the zero polynomial has an empty
/// coefficient vector and degree -1.
class CycPoly {
public:
    std::vector<Rational> c;

    CycPoly() = default;
    explicit CycPoly(std::vector<Rational> coeffs);

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const;
    void trim();

    static CycPoly x_pow_minus_one(int n);  // x^n - 1
    static CycPoly monomial(int deg, const Rational& coeff);

    CycPoly operator+(const CycPoly& o) const;
    CycPoly operator-(const CycPoly& o) const;
    CycPoly operator*(const CycPoly& o) const;
    bool operator==(const CycPoly& o) const { return c == o.c; }

    /// Quotient a / b together with remainder, b nonzero.
    static void divmod(const CycPoly& a, const CycPoly& b, CycPoly& q, CycPoly& r);

    /// Quotient when the division is exact; throws std::invalid_argument on
    /// a nonzero remainder.
    CycPoly divide_exact(const CycPoly& d) const;
};

/// N-th cyclotomic polynomial, computed by exact recursive division of
/// x^N - 1 by the lower-index factors and cached. Monic with integer
/// coefficients. The returned reference stays valid for the process
/// lifetime; the cache is safe to populate from several threads.
const CycPoly& cyclotomic_polynomial(int n);

/// Element of the cyclotomic field Q(zeta_N), stored as a coefficient
/// vector of length phi(N) over the power basis 1, z, ..., z^{phi(N)-1}
/// with z = zeta_N, reduced modulo Phi_N. Arithmetic between scalars at
/// different conductors embeds both into the least common multiple first.
class CycScalar {
public:
    CycScalar() : n_(1), c_(1) {}  // zero at conductor 1

    static CycScalar zero(int n = 1);
    static CycScalar one(int n = 1);
    static CycScalar from_rational(const Rational& r, int n = 1);
    /// zeta_N^k (k arbitrary, taken mod N).
    static CycScalar root_of_unity(int n, long k);
    /// From a coefficient vector over the power basis; c must already be
    /// reduced (size phi(n), entries canonical).
    static CycScalar from_coeff_vector(int n, std::vector<Rational> c);

    int conductor() const { return n_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    /// True when the value lies in Q (all basis coefficients above z^0 vanish).
    bool is_rational() const;
    /// Value of the z^0 coefficient; the rational value when is_rational().
    const Rational& rational_part() const { return c_[0]; }

    /// Image under zeta_N -> zeta_M^{M/N}; requires N | M.
    CycScalar embedded(int m) const;

    CycScalar operator-() const;
    CycScalar& operator+=(const CycScalar& o);
    CycScalar& operator-=(const CycScalar& o);
    friend CycScalar operator+(CycScalar a, const CycScalar& b) { a += b; return a; }
    friend CycScalar operator-(CycScalar a, const CycScalar& b) { a -= b; return a; }
    friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
    friend CycScalar operator*(const CycScalar& a, const Rational& r);

    /// Multiplicative inverse via the extended gcd of the representative
    /// polynomial with Phi_N; throws division_by_zero on zero.
    CycScalar inverse() const;
    friend CycScalar operator/(const CycScalar& a, const CycScalar& b) { return a * b.inverse(); }

    bool operator==(const CycScalar& o) const;
    bool operator!=(const CycScalar& o) const { return !(*this == o); }

    /// Numeric evaluation at zeta_N = exp(2*pi*i/N), for reporting only.
    std::complex<double> to_complex() const;

    /// Exact text form "c0 + c1*z + ... (N=<conductor>)" with rational
    /// coefficients p/q; round-trips through parse().
    std::string to_string() const;
    static CycScalar parse(const std::string& text);

private:
    CycScalar(int n, std::vector<Rational> c) : n_(n), c_(std::move(c)) {}

    int n_;
    std::vector<Rational> c_;

    friend struct ConductorCtx;
};

std::complex<double> to_complex(const CycScalar& s);

/// Integer reduction rows for the power basis at conductor n: row k holds
/// the coordinates of x^{phi(n)+k} modulo Phi_n, for k = 0..phi(n)-2 (the
/// degrees reachable by one product of reduced representatives). Phi_n is
/// monic, so the rows are integral. Cached per conductor.
const std::vector<std::vector<BigInt>>& power_reduction_rows(int n);

}  // namespace twistlab
