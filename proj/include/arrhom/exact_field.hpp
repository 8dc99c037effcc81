#ifndef ARRHOM_EXACT_FIELD_HPP
#define ARRHOM_EXACT_FIELD_HPP

// Exact arithmetic over Q and the cyclotomic fields Q(zeta_d), plus the
// scalar/matrix types shared by the relation-matrix and Fox-calculus code.

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "arrhom/error.hpp"

namespace arrhom {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "-p/q", "p", decimals "1.25" and "2.5e-3". Throws ParseError
/// on malformed input or q = 0.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Integer polynomial, coefficients in increasing degree.
using IntPolynomial = std::vector<Integer>;

/// Phi_d, the minimal polynomial of a primitive d-th root of unity.
IntPolynomial cyclotomic_polynomial(int d);

int euler_phi(int d);

/// An element of Q(zeta_d) in the power basis 1, zeta, ..., zeta^{phi(d)-1},
/// always fully reduced modulo Phi_d.
class CycloNumber {
  public:
    /// Zero of Q(zeta_1) = Q.
    CycloNumber();

    static CycloNumber zero(int order);
    static CycloNumber one(int order);
    static CycloNumber rational(int order, const Rational& value);
    /// zeta_d^k for any integer k.
    static CycloNumber zeta_power(int order, long k);
    /// Reduces an arbitrary-length coefficient vector modulo Phi_d.
    static CycloNumber from_coefficients(int order, std::vector<Rational> coeffs);

    int order() const noexcept { return order_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;

    CycloNumber operator-() const;
    CycloNumber& operator+=(const CycloNumber& rhs);
    CycloNumber& operator-=(const CycloNumber& rhs);
    CycloNumber& operator*=(const CycloNumber& rhs);
    friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
    friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
    friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
    friend bool operator==(const CycloNumber& a, const CycloNumber& b);

    /// Multiplicative inverse via the extended Euclidean algorithm against Phi_d.
    CycloNumber inverse() const;
    CycloNumber scaled(const Rational& factor) const;

    /// Least common multiple of the coefficient denominators.
    Integer denominator_lcm() const;

    /// Image under zeta_d -> exp(2 pi i / d).
    std::complex<double> embed() const;

    /// Human-readable form, e.g. "-1 - z" for zeta_3^2.
    std::string to_string() const;

  private:
    CycloNumber(int order, std::vector<Rational> coeffs);
    void check_same_order(const CycloNumber& rhs) const;

    int order_ = 1;
    std::vector<Rational> coeffs_;
};

CycloNumber cyclo_mul(const CycloNumber& a, const CycloNumber& b);
CycloNumber cyclo_inverse(const CycloNumber& a);

enum class ScalarMode { Exact, Float };

/// A matrix entry: either exact in Q(zeta_d) or a double-precision complex.
class FieldScalar {
  public:
    FieldScalar() : value_(CycloNumber()) {}
    FieldScalar(CycloNumber value) : value_(std::move(value)) {}
    FieldScalar(std::complex<double> value) : value_(value) {}

    static FieldScalar zero_like(const FieldScalar& model);
    static FieldScalar one_like(const FieldScalar& model);

    ScalarMode mode() const noexcept {
        return std::holds_alternative<CycloNumber>(value_) ? ScalarMode::Exact : ScalarMode::Float;
    }
    bool is_exact() const noexcept { return mode() == ScalarMode::Exact; }
    const CycloNumber& exact() const;
    std::complex<double> as_complex() const;

    /// Exact zero test; float scalars compare against 0 with no tolerance.
    bool is_zero() const;

    FieldScalar operator-() const;
    friend FieldScalar operator+(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator-(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator*(const FieldScalar& a, const FieldScalar& b);
    friend FieldScalar operator/(const FieldScalar& a, const FieldScalar& b);
    FieldScalar inverse() const;

    std::string to_string() const;

  private:
    std::variant<CycloNumber, std::complex<double>> value_;
};

/// Dense row-major matrix; rows and columns may be zero.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const FieldScalar& fill);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    FieldScalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldScalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const std::vector<FieldScalar>& row);
    std::vector<FieldScalar> row(std::size_t r) const;
    Matrix transposed() const;
    /// Same matrix with every exact entry mapped through zeta_d -> exp(2 pi i / d).
    Matrix embedded() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<FieldScalar> data_;
};

constexpr double kDefaultRankTolerance = 1e-9;

/// Rank of a matrix whose entries all share one mode (and, if exact, one order).
///
/// Exact entries go through fraction-free (Bareiss) elimination over Z[zeta_d]:
/// each row is first scaled by the lcm of its coefficient denominators, pivots
/// are picked as the first nonzero entry scanning columns left to right and
/// rows top to bottom. Float entries use partial pivoting and count pivots
/// whose magnitude exceeds `tolerance` times the largest input magnitude.
std::size_t rank(const Matrix& m, double tolerance = kDefaultRankTolerance);

}  // namespace arrhom

#endif
