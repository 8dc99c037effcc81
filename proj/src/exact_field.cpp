#include "arrhom/exact_field.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace arrhom {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::OrderMismatch: return "OrderMismatch";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::ModeMismatch: return "ModeMismatch";
        case ErrorCode::DuplicateLine: return "DuplicateLine";
        case ErrorCode::DegenerateLine: return "DegenerateLine";
        case ErrorCode::NormalizationFailed: return "NormalizationFailed";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::NotALocalSystem: return "NotALocalSystem";
        case ErrorCode::TrivialOnLine: return "TrivialOnLine";
        case ErrorCode::NotResonant: return "NotResonant";
        case ErrorCode::NotAdjacent: return "NotAdjacent";
        case ErrorCode::UnboundedChamber: return "UnboundedChamber";
        case ErrorCode::PencilNotCovered: return "PencilNotCovered";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ConsistencyFailure: return "ConsistencyFailure";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// Rationals

Rational parse_rational(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw Error(ErrorCode::ParseError, "malformed rational '" + text + "'");
    };
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) return fail();

    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    auto digits = [&](std::string& out) {
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        out = s.substr(start, pos - start);
        return !out.empty();
    };

    std::string whole;
    std::string frac;
    bool has_whole = digits(whole);
    Rational value;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        bool has_frac = digits(frac);
        if (!has_whole && !has_frac) return fail();
        Integer num(whole.empty() ? "0" : whole);
        Integer scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        num = num * scale + (frac.empty() ? Integer(0) : Integer(frac));
        value = Rational(num, scale);
        value.canonicalize();
    } else {
        if (!has_whole) return fail();
        Integer num(whole);
        Integer den = 1;
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            std::string den_text;
            if (!digits(den_text)) return fail();
            den = Integer(den_text);
            if (den == 0)
                throw Error(ErrorCode::ParseError, "zero denominator in '" + text + "'");
        }
        value = Rational(num, den);
        value.canonicalize();
        if (den != 1 && pos != s.size()) return fail();
    }
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        bool neg_exp = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg_exp = s[pos++] == '-';
        std::string exp_text;
        if (!digits(exp_text) || exp_text.size() > 4) return fail();
        Integer scale = 1;
        for (int i = std::stoi(exp_text); i > 0; --i) scale *= 10;
        value = neg_exp ? Rational(value / scale) : Rational(value * scale);
    }
    if (pos != s.size()) return fail();
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and per-order tables

namespace {

using RatPoly = std::vector<Rational>;

IntPolynomial poly_mul(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial out(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Exact division of integer polynomials with monic divisor.
IntPolynomial poly_div_exact(IntPolynomial num, const IntPolynomial& den) {
    const std::size_t dd = den.size() - 1;
    IntPolynomial quot(num.size() - dd, Integer(0));
    for (std::size_t k = num.size(); k-- > dd;) {
        Integer c = num[k];
        quot[k - dd] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
    }
    return quot;
}

struct CycloTable {
    int order = 1;
    int degree = 1;
    RatPoly modulus;                  // Phi_d, monic, length degree + 1
    std::vector<RatPoly> zeta_powers; // x^j mod Phi_d for 0 <= j < d
};

void reduce_in_place(RatPoly& p, const CycloTable& t) {
    const std::size_t deg = static_cast<std::size_t>(t.degree);
    for (std::size_t k = p.size(); k-- > deg;) {
        if (sgn(p[k]) == 0) continue;
        Rational c = p[k];
        for (std::size_t i = 0; i <= deg; ++i) p[k - deg + i] -= c * t.modulus[i];
    }
    p.resize(deg, Rational(0));
}

std::shared_ptr<const CycloTable> table_for(int order) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const CycloTable>> cache;
    if (order < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be >= 1");
    std::lock_guard lock(mutex);
    if (auto it = cache.find(order); it != cache.end()) return it->second;

    auto t = std::make_shared<CycloTable>();
    t->order = order;
    IntPolynomial phi = cyclotomic_polynomial(order);
    t->degree = static_cast<int>(phi.size()) - 1;
    for (const auto& c : phi) t->modulus.emplace_back(c);
    t->zeta_powers.reserve(order);
    for (int j = 0; j < order; ++j) {
        RatPoly p(static_cast<std::size_t>(std::max(j + 1, t->degree)), Rational(0));
        p[j] = 1;
        reduce_in_place(p, *t);
        t->zeta_powers.push_back(std::move(p));
    }
    cache.emplace(order, t);
    return t;
}

bool rat_poly_is_zero(const RatPoly& p) {
    return std::all_of(p.begin(), p.end(), [](const Rational& c) { return sgn(c) == 0; });
}

void trim(RatPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

}  // namespace

IntPolynomial cyclotomic_polynomial(int d) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "cyclotomic order must be >= 1");
    static std::mutex mutex;
    static std::map<int, IntPolynomial> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(d); it != cache.end()) return it->second;
    }
    // x^d - 1 divided by the product of Phi_e over proper divisors e of d.
    IntPolynomial num(static_cast<std::size_t>(d) + 1, Integer(0));
    num[0] = -1;
    num[d] = 1;
    IntPolynomial den{Integer(1)};
    for (int e = 1; e < d; ++e)
        if (d % e == 0) den = poly_mul(den, cyclotomic_polynomial(e));
    IntPolynomial phi = poly_div_exact(num, den);
    std::lock_guard lock(mutex);
    cache.emplace(d, phi);
    return phi;
}

int euler_phi(int d) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "euler_phi of non-positive integer");
    int result = d;
    int n = d;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

// ---------------------------------------------------------------------------
// CycloNumber

CycloNumber::CycloNumber() : order_(1), coeffs_(1, Rational(0)) {}

CycloNumber::CycloNumber(int order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

CycloNumber CycloNumber::zero(int order) {
    auto t = table_for(order);
    return CycloNumber(order, RatPoly(static_cast<std::size_t>(t->degree), Rational(0)));
}

CycloNumber CycloNumber::one(int order) { return rational(order, Rational(1)); }

CycloNumber CycloNumber::rational(int order, const Rational& value) {
    CycloNumber z = zero(order);
    z.coeffs_[0] = value;
    return z;
}

CycloNumber CycloNumber::zeta_power(int order, long k) {
    auto t = table_for(order);
    long r = k % order;
    if (r < 0) r += order;
    return CycloNumber(order, t->zeta_powers[static_cast<std::size_t>(r)]);
}

CycloNumber CycloNumber::from_coefficients(int order, std::vector<Rational> coeffs) {
    auto t = table_for(order);
    if (coeffs.size() < static_cast<std::size_t>(t->degree))
        coeffs.resize(static_cast<std::size_t>(t->degree), Rational(0));
    reduce_in_place(coeffs, *t);
    return CycloNumber(order, std::move(coeffs));
}

void CycloNumber::check_same_order(const CycloNumber& rhs) const {
    if (order_ != rhs.order_)
        throw Error(ErrorCode::OrderMismatch, "cyclotomic orders " + std::to_string(order_) +
                                                  " and " + std::to_string(rhs.order_));
}

bool CycloNumber::is_zero() const { return rat_poly_is_zero(coeffs_); }

bool CycloNumber::is_one() const {
    if (coeffs_.empty() || coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                       [](const Rational& c) { return sgn(c) == 0; });
}

CycloNumber CycloNumber::operator-() const {
    CycloNumber out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& rhs) {
    check_same_order(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& rhs) {
    check_same_order(rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

CycloNumber& CycloNumber::operator*=(const CycloNumber& rhs) {
    check_same_order(rhs);
    auto t = table_for(order_);
    RatPoly prod(2 * coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0) continue;
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            if (sgn(rhs.coeffs_[j]) != 0) prod[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
    reduce_in_place(prod, *t);
    coeffs_ = std::move(prod);
    return *this;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

CycloNumber CycloNumber::scaled(const Rational& factor) const {
    CycloNumber out = *this;
    for (auto& c : out.coeffs_) c *= factor;
    return out;
}

CycloNumber CycloNumber::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in Q(zeta_d)");
    auto t = table_for(order_);

    auto divmod = [](RatPoly num, const RatPoly& den, RatPoly& quot) {
        quot.assign(num.size() >= den.size() ? num.size() - den.size() + 1 : 1, Rational(0));
        const std::size_t dd = den.size() - 1;
        while (true) {
            trim(num);
            if (num.size() < den.size()) break;
            std::size_t shift = num.size() - den.size();
            Rational c = num.back() / den.back();
            quot[shift] += c;
            for (std::size_t i = 0; i <= dd; ++i) num[shift + i] -= c * den[i];
        }
        return num;
    };
    auto sub_mul = [](const RatPoly& a, const RatPoly& q, const RatPoly& b) {
        RatPoly out(std::max(a.size(), q.size() + b.size() - 1), Rational(0));
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] -= q[i] * b[j];
        trim(out);
        return out;
    };

    RatPoly r0 = t->modulus;
    RatPoly r1 = coeffs_;
    trim(r1);
    RatPoly s0;          // coefficient of a in r0
    RatPoly s1{Rational(1)};
    while (!r1.empty()) {
        RatPoly q;
        RatPoly r2 = divmod(r0, r1, q);
        RatPoly s2 = sub_mul(s0, q, s1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 is a nonzero constant because Phi_d is irreducible.
    Rational g = r0.at(0);
    for (auto& c : s0) c /= g;
    return from_coefficients(order_, std::move(s0));
}

Integer CycloNumber::denominator_lcm() const {
    Integer l = 1;
    for (const auto& c : coeffs_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    return l;
}

std::complex<double> CycloNumber::embed() const {
    const double theta = 2.0 * std::numbers::pi / order_;
    std::complex<double> z(0.0, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        z += coeffs_[i].get_d() * std::polar(1.0, theta * static_cast<double>(i));
    return z;
}

std::string CycloNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const Rational& c = coeffs_[i];
        if (sgn(c) == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << '-';
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << '*';
        os << 'z';
        if (i > 1) os << '^' << i;
    }
    if (first) os << '0';
    return os.str();
}

CycloNumber cyclo_mul(const CycloNumber& a, const CycloNumber& b) { return a * b; }
CycloNumber cyclo_inverse(const CycloNumber& a) { return a.inverse(); }

// ---------------------------------------------------------------------------
// FieldScalar

namespace {
[[noreturn]] void mode_mismatch() {
    throw Error(ErrorCode::ModeMismatch, "exact and float scalars mixed");
}
}  // namespace

FieldScalar FieldScalar::zero_like(const FieldScalar& model) {
    if (model.is_exact()) return CycloNumber::zero(model.exact().order());
    return std::complex<double>(0.0, 0.0);
}

FieldScalar FieldScalar::one_like(const FieldScalar& model) {
    if (model.is_exact()) return CycloNumber::one(model.exact().order());
    return std::complex<double>(1.0, 0.0);
}

const CycloNumber& FieldScalar::exact() const {
    if (!is_exact()) mode_mismatch();
    return std::get<CycloNumber>(value_);
}

std::complex<double> FieldScalar::as_complex() const {
    if (is_exact()) return std::get<CycloNumber>(value_).embed();
    return std::get<std::complex<double>>(value_);
}

bool FieldScalar::is_zero() const {
    if (is_exact()) return std::get<CycloNumber>(value_).is_zero();
    return std::get<std::complex<double>>(value_) == std::complex<double>(0.0, 0.0);
}

FieldScalar FieldScalar::operator-() const {
    if (is_exact()) return -std::get<CycloNumber>(value_);
    return -std::get<std::complex<double>>(value_);
}

FieldScalar operator+(const FieldScalar& a, const FieldScalar& b) {
    if (a.mode() != b.mode()) mode_mismatch();
    if (a.is_exact()) return a.exact() + b.exact();
    return std::get<std::complex<double>>(a.value_) + std::get<std::complex<double>>(b.value_);
}

FieldScalar operator-(const FieldScalar& a, const FieldScalar& b) {
    if (a.mode() != b.mode()) mode_mismatch();
    if (a.is_exact()) return a.exact() - b.exact();
    return std::get<std::complex<double>>(a.value_) - std::get<std::complex<double>>(b.value_);
}

FieldScalar operator*(const FieldScalar& a, const FieldScalar& b) {
    if (a.mode() != b.mode()) mode_mismatch();
    if (a.is_exact()) return a.exact() * b.exact();
    return std::get<std::complex<double>>(a.value_) * std::get<std::complex<double>>(b.value_);
}

FieldScalar FieldScalar::inverse() const {
    if (is_exact()) return exact().inverse();
    auto z = std::get<std::complex<double>>(value_);
    if (z == std::complex<double>(0.0, 0.0))
        throw Error(ErrorCode::DivisionByZero, "inverse of complex zero");
    return 1.0 / z;
}

FieldScalar operator/(const FieldScalar& a, const FieldScalar& b) { return a * b.inverse(); }

std::string FieldScalar::to_string() const {
    if (is_exact()) return exact().to_string();
    auto z = std::get<std::complex<double>>(value_);
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
}

// ---------------------------------------------------------------------------
// Matrix and rank

Matrix::Matrix(std::size_t rows, std::size_t cols, const FieldScalar& fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

void Matrix::append_row(const std::vector<FieldScalar>& row) {
    if (rows_ == 0 && data_.empty() && cols_ == 0) cols_ = row.size();
    if (row.size() != cols_)
        throw Error(ErrorCode::InvalidArgument, "row length does not match matrix width");
    data_.insert(data_.end(), row.begin(), row.end());
    ++rows_;
}

std::vector<FieldScalar> Matrix::row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

Matrix Matrix::transposed() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t c = 0; c < cols_; ++c)
        for (std::size_t r = 0; r < rows_; ++r) t.data_.push_back(at(r, c));
    return t;
}

Matrix Matrix::embedded() const {
    Matrix out = *this;
    for (auto& x : out.data_) x = FieldScalar(x.as_complex());
    return out;
}

namespace {

std::size_t exact_rank(const Matrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    int order = m.at(0, 0).exact().order();
    std::vector<std::vector<CycloNumber>> a(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        a[r].reserve(cols);
        Integer den = 1;
        for (std::size_t c = 0; c < cols; ++c) {
            const CycloNumber& x = m.at(r, c).exact();
            if (x.order() != order)
                throw Error(ErrorCode::OrderMismatch, "matrix mixes cyclotomic orders");
            Integer l = x.denominator_lcm();
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), l.get_mpz_t());
            a[r].push_back(x);
        }
        // Clearing denominators moves every row into Z[zeta_d].
        if (den != 1)
            for (auto& x : a[r]) x = x.scaled(Rational(den));
    }

    CycloNumber prev_inv = CycloNumber::one(order);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (!a[r][c].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        const CycloNumber& p = a[rank][c];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][c].is_zero()) {
                // Keep the Bareiss scaling uniform so later divisions stay exact.
                for (std::size_t j = c + 1; j < cols; ++j)
                    if (!a[r][j].is_zero()) a[r][j] = p * a[r][j] * prev_inv;
                continue;
            }
            CycloNumber f = a[r][c];
            for (std::size_t j = c + 1; j < cols; ++j)
                a[r][j] = (p * a[r][j] - f * a[rank][j]) * prev_inv;
            a[r][c] = CycloNumber::zero(order);
        }
        prev_inv = p.inverse();
        ++rank;
    }
    return rank;
}

std::size_t float_rank(const Matrix& m, double tolerance) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::vector<std::complex<double>>> a(rows, std::vector<std::complex<double>>(cols));
    double max_mag = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            a[r][c] = m.at(r, c).as_complex();
            max_mag = std::max(max_mag, std::abs(a[r][c]));
        }
    if (max_mag == 0.0) return 0;
    const double threshold = tolerance * max_mag;

    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        double best = std::abs(a[rank][c]);
        for (std::size_t r = rank + 1; r < rows; ++r)
            if (std::abs(a[r][c]) > best) {
                best = std::abs(a[r][c]);
                pivot = r;
            }
        if (best <= threshold) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            std::complex<double> f = a[r][c] / a[rank][c];
            if (f == std::complex<double>(0.0, 0.0)) continue;
            for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t rank(const Matrix& m, double tolerance) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    const ScalarMode mode = m.at(0, 0).mode();
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.at(r, c).mode() != mode) mode_mismatch();
    return mode == ScalarMode::Exact ? exact_rank(m) : float_rank(m, tolerance);
}

}  // namespace arrhom
