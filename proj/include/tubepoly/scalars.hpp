#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tubepoly/interval.hpp"

namespace tubepoly {

/// Finite sum  sum_m c_m * pi^(m/2)  with rational c_m, i.e. a Laurent
/// polynomial in x = sqrt(pi). Terms are kept sorted by exponent, nonzero.
class PiLaurent {
public:
    struct Term {
        long half_exp;
        mpq_class coeff;
    };

    PiLaurent() = default;
    explicit PiLaurent(mpq_class c, long half_exp = 0);

    /// Builds from arbitrary terms; merges duplicates and drops zeros.
    static PiLaurent from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_one() const;
    long low_exp() const { return terms_.front().half_exp; }
    long high_exp() const { return terms_.back().half_exp; }
    const mpq_class& leading_coeff() const { return terms_.back().coeff; }

    PiLaurent operator-() const;
    PiLaurent& operator+=(const PiLaurent& b);
    PiLaurent& operator-=(const PiLaurent& b);
    PiLaurent operator*(const PiLaurent& b) const;
    PiLaurent scaled(const mpq_class& c) const;
    /// Multiplies by x^k.
    PiLaurent shifted(long k) const;

    /// Dense coefficient vector of this * x^(-low_exp()).
    std::vector<mpq_class> dense() const;
    static PiLaurent from_dense(const std::vector<mpq_class>& c, long shift);

    Interval eval(const Interval& sqrt_pi) const;

    bool operator==(const PiLaurent& b) const;
    bool operator!=(const PiLaurent& b) const { return !(*this == b); }

private:
    std::vector<Term> terms_;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Raised when division by an exact zero is attempted.
class InvalidOperand : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a requested precision leaves the supported range or the sign
/// search reaches its ceiling.
class PrecisionError : public std::runtime_error {
public:
    PrecisionError(const std::string& what, std::string enclosure = {})
        : std::runtime_error(what), enclosure_(std::move(enclosure)) {}
    const std::string& enclosure() const { return enclosure_; }

private:
    std::string enclosure_;
};

/// Raised by the text parser; position is a 0-based character offset.
class ScalarParseError : public std::invalid_argument {
public:
    ScalarParseError(const std::string& what, std::size_t pos)
        : std::invalid_argument(what + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

inline constexpr long kMinBits = 16;
inline constexpr long kMaxBits = 65536;

/// Exact element of Q(sqrt(pi)).
///
/// Stored as num/den with den(0) != 0 after removing powers of x, den monic in
/// x and coprime to num. Equal values therefore have identical members.
class PiScalar {
public:
    PiScalar() = default;
    PiScalar(long v);  // NOLINT(google-explicit-constructor)
    PiScalar(mpq_class v);  // NOLINT(google-explicit-constructor)
    explicit PiScalar(PiLaurent num);
    PiScalar(PiLaurent num, PiLaurent den);

    /// c * pi^(half_exp/2)
    static PiScalar monomial(mpq_class c, long half_exp);
    static PiScalar pi() { return monomial(1, 2); }
    static PiScalar sqrt_pi() { return monomial(1, 1); }

    const PiLaurent& num() const { return num_; }
    const PiLaurent& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const;
    /// (c, m) when the value is c * pi^(m/2).
    std::optional<std::pair<mpq_class, long>> as_monomial() const;
    std::optional<mpq_class> as_rational() const;

    PiScalar operator-() const;
    PiScalar& operator+=(const PiScalar& b);
    PiScalar& operator-=(const PiScalar& b);
    PiScalar& operator*=(const PiScalar& b);
    PiScalar& operator/=(const PiScalar& b);
    PiScalar pow(long k) const;
    PiScalar inverse() const;

    bool operator==(const PiScalar& b) const { return num_ == b.num_ && den_ == b.den_; }
    bool operator!=(const PiScalar& b) const { return !(*this == b); }

    std::string to_string() const;
    static PiScalar parse(std::string_view text);

private:
    PiLaurent num_;
    PiLaurent den_{mpq_class(1)};
    void normalize();
};

PiScalar operator+(PiScalar a, const PiScalar& b);
PiScalar operator-(PiScalar a, const PiScalar& b);
PiScalar operator*(PiScalar a, const PiScalar& b);
PiScalar operator/(PiScalar a, const PiScalar& b);

enum class ArithKind { add, sub, mul, div };
PiScalar scalar_arith(const PiScalar& a, const PiScalar& b, ArithKind kind);

/// Gamma(k/2 + 1).
PiScalar gamma_half(long k);
/// Volume of the unit ball in R^k.
PiScalar omega(long k);
/// pi^(q/2) Gamma(k/2+1) / Gamma((k+q)/2+1).
PiScalar gamma_multiplier(long k, long q);

/// Enclosure of a at the requested precision (16 <= bits <= 65536).
Interval numeric_eval(const PiScalar& a, long bits);
double to_double(const PiScalar& a);

struct SignOptions {
    long start_bits = 64;
    long max_bits = kMaxBits;
};

/// Zero is decided syntactically; other values by intervals of doubling precision.
Sign sign_of(const PiScalar& a, const SignOptions& opts = {});

/// Exact order comparisons through sign_of.
bool operator<(const PiScalar& a, const PiScalar& b);
bool operator>(const PiScalar& a, const PiScalar& b);
bool operator<=(const PiScalar& a, const PiScalar& b);
bool operator>=(const PiScalar& a, const PiScalar& b);

mpq_class binomial(long n, long k);
mpq_class factorial(long n);

}  // namespace tubepoly
