#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace tubepoly {

/// Closed real interval with MPFR endpoints. Every operation rounds the lower
/// endpoint down and the upper endpoint up, so the true value stays enclosed.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 128);
    Interval(long v, mpfr_prec_t prec);
    Interval(const mpq_class& q, mpfr_prec_t prec);
    Interval(const Interval& other);
    Interval(Interval&& other) noexcept;
    Interval& operator=(const Interval& other);
    Interval& operator=(Interval&& other) noexcept;
    ~Interval();

    static Interval from_double(double v, mpfr_prec_t prec);
    /// Encloses [a, b] given as doubles (a <= b).
    static Interval hull(double a, double b, mpfr_prec_t prec);
    static Interval pi(mpfr_prec_t prec);
    /// Encloses [lo, hi] given as MPFR values (lo <= hi).
    static Interval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    double lo_d() const;
    double hi_d() const;
    double mid_d() const;
    double width_d() const;
    /// Width rounded up, as an MPFR number at the interval's precision.
    void width(mpfr_ptr out) const;
    void mid(mpfr_ptr out) const;

    bool contains_zero() const;
    bool is_exact_zero() const;
    bool positive() const;  // lo > 0
    bool negative() const;  // hi < 0
    bool contains(const Interval& inner) const;
    bool contains(double v) const;

    Interval operator-() const;
    Interval& operator+=(const Interval& b);
    Interval& operator-=(const Interval& b);
    Interval& operator*=(const Interval& b);
    Interval& operator/=(const Interval& b);

    Interval abs() const;
    Interval sqr() const;
    Interval sqrt() const;
    Interval pow(long k) const;
    Interval exp() const;
    Interval sin() const;
    Interval cos() const;
    Interval sinh() const;
    Interval cosh() const;
    /// Widens the interval symmetrically by r >= 0.
    Interval widened(double r) const;

    std::string to_string(int digits = 20) const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
    friend Interval operator*(const Interval& a, const Interval& b);
};

Interval operator+(Interval a, const Interval& b);
Interval operator-(Interval a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(Interval a, const Interval& b);

/// Rectangular complex interval.
struct ComplexInterval {
    Interval re;
    Interval im;

    explicit ComplexInterval(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexInterval from_doubles(double re, double im, mpfr_prec_t prec);

    mpfr_prec_t prec() const { return re.prec(); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool contains(double x, double y) const { return re.contains(x) && im.contains(y); }
    /// Upper bound on the modulus of any point in the box.
    double abs_upper() const;
    /// Lower bound on the modulus of any point in the box.
    double abs_lower() const;

    ComplexInterval operator-() const { return {-re, -im}; }
    ComplexInterval& operator+=(const ComplexInterval& b);
    ComplexInterval& operator-=(const ComplexInterval& b);
    ComplexInterval& operator*=(const ComplexInterval& b);
    ComplexInterval& operator/=(const ComplexInterval& b);

    ComplexInterval sqr() const;
    ComplexInterval exp() const;
    ComplexInterval sin() const;
    ComplexInterval cos() const;
    /// Widens both parts by r.
    ComplexInterval widened(double r) const { return {re.widened(r), im.widened(r)}; }

    std::string to_string(int digits = 17) const;
};

ComplexInterval operator+(ComplexInterval a, const ComplexInterval& b);
ComplexInterval operator-(ComplexInterval a, const ComplexInterval& b);
ComplexInterval operator*(ComplexInterval a, const ComplexInterval& b);
ComplexInterval operator/(ComplexInterval a, const ComplexInterval& b);
ComplexInterval operator*(ComplexInterval a, const Interval& b);

}  // namespace tubepoly
