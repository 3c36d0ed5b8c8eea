#include "tubepoly/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tubepoly {

namespace {

mpfr_prec_t max_prec(const Interval& a, const Interval& b) { return std::max(a.prec(), b.prec()); }

// RAII scratch value for intermediate endpoint arithmetic.
struct Tmp {
    mpfr_t v;
    explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
    ~Tmp() { mpfr_clear(v); }
    Tmp(const Tmp&) = delete;
    Tmp& operator=(const Tmp&) = delete;
};

std::string fmt(mpfr_srcptr x, int digits, bool up) {
    char* buf = nullptr;
    if (up)
        mpfr_asprintf(&buf, "%.*RUg", digits, x);
    else
        mpfr_asprintf(&buf, "%.*RDg", digits, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(long v, mpfr_prec_t prec) : Interval(prec) {
    mpfr_set_si(lo_, v, MPFR_RNDD);
    mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval::Interval(const mpq_class& q, mpfr_prec_t prec) : Interval(prec) {
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& other) {
    mpfr_init2(lo_, other.prec());
    mpfr_init2(hi_, other.prec());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
    mpfr_init2(lo_, other.prec());
    mpfr_init2(hi_, other.prec());
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
    if (this != &other) {
        mpfr_set_prec(lo_, other.prec());
        mpfr_set_prec(hi_, other.prec());
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
    if (this != &other) {
        mpfr_swap(lo_, other.lo_);
        mpfr_swap(hi_, other.hi_);
    }
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::from_double(double v, mpfr_prec_t prec) { return hull(v, v, prec); }

Interval Interval::hull(double a, double b, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_d(r.lo_, a, MPFR_RNDD);
    mpfr_set_d(r.hi_, b, MPFR_RNDU);
    return r;
}

Interval Interval::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set(r.lo_, lo, MPFR_RNDD);
    mpfr_set(r.hi_, hi, MPFR_RNDU);
    return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_d() const {
    Tmp m(prec() + 1);
    mid(m.v);
    return mpfr_get_d(m.v, MPFR_RNDN);
}

double Interval::width_d() const {
    Tmp w(prec());
    width(w.v);
    return mpfr_get_d(w.v, MPFR_RNDU);
}

void Interval::width(mpfr_ptr out) const { mpfr_sub(out, hi_, lo_, MPFR_RNDU); }

void Interval::mid(mpfr_ptr out) const {
    mpfr_add(out, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(out, out, 1, MPFR_RNDN);
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::is_exact_zero() const { return mpfr_zero_p(lo_) && mpfr_zero_p(hi_); }
bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }

bool Interval::contains(const Interval& inner) const {
    return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_lessequal_p(inner.hi_, hi_);
}

bool Interval::contains(double v) const { return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0; }

Interval Interval::operator-() const {
    Interval r(prec());
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval& Interval::operator+=(const Interval& b) {
    const auto p = max_prec(*this, b);
    mpfr_prec_round(lo_, p, MPFR_RNDD);
    mpfr_prec_round(hi_, p, MPFR_RNDU);
    mpfr_add(lo_, lo_, b.lo_, MPFR_RNDD);
    mpfr_add(hi_, hi_, b.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator-=(const Interval& b) {
    const auto p = max_prec(*this, b);
    mpfr_prec_round(lo_, p, MPFR_RNDD);
    mpfr_prec_round(hi_, p, MPFR_RNDU);
    mpfr_sub(lo_, lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(hi_, hi_, b.lo_, MPFR_RNDU);
    return *this;
}

Interval operator*(const Interval& a, const Interval& b) {
    const auto p = max_prec(a, b);
    Interval r(p);
    if (mpfr_sgn(a.lo_) >= 0 && mpfr_sgn(b.lo_) >= 0) {
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    Tmp t(p);
    mpfr_srcptr ea[2] = {a.lo_, a.hi_};
    mpfr_srcptr eb[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : ea) {
        for (auto y : eb) {
            mpfr_mul(t.v, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
            mpfr_mul(t.v, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval& Interval::operator*=(const Interval& b) { return *this = *this * b; }

Interval& Interval::operator/=(const Interval& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
    const auto p = max_prec(*this, b);
    Interval r(p);
    Tmp t(p);
    mpfr_srcptr ea[2] = {lo_, hi_};
    mpfr_srcptr eb[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : ea) {
        for (auto y : eb) {
            mpfr_div(t.v, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
            mpfr_div(t.v, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
            first = false;
        }
    }
    return *this = std::move(r);
}

Interval operator+(Interval a, const Interval& b) { return a += b; }
Interval operator-(Interval a, const Interval& b) { return a -= b; }
Interval operator/(Interval a, const Interval& b) { return a /= b; }

Interval Interval::abs() const {
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    Interval r(prec());
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_greater_p(hi_, r.hi_)) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sqr() const {
    Interval a = abs();
    Interval r(prec());
    mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(hi_) < 0) throw std::domain_error("square root of a negative interval");
    Interval r(prec());
    if (mpfr_sgn(lo_) <= 0)
        mpfr_set_zero(r.lo_, 1);
    else
        mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::pow(long k) const {
    if (k < 0) return Interval(1L, prec()) / pow(-k);
    if (k == 0) return Interval(1L, prec());
    const auto uk = static_cast<unsigned long>(k);
    Interval r(prec());
    if (k % 2 == 1) {
        mpfr_pow_ui(r.lo_, lo_, uk, MPFR_RNDD);
        mpfr_pow_ui(r.hi_, hi_, uk, MPFR_RNDU);
        return r;
    }
    Interval a = abs();
    mpfr_pow_ui(r.lo_, a.lo_, uk, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, a.hi_, uk, MPFR_RNDU);
    return r;
}

Interval Interval::exp() const {
    Interval r(prec());
    mpfr_exp(r.lo_, lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, hi_, MPFR_RNDU);
    return r;
}

namespace {

// Encloses f over [lo, hi] for a 1-Lipschitz f by evaluating at the midpoint.
template <typename F>
Interval lipschitz_eval(const Interval& x, F f) {
    const auto p = x.prec();
    Tmp m(p + 2), r(p), t(p);
    x.mid(m.v);
    mpfr_sub(r.v, x.hi(), m.v, MPFR_RNDU);
    mpfr_sub(t.v, m.v, x.lo(), MPFR_RNDU);
    if (mpfr_greater_p(t.v, r.v)) mpfr_set(r.v, t.v, MPFR_RNDU);
    Interval out = Interval::hull(-1.0, 1.0, p);
    if (mpfr_cmp_d(r.v, 4.0) > 0) return out;
    Tmp lo(p), hi(p);
    f(lo.v, m.v, MPFR_RNDD);
    f(hi.v, m.v, MPFR_RNDU);
    mpfr_sub(lo.v, lo.v, r.v, MPFR_RNDD);
    mpfr_add(hi.v, hi.v, r.v, MPFR_RNDU);
    if (mpfr_cmp_si(lo.v, -1) < 0) mpfr_set_si(lo.v, -1, MPFR_RNDD);
    if (mpfr_cmp_si(hi.v, 1) > 0) mpfr_set_si(hi.v, 1, MPFR_RNDU);
    return Interval::from_endpoints(lo.v, hi.v, p);
}

}  // namespace

Interval Interval::sin() const { return lipschitz_eval(*this, mpfr_sin); }
Interval Interval::cos() const { return lipschitz_eval(*this, mpfr_cos); }

Interval Interval::sinh() const {
    Interval r(prec());
    mpfr_sinh(r.lo_, lo_, MPFR_RNDD);
    mpfr_sinh(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::cosh() const {
    Interval a = abs();
    Interval r(prec());
    mpfr_cosh(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_cosh(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval Interval::widened(double r) const {
    Interval out(*this);
    Tmp d(53);
    mpfr_set_d(d.v, r, MPFR_RNDU);
    mpfr_sub(out.lo_, out.lo_, d.v, MPFR_RNDD);
    mpfr_add(out.hi_, out.hi_, d.v, MPFR_RNDU);
    return out;
}

std::string Interval::to_string(int digits) const { return "[" + fmt(lo_, digits, false) + ", " + fmt(hi_, digits, true) + "]"; }

ComplexInterval ComplexInterval::from_doubles(double re, double im, mpfr_prec_t prec) {
    return {Interval::from_double(re, prec), Interval::from_double(im, prec)};
}

double ComplexInterval::abs_upper() const {
    Tmp a(64), b(64);
    mpfr_abs(a.v, re.lo(), MPFR_RNDU);
    mpfr_abs(b.v, re.hi(), MPFR_RNDU);
    if (mpfr_greater_p(b.v, a.v)) mpfr_set(a.v, b.v, MPFR_RNDU);
    Tmp c(64), d(64);
    mpfr_abs(c.v, im.lo(), MPFR_RNDU);
    mpfr_abs(d.v, im.hi(), MPFR_RNDU);
    if (mpfr_greater_p(d.v, c.v)) mpfr_set(c.v, d.v, MPFR_RNDU);
    mpfr_hypot(a.v, a.v, c.v, MPFR_RNDU);
    return mpfr_get_d(a.v, MPFR_RNDU);
}

double ComplexInterval::abs_lower() const {
    auto dist = [](const Interval& x) {
        if (x.contains_zero()) return 0.0;
        return x.positive() ? x.lo_d() : -x.hi_d();
    };
    return std::hypot(dist(re), dist(im));
}

ComplexInterval& ComplexInterval::operator+=(const ComplexInterval& b) {
    re += b.re;
    im += b.im;
    return *this;
}

ComplexInterval& ComplexInterval::operator-=(const ComplexInterval& b) {
    re -= b.re;
    im -= b.im;
    return *this;
}

ComplexInterval& ComplexInterval::operator*=(const ComplexInterval& b) {
    Interval r = re * b.re - im * b.im;
    Interval i = re * b.im + im * b.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

ComplexInterval& ComplexInterval::operator/=(const ComplexInterval& b) {
    Interval den = b.re.sqr() + b.im.sqr();
    if (den.contains_zero()) throw std::domain_error("complex interval division by a box containing zero");
    Interval r = (re * b.re + im * b.im) / den;
    Interval i = (im * b.re - re * b.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

ComplexInterval ComplexInterval::sqr() const { return *this * *this; }

ComplexInterval ComplexInterval::exp() const {
    Interval m = re.exp();
    return {m * im.cos(), m * im.sin()};
}

ComplexInterval ComplexInterval::sin() const { return {re.sin() * im.cosh(), re.cos() * im.sinh()}; }

ComplexInterval ComplexInterval::cos() const { return {re.cos() * im.cosh(), -(re.sin() * im.sinh())}; }

std::string ComplexInterval::to_string(int digits) const {
    return re.to_string(digits) + " + " + im.to_string(digits) + "*i";
}

ComplexInterval operator+(ComplexInterval a, const ComplexInterval& b) { return a += b; }
ComplexInterval operator-(ComplexInterval a, const ComplexInterval& b) { return a -= b; }
ComplexInterval operator*(ComplexInterval a, const ComplexInterval& b) { return a *= b; }
ComplexInterval operator/(ComplexInterval a, const ComplexInterval& b) { return a /= b; }
ComplexInterval operator*(ComplexInterval a, const Interval& b) {
    a.re *= b;
    a.im *= b;
    return a;
}

}  // namespace tubepoly
