#include "tubepoly/scalars.hpp"

#include <algorithm>
#include <cctype>

namespace tubepoly {

// ---------------------------------------------------------------- PiLaurent

PiLaurent::PiLaurent(mpq_class c, long half_exp) {
    c.canonicalize();
    if (c != 0) terms_.push_back({half_exp, std::move(c)});
}

PiLaurent PiLaurent::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.half_exp < b.half_exp; });
    PiLaurent r;
    for (auto& t : terms) {
        if (!r.terms_.empty() && r.terms_.back().half_exp == t.half_exp)
            r.terms_.back().coeff += t.coeff;
        else
            r.terms_.push_back(std::move(t));
    }
    std::erase_if(r.terms_, [](const Term& t) { return t.coeff == 0; });
    return r;
}

bool PiLaurent::is_one() const { return terms_.size() == 1 && terms_[0].half_exp == 0 && terms_[0].coeff == 1; }

PiLaurent PiLaurent::operator-() const {
    PiLaurent r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

PiLaurent& PiLaurent::operator+=(const PiLaurent& b) {
    if (b.is_zero()) return *this;
    if (is_zero()) return *this = b;
    std::vector<Term> out;
    out.reserve(terms_.size() + b.terms_.size());
    auto i = terms_.begin();
    auto j = b.terms_.begin();
    while (i != terms_.end() || j != b.terms_.end()) {
        if (j == b.terms_.end() || (i != terms_.end() && i->half_exp < j->half_exp)) {
            out.push_back(std::move(*i++));
        } else if (i == terms_.end() || j->half_exp < i->half_exp) {
            out.push_back(*j++);
        } else {
            mpq_class c = i->coeff + j->coeff;
            if (c != 0) out.push_back({i->half_exp, std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

PiLaurent& PiLaurent::operator-=(const PiLaurent& b) { return *this += -b; }

PiLaurent PiLaurent::operator*(const PiLaurent& b) const {
    if (is_zero() || b.is_zero()) return {};
    if (b.is_monomial()) return scaled(b.terms_[0].coeff).shifted(b.terms_[0].half_exp);
    if (is_monomial()) return b.scaled(terms_[0].coeff).shifted(terms_[0].half_exp);
    std::vector<Term> prod;
    prod.reserve(terms_.size() * b.terms_.size());
    for (const auto& s : terms_)
        for (const auto& t : b.terms_) prod.push_back({s.half_exp + t.half_exp, s.coeff * t.coeff});
    return from_terms(std::move(prod));
}

PiLaurent PiLaurent::scaled(const mpq_class& c) const {
    if (c == 0) return {};
    PiLaurent r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

PiLaurent PiLaurent::shifted(long k) const {
    PiLaurent r(*this);
    for (auto& t : r.terms_) t.half_exp += k;
    return r;
}

std::vector<mpq_class> PiLaurent::dense() const {
    if (is_zero()) return {};
    std::vector<mpq_class> c(static_cast<std::size_t>(high_exp() - low_exp() + 1));
    for (const auto& t : terms_) c[static_cast<std::size_t>(t.half_exp - low_exp())] = t.coeff;
    return c;
}

PiLaurent PiLaurent::from_dense(const std::vector<mpq_class>& c, long shift) {
    PiLaurent r;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) r.terms_.push_back({static_cast<long>(i) + shift, c[i]});
    return r;
}

Interval PiLaurent::eval(const Interval& sqrt_pi) const {
    const auto prec = sqrt_pi.prec();
    Interval sum(prec);
    for (const auto& t : terms_) sum += Interval(t.coeff, prec) * sqrt_pi.pow(t.half_exp);
    return sum;
}

bool PiLaurent::operator==(const PiLaurent& b) const {
    if (terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].half_exp != b.terms_[i].half_exp || terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

// ----------------------------------------------------- dense Q[x] helpers

namespace {

using Dense = std::vector<mpq_class>;

void trim(Dense& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a = q*b + r
void divmod(Dense a, const Dense& b, Dense& q, Dense& r) {
    trim(a);
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    const mpq_class& lb = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        const std::size_t shift = a.size() - b.size();
        mpq_class f = a.back() / lb;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        q[shift] = f;
        a.pop_back();
        trim(a);
    }
    r = std::move(a);
}

Dense gcd(Dense a, Dense b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Dense q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    const mpq_class lead = a.back();
    for (auto& c : a) c /= lead;
    return a;
}

Dense exact_div(const Dense& a, const Dense& b) {
    Dense q, r;
    divmod(a, b, q, r);
    return q;
}

}  // namespace

// ----------------------------------------------------------------- PiScalar

PiScalar::PiScalar(long v) : num_(mpq_class(v)) {}
PiScalar::PiScalar(mpq_class v) {
    v.canonicalize();
    num_ = PiLaurent(std::move(v));
}
PiScalar::PiScalar(PiLaurent num) : num_(std::move(num)) {}

PiScalar::PiScalar(PiLaurent num, PiLaurent den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

PiScalar PiScalar::monomial(mpq_class c, long half_exp) {
    c.canonicalize();
    return PiScalar(PiLaurent(std::move(c), half_exp));
}

void PiScalar::normalize() {
    if (den_.is_zero()) throw InvalidOperand("division by zero");
    if (num_.is_zero()) {
        den_ = PiLaurent(mpq_class(1));
        return;
    }
    if (den_.is_monomial()) {
        const auto& t = den_.terms().front();
        num_ = num_.shifted(-t.half_exp).scaled(1 / t.coeff);
        den_ = PiLaurent(mpq_class(1));
        return;
    }
    const long shift = num_.low_exp() - den_.low_exp();
    Dense n = num_.dense();
    Dense d = den_.dense();
    Dense g = gcd(n, d);
    if (g.size() > 1) {
        n = exact_div(n, g);
        d = exact_div(d, g);
    }
    const mpq_class lead = d.back();
    for (auto& c : n) c /= lead;
    for (auto& c : d) c /= lead;
    if (d.size() == 1) {
        num_ = PiLaurent::from_dense(n, shift);
        den_ = PiLaurent(mpq_class(1));
    } else {
        num_ = PiLaurent::from_dense(n, shift);
        den_ = PiLaurent::from_dense(d, 0);
    }
}

bool PiScalar::is_rational() const {
    return den_.is_one() && (num_.is_zero() || (num_.is_monomial() && num_.low_exp() == 0));
}

std::optional<std::pair<mpq_class, long>> PiScalar::as_monomial() const {
    if (!den_.is_one() || !num_.is_monomial()) return std::nullopt;
    return std::make_pair(num_.terms()[0].coeff, num_.terms()[0].half_exp);
}

std::optional<mpq_class> PiScalar::as_rational() const {
    if (num_.is_zero()) return mpq_class(0);
    if (!is_rational()) return std::nullopt;
    return num_.terms()[0].coeff;
}

PiScalar PiScalar::operator-() const {
    PiScalar r(*this);
    r.num_ = -r.num_;
    return r;
}

PiScalar& PiScalar::operator+=(const PiScalar& b) {
    if (den_ == b.den_) {
        num_ += b.num_;
        if (!den_.is_one()) normalize();
        return *this;
    }
    PiLaurent t = num_ * b.den_;
    t += b.num_ * den_;
    num_ = std::move(t);
    den_ = den_ * b.den_;
    normalize();
    return *this;
}

PiScalar& PiScalar::operator-=(const PiScalar& b) { return *this += -b; }

PiScalar& PiScalar::operator*=(const PiScalar& b) {
    num_ = num_ * b.num_;
    if (den_.is_one() && b.den_.is_one()) {
        if (num_.is_zero()) den_ = PiLaurent(mpq_class(1));
        return *this;
    }
    den_ = den_ * b.den_;
    normalize();
    return *this;
}

PiScalar& PiScalar::operator/=(const PiScalar& b) {
    if (b.is_zero()) throw InvalidOperand("division by zero");
    if (b.den_.is_one() && b.num_.is_monomial()) {
        const auto& t = b.num_.terms()[0];
        num_ = num_.shifted(-t.half_exp).scaled(1 / t.coeff);
        return *this;
    }
    num_ = num_ * b.den_;
    den_ = den_ * b.num_;
    normalize();
    return *this;
}

PiScalar PiScalar::inverse() const { return PiScalar(1L) / *this; }

PiScalar PiScalar::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    PiScalar result(1L);
    PiScalar base(*this);
    while (k > 0) {
        if (k & 1) result *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return result;
}

PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
PiScalar operator*(PiScalar a, const PiScalar& b) { return a *= b; }
PiScalar operator/(PiScalar a, const PiScalar& b) { return a /= b; }

PiScalar scalar_arith(const PiScalar& a, const PiScalar& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::add: return a + b;
        case ArithKind::sub: return a - b;
        case ArithKind::mul: return a * b;
        case ArithKind::div: return a / b;
    }
    throw std::logic_error("unknown arithmetic kind");
}

// ---------------------------------------------------------------- rendering

namespace {

std::string pi_power(long m) {
    if (m == 0) return {};
    if (m == 2) return "pi";
    if (m % 2 == 0) {
        const long k = m / 2;
        return k < 0 ? "pi^(" + std::to_string(k) + ")" : "pi^" + std::to_string(k);
    }
    return "pi^(" + std::to_string(m) + "/2)";
}

std::string render_laurent(const PiLaurent& p) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& terms = p.terms();
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const bool neg = it->coeff < 0;
        const mpq_class mag = abs(it->coeff);
        const std::string pw = pi_power(it->half_exp);
        std::string body;
        if (pw.empty())
            body = mag.get_str();
        else if (mag == 1)
            body = pw;
        else
            body = mag.get_str() + "*" + pw;
        if (out.empty())
            out = neg ? "-" + body : body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out;
}

}  // namespace

std::string PiScalar::to_string() const {
    if (den_.is_one()) return render_laurent(num_);
    return "(" + render_laurent(num_) + ")/(" + render_laurent(den_) + ")";
}

// ------------------------------------------------------------------ parsing

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    PiScalar parse_all() {
        PiScalar v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ScalarParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat_word(std::string_view w) {
        skip();
        if (s_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

    PiScalar expr() {
        PiScalar v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }

    PiScalar term() {
        PiScalar v = unary();
        for (;;) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                const std::size_t at = pos_;
                PiScalar d = unary();
                if (d.is_zero()) throw ScalarParseError("division by zero", at);
                v /= d;
            } else {
                return v;
            }
        }
    }

    PiScalar unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    // Exponent as a rational with denominator 1 or 2: returns numerator over 2.
    long exponent_halves() {
        skip();
        const std::size_t at = pos_;
        bool paren = eat('(');
        bool neg = eat('-');
        mpz_class p = integer();
        mpz_class q = 1;
        if (paren && eat('/')) q = integer();
        if (paren && !eat(')')) fail("expected ')'");
        if (q != 1 && q != 2) throw ScalarParseError("exponent denominator must be 1 or 2", at);
        mpz_class halves = (q == 1) ? p * 2 : p;
        if (neg) halves = -halves;
        if (!halves.fits_slong_p()) throw ScalarParseError("exponent too large", at);
        return halves.get_si();
    }

    mpz_class integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    PiScalar power() {
        skip();
        const std::size_t base_at = pos_;
        PiScalar base = primary();
        if (!eat('^')) return base;
        const long halves = exponent_halves();
        if (halves % 2 == 0) return base.pow(halves / 2);
        auto mono = base.as_monomial();
        if (!mono || mono->first != 1 || (mono->second * halves) % 2 != 0)
            throw ScalarParseError("half-integer power of a non-power of pi", base_at);
        return PiScalar::monomial(1, mono->second * halves / 2);
    }

    PiScalar primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (eat('(')) {
            PiScalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (eat_word("sqrt")) {
            if (!eat('(')) fail("expected '(' after sqrt");
            const std::size_t at = pos_;
            PiScalar v = expr();
            if (!eat(')')) fail("expected ')'");
            auto mono = v.as_monomial();
            if (!mono || mono->first != 1 || mono->second % 2 != 0)
                throw ScalarParseError("sqrt is only defined for powers of pi", at);
            return PiScalar::monomial(1, mono->second / 2);
        }
        if (eat_word("pi")) return PiScalar::pi();
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) return PiScalar(mpq_class(integer()));
        fail("unexpected character");
    }
};

}  // namespace

PiScalar PiScalar::parse(std::string_view text) { return Parser(text).parse_all(); }

// -------------------------------------------------------- special values

mpq_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return mpq_class(r);
}

mpq_class binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return mpq_class(r);
}

PiScalar gamma_half(long k) {
    if (k < 0) throw std::invalid_argument("gamma_half: k must be nonnegative");
    if (k % 2 == 0) return PiScalar(factorial(k / 2));
    // Gamma(k/2+1) = sqrt(pi) * prod_{i<(k+1)/2} (2i+1)/2
    mpq_class c = 1;
    for (long i = 0; i < (k + 1) / 2; ++i) c *= mpq_class(2 * i + 1, 2);
    return PiScalar::monomial(c, 1);
}

PiScalar omega(long k) { return PiScalar::monomial(1, k) / gamma_half(k); }

PiScalar gamma_multiplier(long k, long q) {
    if (k < 0 || q < 0) throw std::invalid_argument("gamma_multiplier: indices must be nonnegative");
    return PiScalar::monomial(1, q) * gamma_half(k) / gamma_half(k + q);
}

// ------------------------------------------------------------------ numerics

Interval numeric_eval(const PiScalar& a, long bits) {
    if (bits < kMinBits) throw PrecisionError("precision below " + std::to_string(kMinBits) + " bits");
    if (bits > kMaxBits) throw PrecisionError("precision cap of " + std::to_string(kMaxBits) + " bits exceeded");
    const auto prec = static_cast<mpfr_prec_t>(bits + 16);
    if (a.is_zero()) return Interval(prec);
    if (auto q = a.as_rational()) return Interval(*q, prec);
    Interval x = Interval::pi(prec).sqrt();
    Interval n = a.num().eval(x);
    if (a.den().is_one()) return n;
    return n / a.den().eval(x);
}

double to_double(const PiScalar& a) { return numeric_eval(a, 96).mid_d(); }

Sign sign_of(const PiScalar& a, const SignOptions& opts) {
    if (a.is_zero()) return Sign::zero;
    if (auto m = a.as_monomial()) return sgn(m->first) > 0 ? Sign::positive : Sign::negative;
    std::string last;
    for (long bits = opts.start_bits; bits <= opts.max_bits; bits *= 2) {
        Interval v(16);
        try {
            v = numeric_eval(a, bits);
        } catch (const std::domain_error&) {
            continue;  // denominator enclosure still straddles zero
        }
        if (v.positive()) return Sign::positive;
        if (v.negative()) return Sign::negative;
        last = v.to_string();
    }
    throw PrecisionError("sign undecided at the precision ceiling", last);
}

bool operator<(const PiScalar& a, const PiScalar& b) { return sign_of(b - a) == Sign::positive; }
bool operator>(const PiScalar& a, const PiScalar& b) { return b < a; }
bool operator<=(const PiScalar& a, const PiScalar& b) { return !(b < a); }
bool operator>=(const PiScalar& a, const PiScalar& b) { return !(a < b); }

}  // namespace tubepoly
