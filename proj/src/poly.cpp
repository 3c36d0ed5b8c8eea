#include "tubepoly/poly.hpp"

#include <algorithm>

namespace tubepoly {

PiPoly::PiPoly(std::vector<PiScalar> coeffs) : c_(std::move(coeffs)) { trim(); }

PiPoly PiPoly::constant(PiScalar c) { return PiPoly(std::vector<PiScalar>{std::move(c)}); }

PiPoly PiPoly::monomial(PiScalar c, std::size_t k) {
    std::vector<PiScalar> v(k + 1);
    v[k] = std::move(c);
    return PiPoly(std::move(v));
}

void PiPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

PiScalar PiPoly::coeff(std::size_t k) const { return k < c_.size() ? c_[k] : PiScalar(); }

std::size_t PiPoly::low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k].is_zero()) ++k;
    return k;
}

PiPoly PiPoly::operator-() const {
    PiPoly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

PiPoly& PiPoly::operator+=(const PiPoly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
    trim();
    return *this;
}

PiPoly& PiPoly::operator-=(const PiPoly& b) {
    if (b.c_.size() > c_.size()) c_.resize(b.c_.size());
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] -= b.c_[i];
    trim();
    return *this;
}

PiPoly PiPoly::operator*(const PiPoly& b) const {
    if (is_zero() || b.is_zero()) return {};
    std::vector<PiScalar> r(c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (!b.c_[j].is_zero()) r[i + j] += c_[i] * b.c_[j];
    }
    return PiPoly(std::move(r));
}

PiPoly PiPoly::scaled(const PiScalar& s) const {
    PiPoly r(*this);
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
}

PiPoly PiPoly::shifted_down(std::size_t k) const {
    if (k > low_order() && !is_zero()) throw std::invalid_argument("shifted_down: polynomial not divisible by t^k");
    if (k >= c_.size()) return {};
    return PiPoly(std::vector<PiScalar>(c_.begin() + static_cast<long>(k), c_.end()));
}

PiPoly PiPoly::shifted_up(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<PiScalar> r(k);
    r.insert(r.end(), c_.begin(), c_.end());
    return PiPoly(std::move(r));
}

PiScalar PiPoly::eval(const PiScalar& at) const {
    PiScalar acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
    return acc;
}

ComplexInterval PiPoly::eval(const ComplexInterval& at, long bits) const {
    const auto prec = static_cast<mpfr_prec_t>(bits + 16);
    ComplexInterval acc(prec);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= at;
        acc.re += numeric_eval(*it, bits);
    }
    return acc;
}

ComplexInterval PiPoly::eval(double re, double im, long bits) const {
    return eval(ComplexInterval::from_doubles(re, im, static_cast<mpfr_prec_t>(bits + 16)), bits);
}

std::string PiPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        std::string cs = c_[k].to_string();
        const bool simple = c_[k].den().is_one() && c_[k].num().is_monomial();
        bool neg = false;
        if (simple && cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        if (!simple) cs = "(" + cs + ")";
        std::string tp = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
        std::string term;
        if (tp.empty())
            term = cs;
        else if (cs == "1")
            term = tp;
        else
            term = cs + "*" + tp;
        if (out.empty())
            out = neg ? "-" + term : term;
        else
            out += (neg ? " - " : " + ") + term;
    }
    return out;
}

std::vector<std::string> PiPoly::coeff_strings() const {
    std::vector<std::string> s;
    s.reserve(c_.size());
    for (const auto& c : c_) s.push_back(c.to_string());
    return s;
}

PiPoly PiPoly::from_coeff_strings(const std::vector<std::string>& s) {
    std::vector<PiScalar> c;
    c.reserve(s.size());
    for (const auto& x : s) c.push_back(PiScalar::parse(x));
    return PiPoly(std::move(c));
}

PiPoly operator+(PiPoly a, const PiPoly& b) { return a += b; }
PiPoly operator-(PiPoly a, const PiPoly& b) { return a -= b; }

PiPoly poly_arith(const PiPoly& a, const PiPoly& b, PolyArithKind kind) {
    switch (kind) {
        case PolyArithKind::add: return a + b;
        case PolyArithKind::sub: return a - b;
        case PolyArithKind::mul: return a * b;
    }
    throw std::logic_error("unknown polynomial arithmetic kind");
}

PiPoly derivative(const PiPoly& a) {
    if (a.degree() < 1) return {};
    std::vector<PiScalar> r(static_cast<std::size_t>(a.degree()));
    for (std::size_t k = 1; k < a.coeffs().size(); ++k) r[k - 1] = a.coeffs()[k] * PiScalar(static_cast<long>(k));
    return PiPoly(std::move(r));
}

std::pair<PiPoly, PiPoly> even_odd_parts(const PiPoly& a) {
    std::vector<PiScalar> e(a.coeffs().size()), o(a.coeffs().size());
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) (k % 2 == 0 ? e : o)[k] = a.coeffs()[k];
    return {PiPoly(std::move(e)), PiPoly(std::move(o))};
}

PiPoly m_product(const PiPoly& a, const PiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    const std::size_t da = a.coeffs().size(), db = b.coeffs().size();
    std::vector<PiScalar> g(da + db - 1);
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = gamma_half(static_cast<long>(k));
    std::vector<PiScalar> r(da + db - 1);
    for (std::size_t k = 0; k < da; ++k) {
        if (a.coeffs()[k].is_zero()) continue;
        const PiScalar ak = a.coeffs()[k] * g[k];
        for (std::size_t l = 0; l < db; ++l) {
            if (b.coeffs()[l].is_zero()) continue;
            r[k + l] += ak * b.coeffs()[l] * g[l] / g[k + l];
        }
    }
    return PiPoly(std::move(r));
}

PiPoly scale_arg(const PiPoly& a, const PiScalar& lambda) {
    std::vector<PiScalar> r(a.coeffs().size());
    PiScalar p(1L);
    for (std::size_t k = 0; k < r.size(); ++k) {
        r[k] = a.coeffs()[k] * p;
        p *= lambda;
    }
    return PiPoly(std::move(r));
}

std::vector<Interval> numeric_coeffs(const PiPoly& a, long bits) {
    std::vector<Interval> out;
    out.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) out.push_back(numeric_eval(c, bits));
    return out;
}

}  // namespace tubepoly
