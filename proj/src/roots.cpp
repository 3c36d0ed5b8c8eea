#include "tubepoly/roots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tubepoly {

namespace {

// Minimal RAII holder; arithmetic is done with mpfr_* calls in place.
struct Mp {
    mpfr_t v;
    explicit Mp(mpfr_prec_t p) {
        mpfr_init2(v, p);
        mpfr_set_zero(v, 1);
    }
    Mp(const Mp& o) {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    Mp& operator=(const Mp& o) {
        if (this != &o) {
            mpfr_set_prec(v, mpfr_get_prec(o.v));
            mpfr_set(v, o.v, MPFR_RNDN);
        }
        return *this;
    }
    ~Mp() { mpfr_clear(v); }
};

struct Cx {
    Mp re, im;
    explicit Cx(mpfr_prec_t p) : re(p), im(p) {}
};

std::string mp_text(mpfr_srcptr x) {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.30Rg", x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

// log2 |x| for nonzero x without overflow.
double log2_abs(mpfr_srcptr x) {
    long e = 0;
    const double m = mpfr_get_d_2exp(&e, x, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

class Solver {
public:
    Solver(const std::vector<Interval>& coeffs, mpfr_prec_t w)
        : w_(w), n_(coeffs.size() - 1), t1_(w), t2_(w), t3_(w), p_(w), dp_(w), nw_(w), s_(w), d_(w), bound_(64), az_(64) {
        for (const auto& c : coeffs) {
            Mp m(w);
            c.mid(m.v);
            c_.push_back(m);
            Mp a(64);
            mpfr_abs(a.v, m.v, MPFR_RNDU);
            abs_c_.push_back(a);
        }
    }

    std::vector<Cx> z;
    std::vector<bool> done;
    int iterations = 0;

    void initial_points() {
        // Upper convex hull of (k, log2|c_k|).
        std::vector<std::pair<long, double>> pts;
        for (std::size_t k = 0; k <= n_; ++k)
            if (!mpfr_zero_p(c_[k].v)) pts.emplace_back(static_cast<long>(k), log2_abs(c_[k].v));
        std::vector<std::pair<long, double>> hull;
        for (const auto& p : pts) {
            while (hull.size() >= 2) {
                const auto& a = hull[hull.size() - 2];
                const auto& b = hull.back();
                const double cross = (b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
                if (cross >= 0)
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(p);
        }
        const double two_pi = 2 * M_PI;
        const double sigma = 0.7;
        for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
            const long i = hull[h].first, j = hull[h + 1].first;
            const long cnt = j - i;
            const double log_r = (hull[h].second - hull[h + 1].second) / static_cast<double>(cnt);
            Mp r(w_);
            mpfr_set_d(r.v, log_r, MPFR_RNDN);
            mpfr_exp2(r.v, r.v, MPFR_RNDN);
            for (long t = 0; t < cnt; ++t) {
                const double ang = two_pi * static_cast<double>(t) / static_cast<double>(cnt) +
                                   two_pi * static_cast<double>(i) / static_cast<double>(n_) + sigma;
                Cx p(w_);
                mpfr_mul_d(p.re.v, r.v, std::cos(ang), MPFR_RNDN);
                mpfr_mul_d(p.im.v, r.v, std::sin(ang), MPFR_RNDN);
                z.push_back(p);
            }
        }
        done.assign(z.size(), false);
    }

    // p_ = P(x), dp_ = P'(x); bound_ = sum |c_k| |x|^k.
    void horner(const Cx& x) {
        mpfr_set(p_.re.v, c_[n_].v, MPFR_RNDN);
        mpfr_set_zero(p_.im.v, 1);
        mpfr_set_zero(dp_.re.v, 1);
        mpfr_set_zero(dp_.im.v, 1);
        mpfr_hypot(az_.v, x.re.v, x.im.v, MPFR_RNDU);
        mpfr_set(bound_.v, abs_c_[n_].v, MPFR_RNDU);
        for (std::size_t k = n_; k-- > 0;) {
            mul(dp_, x);
            mpfr_add(dp_.re.v, dp_.re.v, p_.re.v, MPFR_RNDN);
            mpfr_add(dp_.im.v, dp_.im.v, p_.im.v, MPFR_RNDN);
            mul(p_, x);
            mpfr_add(p_.re.v, p_.re.v, c_[k].v, MPFR_RNDN);
            mpfr_mul(bound_.v, bound_.v, az_.v, MPFR_RNDU);
            mpfr_add(bound_.v, bound_.v, abs_c_[k].v, MPFR_RNDU);
        }
    }

    // a *= b
    void mul(Cx& a, const Cx& b) {
        mpfr_fmms(t1_.v, a.re.v, b.re.v, a.im.v, b.im.v, MPFR_RNDN);
        mpfr_fmma(a.im.v, a.re.v, b.im.v, a.im.v, b.re.v, MPFR_RNDN);
        mpfr_set(a.re.v, t1_.v, MPFR_RNDN);
    }

    // out = a / b
    void div(Cx& out, const Cx& a, const Cx& b) {
        mpfr_fmma(t3_.v, b.re.v, b.re.v, b.im.v, b.im.v, MPFR_RNDN);
        mpfr_fmma(t1_.v, a.re.v, b.re.v, a.im.v, b.im.v, MPFR_RNDN);
        mpfr_fmms(t2_.v, a.im.v, b.re.v, a.re.v, b.im.v, MPFR_RNDN);
        mpfr_div(out.re.v, t1_.v, t3_.v, MPFR_RNDN);
        mpfr_div(out.im.v, t2_.v, t3_.v, MPFR_RNDN);
    }

    bool backward_small() {
        // |P(z)| <= 4 n 2^-w sum |c_k||z|^k
        Mp ap(64);
        mpfr_hypot(ap.v, p_.re.v, p_.im.v, MPFR_RNDN);
        Mp lim(64);
        mpfr_mul_ui(lim.v, bound_.v, 4 * static_cast<unsigned long>(n_ + 1), MPFR_RNDU);
        mpfr_div_2si(lim.v, lim.v, static_cast<long>(w_) - 2, MPFR_RNDU);
        return mpfr_lessequal_p(ap.v, lim.v);
    }

    void step(std::size_t i) {
        horner(z[i]);
        if (backward_small()) {
            done[i] = true;
            return;
        }
        if (mpfr_zero_p(dp_.re.v) && mpfr_zero_p(dp_.im.v)) {
            // Nudge off a critical point.
            mpfr_mul_d(z[i].re.v, z[i].re.v, 1.0 + 1e-8, MPFR_RNDN);
            mpfr_add_d(z[i].im.v, z[i].im.v, 1e-8, MPFR_RNDN);
            return;
        }
        div(nw_, p_, dp_);  // Newton correction N
        mpfr_set_zero(s_.re.v, 1);
        mpfr_set_zero(s_.im.v, 1);
        for (std::size_t j = 0; j < z.size(); ++j) {
            if (j == i) continue;
            mpfr_sub(d_.re.v, z[i].re.v, z[j].re.v, MPFR_RNDN);
            mpfr_sub(d_.im.v, z[i].im.v, z[j].im.v, MPFR_RNDN);
            mpfr_fmma(t3_.v, d_.re.v, d_.re.v, d_.im.v, d_.im.v, MPFR_RNDN);
            if (mpfr_zero_p(t3_.v)) continue;
            mpfr_div(t1_.v, d_.re.v, t3_.v, MPFR_RNDN);
            mpfr_div(t2_.v, d_.im.v, t3_.v, MPFR_RNDN);
            mpfr_add(s_.re.v, s_.re.v, t1_.v, MPFR_RNDN);
            mpfr_sub(s_.im.v, s_.im.v, t2_.v, MPFR_RNDN);
        }
        // w = N / (1 - N S)
        Cx den(w_);
        mpfr_set(den.re.v, nw_.re.v, MPFR_RNDN);
        mpfr_set(den.im.v, nw_.im.v, MPFR_RNDN);
        mul(den, s_);
        mpfr_ui_sub(den.re.v, 1, den.re.v, MPFR_RNDN);
        mpfr_neg(den.im.v, den.im.v, MPFR_RNDN);
        Cx corr(w_);
        if (mpfr_zero_p(den.re.v) && mpfr_zero_p(den.im.v))
            corr = nw_;
        else
            div(corr, nw_, den);
        mpfr_sub(z[i].re.v, z[i].re.v, corr.re.v, MPFR_RNDN);
        mpfr_sub(z[i].im.v, z[i].im.v, corr.im.v, MPFR_RNDN);
    }

    bool run(int max_iter) {
        for (iterations = 0; iterations < max_iter; ++iterations) {
            bool all = true;
            for (std::size_t i = 0; i < z.size(); ++i) {
                if (done[i]) continue;
                step(i);
                all = all && done[i];
            }
            if (all) {
                ++iterations;
                return true;
            }
        }
        return std::all_of(done.begin(), done.end(), [](bool b) { return b; });
    }

    // Newton steps accepted while they reduce |P|.
    void polish(std::size_t i, int steps) {
        Cx x = z[i];
        horner(x);
        Mp best(64);
        mpfr_hypot(best.v, p_.re.v, p_.im.v, MPFR_RNDN);
        for (int s = 0; s < steps; ++s) {
            if (mpfr_zero_p(best.v) || (mpfr_zero_p(dp_.re.v) && mpfr_zero_p(dp_.im.v))) return;
            div(nw_, p_, dp_);
            Cx y = x;
            mpfr_sub(y.re.v, y.re.v, nw_.re.v, MPFR_RNDN);
            mpfr_sub(y.im.v, y.im.v, nw_.im.v, MPFR_RNDN);
            horner(y);
            Mp a(64);
            mpfr_hypot(a.v, p_.re.v, p_.im.v, MPFR_RNDN);
            if (!mpfr_less_p(a.v, best.v)) return;
            mpfr_set(best.v, a.v, MPFR_RNDN);
            x = y;
            z[i] = y;
        }
    }

    mpfr_prec_t w_;
    std::size_t n_;
    std::vector<Mp> c_;
    std::vector<Mp> abs_c_;
    Mp t1_, t2_, t3_;
    Cx p_, dp_, nw_, s_, d_;
    Mp bound_, az_;
};

ComplexInterval point_box(const Cx& z, mpfr_prec_t prec) {
    return {Interval::from_endpoints(z.re.v, z.re.v, prec), Interval::from_endpoints(z.im.v, z.im.v, prec)};
}

ComplexInterval interval_horner(const std::vector<Interval>& c, const ComplexInterval& x) {
    ComplexInterval acc(x.prec());
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc *= x;
        acc.re += *it;
    }
    return acc;
}

}  // namespace

RootSet find_roots(const PiPoly& p, const RootOptions& opts) {
    if (p.degree() < 1) throw std::invalid_argument("find_roots: degree must be >= 1");
    RootSet out;
    out.bits = opts.bits;
    const long wbits = std::min(3 * opts.bits, kMaxBits);
    const auto w = static_cast<mpfr_prec_t>(wbits);

    const std::size_t m = p.low_order();
    const PiPoly q = p.shifted_down(m);
    const std::vector<Interval> full = numeric_coeffs(p, wbits);
    {
        const double lead = std::fabs(full.back().mid_d());
        double mx = 0;
        for (const auto& c : full) mx = std::max(mx, std::fabs(c.mid_d()));
        out.scale = lead > 0 ? mx / lead : 1;
        if (!std::isfinite(out.scale)) out.scale = 1;
    }

    std::vector<Cx> zs;
    bool converged = true;
    int iters = 0;
    if (q.degree() >= 1) {
        std::vector<Interval> qc(full.begin() + static_cast<long>(m), full.end());
        Solver s(qc, w);
        s.initial_points();
        const int cap = opts.max_iterations > 0 ? opts.max_iterations : 200 + 4 * static_cast<int>(q.degree());
        converged = s.run(cap);
        iters = s.iterations;
        for (std::size_t i = 0; i < s.z.size(); ++i) s.polish(i, 3);
        zs = s.z;
    }

    // Derivative coefficients for inclusion radii.
    std::vector<Interval> dfull;
    for (std::size_t k = 1; k < full.size(); ++k) dfull.push_back(full[k] * Interval(static_cast<long>(k), w));
    const double deg = static_cast<double>(p.degree());

    for (std::size_t k = 0; k < m; ++k) {
        Root r;
        r.re_text = r.im_text = "0";
        r.cluster = m > 1;
        out.roots.push_back(r);
    }
    for (const auto& z : zs) {
        Root r;
        r.re = mpfr_get_d(z.re.v, MPFR_RNDN);
        r.im = mpfr_get_d(z.im.v, MPFR_RNDN);
        r.re_text = mp_text(z.re.v);
        r.im_text = mp_text(z.im.v);
        const ComplexInterval box = point_box(z, w);
        const ComplexInterval val = interval_horner(full, box);
        r.residual_bound = val.abs_upper();
        const ComplexInterval dval = interval_horner(dfull, box);
        const double dl = dval.abs_lower();
        r.inclusion_radius = dl > 0 ? deg * r.residual_bound / dl : INFINITY;
        out.roots.push_back(r);
    }
    for (std::size_t i = 0; i < out.roots.size(); ++i) {
        for (std::size_t j = i + 1; j < out.roots.size(); ++j) {
            const double d = std::hypot(out.roots[i].re - out.roots[j].re, out.roots[i].im - out.roots[j].im);
            if (d <= out.roots[i].inclusion_radius + out.roots[j].inclusion_radius) {
                out.roots[i].cluster = true;
                out.roots[j].cluster = true;
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        return a.re != b.re ? a.re < b.re : a.im < b.im;
    });
    out.iterations = iters;
    out.converged = converged;
    if (!converged) throw RootError("find_roots: no convergence within the iteration cap", out);
    return out;
}

std::string to_string(NumericVerdict v) {
    switch (v) {
        case NumericVerdict::dissipative: return "dissipative";
        case NumericVerdict::conservative: return "conservative";
        case NumericVerdict::neither: return "neither";
        case NumericVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

NumericVerdict classify_numeric(const RootSet& r, double tol) {
    bool all_left = true, all_axis = true;
    for (const auto& z : r.roots) {
        const double band = tol * (1 + std::hypot(z.re, z.im));
        if (z.re > band) return NumericVerdict::neither;
        if (!(z.re < -band)) all_left = false;
        if (std::fabs(z.re) > band) all_axis = false;
    }
    if (all_left) return NumericVerdict::dissipative;
    if (all_axis) {
        for (std::size_t i = 0; i < r.roots.size(); ++i)
            for (std::size_t j = i + 1; j < r.roots.size(); ++j) {
                const auto& a = r.roots[i];
                const auto& b = r.roots[j];
                const double band = tol * (1 + std::max(std::hypot(a.re, a.im), std::hypot(b.re, b.im)));
                if (std::hypot(a.re - b.re, a.im - b.im) <= band) return NumericVerdict::inconclusive;
            }
        return NumericVerdict::conservative;
    }
    return NumericVerdict::inconclusive;
}

std::vector<Root> ball_weyl1_roots(long n, long bits) {
    std::vector<Root> out;
    if (n < 2) return out;
    const auto prec = static_cast<mpfr_prec_t>(std::max(bits, 53L));
    Mp pi(prec), t(prec);
    mpfr_const_pi(pi.v, MPFR_RNDN);
    for (long k = -(n / 2); k <= n / 2; ++k) {
        if (k == 0) continue;
        mpfr_mul_si(t.v, pi.v, k, MPFR_RNDN);
        mpfr_div_si(t.v, t.v, n + 1, MPFR_RNDN);
        mpfr_tan(t.v, t.v, MPFR_RNDN);
        Root r;
        r.im = mpfr_get_d(t.v, MPFR_RNDN);
        r.re_text = "0";
        r.im_text = mp_text(t.v);
        out.push_back(r);
    }
    return out;
}

std::string roots_csv(const RootSet& r) {
    std::ostringstream os;
    os << "re,im,residual\n";
    os.precision(17);
    for (const auto& z : r.roots) os << z.re_text << "," << z.im_text << "," << z.residual_bound << "\n";
    return os.str();
}

}  // namespace tubepoly
