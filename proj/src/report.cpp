#include "tubepoly/report.hpp"

#include <algorithm>
#include <cmath>

#include "tubepoly/generators.hpp"

namespace tubepoly {

namespace {

int digits_for(long bits) { return static_cast<int>(std::clamp<long>(static_cast<long>(bits * 0.30103), 6, 60)); }

Json root_json(const Root& r) {
    Json j;
    j["re"] = r.re_text.empty() ? std::to_string(r.re) : r.re_text;
    j["im"] = r.im_text.empty() ? std::to_string(r.im) : r.im_text;
    j["residual_bound"] = r.residual_bound;
    j["inclusion_radius"] = std::isfinite(r.inclusion_radius) ? Json(r.inclusion_radius) : Json(nullptr);
    j["cluster"] = r.cluster;
    return j;
}

}  // namespace

std::string decimal_string(const PiScalar& a, long bits) {
    const Interval v = numeric_eval(a, bits);
    mpfr_t m;
    mpfr_init2(m, static_cast<mpfr_prec_t>(bits + 16));
    v.mid(m);
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits_for(bits), m);
    std::string s(buf);
    mpfr_free_str(buf);
    mpfr_clear(m);
    return s;
}

Json precision_json(long bits, bool exact) {
    Json j;
    j["bits"] = bits;
    j["decimal_digits"] = digits_for(bits);
    j["exact"] = exact;
    return j;
}

Json poly_json(const PiPoly& p, long bits) {
    Json j;
    j["degree"] = p.degree();
    j["polynomial"] = p.to_string();
    j["coefficients"] = p.coeff_strings();
    Json dec = Json::array();
    for (const auto& c : p.coeffs()) dec.push_back(decimal_string(c, bits));
    j["decimal"] = dec;
    return j;
}

Json classification_json(const ClassificationReport& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["criterion"] = r.criterion;
    j["method"] = r.method;
    Json d = Json::array();
    for (const auto& x : r.determinants) {
        Json e;
        e["value"] = x.text;
        e["sign"] = x.sign;
        e["exact"] = x.exact;
        e["resolved"] = x.resolved;
        d.push_back(e);
    }
    j["determinants"] = d;
    j["failing_index"] = r.failing_index ? Json(*r.failing_index) : Json(nullptr);
    j["reason"] = r.reason;
    j["degenerate_order"] = r.degenerate_order;
    j["annotations"] = r.annotations;
    Json w = Json::array();
    for (const auto& x : r.witnesses) w.push_back(root_json(x));
    j["witnesses"] = w;
    j["bits"] = r.bits;
    return j;
}

Json roots_json(const RootSet& r) {
    Json j;
    j["precision"] = precision_json(r.bits, false);
    j["scale"] = r.scale;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    Json a = Json::array();
    for (const auto& x : r.roots) a.push_back(root_json(x));
    j["roots"] = a;
    return j;
}

Json mc_json(const McEstimate& e, const PiPoly& steiner_poly, double t) {
    const double exact = steiner_poly.eval(t, 0.0, 128).re.mid_d();
    Json j;
    j["t"] = t;
    j["estimate"] = e.mean;
    j["std_error"] = e.std_error;
    j["exact"] = exact;
    j["z_score"] = e.std_error > 0 ? (e.mean - exact) / e.std_error : 0.0;
    j["samples"] = e.samples;
    j["hits"] = e.hits;
    j["seed"] = e.seed;
    j["box_volume"] = e.box_volume;
    j["elapsed_seconds"] = e.elapsed_seconds;
    return j;
}

Json dossier(const BodySpec& body, const DossierOptions& opts) {
    const long bits = opts.bits;
    const SteinerResult s = steiner(body);
    Json j;
    j["schema"] = "tubepoly-report/1";
    j["body"] = body.to_string();
    j["ambient_dim"] = s.ambient_dim;
    j["intrinsic_dim"] = body.intrinsic_dim();
    j["solid"] = body.solid();
    j["precision"] = precision_json(bits, true);
    j["steiner"] = poly_json(s.poly, bits);

    const CrossMeasures cm = cross_measures(s);
    Json v = Json::array();
    for (const auto& x : cm.v) v.push_back(x.to_string());
    j["cross_measures"] = v;
    j["log_concave"] = log_concavity_check(cm.v).pass;

    ClassifyOptions co;
    co.numeric_witness = true;
    co.witness_bits = bits;
    j["dissipativity"] = classification_json(classify_dissipative(s.poly, co));
    if (s.poly.degree() >= 1) {
        try {
            j["steiner_roots"] = roots_json(find_roots(s.poly, {bits, 0}));
        } catch (const RootError& e) {
            j["steiner_roots"] = roots_json(e.partial());
        }
    } else {
        j["steiner_roots"] = nullptr;
    }

    Json weyl = Json::array();
    if (s.ambient_dim >= 2) {
        for (const WeylIndex p : {WeylIndex::finite(1), WeylIndex::finite(2), WeylIndex::infinite()}) {
            const WeylData wd = weyl_poly(s, p);
            Json w;
            w["index"] = p.to_string();
            w["surface_dim"] = wd.surface_dim;
            w["polynomial"] = poly_json(wd.poly, bits);
            if (!wd.poly.is_zero()) {
                ClassifyOptions cc;
                cc.witness_bits = bits;
                w["conservativity"] = classification_json(classify_conservative(wd.poly, cc));
            } else {
                w["conservativity"] = nullptr;
            }
            weyl.push_back(w);
        }
    }
    j["weyl"] = weyl;

    if (regular_family(body)) {
        const auto [fam, order] = steiner_family(body);
        Json g;
        g["family"] = fam.tag();
        g["jensen_order"] = order;
        g["renormalized_steiner"] = renormalized_steiner(s).coeff_strings();
        j["generator"] = g;
    } else {
        j["generator"] = nullptr;
    }

    if (opts.monte_carlo && s.ambient_dim <= 8) {
        const McEstimate e = mc_tube_volume(body, opts.t, opts.samples, opts.seed);
        j["monte_carlo"] = mc_json(e, s.poly, opts.t);
    } else {
        j["monte_carlo"] = nullptr;
    }
    return j;
}

}  // namespace tubepoly
