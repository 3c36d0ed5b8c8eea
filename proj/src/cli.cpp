#include "tubepoly/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tubepoly/bodies.hpp"
#include "tubepoly/generators.hpp"
#include "tubepoly/oracle.hpp"
#include "tubepoly/report.hpp"
#include "tubepoly/roots.hpp"
#include "tubepoly/stability.hpp"

namespace tubepoly {

namespace {

constexpr long kMinCliBits = 64;

void check_bits(long bits) {
    if (bits < kMinCliBits || bits > kMaxBits)
        throw std::invalid_argument("precision must be within [" + std::to_string(kMinCliBits) + ", " +
                                    std::to_string(kMaxBits) + "] bits, got " + std::to_string(bits));
}

BodySpec config_body(const RunConfig& c) {
    if (c.body.empty()) throw std::invalid_argument(c.command + ": missing body");
    BodySpec b = BodySpec::parse(c.body);
    if (c.q > 0) b = BodySpec::adjoint(b, c.q);
    return b;
}

std::string coeff_csv(const PiPoly& p, long bits) {
    std::ostringstream os;
    os << "k,coefficient,decimal\n";
    for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        os << k << ",\"" << p.coeffs()[k].to_string() << "\"," << decimal_string(p.coeffs()[k], bits) << "\n";
    return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json header(const RunConfig& c, const std::string& body) {
    Json j;
    j["command"] = c.command;
    if (!body.empty()) j["body"] = body;
    return j;
}

RunResult poly_output(const RunConfig& c, Json j, const PiPoly& p) {
    RunResult r;
    switch (c.format) {
        case OutputFormat::json:
            j["precision"] = precision_json(c.bits, true);
            j["result"] = poly_json(p, c.bits);
            r.output = dump(j);
            break;
        case OutputFormat::csv: r.output = coeff_csv(p, c.bits); break;
        case OutputFormat::text: r.output = p.to_string() + "\n"; break;
    }
    return r;
}

RunResult cmd_steiner(const RunConfig& c) {
    const BodySpec b = config_body(c);
    const SteinerResult s = steiner(b);
    Json j = header(c, b.to_string());
    j["ambient_dim"] = s.ambient_dim;
    Json v = Json::array();
    for (const auto& x : cross_measures(s).v) v.push_back(x.to_string());
    j["cross_measures"] = v;
    return poly_output(c, j, s.poly);
}

RunResult cmd_weyl(const RunConfig& c) {
    const BodySpec b = config_body(c);
    const WeylIndex p = WeylIndex::parse(c.weyl.value_or("inf"));
    const WeylData wd = weyl_poly(steiner(b), p);
    Json j = header(c, b.to_string());
    j["index"] = p.to_string();
    j["surface_dim"] = wd.surface_dim;
    Json w = Json::array();
    for (const auto& x : wd.w) w.push_back(x.to_string());
    j["weyl_coefficients"] = w;
    return poly_output(c, j, wd.poly);
}

RunResult cmd_classify(const RunConfig& c) {
    const BodySpec b = config_body(c);
    const SteinerResult s = steiner(b);
    ClassifyOptions o;
    o.witness_bits = c.bits;
    ClassificationReport rep;
    PiPoly target;
    if (c.weyl) {
        target = weyl_poly(s, WeylIndex::parse(*c.weyl)).poly;
        rep = classify_conservative(target, o);
    } else {
        target = s.poly;
        rep = classify_dissipative(target, o);
    }
    RunResult r;
    Json j = header(c, b.to_string());
    if (c.weyl) j["index"] = WeylIndex::parse(*c.weyl).to_string();
    j["precision"] = precision_json(rep.bits ? rep.bits : c.bits, rep.bits == 0);
    j["polynomial"] = target.coeff_strings();
    j["classification"] = classification_json(rep);
    switch (c.format) {
        case OutputFormat::json: r.output = dump(j); break;
        case OutputFormat::csv: {
            std::ostringstream os;
            os << "index,value,sign\n";
            for (std::size_t k = 0; k < rep.determinants.size(); ++k)
                os << k + 1 << ",\"" << rep.determinants[k].text << "\"," << rep.determinants[k].sign << "\n";
            r.output = os.str();
            break;
        }
        case OutputFormat::text:
            r.output = to_string(rep.verdict) + (rep.reason.empty() ? "" : " (" + rep.reason + ")") + "\n";
            break;
    }
    if (c.assert_positive && is_negative(rep.verdict)) r.exit_code = 2;
    return r;
}

RunResult cmd_jensen(const RunConfig& c) {
    const SeriesFamily f = SeriesFamily::parse(c.family);
    if (c.n < 1) throw std::invalid_argument("jensen: --n must be >= 1");
    Json j = header(c, "");
    j["family"] = f.tag();
    j["n"] = c.n;
    return poly_output(c, j, jensen_poly(f, c.n));
}

RunResult cmd_roots(const RunConfig& c) {
    const BodySpec b = config_body(c);
    const SteinerResult s = steiner(b);
    const PiPoly p = c.weyl ? weyl_poly(s, WeylIndex::parse(*c.weyl)).poly : s.poly;
    if (p.degree() < 1) throw std::invalid_argument("roots: polynomial has no roots");
    RootSet rs = find_roots(p, {c.bits, 0});
    RunResult r;
    switch (c.format) {
        case OutputFormat::json: {
            Json j = header(c, b.to_string());
            if (c.weyl) j["index"] = WeylIndex::parse(*c.weyl).to_string();
            j["polynomial"] = p.coeff_strings();
            j["result"] = roots_json(rs);
            r.output = dump(j);
            break;
        }
        case OutputFormat::csv: r.output = roots_csv(rs); break;
        case OutputFormat::text: {
            std::ostringstream os;
            for (const auto& z : rs.roots) os << z.re_text << " " << z.im_text << "\n";
            r.output = os.str();
            break;
        }
    }
    return r;
}

RunResult cmd_series(const RunConfig& c) {
    const SeriesFamily f = SeriesFamily::parse(c.family);
    if (c.terms < 1) throw std::invalid_argument("series: --terms must be >= 1");
    const std::vector<PiScalar> a = coefficient_stream(f, c.terms);
    RunResult r;
    if (c.format == OutputFormat::json) {
        Json j = header(c, "");
        j["family"] = f.tag();
        j["precision"] = precision_json(c.bits, true);
        Json rows = Json::array();
        for (std::size_t k = 0; k < a.size(); ++k) {
            Json e;
            e["k"] = k;
            e["coefficient"] = a[k].to_string();
            e["decimal"] = decimal_string(a[k], c.bits);
            rows.push_back(e);
        }
        j["terms"] = rows;
        r.output = dump(j);
    } else {
        std::ostringstream os;
        if (c.format == OutputFormat::csv) os << "k,coefficient,decimal\n";
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (c.format == OutputFormat::csv)
                os << k << ",\"" << a[k].to_string() << "\"," << decimal_string(a[k], c.bits) << "\n";
            else
                os << k << " " << a[k].to_string() << "\n";
        }
        r.output = os.str();
    }
    return r;
}

RunResult cmd_mcvol(const RunConfig& c) {
    if (c.ci && !c.seed) throw std::invalid_argument("mcvol: --seed is mandatory in CI mode");
    const BodySpec b = config_body(c);
    const std::uint64_t seed = c.seed.value_or(1);
    const McEstimate e = mc_tube_volume(b, c.t, c.samples, seed);
    const Json m = mc_json(e, steiner(b).poly, c.t);
    RunResult r;
    switch (c.format) {
        case OutputFormat::json: {
            Json j = header(c, b.to_string());
            j["seed_defaulted"] = !c.seed.has_value();
            j["precision"] = precision_json(53, false);
            j["result"] = m;
            r.output = dump(j);
            break;
        }
        case OutputFormat::csv: {
            std::ostringstream os;
            os.precision(17);
            os << "t,estimate,std_error,exact,samples,seed\n"
               << c.t << "," << e.mean << "," << e.std_error << "," << m["exact"].get<double>() << "," << e.samples << ","
               << e.seed << "\n";
            r.output = os.str();
            break;
        }
        case OutputFormat::text: {
            std::ostringstream os;
            os.precision(10);
            os << e.mean << " +- " << e.std_error << " (exact " << m["exact"].get<double>() << ")\n";
            r.output = os.str();
            break;
        }
    }
    return r;
}

RunResult cmd_report(const RunConfig& c) {
    if (c.format != OutputFormat::json) throw std::invalid_argument("report: only json output is supported");
    if (c.ci && !c.seed) throw std::invalid_argument("report: --seed is mandatory in CI mode");
    const BodySpec b = config_body(c);
    DossierOptions o;
    o.bits = c.bits;
    o.samples = c.samples;
    o.seed = c.seed.value_or(1);
    o.t = c.t;
    RunResult r;
    r.output = dump(dossier(b, o));
    return r;
}

}  // namespace

long default_bits() {
    const char* env = std::getenv("TUBEPOLY_BITS");
    if (!env || !*env) return 128;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < kMinCliBits || v > kMaxBits) return 128;
    return v;
}

RunResult run_command(const RunConfig& config) {
    try {
        check_bits(config.bits);
        const std::string& cmd = config.command;
        if (cmd == "steiner") return cmd_steiner(config);
        if (cmd == "weyl") return cmd_weyl(config);
        if (cmd == "classify") return cmd_classify(config);
        if (cmd == "jensen") return cmd_jensen(config);
        if (cmd == "roots") return cmd_roots(config);
        if (cmd == "series") return cmd_series(config);
        if (cmd == "mcvol") return cmd_mcvol(config);
        if (cmd == "report") return cmd_report(config);
        return {1, "", "unknown command: " + cmd};
    } catch (const BodyParseError& e) {
        return {1, "", std::string("body parse error: ") + e.what()};
    } catch (const std::exception& e) {
        return {1, "", e.what()};
    }
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Steiner and Weyl tube polynomials: synthesis, root location and checks"};
    app.require_subcommand(1);
    RunConfig c;
    c.bits = default_bits();
    const char* ci_env = std::getenv("CI");
    c.ci = ci_env && *ci_env;
    std::string format = "json";
    std::uint64_t seed = 0;

    auto common = [&](CLI::App* s, bool needs_body) {
        if (needs_body) s->add_option("body", c.body, "Body, e.g. ball:3, cube:2, adj(ball:2,1), prod(ball:1,cube:2)")->required();
        s->add_option("--bits", c.bits, "Working precision in bits (env TUBEPOLY_BITS)");
        s->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_option("--output,-o", c.output_path, "Write output to this path");
        s->add_flag("--ci", c.ci, "CI mode: seeds must be explicit");
    };
    auto* steiner_cmd = app.add_subcommand("steiner", "Steiner polynomial");
    common(steiner_cmd, true);
    steiner_cmd->add_option("--q", c.q, "Embed into q extra dimensions");
    auto* weyl_cmd = app.add_subcommand("weyl", "Weyl polynomial of the boundary");
    common(weyl_cmd, true);
    weyl_cmd->add_option("--p", c.weyl, "Index p or inf")->required();
    weyl_cmd->add_option("--q", c.q, "Embed into q extra dimensions");
    auto* classify_cmd = app.add_subcommand("classify", "Exact dissipativity or conservativeness");
    common(classify_cmd, true);
    classify_cmd->add_option("--weyl", c.weyl, "Classify the Weyl polynomial of this index");
    classify_cmd->add_option("--q", c.q, "Embed into q extra dimensions");
    classify_cmd->add_flag("--assert", c.assert_positive, "Exit with status 2 on a negative verdict");
    auto* jensen_cmd = app.add_subcommand("jensen", "Jensen polynomial of a generating family");
    common(jensen_cmd, false);
    jensen_cmd->add_option("--family", c.family, "Family tag, e.g. M_cube or W_ball(inf)")->required();
    jensen_cmd->add_option("--n", c.n, "Order")->required();
    auto* roots_cmd = app.add_subcommand("roots", "Numeric roots");
    common(roots_cmd, true);
    roots_cmd->add_option("--weyl", c.weyl, "Roots of the Weyl polynomial of this index");
    roots_cmd->add_option("--q", c.q, "Embed into q extra dimensions");
    auto* series_cmd = app.add_subcommand("series", "Coefficients of a generating family");
    common(series_cmd, false);
    series_cmd->add_option("--family", c.family, "Family tag")->required();
    series_cmd->add_option("--terms", c.terms, "Number of coefficients");
    auto* mc_cmd = app.add_subcommand("mcvol", "Monte-Carlo tube volume");
    common(mc_cmd, true);
    mc_cmd->add_option("--t", c.t, "Tube radius");
    mc_cmd->add_option("--samples", c.samples, "Sample count");
    mc_cmd->add_option("--seed", seed, "Random seed");
    mc_cmd->add_option("--q", c.q, "Embed into q extra dimensions");
    auto* report_cmd = app.add_subcommand("report", "Full dossier for one body");
    common(report_cmd, true);
    report_cmd->add_option("--samples", c.samples, "Monte-Carlo samples")->default_val(200000);
    report_cmd->add_option("--seed", seed, "Monte-Carlo seed");
    report_cmd->add_option("--t", c.t, "Monte-Carlo radius");
    report_cmd->add_option("--q", c.q, "Embed into q extra dimensions");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    for (auto* s : app.get_subcommands()) {
        c.command = s->get_name();
        if (s->get_option_no_throw("--seed") && s->get_option("--seed")->count() > 0) c.seed = seed;
    }
    c.format = format == "csv" ? OutputFormat::csv : format == "text" ? OutputFormat::text : OutputFormat::json;

    const RunResult r = run_command(c);
    if (!r.error.empty()) std::cerr << "error: " << r.error << "\n";
    if (!r.output.empty()) {
        if (c.output_path.empty()) {
            std::cout << r.output;
        } else {
            std::ofstream out(c.output_path);
            if (!out) {
                std::cerr << "error: cannot write " << c.output_path << "\n";
                return 1;
            }
            out << r.output;
        }
    }
    return r.exit_code;
}

}  // namespace tubepoly
