#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "tubepoly/bodies.hpp"
#include "tubepoly/oracle.hpp"
#include "tubepoly/roots.hpp"
#include "tubepoly/stability.hpp"

namespace tubepoly {

using Json = nlohmann::ordered_json;

/// Decimal rendering of an enclosure midpoint with the digits the precision supports.
std::string decimal_string(const PiScalar& a, long bits);

Json precision_json(long bits, bool exact);
Json poly_json(const PiPoly& p, long bits);
Json classification_json(const ClassificationReport& r);
Json roots_json(const RootSet& r);
Json mc_json(const McEstimate& e, const PiPoly& steiner_poly, double t);

struct DossierOptions {
    long bits = 128;
    long samples = 200000;
    std::uint64_t seed = 1;
    double t = 0.5;
    bool monte_carlo = true;
};

/// Everything known about one body: polynomials, measures, verdicts, roots and an MC check.
Json dossier(const BodySpec& body, const DossierOptions& opts);

}  // namespace tubepoly
