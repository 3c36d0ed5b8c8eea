#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tubepoly/poly.hpp"
#include "tubepoly/roots.hpp"

namespace tubepoly {

enum class Verdict { dissipative, conservative, not_dissipative, not_conservative, degenerate_input };
/// "Dissipative", "Conservative", "NotDissipative", "NotConservative", "DegenerateInput".
std::string to_string(Verdict v);
bool is_negative(Verdict v);

enum class DeterminantMode {
    automatic,  // exact for small or rational input, intervals otherwise
    exact,
    interval,   // rigorous enclosures of increasing precision, exact fallback
};

struct DeterminantValue {
    std::string text;  // canonical PiScalar, or "[lo, hi]" for enclosures
    int sign = 0;
    bool exact = true;
    /// False when an enclosure still straddles zero.
    bool resolved = true;
};

struct ClassificationReport {
    Verdict verdict = Verdict::degenerate_input;
    std::string criterion;  // "dissipative" or "conservative"
    std::string method;
    std::vector<DeterminantValue> determinants;
    /// 1-based index of the first determinant that is not positive.
    std::optional<long> failing_index;
    std::string reason;
    /// Multiplicity of t = 0 that was factored out.
    long degenerate_order = 0;
    std::vector<std::string> annotations;
    std::vector<Root> witnesses;
    long bits = 0;
};

struct ClassifyOptions {
    DeterminantMode mode = DeterminantMode::automatic;
    /// Only the odd-indexed determinants are required to decide.
    bool lienard_chipart = false;
    /// Attach the roots of largest real part.
    bool numeric_witness = false;
    long witness_bits = 128;
    long start_bits = 128;
    long max_bits = 16384;
};

/// Delta_1..Delta_n of a_0 t^n + a_1 t^(n-1) + ... + a_n, exact.
std::vector<PiScalar> hurwitz_determinants(const std::vector<PiScalar>& a);
std::vector<mpq_class> hurwitz_determinants(const std::vector<mpq_class>& a);
/// Leading minors of the Hurwitz matrix by elimination; reference path.
std::vector<PiScalar> hurwitz_minors(const std::vector<PiScalar>& a);
/// D_1..D_2m from a_0, a_2, ..., a_2m (leading-first) via a_{2l+1} = (m-l) a_{2l}.
std::vector<PiScalar> conservativeness_determinants(const std::vector<PiScalar>& a_even);

/// Leading-first coefficient vector of P.
std::vector<PiScalar> leading_first(const PiPoly& p);

ClassificationReport classify_dissipative(const PiPoly& p, const ClassifyOptions& opts = {});
ClassificationReport classify_conservative(const PiPoly& p, const ClassifyOptions& opts = {});
/// Root-based check of the interlacing of the even and odd parts on the imaginary axis.
ClassificationReport hermite_biehler_check(const PiPoly& p, long bits = 128);

struct LogConcavityResult {
    bool pass = true;
    /// Middle index k with v_k^2 < v_{k-1} v_{k+1}.
    std::optional<long> failing_index;
    /// (p, q, r, s) with v_p v_s > v_q v_r, p <= q <= r <= s, p + s = q + r.
    std::optional<std::vector<long>> failing_product;
};

LogConcavityResult log_concavity_check(const std::vector<PiScalar>& v, bool products = false);

struct Inequality {
    std::string label;
    PiScalar lhs;
    PiScalar rhs;
    bool pass = false;
};

struct LowDimReport {
    long n = 0;
    bool weyl = false;
    std::vector<Inequality> inequalities;
    bool all_pass() const;
};

/// Steiner mode uses v_0..v_n, Weyl mode (n in {4,5}) the measures v_0..v_{n+1} of the solid.
LowDimReport low_dim_implications(const std::vector<PiScalar>& v, long n, bool weyl = false);

struct Counterexample {
    std::vector<mpq_class> v;
    long failing_index = 0;
    std::vector<mpq_class> determinants;
    long candidates = 0;
};

struct SearchResult {
    std::optional<Counterexample> witness;
    long candidates = 0;
};

/// Randomized search over positive log-concave v for which sum C(n,k) v_{n-k} t^k
/// has a nonpositive Hurwitz determinant.
SearchResult search_counterexample(long n, std::uint64_t seed, long budget, std::optional<long> target_index = std::nullopt);

/// sum_k C(n,k) v_{n-k} t^k with rational v.
PiPoly steiner_shape(const std::vector<mpq_class>& v);

}  // namespace tubepoly
