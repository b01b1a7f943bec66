#include "axswirl/exponents.hpp"

#include "axswirl/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace axswirl {

bool ExponentSet::b_infinite() const noexcept { return std::isinf(b); }

std::vector<std::string> check_admissible(double a, double b, double gamma) {
    std::vector<std::string> out;
    if (std::isnan(a) || std::isnan(b) || !std::isfinite(gamma)) {
        out.emplace_back("a, b and gamma must be numbers (gamma finite)");
        return out;
    }
    if (!(a > 1.5)) out.emplace_back("a must be > 3/2");
    if (!(b > 1.0)) out.emplace_back("b must be > 1");
    if (!out.empty()) return out;

    const double three_over_a = 3.0 / a;  // 0 for a = inf
    if (std::isinf(b)) {
        if (!(three_over_a + gamma < 1.0)) out.emplace_back("3/a+gamma must be < 1 when b = inf");
        return out;
    }
    const double scaling = three_over_a + 2.0 / b;
    if (!(scaling + gamma <= 1.0)) out.emplace_back("3/a+2/b+gamma must be <= 1");
    if (!(scaling < 2.0)) out.emplace_back("3/a+2/b must be < 2");
    return out;
}

ExponentSet derive_exponents(double a, double b, double gamma) {
    auto violations = check_admissible(a, b, gamma);
    if (!violations.empty()) throw ExponentError("inadmissible exponents", violations);
    if (std::isinf(a))
        throw ExponentError("a = inf is not supported by the growth coefficient d(t) (s -> 3)",
                            {"a = inf unsupported"});

    ExponentSet e;
    e.a = a;
    e.b = b;
    e.gamma = gamma;
    if (std::isinf(b)) {
        const double delta = 1.0 - gamma - 3.0 / a;
        if (!(delta > 0.0 && delta < (2.0 * a - 3.0) / a))
            throw ExponentError("delta outside (0, (2a-3)/a)",
                                {"delta must lie in (0, (2a-3)/a)"});
        e.delta = delta;
        e.p_hold = 2.0 * a / (2.0 * a - delta * a - 3.0);
        e.s = 3.0 + delta * a;
    } else {
        const double denom = 2.0 * a * b - 2.0 * a - 3.0 * b;
        if (!(denom > 0.0))
            throw ContractViolation("2ab - 2a - 3b <= 0 for admissible exponents");
        e.p_hold = 1.0 + (2.0 * a + 3.0 * b) / denom;
        e.s = 2.0 * a / b + 3.0;
    }
    const double p = e.p_hold;
    e.alpha = e.s * p / (2.0 * (p - 1.0));
    e.beta = (2.0 - p) * e.s / (2.0 * (p - 1.0));
    e.theta = 2.0 / (e.s - 3.0);
    return e;
}

std::vector<ConjugatePair> holder_young_pairs(const ExponentSet& e) {
    const double p = e.p_hold;
    const double s = e.s;
    return {
        {"holder_p", p / (p - 1.0), p},
        {"young_p", p / (p - 1.0), p},
        {"holder_s", s / 2.0, s / (s - 2.0)},
        {"holder_inner", (s - 2.0) / (s - 3.0), s - 2.0},
        {"young_s", s / 3.0, s / (s - 3.0)},
    };
}

double parse_exponent(const std::string& text) {
    std::string t;
    for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity")
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size() || !std::isfinite(v)) throw ConfigurationError("bad number");
        return v;
    } catch (const std::logic_error&) {
        throw ConfigurationError("malformed number: '" + text + "'");
    } catch (const ConfigurationError&) {
        throw ConfigurationError("malformed number: '" + text + "'");
    }
}

} // namespace axswirl
