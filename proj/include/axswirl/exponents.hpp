#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace axswirl {

/// Integrability exponents (a, b, gamma) of the weighted condition on the
/// negative part of u_rho, plus the auxiliary exponents of the Hoelder chain.
///   p_hold = 1 + (2a + 3b)/(2ab - 2a - 3b),  s = 2a/b + 3          (b finite)
///   delta  = 1 - gamma - 3/a, p_hold = 2a/(2a - delta a - 3), s = 3 + delta a
///                                                                  (b infinite)
///   alpha  = s p/(2(p-1)),  beta = (2-p) s/(2(p-1)),  theta = 2/(s-3).
struct ExponentSet {
    double a = 0.0;
    double b = 0.0;  // may be +infinity
    double gamma = 0.0;
    double p_hold = 0.0;
    double s = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double theta = 0.0;
    std::optional<double> delta;  // only for b = infinity

    bool b_infinite() const noexcept;
};

/// Names of the violated hypotheses; empty means admissible.
std::vector<std::string> check_admissible(double a, double b, double gamma);

class ExponentError : public std::runtime_error {
public:
    ExponentError(const std::string& what, std::vector<std::string> violations)
        : std::runtime_error(what), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Throws ExponentError for inadmissible input or a = infinity (the growth
/// coefficient needs s > 3, which fails in that limit).
ExponentSet derive_exponents(double a, double b, double gamma);

struct ConjugatePair {
    std::string name;
    double first = 0.0;
    double second = 0.0;
    /// 1/first + 1/second - 1
    double defect() const noexcept { return 1.0 / first + 1.0 / second - 1.0; }
};

/// Every Hoelder/Young exponent pair used when bounding
/// integral u_rho^- u_phi^q / rho.
std::vector<ConjugatePair> holder_young_pairs(const ExponentSet& e);

/// Parses a decimal number or "inf"/"infinity"; throws ConfigurationError.
double parse_exponent(const std::string& text);

} // namespace axswirl
