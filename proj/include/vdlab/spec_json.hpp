#pragma once

#include "vdlab/dantzig.hpp"
#include "vdlab/entire.hpp"
#include "vdlab/levy.hpp"
#include "vdlab/lp.hpp"
#include "vdlab/xi.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace vdlab {

using Json = nlohmann::json;

/// Malformed input document (wrong shape, unknown name, missing field).
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parses `text` as inline JSON when it starts with '{' or '[', otherwise
/// reads and parses the file it names.
Json load_json_argument(const std::string& text);

/// Exponent specs:
///   {"catalog": "bessel", "params": {"nu": 1}}
///   {"kappa": k, "a": a, "sigma2": s, "measure": {"atoms": [[r, m], ...]}}
///   {"kappa": k, "a": a, "sigma2": s, "measure": {"density": id, ...}}
/// Density ids: tempered_stable (c r^{-1-alpha} e^{-lambda r}),
/// exponential (c e^{-lambda r}), power_tail (c r^{-1-alpha} on r > 1).
/// The measure may be omitted for a pure Brownian exponent.
LaplaceExponent exponent_from_json(const Json& j);

/// {"c2": c, "zeros": [...], "tail": {"kappa": k, "p": p, "shift": s}}.
LPEvenFunction lp_from_json(const Json& j);

/// {"N": n, "J": [[...], ...], "lambda": [...] or a single number}.
/// A missing J means no coupling.
IsingModel ising_from_json(const Json& j);

/// Symmetric densities for tilting and PF scans:
///   {"density": "gaussian", "sigma": s}
///   {"density": "laplace", "scale": b}
///   {"density": "uniform", "half_width": h}
///   {"density": "arcsine", "theta": t}      (law on [-2, 2])
///   {"density": "quartic"}                  (proportional to e^{-x^4})
///   {"density": "newman", "m": m, "alpha": a, "beta": b, "a": [...]}
SymmetricDensity symmetric_density_from_json(const Json& j);

Json exponent_to_json(const LaplaceExponent& psi);
Json to_json(const CheckResult& c);
Json to_json(const PairReport& r);
Json to_json(const ZeroReport& r);
Json to_json(const OrderTypeEstimate& e);
Json to_json(const LeeYangReport& r);
Json to_json(const BernsteinBattery& b);

/// Checks `doc` against a JSON schema restricted to the keywords used by the
/// shipped schemas: type, required, properties, additionalProperties (bool),
/// items, enum, minimum, maximum, minItems. Returns the violations, each
/// prefixed with a JSON pointer; empty means valid.
std::vector<std::string> validate_against_schema(const Json& doc, const Json& schema);

} // namespace vdlab
