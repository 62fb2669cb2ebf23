#include "vdlab/spec_json.hpp"

#include "vdlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace vdlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double number(const Json& j, const char* key, double fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j[key].is_number()) {
        throw SpecError(std::string("field '") + key + "' must be a number");
    }
    return j[key].get<double>();
}

double required_number(const Json& j, const char* key)
{
    if (!j.contains(key)) {
        throw SpecError(std::string("missing field '") + key + "'");
    }
    return number(j, key, 0.0);
}

std::vector<double> number_list(const Json& j, const char* what)
{
    if (!j.is_array()) {
        throw SpecError(std::string(what) + " must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) {
            throw SpecError(std::string(what) + " must be an array of numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

void require_object(const Json& j, const char* what)
{
    if (!j.is_object()) {
        throw SpecError(std::string(what) + " must be a JSON object");
    }
}

NumericDensity density_measure(const Json& m)
{
    if (!m["density"].is_string()) {
        throw SpecError("measure 'density' must be a string id");
    }
    const std::string id = m["density"].get<std::string>();
    const double c = number(m, "c", 1.0);
    if (!(c > 0.0)) {
        throw SpecError("density constant c must be positive");
    }
    NumericDensity d;
    d.id = id;
    if (id == "tempered_stable") {
        const double alpha = required_number(m, "alpha");
        const double lambda = required_number(m, "lambda");
        if (!(alpha < 2.0) || !(lambda > 0.0)) {
            throw SpecError("tempered_stable needs alpha < 2 and lambda > 0");
        }
        d.density = [c, alpha, lambda](double r) { return c * std::pow(r, -1.0 - alpha) * std::exp(-lambda * r); };
        d.exponent_at_zero = -1.0 - alpha;
        d.exponent_at_infinity = -kInf;
    } else if (id == "exponential") {
        const double lambda = required_number(m, "lambda");
        if (!(lambda > 0.0)) {
            throw SpecError("exponential needs lambda > 0");
        }
        d.density = [c, lambda](double r) { return c * std::exp(-lambda * r); };
        d.exponent_at_zero = 0.0;
        d.exponent_at_infinity = -kInf;
    } else if (id == "power_tail") {
        const double alpha = required_number(m, "alpha");
        if (!(alpha > 0.0)) {
            throw SpecError("power_tail needs alpha > 0");
        }
        d.density = [c, alpha](double r) { return r > 1.0 ? c * std::pow(r, -1.0 - alpha) : 0.0; };
        d.exponent_at_zero = kInf;
        d.exponent_at_infinity = -1.0 - alpha;
    } else {
        throw SpecError("unknown density id '" + id + "' (tempered_stable, exponential, power_tail)");
    }
    return d;
}

} // namespace

Json load_json_argument(const std::string& text)
{
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        throw SpecError("empty JSON argument");
    }
    try {
        if (text[first] == '{' || text[first] == '[') {
            return Json::parse(text);
        }
        std::ifstream in(text);
        if (!in) {
            throw SpecError("cannot open '" + text + "'");
        }
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SpecError(std::string("invalid JSON: ") + e.what());
    }
}

LaplaceExponent exponent_from_json(const Json& j)
{
    require_object(j, "exponent spec");
    try {
        if (j.contains("catalog")) {
            if (!j["catalog"].is_string()) {
                throw SpecError("'catalog' must be a string");
            }
            std::map<std::string, double> params;
            if (j.contains("params")) {
                require_object(j["params"], "params");
                for (const auto& [k, v] : j["params"].items()) {
                    if (!v.is_number()) {
                        throw SpecError("parameter '" + k + "' must be a number");
                    }
                    params[k] = v.get<double>();
                }
            }
            const std::string name = j["catalog"].get<std::string>();
            bool known = false;
            for (const auto& e : catalog_entries()) {
                if (e.name == name) {
                    known = true;
                    for (const auto& [k, v] : params) {
                        (void)v;
                        if (std::find(e.param_names.begin(), e.param_names.end(), k) == e.param_names.end()) {
                            throw SpecError("catalog entry '" + name + "' has no parameter '" + k + "'");
                        }
                    }
                }
            }
            if (!known) {
                throw SpecError("unknown catalog entry '" + name + "'");
            }
            return make_catalog(name, params);
        }
        const double kappa = number(j, "kappa", 0.0);
        const double a = number(j, "a", 0.0);
        const double sigma2 = number(j, "sigma2", 0.0);
        LevyMeasureSpec spec;
        if (j.contains("measure")) {
            const Json& m = j["measure"];
            require_object(m, "measure");
            if (m.contains("atoms")) {
                spec.kind = MeasureKind::Atoms;
                if (!m["atoms"].is_array()) {
                    throw SpecError("atoms must be [[r, mass], ...]");
                }
                for (const auto& at : m["atoms"]) {
                    if (!at.is_array() || at.size() != 2 || !at[0].is_number() || !at[1].is_number()) {
                        throw SpecError("atoms must be [[r, mass], ...]");
                    }
                    spec.atoms.push_back({at[0].get<double>(), at[1].get<double>()});
                }
            } else if (m.contains("density")) {
                spec.kind = MeasureKind::NumericDensity;
                spec.numeric = density_measure(m);
            } else {
                throw SpecError("measure needs 'atoms' or 'density'");
            }
        }
        return LaplaceExponent::triplet(kappa, a, sigma2, spec);
    } catch (const SpecError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        // parameter range violations are input errors too
        throw SpecError(e.what());
    } catch (const Json::exception& e) {
        throw SpecError(e.what());
    }
}

LPEvenFunction lp_from_json(const Json& j)
{
    require_object(j, "LP function spec");
    LPEvenFunction f;
    f.c2 = number(j, "c2", 0.0);
    if (j.contains("zeros")) {
        f.zeros = number_list(j["zeros"], "zeros");
    }
    if (j.contains("tail")) {
        const Json& t = j["tail"];
        require_object(t, "tail");
        f.tail = LPTailRule{required_number(t, "kappa"), required_number(t, "p"), number(t, "shift", 0.0)};
    }
    try {
        f.validate();
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
    return f;
}

IsingModel ising_from_json(const Json& j)
{
    require_object(j, "Ising model spec");
    IsingModel m;
    const double n = required_number(j, "N");
    if (n != std::floor(n)) {
        throw SpecError("N must be an integer");
    }
    m.N = int(n);
    if (m.N < 1 || m.N > 12) {
        throw SpecError("N must lie in [1, 12]");
    }
    m.J.assign(m.N, std::vector<double>(m.N, 0.0));
    if (j.contains("J")) {
        if (!j["J"].is_array() || int(j["J"].size()) != m.N) {
            throw SpecError("J must be an N x N array");
        }
        for (int r = 0; r < m.N; ++r) {
            std::vector<double> row = number_list(j["J"][r], "J rows");
            if (int(row.size()) != m.N) {
                throw SpecError("J must be an N x N array");
            }
            m.J[r] = row;
        }
    }
    if (!j.contains("lambda")) {
        throw SpecError("missing field 'lambda'");
    }
    if (j["lambda"].is_number()) {
        m.lambda.assign(m.N, j["lambda"].get<double>());
    } else {
        m.lambda = number_list(j["lambda"], "lambda");
    }
    try {
        m.validate();
    } catch (const std::invalid_argument& e) {
        throw SpecError(e.what());
    }
    return m;
}

SymmetricDensity symmetric_density_from_json(const Json& j)
{
    require_object(j, "density spec");
    if (!j.contains("density") || !j["density"].is_string()) {
        throw SpecError("density spec needs a string 'density'");
    }
    const std::string id = j["density"].get<std::string>();
    const double pi = std::numbers::pi;
    SymmetricDensity d;
    d.label = id;
    if (id == "gaussian") {
        const double s = number(j, "sigma", 1.0);
        if (!(s > 0.0)) {
            throw SpecError("gaussian needs sigma > 0");
        }
        d.f = [s, pi](double x) { return std::exp(-0.5 * x * x / (s * s)) / (s * std::sqrt(2.0 * pi)); };
    } else if (id == "laplace") {
        const double b = number(j, "scale", 1.0);
        if (!(b > 0.0)) {
            throw SpecError("laplace needs scale > 0");
        }
        d.f = [b](double x) { return 0.5 / b * std::exp(-std::abs(x) / b); };
    } else if (id == "uniform") {
        const double h = number(j, "half_width", 1.0);
        if (!(h > 0.0)) {
            throw SpecError("uniform needs half_width > 0");
        }
        d.f = [h](double x) { return std::abs(x) <= h ? 0.5 / h : 0.0; };
        d.support = h;
    } else if (id == "arcsine") {
        const double theta = number(j, "theta", 0.0);
        if (!(theta >= 0.0 && theta < 0.5)) {
            throw SpecError("arcsine needs 0 <= theta < 1/2");
        }
        d.f = [theta](double x) { return arcsine_density(theta, x); };
        d.support = 2.0;
    } else if (id == "quartic") {
        // int e^{-x^4} dx = 2 Gamma(5/4)
        const double k = 1.0 / (2.0 * std::tgamma(1.25));
        d.f = [k](double x) { return k * std::exp(-x * x * x * x); };
    } else if (id == "newman") {
        const double m = number(j, "m", 0.0);
        if (m < 0.0 || m != std::floor(m)) {
            throw SpecError("newman needs an integer m >= 0");
        }
        std::vector<double> a;
        if (j.contains("a")) {
            a = number_list(j["a"], "a");
        }
        try {
            NewmanDensity nd(int(m), number(j, "alpha", 1.0), number(j, "beta", 0.0), a);
            d = nd.as_density();
        } catch (const std::invalid_argument& e) {
            throw SpecError(e.what());
        } catch (const std::domain_error& e) {
            throw SpecError(e.what());
        }
    } else {
        throw SpecError("unknown density '" + id + "' (gaussian, laplace, uniform, arcsine, quartic, newman)");
    }
    return d;
}

Json exponent_to_json(const LaplaceExponent& psi)
{
    Json params = Json::object();
    for (const auto& [k, v] : psi.params()) {
        params[k] = v;
    }
    return Json{{"name", psi.name()},        {"params", params},       {"description", psi.describe()},
                {"theta", psi.theta()},      {"kappa", psi.kappa()},   {"drift", psi.drift()},
                {"sigma2", psi.sigma2()}};
}

Json to_json(const CheckResult& c)
{
    return Json{{"check", c.check},
                {"residual", std::isfinite(c.residual) ? Json(c.residual) : Json(nullptr)},
                {"tolerance", c.tolerance},
                {"pass", c.pass},
                {"detail", c.detail}};
}

Json to_json(const PairReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back(to_json(c));
    }
    return Json{{"report", "pair_verification"},
                {"exponent", r.exponent},
                {"in_N_D", r.in_N_D},
                {"reason", r.reason},
                {"all_pass", r.all_pass()},
                {"checks", checks}};
}

Json to_json(const ZeroReport& r)
{
    return Json{{"report", "zeros"},
                {"radius", r.radius},
                {"real_zeros", r.real_zeros},
                {"disk_count", r.disk_count},
                {"classification", to_string(r.classification)},
                {"warnings", r.warnings}};
}

Json to_json(const OrderTypeEstimate& e)
{
    return Json{{"rho", e.rho},
                {"lower_index", e.lower_index},
                {"type_lower_bound", e.type_lower_bound},
                {"window_spread", e.window_spread},
                {"slowly_varying_flag", e.slowly_varying_flag}};
}

Json to_json(const LeeYangReport& r)
{
    auto pairs = [](const std::vector<std::complex<double>>& v) {
        Json a = Json::array();
        for (const auto& z : v) {
            a.push_back(Json::array({z.real(), z.imag()}));
        }
        return a;
    };
    Json out{{"report", "leeyang"},
             {"uniform_field", r.uniform},
             {"warnings", r.warnings}};
    if (r.uniform) {
        out["coefficients"] = r.coefficients;
        out["w_roots"] = pairs(r.w_roots);
        out["z_roots"] = pairs(r.z_roots);
        out["max_unit_circle_deviation"] = r.max_unit_circle_deviation;
        out["max_backward_error"] = r.max_backward_error;
    } else {
        out["height"] = r.height;
        out["imaginary_axis_zeros"] = r.imaginary_axis_zeros;
        out["rectangle_zeros"] = r.rectangle_zeros;
        out["all_on_axis"] = r.all_on_axis;
    }
    return out;
}

Json to_json(const BernsteinBattery& b)
{
    Json conds = Json::array();
    for (const auto& c : b.conditions) {
        conds.push_back(Json{{"condition", c.name},
                             {"pass", c.pass},
                             {"first_violation", c.first_violation},
                             {"worst", c.worst}});
    }
    return Json{{"all_pass", b.all_pass()}, {"conditions", conds}};
}

namespace {

bool type_matches(const Json& v, const std::string& t)
{
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "number") return v.is_number();
    if (t == "integer") return v.is_number_integer() || (v.is_number_float() && v.get<double>() == std::floor(v.get<double>()));
    return false;
}

void validate_node(const Json& v, const Json& s, const std::string& path, std::vector<std::string>& errs)
{
    const std::string where = path.empty() ? "/" : path;
    if (s.contains("type")) {
        bool ok = false;
        if (s["type"].is_array()) {
            for (const auto& t : s["type"]) {
                ok = ok || type_matches(v, t.get<std::string>());
            }
        } else {
            ok = type_matches(v, s["type"].get<std::string>());
        }
        if (!ok) {
            errs.push_back(where + ": expected type " + s["type"].dump());
            return;
        }
    }
    if (s.contains("enum")) {
        bool found = false;
        for (const auto& e : s["enum"]) {
            found = found || e == v;
        }
        if (!found) {
            errs.push_back(where + ": value " + v.dump() + " not in " + s["enum"].dump());
        }
    }
    if (v.is_number()) {
        if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>()) {
            errs.push_back(where + ": below minimum");
        }
        if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>()) {
            errs.push_back(where + ": above maximum");
        }
    }
    if (v.is_object()) {
        if (s.contains("required")) {
            for (const auto& k : s["required"]) {
                if (!v.contains(k.get<std::string>())) {
                    errs.push_back(where + ": missing required '" + k.get<std::string>() + "'");
                }
            }
        }
        const bool closed = s.contains("additionalProperties") && s["additionalProperties"].is_boolean() &&
                            !s["additionalProperties"].get<bool>();
        for (const auto& [k, child] : v.items()) {
            if (s.contains("properties") && s["properties"].contains(k)) {
                validate_node(child, s["properties"][k], path + "/" + k, errs);
            } else if (closed) {
                errs.push_back(where + ": unexpected property '" + k + "'");
            }
        }
    }
    if (v.is_array()) {
        if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) {
            errs.push_back(where + ": fewer than " + s["minItems"].dump() + " items");
        }
        if (s.contains("items")) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                validate_node(v[i], s["items"], path + "/" + std::to_string(i), errs);
            }
        }
    }
}

} // namespace

std::vector<std::string> validate_against_schema(const Json& doc, const Json& schema)
{
    std::vector<std::string> errs;
    validate_node(doc, schema, "", errs);
    return errs;
}

} // namespace vdlab
