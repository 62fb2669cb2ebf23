// vdlab: batch front-end for van Dantzig pair computations.
//
// Exit codes: 0 success, 1 computation failure (JSON error body on stdout),
// 2 usage error or malformed input.

#include "vdlab/bernstein.hpp"
#include "vdlab/catalog.hpp"
#include "vdlab/dantzig.hpp"
#include "vdlab/entire.hpp"
#include "vdlab/levy.hpp"
#include "vdlab/lp.hpp"
#include "vdlab/spec_json.hpp"
#include "vdlab/xi.hpp"

#include "CLI11.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#ifndef VDLAB_VERSION
#define VDLAB_VERSION "0.0.0"
#endif
#ifndef VDLAB_SCHEMA_DIR
#define VDLAB_SCHEMA_DIR "schemas"
#endif

using namespace vdlab;

namespace {

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Grid {
    double lo = 0.0, hi = 0.0;
    int count = 0;
    double at(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
};

Grid parse_grid(const std::string& s, Grid fallback)
{
    if (s.empty()) {
        return fallback;
    }
    Grid g;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.count) || c1 != ':' || c2 != ':' || !in.eof() || g.count < 1 ||
        g.hi < g.lo || g.count > 1000000) {
        throw Usage("--grid expects min:max:count with min <= max and 1 <= count <= 1e6");
    }
    return g;
}

std::string fmt(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& body)
{
    int workers = std::max(1, std::min(threads, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < n; i += workers) {
                    body(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

struct Options {
    std::string format;
    std::string output;
    bool reproducible = false;
    int threads = 0;
    std::uint64_t seed = 1;
    std::string grid;
    std::vector<std::string> tolerances;

    std::string catalog;
    std::string spec;
    std::optional<double> nu, a, b, alpha, beta, rho, gamma;

    double radius = 8.0;
    int max_n = 8;
    std::string law = "D";
    int p = 1, k = 1;
    int samples = 0;
    double lambda = 0.0;
    int pf_order = 0;
    int draws = 200;
    int n_max = 30;
    int series_order = 25;
    std::string schema;
    std::string input;
};

class Runner {
public:
    Runner(Options o, std::string command) : o_(std::move(o)), command_(std::move(command))
    {
        if (o_.threads <= 0) {
            if (const char* env = std::getenv("VD_THREADS")) {
                o_.threads = std::atoi(env);
            }
        }
        if (o_.threads <= 0) {
            o_.threads = int(std::max(1u, std::thread::hardware_concurrency()));
        }
        parse_tolerances();
    }

    int run();

private:
    Options o_;
    std::string command_;
    std::map<std::string, double> tol_;
    std::string entry_ = "none";
    std::string params_ = "";

    std::string format(const std::string& dflt) const { return o_.format.empty() ? dflt : o_.format; }

    void parse_tolerances()
    {
        for (const auto& t : o_.tolerances) {
            auto eq = t.find('=');
            if (eq == std::string::npos) {
                throw Usage("--tol expects name=value");
            }
            try {
                tol_[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
            } catch (const std::exception&) {
                throw Usage("--tol expects name=value with a numeric value");
            }
        }
    }

    double tol(const std::string& name, double dflt) const
    {
        auto it = tol_.find(name);
        return it == tol_.end() ? dflt : it->second;
    }

    void reject_unknown_tolerances(std::initializer_list<const char*> known) const
    {
        for (const auto& [k, v] : tol_) {
            (void)v;
            bool ok = false;
            for (const char* n : known) {
                ok = ok || k == n;
            }
            if (!ok) {
                throw Usage("unknown tolerance '" + k + "' for " + command_);
            }
        }
    }

    std::string tolerance_string(const std::map<std::string, double>& used) const
    {
        std::string s;
        for (const auto& [k, v] : used) {
            s += (s.empty() ? "" : ",") + k + "=" + fmt(v);
        }
        return "{" + s + "}";
    }

    std::string timestamp() const
    {
        std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        return buf;
    }

    Json provenance(const std::map<std::string, double>& tolerances) const
    {
        Json p{{"version", VDLAB_VERSION}, {"command", command_}, {"entry", entry_}, {"params", params_},
               {"tolerances", tolerances}, {"seed", o_.seed}};
        if (!o_.reproducible) {
            p["generated"] = timestamp();
        }
        return p;
    }

    void write(const std::string& text) const
    {
        if (o_.output.empty() || o_.output == "-") {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream out(o_.output, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write '" + o_.output + "'");
        }
        out << text;
    }

    void emit_json(Json doc, const std::map<std::string, double>& tolerances) const
    {
        doc["provenance"] = provenance(tolerances);
        write(doc.dump(2) + "\n");
    }

    void emit_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                  const std::map<std::string, double>& tolerances,
                  const std::vector<std::string>& extra_comments = {}) const
    {
        std::ostringstream s;
        s << "# vdlab " << VDLAB_VERSION << " command=" << command_ << " entry=" << entry_ << " params={"
          << params_ << "} tolerances=" << tolerance_string(tolerances) << " seed=" << o_.seed << "\n";
        for (const auto& c : extra_comments) {
            s << "# " << c << "\n";
        }
        if (!o_.reproducible) {
            s << "# generated=" << timestamp() << "\n";
        }
        for (std::size_t i = 0; i < columns.size(); ++i) {
            s << (i ? "," : "") << columns[i];
        }
        s << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                s << (i ? "," : "") << fmt(r[i]);
            }
            s << "\n";
        }
        write(s.str());
    }

    void require_format(std::initializer_list<const char*> allowed) const
    {
        if (o_.format.empty()) {
            return;
        }
        for (const char* f : allowed) {
            if (o_.format == f) {
                return;
            }
        }
        throw Usage("--format " + o_.format + " is not available for " + command_);
    }

    LaplaceExponent exponent()
    {
        if (!o_.catalog.empty() && !o_.spec.empty()) {
            throw Usage("give either --catalog or --spec, not both");
        }
        Json spec;
        if (!o_.catalog.empty()) {
            Json params = Json::object();
            auto put = [&](const char* name, const std::optional<double>& v) {
                if (v) {
                    params[name] = *v;
                }
            };
            put("nu", o_.nu);
            put("a", o_.a);
            put("b", o_.b);
            put("alpha", o_.alpha);
            put("beta", o_.beta);
            put("rho", o_.rho);
            put("gamma", o_.gamma);
            spec = Json{{"catalog", o_.catalog}, {"params", params}};
        } else if (!o_.spec.empty()) {
            spec = load_json_argument(o_.spec);
        } else {
            throw Usage(command_ + " needs --catalog NAME or --spec JSON");
        }
        LaplaceExponent psi = exponent_from_json(spec);
        entry_ = spec.contains("catalog") ? spec["catalog"].get<std::string>() : "triplet";
        std::string p;
        for (const auto& [k, v] : psi.params()) {
            p += (p.empty() ? "" : ",") + k + "=" + fmt(v);
        }
        if (!spec.contains("catalog")) {
            p = spec.dump();
        }
        params_ = p;
        return psi;
    }

    Json input_document(const char* what)
    {
        if (o_.spec.empty()) {
            throw Usage(command_ + " needs --spec with the " + std::string(what));
        }
        Json j = load_json_argument(o_.spec);
        entry_ = what;
        params_ = j.dump();
        return j;
    }

    int cmd_catalog();
    int cmd_eval();
    int cmd_factorize();
    int cmd_zeros();
    int cmd_density();
    int cmd_moments();
    int cmd_lukacs();
    int cmd_pair_verify();
    int cmd_lp();
    int cmd_leeyang();
    int cmd_tilt();
    int cmd_xi(const std::string& sub);
    int cmd_validate();
};

int Runner::cmd_catalog()
{
    require_format({"csv", "json"});
    reject_unknown_tolerances({});
    if (format("json") == "json") {
        Json list = Json::array();
        for (const auto& e : catalog_entries()) {
            list.push_back(Json{{"name", e.name},
                                {"psi", e.psi_formula},
                                {"params", e.param_names},
                                {"constraints", e.constraints},
                                {"defaults", e.defaults}});
        }
        emit_json(Json{{"report", "catalog"}, {"entries", list}}, {});
        return 0;
    }
    std::ostringstream s;
    s << "# vdlab " << VDLAB_VERSION << " command=catalog entry=none params={} tolerances={} seed=" << o_.seed
      << "\n";
    if (!o_.reproducible) {
        s << "# generated=" << timestamp() << "\n";
    }
    s << "name,psi,params,constraints\n";
    for (const auto& e : catalog_entries()) {
        std::string ps;
        for (const auto& p : e.param_names) {
            ps += (ps.empty() ? "" : ";") + p;
        }
        s << e.name << ",\"" << e.psi_formula << "\"," << ps << ",\"" << e.constraints << "\"\n";
    }
    write(s.str());
    return 0;
}

int Runner::cmd_eval()
{
    require_format({"csv", "json"});
    reject_unknown_tolerances({"series_eps"});
    LaplaceExponent psi = exponent();
    const double eps = tol("series_eps", 1e-15);
    EntirePair pair(psi, eps);
    Grid g = parse_grid(o_.grid, {0.0, 5.0, 51});
    std::vector<std::vector<double>> rows(g.count);
    parallel_for(g.count, o_.threads, [&](int i) {
        double t = g.at(i);
        double J = eval_J(pair, t);
        double I = eval_I(pair, t);
        rows[i] = {t, J, I, J / I};
    });
    std::map<std::string, double> tols{{"series_eps", eps}};
    if (format("csv") == "csv") {
        emit_csv({"t", "J", "I", "F"}, rows, tols);
    } else {
        Json r = Json::array();
        for (const auto& row : rows) {
            r.push_back(Json{{"t", row[0]}, {"J", row[1]}, {"I", finite_or_null(row[2])}, {"F", row[3]}});
        }
        emit_json(Json{{"report", "eval"}, {"exponent", exponent_to_json(psi)}, {"rows", r}}, tols);
    }
    return 0;
}

int Runner::cmd_factorize()
{
    require_format({"csv", "json"});
    reject_unknown_tolerances({});
    LaplaceExponent psi = exponent();
    auto [theta, phi] = wiener_hopf(psi);
    EntirePair pair(psi);
    std::vector<std::vector<double>> rows;
    for (int n = 1; n <= std::max(1, o_.max_n); ++n) {
        double w_psi = n == 1 ? 1.0 : std::exp(pair.log_w_psi(n - 1));
        rows.push_back({double(n), w_psi, w_phi_integer(phi, n), moments_exp_functional(phi, n)});
    }
    double gphi = std::nan("");
    std::string gphi_note;
    try {
        gphi = gamma_phi(phi);
    } catch (const ConvergenceError& e) {
        gphi_note = e.what();
    }
    if (format("csv") == "csv") {
        emit_csv({"n", "W_psi", "W_phi", "moment"}, rows, {},
                 {"theta=" + fmt(theta) + " phi(0)=" + fmt(phi(0.0)) + " gamma_phi=" + fmt(gphi),
                  "moment = E[I_phi^n] = n!/W_phi(n+1)"});
    } else {
        Json r = Json::array();
        for (const auto& row : rows) {
            r.push_back(Json{{"n", int(row[0])},
                             {"W_psi", finite_or_null(row[1])},
                             {"W_phi", finite_or_null(row[2])},
                             {"moment", finite_or_null(row[3])}});
        }
        Json doc{{"report", "factorization"}, {"exponent", exponent_to_json(psi)}, {"theta", theta},
                 {"phi_at_zero", phi(0.0)},    {"gamma_phi", finite_or_null(gphi)}, {"rows", r}};
        if (!gphi_note.empty()) {
            doc["gamma_phi_note"] = gphi_note;
        }
        emit_json(doc, {});
    }
    return 0;
}

int Runner::cmd_zeros()
{
    require_format({"csv", "json"});
    reject_unknown_tolerances({});
    LaplaceExponent psi = exponent();
    if (!(o_.radius > 0.0)) {
        throw Usage("--radius must be positive");
    }
    EntirePair pair(psi);
    ZeroReport z = zero_report(pair, o_.radius);
    if (format("json") == "json") {
        Json doc = to_json(z);
        doc["exponent"] = exponent_to_json(psi);
        try {
            doc["order"] = to_json(order_estimate(pair));
        } catch (const std::exception& e) {
            doc["warnings"].push_back(std::string("order estimate unavailable: ") + e.what());
        }
        emit_json(doc, {});
    } else {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < z.real_zeros.size(); ++k) {
            rows.push_back({double(k + 1), z.real_zeros[k]});
        }
        emit_csv({"k", "zero_k"}, rows, {},
                 {"radius=" + fmt(z.radius) + " disk_count=" + std::to_string(z.disk_count) +
                  " classification=" + to_string(z.classification)});
    }
    return 0;
}

int Runner::cmd_density()
{
    require_format({"csv"});
    reject_unknown_tolerances({});
    LaplaceExponent psi = exponent();
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;
    if (o_.law == "D") {
        MellinDensity f(psi);
        double edge = f.support_edge();
        if (f.atomic()) {
            throw std::runtime_error("D is the two-point law at +-" + fmt(f.atom_location()) + "; no density");
        }
        Grid g = parse_grid(o_.grid, {0.0, std::isfinite(edge) ? edge : 4.0, 41});
        rows.resize(g.count);
        parallel_for(g.count, o_.threads, [&](int i) {
            double x = g.at(i);
            rows[i] = {x, f(x)};
        });
        notes.push_back("provenance=" + to_string(Provenance::MellinBarnes) + " law=D support_edge=" + fmt(edge));
        for (const auto& w : f.warnings()) {
            notes.push_back("warning: " + w);
        }
    } else if (o_.law == "Dbar") {
        DensityGrid d = density_Dbar_fourier(psi);
        Grid g = parse_grid(o_.grid, {0.0, d.support_hi, 0});
        for (std::size_t i = 0; i < d.x.size(); ++i) {
            if (g.count == 0 || (d.x[i] >= g.lo && d.x[i] <= g.hi)) {
                rows.push_back({d.x[i], d.f[i]});
            }
        }
        notes.push_back("provenance=" + to_string(d.provenance) + " law=Dbar normalization_residual=" +
                        fmt(d.normalization_residual) + " (x are the quadrature nodes inside the grid range)");
        for (const auto& n : d.notes) {
            notes.push_back("note: " + n);
        }
    } else {
        throw Usage("--law must be D or Dbar");
    }
    emit_csv({"x", "f(x)"}, rows, {}, notes);
    return 0;
}

int Runner::cmd_moments()
{
    require_format({"csv", "json"});
    reject_unknown_tolerances({});
    LaplaceExponent psi = exponent();
    auto [theta, phi] = wiener_hopf(psi);
    std::vector<std::vector<double>> rows;
    for (int n = 0; n <= std::max(0, o_.max_n); ++n) {
        double j = theta < 1.0 ? arcsine_moment(theta, n) : std::nan("");
        rows.push_back({double(n), moment_D(psi, n), moments_exp_functional(phi, n), j});
    }
    if (format("csv") == "csv") {
        emit_csv({"n", "E_D_2n", "E_Iphi_n", "E_J_2n"}, rows, {},
                 {"theta=" + fmt(theta) + " E[D^2n] = E[I_phi^n] E[J_theta^2n]"});
    } else {
        Json r = Json::array();
        for (const auto& row : rows) {
            r.push_back(Json{{"n", int(row[0])},
                             {"E_D_2n", finite_or_null(row[1])},
                             {"E_Iphi_n", finite_or_null(row[2])},
                             {"E_J_2n", finite_or_null(row[3])}});
        }
        emit_json(Json{{"report", "moments"}, {"exponent", exponent_to_json(psi)}, {"theta", theta}, {"rows", r}},
                  {});
    }
    return 0;
}

int Runner::cmd_lukacs()
{
    require_format({"csv"});
    reject_unknown_tolerances({"fd_step"});
    LaplaceExponent psi = exponent();
    if (o_.p != 1 && o_.p != 2) {
        throw Usage("--p must be 1 or 2");
    }
    if (o_.k < 1) {
        throw Usage("--k must be >= 1");
    }
    const double h = tol("fd_step", 1e-3);
    EntirePair pair(psi);
    EntirePair image = lukacs_map(pair, o_.p, o_.k);
    Grid g = parse_grid(o_.grid, {0.1, 3.0, 30});
    std::vector<std::vector<double>> rows(g.count);
    auto J = [&pair](double t) { return eval_J(pair, t); };
    parallel_for(g.count, o_.threads, [&](int i) {
        double t = g.at(i);
        double v = eval_J(image, t);
        // the single-step finite-difference image is only defined for k = 1
        double fd = o_.k == 1 ? lukacs_finite_difference(J, o_.p, t, h) : std::nan("");
        rows[i] = {t, v, fd, o_.k == 1 ? v - fd : std::nan("")};
    });
    emit_csv({"t", "J_image", "finite_difference", "difference"}, rows, {{"fd_step", h}},
             {"p=" + std::to_string(o_.p) + " k=" + std::to_string(o_.k) + " image exponent: " +
              image.psi().describe()});
    return 0;
}

int Runner::cmd_pair_verify()
{
    require_format({"csv", "json"});
    reject_unknown_tolerances({"structural", "psd", "nonnegativity", "moments", "roundtrip", "normalization",
                               "support"});
    LaplaceExponent psi = exponent();
    PairTolerances t;
    t.structural = tol("structural", t.structural);
    t.psd = tol("psd", t.psd);
    t.nonnegativity = tol("nonnegativity", t.nonnegativity);
    t.moments = tol("moments", t.moments);
    t.roundtrip = tol("roundtrip", t.roundtrip);
    t.normalization = tol("normalization", t.normalization);
    t.support = tol("support", t.support);
    PairGrids grids;
    grids.seed = o_.seed;
    PairReport r = verify_pair(psi, grids, t);
    std::map<std::string, double> used{{"structural", t.structural}, {"psd", t.psd},
                                       {"nonnegativity", t.nonnegativity}, {"moments", t.moments},
                                       {"roundtrip", t.roundtrip}, {"normalization", t.normalization},
                                       {"support", t.support}};
    if (format("json") == "json") {
        emit_json(to_json(r), used);
    } else {
        std::ostringstream s;
        s << "# vdlab " << VDLAB_VERSION << " command=" << command_ << " entry=" << entry_ << " params={"
          << params_ << "} tolerances=" << tolerance_string(used) << " seed=" << o_.seed << "\n";
        if (!o_.reproducible) {
            s << "# generated=" << timestamp() << "\n";
        }
        s << "check,residual,tolerance,pass\n";
        for (const auto& c : r.checks) {
            s << c.check << "," << fmt(c.residual) << "," << fmt(c.tolerance) << "," << (c.pass ? 1 : 0) << "\n";
        }
        write(s.str());
    }
    return 0;
}

int Runner::cmd_lp()
{
    require_format({"csv", "json"});
    reject_unknown_tolerances({});
    LPEvenFunction f = o_.spec.empty() ? LPEvenFunction::cosine() : lp_from_json(input_document("LP function"));
    if (o_.spec.empty()) {
        entry_ = "LP function";
        params_ = "cosine";
    }
    Grid g = parse_grid(o_.grid, {0.0, 3.0, 31});
    std::optional<NZSample> sample;
    if (o_.samples > 0) {
        sample = simulate_nz(f, o_.samples, o_.seed);
    }
    std::vector<std::vector<double>> rows(g.count);
    parallel_for(g.count, o_.threads, [&](int i) {
        double t = g.at(i);
        std::vector<double> row{t, eval_lp(f, t), reciprocal_cf(f, t)};
        if (sample) {
            row.push_back(sample->empirical_cf(t));
            row.push_back(sample->cf_standard_error(t));
        }
        rows[i] = row;
    });
    std::vector<double> psd_grid;
    for (int i = 0; i < 32; ++i) {
        psd_grid.push_back(-5.0 + 10.0 * i / 31.0);
    }
    double min_eig = bochner_psd_test([&f](double t) { return reciprocal_cf(f, t); }, psd_grid);
    std::vector<std::string> cols{"t", "phi", "reciprocal_cf"};
    if (sample) {
        cols.push_back("empirical_cf");
        cols.push_back("cf_standard_error");
    }
    if (format("csv") == "csv") {
        std::vector<std::string> notes{"reciprocal_cf Gram matrix min eigenvalue on 32 points in [-5,5]: " +
                                       fmt(min_eig)};
        if (sample) {
            notes.push_back("samples=" + std::to_string(o_.samples) + " mean=" + fmt(sample->mean) +
                            " variance=" + fmt(sample->variance) + " target_variance=" +
                            fmt(sample->target_variance));
        }
        emit_csv(cols, rows, {}, notes);
    } else {
        Json r = Json::array();
        for (const auto& row : rows) {
            Json o;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                o[cols[c]] = finite_or_null(row[c]);
            }
            r.push_back(o);
        }
        Json doc{{"report", "lp"}, {"psd_min_eigenvalue", min_eig}, {"rows", r}};
        if (sample) {
            doc["sample"] = Json{{"draws", o_.samples},
                                 {"mean", sample->mean},
                                 {"mean_standard_error", sample->mean_standard_error()},
                                 {"variance", sample->variance},
                                 {"variance_standard_error", sample->variance_standard_error()},
                                 {"target_variance", sample->target_variance},
                                 {"explicit_terms", sample->explicit_terms},
                                 {"gaussian_remainder_variance", sample->gaussian_remainder_variance}};
        }
        emit_json(doc, {});
    }
    return 0;
}

int Runner::cmd_leeyang()
{
    require_format({"csv", "json"});
    reject_unknown_tolerances({"height"});
    IsingModel m = ising_from_json(input_document("Ising model"));
    const double height = tol("height", 20.0);
    LeeYangReport r = leeyang_check(m, height);
    if (format("json") == "json") {
        Json doc = to_json(r);
        doc["N"] = m.N;
        doc["ferromagnetic"] = m.ferromagnetic();
        emit_json(doc, {{"height", height}});
        return 0;
    }
    if (!r.uniform) {
        throw Usage("CSV root tables need a uniform field; use --format json");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < r.w_roots.size(); ++i) {
        rows.push_back({double(i + 1), r.w_roots[i].real(), r.w_roots[i].imag(), std::abs(r.w_roots[i]),
                        r.z_roots[i].real(), r.z_roots[i].imag()});
    }
    std::vector<std::string> notes{"max_unit_circle_deviation=" + fmt(r.max_unit_circle_deviation)};
    for (const auto& w : r.warnings) {
        notes.push_back("warning: " + w);
    }
    emit_csv({"k", "w_re", "w_im", "w_abs", "z_re", "z_im"}, rows, {{"height", height}}, notes);
    return 0;
}

int Runner::cmd_tilt()
{
    require_format({"csv", "json"});
    reject_unknown_tolerances({});
    SymmetricDensity d = symmetric_density_from_json(input_document("density"));
    SymmetricDensity tilted = tilt_density(d, o_.lambda);  // TiltDivergence is a computation failure
    Grid g = parse_grid(o_.grid, {0.0, 3.0, 31});
    std::vector<std::vector<double>> rows(g.count);
    parallel_for(g.count, o_.threads, [&](int i) {
        double t = g.at(i);
        rows[i] = {t, cf_from_density(tilted, t)};
    });
    std::optional<PFScan> scan;
    if (o_.pf_order > 0) {
        if (o_.pf_order > 5) {
            throw Usage("--pf-order must be at most 5");
        }
        scan = pf_scan(tilted.f, o_.pf_order, o_.draws, o_.seed);
    }
    const double mass = total_mass(tilted);
    if (format("csv") == "csv") {
        std::vector<std::string> notes{"lambda=" + fmt(o_.lambda) + " tilted_mass=" + fmt(mass)};
        if (scan) {
            notes.push_back("pf_order=" + std::to_string(o_.pf_order) + " draws=" + std::to_string(scan->draws) +
                            " min_determinant=" + fmt(scan->min_det));
        }
        emit_csv({"t", "cf"}, rows, {}, notes);
    } else {
        Json r = Json::array();
        for (const auto& row : rows) {
            r.push_back(Json{{"t", row[0]}, {"cf", row[1]}});
        }
        Json doc{{"report", "tilt"}, {"lambda", o_.lambda}, {"density", d.label}, {"tilted_mass", mass},
                 {"rows", r}};
        if (scan) {
            doc["pf_scan"] = Json{{"order", o_.pf_order}, {"draws", scan->draws}, {"min_determinant", scan->min_det},
                                  {"xs", scan->xs}, {"ys", scan->ys}};
        }
        emit_json(doc, {});
    }
    return 0;
}

int Runner::cmd_xi(const std::string& sub)
{
    entry_ = "xi";
    if (sub == "coeffs") {
        require_format({"csv", "json"});
        reject_unknown_tolerances({});
        if (o_.n_max < 1 || o_.n_max > 30) {
            throw Usage("--n-max must lie in [1, 30]");
        }
        params_ = "n_max=" + std::to_string(o_.n_max);
        XiCoefficients c = xi_coefficients(o_.n_max, o_.threads);
        std::vector<std::vector<double>> rows;
        for (int n = 0; n <= c.n_max; ++n) {
            double phi = n < c.n_max ? c.phi_derived[n] : std::nan("");
            double phi_p = n < c.n_max ? c.phi_printed[n] : std::nan("");
            rows.push_back({double(n), c.F[2 * n], c.gamma[n], c.G[n], phi, phi_p, c.gamma_err[n]});
        }
        if (format("csv") == "csv") {
            emit_csv({"n", "F", "gamma", "G", "phi_candidate", "phi_printed", "err"}, rows, {},
                     {"F = F(2n); G = G(2n); phi_candidate = phi(n+1) = -gamma(n)/gamma(n+1); "
                      "phi_printed = -G(2n)/(8(n+1)G(2n+2)); err = gamma quadrature error"});
        } else {
            Json r = Json::array();
            for (const auto& row : rows) {
                r.push_back(Json{{"n", int(row[0])},        {"F", row[1]},
                                 {"gamma", row[2]},         {"G", row[3]},
                                 {"phi_candidate", finite_or_null(row[4])},
                                 {"phi_printed", finite_or_null(row[5])},
                                 {"err", row[6]}});
            }
            emit_json(Json{{"report", "xi_coefficients"}, {"rows", r}}, {});
        }
        return 0;
    }
    if (sub == "eval") {
        require_format({"csv"});
        reject_unknown_tolerances({});
        if (o_.series_order < 0 || o_.series_order > 30) {
            throw Usage("--series-order must lie in [0, 30]");
        }
        params_ = "series_order=" + std::to_string(o_.series_order);
        XiCoefficients c = xi_coefficients(std::max(1, o_.series_order), o_.threads);
        Grid g = parse_grid(o_.grid, {0.0, 20.0, 201});
        std::vector<std::vector<double>> rows(g.count);
        parallel_for(g.count, o_.threads, [&](int i) {
            double t = g.at(i);
            rows[i] = {t, xi_fourier(t), theta_series(c, t, o_.series_order)};
        });
        emit_csv({"t", "xi", "theta_series"}, rows, {});
        return 0;
    }
    if (sub == "probe") {
        require_format({"json"});
        reject_unknown_tolerances({});
        params_ = "n_max=" + std::to_string(o_.n_max);
        if (o_.n_max < 5 || o_.n_max > 30) {
            throw Usage("--n-max must lie in [5, 30] for the probe");
        }
        const double pi = std::numbers::pi;
        double xi0 = xi_fourier(0.0);
        double oracle = -0.125 * std::pow(pi, -0.25) * boost::math::tgamma(0.25) * boost::math::zeta(0.5);
        XiCoefficients c = xi_coefficients(o_.n_max, o_.threads);
        const int N = std::min(25, c.n_max);
        double series_diff = 0.0;
        for (int i = 0; i <= 40; ++i) {
            double t = 2.0 * i / 40;
            series_diff = std::max(series_diff, std::abs(theta_series(c, t, N) - xi_fourier(t)));
        }
        std::vector<double> changes = xi_sign_changes(14.0, 14.2, 20);
        RoundTrip derived = candidate_round_trip(c, c.phi_derived);
        RoundTrip printed = candidate_round_trip(c, c.phi_printed);
        BernsteinBattery bd = necessary_bernstein_checks(c.phi_derived);
        BernsteinBattery bp = necessary_bernstein_checks(c.phi_printed);
        Json doc{{"report", "xi_probe"},
                 {"xi_at_zero", xi0},
                 {"xi_at_zero_oracle", oracle},
                 {"xi_at_zero_error", std::abs(xi0 - oracle)},
                 {"series_order", N},
                 {"series_vs_fourier_max_error", series_diff},
                 {"sign_changes_14_14_2", changes},
                 {"phi_candidate", c.phi_derived},
                 {"phi_printed", c.phi_printed},
                 {"round_trip_derived", derived.max_relative_error},
                 {"round_trip_printed", finite_or_null(printed.max_relative_error)},
                 {"battery_derived", to_json(bd)},
                 {"battery_printed", to_json(bp)}};
        emit_json(doc, {});
        return 0;
    }
    throw Usage("xi needs a subcommand: coeffs, eval or probe");
}

int Runner::cmd_validate()
{
    if (o_.schema.empty() || o_.input.empty()) {
        throw Usage("validate needs --schema NAME and --input FILE");
    }
    std::string path = o_.schema;
    if (path.find('/') == std::string::npos) {
        path = std::string(VDLAB_SCHEMA_DIR) + "/" + path + (path.ends_with(".json") ? "" : ".schema.json");
    }
    Json schema = load_json_argument(path);
    Json doc = load_json_argument(o_.input);
    std::vector<std::string> errs = validate_against_schema(doc, schema);
    Json out{{"valid", errs.empty()}, {"schema", path}, {"errors", errs}};
    std::cout << out.dump(2) << "\n";
    return errs.empty() ? 0 : 1;
}

int Runner::run()
{
    if (command_ == "catalog") return cmd_catalog();
    if (command_ == "eval") return cmd_eval();
    if (command_ == "factorize") return cmd_factorize();
    if (command_ == "zeros") return cmd_zeros();
    if (command_ == "density") return cmd_density();
    if (command_ == "moments") return cmd_moments();
    if (command_ == "lukacs") return cmd_lukacs();
    if (command_ == "pair-verify") return cmd_pair_verify();
    if (command_ == "lp") return cmd_lp();
    if (command_ == "leeyang") return cmd_leeyang();
    if (command_ == "tilt") return cmd_tilt();
    if (command_.rfind("xi", 0) == 0) return cmd_xi(command_.size() > 3 ? command_.substr(3) : "");
    if (command_ == "validate") return cmd_validate();
    throw Usage("unknown command");
}

void error_body(const std::string& type, const std::string& command, const std::string& message)
{
    Json e{{"error", {{"type", type}, {"command", command}, {"message", message}}}, {"version", VDLAB_VERSION}};
    std::cout << e.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"van Dantzig pair toolkit: exponents, entire functions, laws, LP functions, xi probe"};
    app.set_version_flag("--version", VDLAB_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", o.output, "Output file (default stdout)");
    app.add_flag("--reproducible", o.reproducible, "Omit the timestamp so output is byte-identical across runs");
    app.add_option("--threads", o.threads, "Worker threads (fallback: VD_THREADS, then hardware concurrency)");
    app.add_option("--seed", o.seed, "Random seed");
    app.add_option("--grid", o.grid, "Grid min:max:count");
    app.add_option("--tol", o.tolerances, "Tolerance override name=value (repeatable)");
    app.add_option("--catalog", o.catalog, "Catalog entry name");
    app.add_option("--spec", o.spec, "Input spec: inline JSON or a path");
    app.add_option("--nu", o.nu);
    app.add_option("--a", o.a);
    app.add_option("--b", o.b);
    app.add_option("--alpha", o.alpha);
    app.add_option("--beta", o.beta);
    app.add_option("--rho", o.rho);
    app.add_option("--gamma", o.gamma);

    app.add_subcommand("catalog", "List catalog exponents");
    app.add_subcommand("eval", "CSV of t, J, I, F on a grid");
    app.add_subcommand("factorize", "Wiener-Hopf factor and W tables (n, W_psi, W_phi, moment)")
        ->add_option("--max-n", o.max_n, "Largest n");
    auto* zeros = app.add_subcommand("zeros", "Zero report of J in |z| < R");
    zeros->add_option("--radius", o.radius, "Disk radius R");
    app.add_subcommand("density", "Density of D (Mellin-Barnes) or Dbar (Fourier)")
        ->add_option("--law", o.law, "D or Dbar");
    app.add_subcommand("moments", "E[D^2n], E[I_phi^n], E[J^2n]")->add_option("--max-n", o.max_n, "Largest n");
    auto* luk = app.add_subcommand("lukacs", "J of the Lukacs image and a finite-difference check");
    luk->add_option("--p", o.p, "1 or 2");
    luk->add_option("--k", o.k, "Number of applications");
    app.add_subcommand("pair-verify", "Run every pair check and report JSON");
    auto* lp = app.add_subcommand("lp", "LP function, reciprocal CF, PSD test and NZ sampler");
    lp->add_option("--samples", o.samples, "NZ sample size (0 = no sampling)");
    app.add_subcommand("leeyang", "Lee-Yang root report for an Ising model");
    auto* tilt = app.add_subcommand("tilt", "CF of e^{lambda x^2} f(x)/Z");
    tilt->add_option("--lambda", o.lambda, "Tilt parameter");
    tilt->add_option("--pf-order", o.pf_order, "Run a PF determinant scan of this order (<= 5)");
    tilt->add_option("--draws", o.draws, "Random grids for the PF scan");
    auto* xi = app.add_subcommand("xi", "Riemann xi: coeffs, eval, probe");
    xi->require_subcommand(1);
    xi->fallthrough();
    xi->add_subcommand("coeffs", "CSV of n, F, gamma, G, phi_candidate, err")
        ->add_option("--n-max", o.n_max, "Largest n (<= 30)");
    xi->add_subcommand("eval", "CSV of t, xi(t), theta series")
        ->add_option("--series-order", o.series_order, "Series order N");
    xi->add_subcommand("probe", "JSON probe report")->add_option("--n-max", o.n_max, "Largest n (<= 30)");
    auto* val = app.add_subcommand("validate", "Validate a JSON report against a shipped schema");
    val->add_option("--schema", o.schema, "Schema name (e.g. pair_report) or path");
    val->add_option("--input", o.input, "JSON report file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string command = app.get_subcommands().front()->get_name();
    if (command == "xi") {
        command += "-" + xi->get_subcommands().front()->get_name();
    }
    try {
        Runner r(o, command);
        return r.run();
    } catch (const Usage& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SpecError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const TiltDivergence& e) {
        error_body("divergent_normalizer", command, e.what());
        return 1;
    } catch (const std::exception& e) {
        error_body("computation_failure", command, e.what());
        return 1;
    }
}
