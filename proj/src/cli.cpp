#include "casimir/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "casimir/approx.hpp"
#include "casimir/eccentric.hpp"
#include "casimir/parallel.hpp"
#include "json.hpp"

namespace casimir::cli {

namespace {

using nlohmann::ordered_json;

// Domain and usage problems found after parsing; mapped to kUsage.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Quantities {
    bool e12 = false;
    bool e_total = false;
    bool pressure = false;
    bool proximity = false;
    bool semiclassical = false;
    bool discrepancy = false;
    double p = 0.5;
};

Quantities parse_quantities(const std::vector<std::string>& names) {
    const bool none = std::all_of(names.begin(), names.end(), [](const std::string& n) { return n.empty(); });
    if (none) throw std::invalid_argument("no quantities requested");
    Quantities q;
    for (const std::string& name : names) {
        if (name.empty()) continue;
        if (name == "e12") {
            q.e12 = true;
        } else if (name == "e_total") {
            q.e_total = true;
        } else if (name == "pressure") {
            q.pressure = true;
        } else if (name == "semiclassical") {
            q.semiclassical = true;
        } else if (name == "discrepancy") {
            q.discrepancy = true;
        } else if (name == "proximity") {
            q.proximity = true;
        } else if (name.rfind("proximity(", 0) == 0 && name.back() == ')') {
            const std::string arg = name.substr(10, name.size() - 11);
            double p = 0.0;
            const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), p);
            if (ec != std::errc{} || end != arg.data() + arg.size()) {
                throw std::invalid_argument("bad proximity exponent in '" + name + "'");
            }
            approx::ProximityParams{p}.validate();
            q.proximity = true;
            q.p = p;
        } else {
            throw std::invalid_argument("unknown quantity '" + name + "'");
        }
    }
    return q;
}

ordered_json numerics_json(const exact::NumericsConfig& cfg) {
    return {{"rel_tol", cfg.quad.rel_tol},   {"abs_tol", cfg.quad.abs_tol},
            {"max_subdivisions", cfg.quad.max_subdivisions},
            {"n_tol", cfg.n_tol},           {"n_hard_cap", cfg.n_hard_cap},
            {"fd_step", cfg.fd_step}};
}

ordered_json meta(const std::string& command, ordered_json config) {
    return {{"version", kVersion}, {"command", command}, {"config", std::move(config)}};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + path + "'");
    file << text;
    if (!file) throw UsageError("failed writing '" + path + "'");
}

// Fills options absent from the command line with values from a JSON object
// keyed by option name, dashes replaced by underscores.
void apply_config(CLI::App& sub, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    ordered_json cfg;
    try {
        cfg = ordered_json::parse(in);
    } catch (const ordered_json::exception& e) {
        throw UsageError("config file: " + std::string(e.what()));
    }
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");

    for (CLI::Option* opt : sub.get_options()) {
        if (opt->count() > 0 || opt->get_lnames().empty()) continue;
        std::string key = opt->get_lnames().front();
        if (key == "config" || key == "help") continue;
        std::replace(key.begin(), key.end(), '-', '_');
        const auto it = cfg.find(key);
        if (it == cfg.end()) continue;

        auto as_text = [](const ordered_json& v) {
            if (v.is_string()) return v.get<std::string>();
            if (v.is_number_float()) return format_double(v.get<double>());
            return v.dump();
        };
        if (it->is_array()) {
            for (const auto& v : *it) opt->add_result(as_text(v));
        } else {
            opt->add_result(as_text(*it));
        }
        opt->run_callback();
    }
}

struct Common {
    std::string config;
    std::string out;
    std::string format;
    unsigned workers = default_workers();
    exact::NumericsConfig cfg;
};

void add_numerics(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config, "JSON file with option defaults");
    sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--rel-tol", c.cfg.quad.rel_tol, "Quadrature relative tolerance");
    sub->add_option("--abs-tol", c.cfg.quad.abs_tol, "Quadrature absolute tolerance");
    sub->add_option("--max-subdivisions", c.cfg.quad.max_subdivisions, "Bisection budget");
    sub->add_option("--n-tol", c.cfg.n_tol, "Mode-sum truncation tolerance");
    sub->add_option("--n-hard-cap", c.cfg.n_hard_cap, "Largest mode index");
    sub->add_option("--fd-step", c.cfg.fd_step, "Pressure finite-difference step in alpha");
}

void check_numerics(const exact::NumericsConfig& cfg) {
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// --- energy ---------------------------------------------------------------

struct EnergyArgs {
    double alpha = 2.0;
    bool per_n = false;
};

int cmd_energy(const EnergyArgs& args, Common& c, std::ostream& out) {
    check_numerics(c.cfg);
    c.cfg.workers = c.workers;
    const exact::EnergyResult e = exact::e12_reduced(args.alpha, c.cfg);

    ordered_json row = {{"alpha", args.alpha},
                        {"e12_hat", e.e12_hat},
                        {"e_total", exact::e_total_from(e, args.alpha)},
                        {"quad_error", e.quad_error},
                        {"truncation_error", e.truncation_error},
                        {"n_max_used", e.n_max_used},
                        {"converged", e.ok()}};
    if (args.per_n) {
        ordered_json terms = ordered_json::array();
        for (const exact::ModeTerm& t : e.per_n) {
            terms.push_back({{"n", t.n},
                             {"contribution", t.contribution},
                             {"quad_error", t.quad_error},
                             {"converged", t.converged}});
        }
        row["per_n"] = std::move(terms);
    }
    ordered_json config = numerics_json(c.cfg);
    config["alpha"] = args.alpha;
    ordered_json doc = {{"meta", meta("energy", std::move(config))}, {"rows", {row}}};
    if (!e.ok()) doc["error"] = "interaction energy did not converge";
    emit(doc.dump(2) + "\n", c.out, out);
    return e.ok() ? kOk : kNotConverged;
}

// --- sweep ----------------------------------------------------------------

struct SweepArgs {
    SweepRequest req;
    std::string spacing = "linear";
};

ordered_json sweep_json(const SweepRequest& req, const std::vector<SweepRow>& rows,
                        const exact::NumericsConfig& cfg) {
    ordered_json config = numerics_json(cfg);
    config["alpha_min"] = req.alpha_min;
    config["alpha_max"] = req.alpha_max;
    config["steps"] = req.steps;
    config["spacing"] = req.spacing == Spacing::linear ? "linear" : "log";
    config["quantities"] = req.quantities;
    ordered_json list = ordered_json::array();
    for (const SweepRow& r : rows) {
        ordered_json values = ordered_json::object();
        for (const auto& [k, v] : r.values) values[k] = v;
        ordered_json errors = ordered_json::object();
        for (const auto& [k, v] : r.error_estimates) errors[k] = v;
        list.push_back({{"alpha", r.alpha},
                        {"values", std::move(values)},
                        {"error_estimates", std::move(errors)},
                        {"status", r.status}});
    }
    return {{"meta", meta("sweep", std::move(config))}, {"rows", std::move(list)}};
}

int cmd_sweep(SweepArgs& args, Common& c, std::ostream& out) {
    check_numerics(c.cfg);
    SweepRequest& req = args.req;
    req.spacing = args.spacing == "log" ? Spacing::log : Spacing::linear;
    if (!(req.alpha_min > 1.0)) throw UsageError("alpha must exceed 1");
    if (!(req.alpha_min < req.alpha_max)) throw UsageError("need alpha_min < alpha_max");
    try {
        const Quantities q = parse_quantities(req.quantities);
        if ((q.pressure || q.discrepancy) && !(req.alpha_min > 1.0 + 2.0 * c.cfg.fd_step)) {
            throw UsageError("pressure needs alpha_min > 1 + 2 fd_step");
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }

    const std::vector<SweepRow> rows = run_sweep(req, c.cfg, c.workers);
    const std::string text =
        c.format == "json" ? sweep_json(req, rows, c.cfg).dump(2) + "\n" : sweep_csv(req, rows);
    emit(text, c.out, out);
    const bool all_ok =
        std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == "ok"; });
    return all_ok ? kOk : kNotConverged;
}

// --- fit-p ----------------------------------------------------------------

struct FitArgs {
    SweepRequest grid{1.5, 3.0, 16, Spacing::linear, {}};
    std::string spacing = "linear";
    std::string mode = "energy";
};

int cmd_fit_p(FitArgs& args, Common& c, std::ostream& out) {
    check_numerics(c.cfg);
    SweepRequest& g = args.grid;
    g.spacing = args.spacing == "log" ? Spacing::log : Spacing::linear;
    if (!(g.alpha_min > 1.0)) throw UsageError("alpha must exceed 1");
    if (g.steps > 1 && !(g.alpha_min < g.alpha_max)) throw UsageError("need alpha_min < alpha_max");
    const bool pressure = args.mode == "pressure";
    if (pressure && !(g.alpha_min > 1.0 + 2.0 * c.cfg.fd_step)) {
        throw UsageError("pressure needs alpha_min > 1 + 2 fd_step");
    }

    const std::vector<double> alphas = sweep_grid(g);
    exact::NumericsConfig cfg = c.cfg;
    cfg.workers = 1;
    struct Point {
        double value;
        bool ok;
    };
    const std::vector<Point> points = parallel_map(alphas.size(), c.workers, [&](std::size_t i) {
        if (pressure) {
            const exact::PressureResult p = exact::pressure_inner(alphas[i], cfg);
            return Point{p.value, p.ok()};
        }
        const exact::EnergyResult e = exact::e12_reduced(alphas[i], cfg);
        return Point{e.e12_hat, e.ok()};
    });
    std::vector<double> values;
    bool all_ok = true;
    for (const Point& p : points) {
        values.push_back(p.value);
        all_ok = all_ok && p.ok;
    }
    const approx::FitMode mode = pressure ? approx::FitMode::pressure : approx::FitMode::energy;
    const approx::FitResult fit = approx::fit_p(alphas, values, mode);

    ordered_json config = numerics_json(c.cfg);
    config["alpha_min"] = g.alpha_min;
    config["alpha_max"] = g.alpha_max;
    config["steps"] = g.steps;
    config["spacing"] = args.spacing;
    config["mode"] = args.mode;
    ordered_json data = ordered_json::array();
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        data.push_back({{"alpha", alphas[i]}, {"exact", values[i]}, {"converged", points[i].ok}});
    }
    ordered_json curve = ordered_json::array();
    for (int k = 0; k <= 100; ++k) {
        const double p = k / 100.0;
        curve.push_back({{"p", p}, {"objective", approx::fit_objective(p, alphas, values, mode)}});
    }
    ordered_json doc = {{"meta", meta("fit-p", std::move(config))},
                        {"p_star", fit.p_star},
                        {"objective", fit.objective},
                        {"flat", fit.flat},
                        {"non_unimodal", fit.non_unimodal},
                        {"data", std::move(data)},
                        {"rows", std::move(curve)}};
    if (!all_ok) doc["error"] = "exact values did not converge at every grid point";
    emit(doc.dump(2) + "\n", c.out, out);
    return all_ok ? kOk : kNotConverged;
}

// --- eccentric / freq-shift -----------------------------------------------

struct EccentricArgs {
    double a = 0.0;
    double b = 0.0;
    double L = 1.0;
    std::vector<double> eps_tilde;
    std::vector<double> eps;
    double mass = 0.0;
    double omega0 = 0.0;
    bool shift_only = false;
};

int cmd_eccentric(EccentricArgs& args, Common& c, std::ostream& out, std::ostream& err) {
    const ConcentricGeometry base{args.a, args.b, args.L};
    try {
        base.validate();
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    const bool resonator = args.mass > 0.0 || args.omega0 > 0.0;
    eccentric::ResonatorParams res{args.mass, args.omega0};
    if (resonator || args.shift_only) {
        try {
            res.validate();
        } catch (const std::domain_error& e) {
            throw UsageError(std::string(e.what()) + " (need --mass and --omega0)");
        }
    }
    if (!args.eps.empty() && !args.eps_tilde.empty()) {
        throw UsageError("give either --eps or --eps-tilde, not both");
    }
    std::vector<double> tilde = args.eps_tilde;
    for (double e : args.eps) tilde.push_back(e / base.gap());
    if (tilde.empty()) {
        if (!args.shift_only) throw UsageError("--eps or --eps-tilde is required");
        tilde.push_back(0.0);
    }
    for (double t : tilde) {
        if (!(t >= 0.0 && t < 1.0)) {
            throw UsageError("eps_tilde must lie in [0, 1), got " + format_double(t));
        }
    }
    quad::QuadratureSpec spec = c.cfg.quad;
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    struct Row {
        double eps_tilde;
        double eps;
        eccentric::EccentricResult numeric;
        double closed;
    };
    const std::vector<Row> rows = parallel_map(tilde.size(), c.workers, [&](std::size_t i) {
        const double eps = args.eps.empty() ? tilde[i] * base.gap() : args.eps[i];
        const EccentricGeometry g{base, eps};
        return Row{tilde[i], eps, eccentric::force_eccentric_numeric(g, spec),
                   eccentric::force_closed_form(g)};
    });
    double shift = 0.0;
    std::vector<std::string> warnings;
    if (resonator || args.shift_only) {
        const eccentric::ShiftResult s = eccentric::frequency_shift({base, 0.0}, res);
        shift = s.value;
        warnings = s.warnings;
    }
    for (const Row& r : rows) {
        for (const std::string& w : r.numeric.warnings) {
            if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
        }
    }
    for (const std::string& w : warnings) err << "warning: " << w << "\n";

    auto rel_diff = [](const Row& r) {
        return r.closed == 0.0 ? (r.numeric.value == 0.0 ? 0.0 : INFINITY)
                               : r.numeric.value / r.closed - 1.0;
    };
    const bool with_shift = resonator || args.shift_only;
    bool all_ok = true;
    std::string text;
    if (c.format == "json") {
        ordered_json config = numerics_json(c.cfg);
        config["a"] = args.a;
        config["b"] = args.b;
        config["L"] = args.L;
        if (with_shift) {
            config["mass"] = args.mass;
            config["omega0"] = args.omega0;
        }
        ordered_json list = ordered_json::array();
        for (const Row& r : rows) {
            ordered_json row = {{"eps_tilde", r.eps_tilde},
                                {"eps", r.eps},
                                {"F_numeric", r.numeric.value},
                                {"F_numeric_error", r.numeric.error_estimate},
                                {"F_closed_form", r.closed},
                                {"rel_diff", rel_diff(r)}};
            if (with_shift) row["freq_shift"] = shift;
            row["status"] = r.numeric.converged ? "ok" : "not converged";
            all_ok = all_ok && r.numeric.converged;
            list.push_back(std::move(row));
        }
        ordered_json doc = {{"meta", meta(args.shift_only ? "freq-shift" : "eccentric", config)},
                            {"force_scale", eccentric::force_scale(base)}};
        if (with_shift) doc["freq_shift"] = shift;
        doc["warnings"] = warnings;
        doc["rows"] = std::move(list);
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream csv;
        csv << "eps_tilde,eps,F_numeric,F_closed_form,rel_diff" << (with_shift ? ",freq_shift" : "")
            << ",status\n";
        for (const Row& r : rows) {
            csv << format_double(r.eps_tilde) << ',' << format_double(r.eps) << ','
                << format_double(r.numeric.value) << ',' << format_double(r.closed) << ','
                << format_double(rel_diff(r));
            if (with_shift) csv << ',' << format_double(shift);
            csv << ',' << (r.numeric.converged ? "ok" : "not converged") << '\n';
            all_ok = all_ok && r.numeric.converged;
        }
        text = csv.str();
    }
    emit(text, c.out, out);
    return all_ok ? kOk : kNotConverged;
}

// --- orbits ---------------------------------------------------------------

struct OrbitArgs {
    double alpha = 2.0;
    double length_cap = 12.0;
    int max_bounces = 64;
};

int cmd_orbits(const OrbitArgs& args, Common& c, std::ostream& out) {
    std::vector<approx::Orbit> orbits;
    try {
        orbits = approx::enumerate_orbits(args.alpha, args.length_cap, args.max_bounces);
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    auto kind = [](const approx::Orbit& o) {
        return o.kind == approx::OrbitKind::type_i ? "I" : "II";
    };
    std::ostringstream text;
    if (c.format == "json") {
        ordered_json list = ordered_json::array();
        for (const approx::Orbit& o : orbits) {
            list.push_back({{"kind", kind(o)},
                            {"v", o.v},
                            {"w", o.w},
                            {"repetitions", o.repetitions},
                            {"length", o.length},
                            {"admissible", o.admissible}});
        }
        const ordered_json config = {{"alpha", args.alpha},
                                     {"length_cap", args.length_cap},
                                     {"max_bounces", args.max_bounces}};
        const ordered_json doc = {{"meta", meta("orbits", config)}, {"rows", std::move(list)}};
        text << doc.dump(2) << "\n";
    } else if (c.format == "csv") {
        text << "kind,v,w,repetitions,length,admissible\n";
        for (const approx::Orbit& o : orbits) {
            text << kind(o) << ',' << o.v << ',' << o.w << ',' << o.repetitions << ','
                 << format_double(o.length) << ',' << (o.admissible ? "true" : "false") << '\n';
        }
    } else {
        text << std::left << std::setw(6) << "kind" << std::setw(6) << "v" << std::setw(6) << "w"
             << std::setw(6) << "rep" << std::setw(14) << "length/b" << "admissible\n";
        for (const approx::Orbit& o : orbits) {
            std::ostringstream len;
            len << std::fixed << std::setprecision(6) << o.length;
            text << std::setw(6) << kind(o) << std::setw(6) << o.v << std::setw(6) << o.w
                 << std::setw(6) << o.repetitions << std::setw(14) << len.str()
                 << (o.admissible ? "yes" : "no") << "\n";
        }
    }
    emit(text.str(), c.out, out);
    return kOk;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::vector<double> sweep_grid(const SweepRequest& req) {
    std::vector<double> out;
    if (req.steps == 1) return {req.alpha_min};
    for (int i = 0; i < req.steps; ++i) {
        const double t = static_cast<double>(i) / (req.steps - 1);
        if (req.spacing == Spacing::linear) {
            out.push_back(i == req.steps - 1 ? req.alpha_max
                                              : req.alpha_min + t * (req.alpha_max - req.alpha_min));
        } else {
            const double lo = std::log(req.alpha_min - 1.0);
            const double hi = std::log(req.alpha_max - 1.0);
            out.push_back(i == req.steps - 1 ? req.alpha_max : 1.0 + std::exp(lo + t * (hi - lo)));
        }
    }
    return out;
}

std::vector<std::string> sweep_columns(const SweepRequest& req) {
    const Quantities q = parse_quantities(req.quantities);
    std::vector<std::string> cols;
    if (q.e12) cols.insert(cols.end(), {"e12_hat", "e12_hat_error"});
    if (q.e_total) cols.push_back("e_total");
    if (q.pressure) cols.insert(cols.end(), {"pressure", "pressure_error"});
    if (q.proximity) cols.insert(cols.end(), {"proximity_energy", "proximity_pressure"});
    if (q.semiclassical) cols.push_back("semiclassical_energy");
    if (q.discrepancy) cols.insert(cols.end(), {"discrepancy_energy", "discrepancy_pressure"});
    return cols;
}

std::vector<SweepRow> run_sweep(const SweepRequest& req, const exact::NumericsConfig& cfg,
                                unsigned workers) {
    const Quantities q = parse_quantities(req.quantities);
    const std::vector<double> alphas = sweep_grid(req);
    exact::NumericsConfig row_cfg = cfg;
    row_cfg.workers = 1;

    return parallel_map(alphas.size(), workers, [&](std::size_t i) {
        SweepRow row;
        row.alpha = alphas[i];
        const double alpha = alphas[i];
        try {
            const bool need_energy = q.e12 || q.e_total || q.discrepancy || q.pressure;
            const bool need_pressure = q.pressure || q.discrepancy;
            exact::EnergyResult e;
            exact::PressureResult p;
            if (need_energy) e = exact::e12_reduced(alpha, row_cfg);
            if (need_pressure) p = exact::pressure_inner(alpha, e, row_cfg);
            const approx::ProximityParams prox{q.p};

            if (q.e12) {
                row.values.emplace_back("e12_hat", e.e12_hat);
                row.error_estimates.emplace_back("e12_hat", e.total_error());
            }
            if (q.e_total) row.values.emplace_back("e_total", exact::e_total_from(e, alpha));
            if (q.pressure) {
                row.values.emplace_back("pressure", p.value);
                row.error_estimates.emplace_back("pressure", p.fd_discrepancy);
            }
            if (q.proximity) {
                row.values.emplace_back("proximity_energy", approx::proximity_energy(alpha, prox));
                row.values.emplace_back("proximity_pressure", approx::proximity_pressure(alpha, prox));
            }
            if (q.semiclassical) {
                row.values.emplace_back("semiclassical_energy", approx::semiclassical_energy(alpha));
            }
            if (q.discrepancy) {
                const double pe = approx::proximity_energy(alpha, prox);
                const double pp = approx::proximity_pressure(alpha, prox);
                row.values.emplace_back("discrepancy_energy", (pe - e.e12_hat) / e.e12_hat);
                row.values.emplace_back("discrepancy_pressure", (pp - p.value) / p.value);
            }
            const bool ok = (!need_energy || e.ok()) && (!need_pressure || p.ok());
            row.status = ok ? "ok" : "not converged";
        } catch (const std::exception& ex) {
            row.values.clear();
            row.error_estimates.clear();
            row.status = ex.what();
        }
        return row;
    });
}

std::string sweep_csv(const SweepRequest& req, const std::vector<SweepRow>& rows) {
    const std::vector<std::string> cols = sweep_columns(req);
    std::ostringstream csv;
    csv << "alpha";
    for (const std::string& col : cols) csv << ',' << col;
    csv << ",status\n";
    for (const SweepRow& r : rows) {
        csv << format_double(r.alpha);
        for (const std::string& col : cols) {
            const bool is_error = col.size() > 6 && col.compare(col.size() - 6, 6, "_error") == 0;
            const auto& source = is_error ? r.error_estimates : r.values;
            const std::string key = is_error ? col.substr(0, col.size() - 6) : col;
            const auto it = std::find_if(source.begin(), source.end(),
                                         [&](const auto& kv) { return kv.first == key; });
            csv << ',' << (it == source.end() ? std::string("nan") : format_double(it->second));
        }
        std::string status = r.status;
        std::replace(status.begin(), status.end(), ',', ';');
        csv << ',' << status << '\n';
    }
    return csv.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Casimir energy, pressure and force for coaxial cylinders", "casimir"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Common common;

    EnergyArgs energy_args;
    CLI::App* energy = app.add_subcommand("energy", "Exact interaction and total energy at one alpha");
    energy->add_option("--alpha", energy_args.alpha, "Radius ratio b/a");
    energy->add_flag("--per-n", energy_args.per_n, "Include the per-mode breakdown");
    energy->add_option("--out", common.out, "Output file (default stdout)");
    add_numerics(energy, common);

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Exact and approximate curves over alpha");
    sweep->add_option("--alpha-min", sweep_args.req.alpha_min, "Smallest alpha");
    sweep->add_option("--alpha-max", sweep_args.req.alpha_max, "Largest alpha");
    sweep->add_option("--steps", sweep_args.req.steps, "Number of alpha values")
        ->check(CLI::Range(2, 1000000));
    sweep->add_option("--spacing", sweep_args.spacing, "linear or log (in alpha - 1)")
        ->check(CLI::IsMember({"linear", "log"}));
    sweep->add_option("--quantities", sweep_args.req.quantities,
                      "e12,e_total,pressure,proximity(p),semiclassical,discrepancy")
        ->delimiter(',');
    sweep->add_option("--format", common.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", common.out, "Output file (default stdout)");
    add_numerics(sweep, common);

    FitArgs fit_args;
    CLI::App* fit = app.add_subcommand("fit-p", "Best-fit effective-area exponent p");
    fit->add_option("--alpha-min", fit_args.grid.alpha_min, "Smallest alpha");
    fit->add_option("--alpha-max", fit_args.grid.alpha_max, "Largest alpha");
    fit->add_option("--steps", fit_args.grid.steps, "Number of alpha values")
        ->check(CLI::Range(1, 1000000));
    fit->add_option("--spacing", fit_args.spacing, "linear or log (in alpha - 1)")
        ->check(CLI::IsMember({"linear", "log"}));
    fit->add_option("--mode", fit_args.mode, "energy or pressure")
        ->check(CLI::IsMember({"energy", "pressure"}));
    fit->add_option("--out", common.out, "Output file (default stdout)");
    add_numerics(fit, common);

    EccentricArgs ecc_args;
    auto add_eccentric = [&](CLI::App* sub) {
        sub->add_option("--a", ecc_args.a, "Inner radius, m")->required();
        sub->add_option("--b", ecc_args.b, "Outer radius, m")->required();
        sub->add_option("--L", ecc_args.L, "Length, m");
        sub->add_option("--eps-tilde", ecc_args.eps_tilde, "Offsets in units of b - a")
            ->delimiter(',');
        sub->add_option("--eps", ecc_args.eps, "Offsets, m")->delimiter(',');
        sub->add_option("--mass", ecc_args.mass, "Resonator effective mass, kg");
        sub->add_option("--omega0", ecc_args.omega0, "Resonator angular frequency, rad/s");
        sub->add_option("--format", common.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", common.out, "Output file (default stdout)");
        add_numerics(sub, common);
    };
    CLI::App* ecc = app.add_subcommand("eccentric", "Force between off-axis cylinders");
    add_eccentric(ecc);
    CLI::App* shift = app.add_subcommand("freq-shift", "Resonator frequency shift (eccentric at eps = 0)");
    add_eccentric(shift);

    OrbitArgs orbit_args;
    CLI::App* orbits = app.add_subcommand("orbits", "Periodic orbits of the annulus");
    orbits->add_option("--alpha", orbit_args.alpha, "Radius ratio b/a");
    orbits->add_option("--length-cap", orbit_args.length_cap, "Longest orbit, units of b");
    orbits->add_option("--max-bounces", orbit_args.max_bounces, "Largest v for type I orbits");
    orbits->add_option("--format", common.format, "text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    orbits->add_option("--out", common.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const bool json_errors = sub == energy || sub == fit;
    auto fail = [&](int code, const std::string& message) {
        err << "error: " << message << "\n";
        if (json_errors) {
            const ordered_json doc = {{"error", message}, {"exit_code", code}};
            out << doc.dump(2) << "\n";
        }
        return code;
    };

    try {
        if (!common.config.empty()) {
            try {
                apply_config(*sub, common.config);
            } catch (const CLI::ParseError& e) {
                throw UsageError("config file: " + std::string(e.what()));
            }
        }
        if (sub == energy) return cmd_energy(energy_args, common, out);
        if (sub == sweep) return cmd_sweep(sweep_args, common, out);
        if (sub == fit) return cmd_fit_p(fit_args, common, out);
        if (sub == ecc) return cmd_eccentric(ecc_args, common, out, err);
        if (sub == shift) {
            ecc_args.shift_only = true;
            return cmd_eccentric(ecc_args, common, out, err);
        }
        return cmd_orbits(orbit_args, common, out);
    } catch (const UsageError& e) {
        return fail(kUsage, e.what());
    } catch (const std::domain_error& e) {
        return fail(kUsage, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(kUsage, e.what());
    } catch (const exact::ConvergenceError& e) {
        return fail(kNotConverged, e.what());
    }
}

}  // namespace casimir::cli
