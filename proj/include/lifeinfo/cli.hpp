#pragma once

// Run-configuration parsing and grid-sweep execution behind the lifeinfo
// command-line tool. A run reads a JSON config (model family + parameters,
// measure, grid, quadrature overrides) and writes one record per grid
// point as CSV or JSON.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lifeinfo/lifeinfo.hpp"

namespace lifeinfo::cli {

using nlohmann::json;

struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    std::vector<double> points() const {
        std::vector<double> v;
        v.reserve(static_cast<size_t>(steps));
        if (steps == 1) {
            v.push_back(min);
            return v;
        }
        for (int i = 0; i < steps; ++i)
            v.push_back(min + (max - min) * i / (steps - 1.0));
        return v;
    }
};

struct RunConfig {
    json model;
    std::string measure;
    AxisSpec axis_a, axis_b; // (s,t) or (p,q) depending on the measure
    QuadratureSpec quadrature;
    std::string region = "residual"; // bounds / mixed-entropy / mc-validate selector
    std::uint64_t seed = 20250801;
    long mc_samples = 100000;
    std::string output = "-";
    std::string format = "csv";
};

inline const std::vector<std::string>& measure_names() {
    static const std::vector<std::string> names = {
        "past-mi",         "residual-mi",        "mixed-entropy",
        "os-mi",           "copula-past-mi",     "copula-residual-mi",
        "bounds",          "mc-validate",        "decomposition-check"};
    return names;
}

inline bool measure_uses_quantiles(const std::string& measure) {
    return measure == "os-mi" || measure == "copula-past-mi" ||
           measure == "copula-residual-mi";
}

// ---------------------------------------------------------------------
// model construction

struct ModelHandle {
    std::optional<BivariateLifetimeModel> bivariate;
    std::optional<TTEModel> tte;
    std::optional<Copula> copula;
    std::optional<OrderStatModel> os;
};

inline UnivariateModel build_univariate(const json& spec) {
    const std::string family = spec.value("family", "uniform");
    if (family == "uniform") return uniform01();
    if (family == "exponential") return exponential(spec.value("rate", 1.0));
    if (family == "weibull")
        return weibull(spec.value("shape", 2.0), spec.value("scale", 1.0));
    throw ConfigError("unknown marginal family: " + family);
}

inline Copula build_copula(const std::string& name) {
    if (name == "independence") return independence_copula();
    if (name == "clayton-special") return clayton_special();
    throw ConfigError("unknown copula: " + name);
}

inline ModelHandle build_model(const json& spec) {
    if (!spec.contains("family")) throw ConfigError("model.family is required");
    const std::string family = spec["family"];
    const json params = spec.value("params", json::object());
    ModelHandle h;
    if (family == "linear") {
        h.bivariate = make_linear_unit_square();
    } else if (family == "triangle") {
        h.bivariate =
            make_uniform_triangle(params.value("alpha", 1.0), params.value("beta", 1.0));
    } else if (family == "gumbel") {
        h.bivariate = make_gumbel_type(params.value("theta", 1.0));
    } else if (family == "lomax-tte") {
        h.tte = make_lomax_tte(params.value("r", 1.0), params.value("alpha", 1.0),
                               params.value("beta", 1.0));
        h.bivariate = to_bivariate(*h.tte);
    } else if (family == "truncated-tte") {
        h.tte = make_truncated_quadratic_tte(params.value("omega", 1.0),
                                             params.value("alpha", 1.0),
                                             params.value("beta", 1.0));
        h.bivariate = to_bivariate(*h.tte);
    } else if (family == "freund") {
        FreundParams fp;
        fp.alpha = params.value("alpha", 1.0);
        fp.beta = params.value("beta", 1.0);
        fp.alpha_prime = params.value("alpha_prime", 2.0);
        fp.beta_prime = params.value("beta_prime", 2.0);
        h.bivariate = make_freund(fp);
    } else if (family == "copula") {
        h.copula = build_copula(params.value("copula", std::string("clayton-special")));
        const json mx = params.value("marginal_x", json{{"family", "uniform"}});
        const json my = params.value("marginal_y", json{{"family", "uniform"}});
        h.bivariate = make_from_copula(*h.copula, build_univariate(mx), build_univariate(my));
    } else if (family == "os") {
        OrderStatModel osm;
        osm.n = params.value("n", 3);
        osm.component = build_univariate(params.value("component", json{{"family", "uniform"}}));
        if (osm.n < 2) throw ConfigError("os model requires n >= 2");
        h.os = osm;
    } else {
        throw ConfigError("unknown model family: " + family);
    }
    return h;
}

// ---------------------------------------------------------------------
// config parsing

inline AxisSpec parse_axis(const json& g, const std::string& key) {
    if (!g.contains(key)) throw ConfigError("grid." + key + " is required for this measure");
    const json& a = g[key];
    AxisSpec spec{a.value("min", 0.0), a.value("max", 0.0), a.value("steps", 1)};
    if (spec.steps < 1) throw ConfigError("grid." + key + ".steps must be >= 1");
    return spec;
}

inline RunConfig parse_config(const json& j) {
    RunConfig c;
    if (!j.contains("model")) throw ConfigError("config: model is required");
    if (!j.contains("measure")) throw ConfigError("config: measure is required");
    c.model = j["model"];
    c.measure = j["measure"];
    bool known = false;
    for (const auto& name : measure_names()) known = known || name == c.measure;
    if (!known) throw ConfigError("unknown measure: " + c.measure);

    const json grid = j.value("grid", json::object());
    if (measure_uses_quantiles(c.measure)) {
        c.axis_a = parse_axis(grid, "p");
        c.axis_b = parse_axis(grid, "q");
    } else {
        c.axis_a = parse_axis(grid, "s");
        c.axis_b = parse_axis(grid, "t");
    }
    if (j.contains("quadrature")) {
        const json& q = j["quadrature"];
        c.quadrature.rel_tol = q.value("rel_tol", c.quadrature.rel_tol);
        c.quadrature.abs_tol = q.value("abs_tol", c.quadrature.abs_tol);
        c.quadrature.max_subdivisions =
            q.value("max_subdivisions", c.quadrature.max_subdivisions);
        const std::string tr = q.value("transform", std::string("rational"));
        if (tr == "rational") c.quadrature.transform = Transform::rational_map;
        else if (tr == "log") c.quadrature.transform = Transform::log_map;
        else throw ConfigError("unknown transform: " + tr);
        c.quadrature.validate();
    }
    c.region = j.value("region", c.region);
    c.seed = j.value("seed", c.seed);
    c.mc_samples = j.value("mc_samples", c.mc_samples);
    c.output = j.value("output", c.output);
    c.format = j.value("format", c.format);
    if (c.format != "csv" && c.format != "json")
        throw ConfigError("format must be csv or json");
    return c;
}

inline RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

// ---------------------------------------------------------------------
// sweep execution

struct GridRow {
    double a = 0.0, b = 0.0;
    double value = std::numeric_limits<double>::quiet_NaN();
    double error = 0.0;
    bool converged = false;
};

inline RegionKind parse_entropy_region(const std::string& name) {
    if (name == "past_past") return RegionKind::past_past;
    if (name == "residual_residual") return RegionKind::residual_residual;
    if (name == "past_residual") return RegionKind::past_residual;
    if (name == "residual_past") return RegionKind::residual_past;
    throw ConfigError("unknown region kind: " + name);
}

inline const BivariateLifetimeModel& need_bivariate(const ModelHandle& h,
                                                    const std::string& measure) {
    if (!h.bivariate)
        throw ConfigError("measure " + measure + " needs a bivariate lifetime model");
    return *h.bivariate;
}

inline GridRow evaluate_point(const ModelHandle& h, const RunConfig& c, double a, double b,
                              long point_index) {
    GridRow row;
    row.a = a;
    row.b = b;
    const QuadratureSpec& spec = c.quadrature;
    try {
        if (c.measure == "past-mi") {
            const auto& m = need_bivariate(h, c.measure);
            if (m.cdf(a, b) <= 1e-12) return row;
            MeasureResult r = past_mi(m, a, b, spec);
            row = {a, b, r.value, r.numerical_error, r.converged};
        } else if (c.measure == "residual-mi") {
            if (h.tte) {
                if (h.tte->truncated() && h.tte->R1(a) + h.tte->R2(b) >= h.tte->omega)
                    return row;
                MeasureResult r = residual_mi_tte(*h.tte, a, b, spec);
                row = {a, b, r.value, r.numerical_error, r.converged};
            } else {
                const auto& m = need_bivariate(h, c.measure);
                if (m.survival(a, b) <= 1e-12) return row;
                MeasureResult r = residual_mi(m, a, b, spec);
                row = {a, b, r.value, r.numerical_error, r.converged};
            }
        } else if (c.measure == "mixed-entropy") {
            const auto& m = need_bivariate(h, c.measure);
            const std::string region_key =
                c.region == "residual" ? "past_residual" : c.region;
            ConditioningRegion region{parse_entropy_region(region_key), a, b};
            if (region_probability(m, region) <= 1e-12) return row;
            MeasureResult r = joint_entropy(m, region, spec);
            row = {a, b, r.value, r.numerical_error, r.converged};
        } else if (c.measure == "os-mi") {
            if (!h.os) throw ConfigError("os-mi needs an os model");
            if (!(0.0 < a && a < b && b < 1.0)) return row;
            MeasureResult r = os_mi_closed_form_measured(a, b, h.os->n, spec);
            row = {a, b, r.value, r.numerical_error, r.converged};
        } else if (c.measure == "copula-past-mi") {
            if (!h.copula) throw ConfigError("copula-past-mi needs a copula model");
            MeasureResult r = past_mi_copula(*h.copula, a, b, spec);
            row = {a, b, r.value, r.numerical_error, r.converged};
        } else if (c.measure == "copula-residual-mi") {
            if (!h.copula) throw ConfigError("copula-residual-mi needs a copula model");
            MeasureResult r = residual_mi_survival_copula(*h.copula, a, b, spec);
            row = {a, b, r.value, r.numerical_error, r.converged};
        } else if (c.measure == "bounds") {
            const auto& m = need_bivariate(h, c.measure);
            BoundReport rep = c.region == "past" ? past_mi_bound(m, a, b)
                                                 : residual_mi_bound(m, a, b);
            row.converged = true; // `inapplicable` is a determination, not a failure
            if (rep.direction != BoundDirection::inapplicable) row.value = rep.bound_value;
        } else if (c.measure == "mc-validate") {
            const auto& m = need_bivariate(h, c.measure);
            const RegionKind kind = c.region == "past" ? RegionKind::past_past
                                                       : RegionKind::residual_residual;
            ConditioningRegion region{kind, a, b};
            if (region_probability(m, region) <= 1e-12) return row;
            MeasureResult quad = kind == RegionKind::past_past ? past_mi(m, a, b, spec)
                                                               : residual_mi(m, a, b, spec);
            McEstimate mc = mc_mutual_information(
                m, region, c.mc_samples, c.seed + static_cast<std::uint64_t>(point_index));
            row.value = mc.mean;
            row.error = mc.std_error;
            row.converged = std::fabs(quad.value - mc.mean) <=
                            3.0 * (mc.std_error + quad.numerical_error);
        } else if (c.measure == "decomposition-check") {
            const auto& m = need_bivariate(h, c.measure);
            const ConditioningRegion probes[4] = {{RegionKind::past_past, a, b},
                                                  {RegionKind::residual_residual, a, b},
                                                  {RegionKind::past_residual, a, b},
                                                  {RegionKind::residual_past, a, b}};
            for (const auto& r : probes)
                if (region_probability(m, r) <= 1e-12) return row;
            DecompositionReport rep = verify_decomposition(m, a, b, spec);
            row.value = rep.residual;
            row.error = rep.combined_error;
            row.converged = std::fabs(rep.residual) <= std::max(1e-5, 3.0 * rep.combined_error);
        }
    } catch (const ZeroRegionProbability&) {
        // leave the nan sentinel row; the sweep continues
    }
    return row;
}

inline std::vector<GridRow> run_sweep(const ModelHandle& h, const RunConfig& c) {
    std::vector<GridRow> rows;
    const std::vector<double> as = c.axis_a.points();
    const std::vector<double> bs = c.axis_b.points();
    rows.reserve(as.size() * bs.size());
    long index = 0;
    for (double a : as)
        for (double b : bs) rows.push_back(evaluate_point(h, c, a, b, index++));
    return rows;
}

// ---------------------------------------------------------------------
// output

inline std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string render_csv(const std::vector<GridRow>& rows, bool quantiles) {
    std::ostringstream out;
    out << (quantiles ? "p,q,value,error,converged\n" : "s,t,value,error,converged\n");
    for (const GridRow& r : rows) {
        out << format_value(r.a) << ',' << format_value(r.b) << ',' << format_value(r.value)
            << ',' << format_value(r.error) << ',' << (r.converged ? "true" : "false")
            << '\n';
    }
    return out.str();
}

inline std::string render_json(const std::vector<GridRow>& rows, bool quantiles) {
    json arr = json::array();
    const char* ka = quantiles ? "p" : "s";
    const char* kb = quantiles ? "q" : "t";
    for (const GridRow& r : rows) {
        json rec;
        rec[ka] = r.a;
        rec[kb] = r.b;
        if (std::isnan(r.value)) rec["value"] = "nan";
        else rec["value"] = r.value;
        rec["error"] = r.error;
        rec["converged"] = r.converged;
        arr.push_back(rec);
    }
    return arr.dump(2) + "\n";
}

/// Execute a run: sweep the grid, write the table, return the exit code
/// (0 = all points converged, 2 = some points failed or were skipped).
inline int run(const RunConfig& c, std::ostream& err = std::cerr) {
    ModelHandle h = build_model(c.model);
    std::vector<GridRow> rows = run_sweep(h, c);

    long failed = 0;
    for (const GridRow& r : rows)
        if (!r.converged) ++failed;
    if (failed > 0)
        err << "warning: " << failed << " of " << rows.size()
            << " grid points did not converge (value=nan or tolerance missed)\n";

    const bool quantiles = measure_uses_quantiles(c.measure);
    const std::string text =
        c.format == "csv" ? render_csv(rows, quantiles) : render_json(rows, quantiles);
    if (c.output == "-" || c.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.output);
        if (!out) throw ConfigError("cannot open output file: " + c.output);
        out << text;
    }
    return failed == 0 ? 0 : 2;
}

inline std::string list_models_text() {
    return "model families (config: model.family, model.params):\n"
           "  linear          f(x,y) = x+y on the unit square; no parameters\n"
           "  triangle        uniform density 2ab on a*x+b*y <= 1; params alpha, beta\n"
           "  gumbel          bivariate exponential with survival G(0,(1+tx)(1+ty)/t)/G(0,1/t);"
           " params theta\n"
           "  lomax-tte       time-transformed exponential, W(x)=(1+x)^-r, R1=alpha*s,"
           " R2=beta*t; params r, alpha, beta\n"
           "  truncated-tte   W(x)=(x/omega-1)^2 on [0,omega]; params omega, alpha, beta\n"
           "  freund          Freund bivariate exponential; params alpha, beta,"
           " alpha_prime, beta_prime\n"
           "  copula          Sklar construction; params copula"
           " (independence|clayton-special), marginal_x, marginal_y\n"
           "  os              order statistics (min,max) of n iid components; params n,"
           " component (uniform|exponential|weibull)\n";
}

inline std::string list_measures_text() {
    return "measures (config: measure):\n"
           "  past-mi              MI of [(X,Y) | X<=s, Y<=t] over an (s,t) grid\n"
           "  residual-mi          MI of [(X-s,Y-t) | X>s, Y>t] over an (s,t) grid\n"
           "  mixed-entropy        joint entropy of the selected conditioning region"
           " (config: region)\n"
           "  os-mi                distribution-free MI of (min,max) given"
           " {X_1:n<=s, X_n:n>t} at quantile levels (p,q)\n"
           "  copula-past-mi       past MI from the copula density at levels (p,q)\n"
           "  copula-residual-mi   residual MI from the survival copula at levels (p,q)\n"
           "  bounds               corner bound log a(s,t;s,t) + log(region prob) with"
           " grid-probed direction (config: region = past|residual)\n"
           "  mc-validate          Monte-Carlo estimate vs quadrature at each grid point"
           " (config: region, seed, mc_samples)\n"
           "  decomposition-check  entropy partition identity residual at each (s,t)\n";
}

} // namespace lifeinfo::cli
