#include "rext/cli.hpp"

#include "rext/magnetics.hpp"
#include "rext/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace rext::cli {

using nlohmann::json;

GridText parse_grid(const std::string& text) {
    GridText g{};
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi, &g.n, &tail) != 3)
        throw UsageError("grid must be min:max:n, got '" + text + "'");
    if (g.n < 1 || g.hi < g.lo) throw UsageError("grid '" + text + "' needs max >= min and n >= 1");
    return g;
}

Complex parse_time(const std::string& text) {
    double re = 0, im = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &tail) != 2)
        throw UsageError("time must be re,im, got '" + text + "'");
    if (im > 0) throw UsageError("time must have Im t <= 0");
    return {re, im};
}

std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

struct RunConfig {
    std::string sigma;
    std::string grid = "0.1:4:40";
    std::string time = "0.6,-0.25";
    int terms = 10;
    int level = -1;
    std::string ereg = "0";
    std::optional<int> l;
    std::string mu = "1/2";
    std::string format = "json";
    std::string out;
    std::vector<std::string> tol;
    std::string suite = "fast";
};

// JSON with every float written at 17 significant digits.
void dump(const json& j, std::ostream& os, int depth = 0) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            os << "{\n";
            std::size_t k = 0;
            for (auto it = j.begin(); it != j.end(); ++it, ++k) {
                os << pad << "  " << json(it.key()).dump() << ": ";
                dump(it.value(), os, depth + 1);
                os << (k + 1 < j.size() ? ",\n" : "\n");
            }
            os << pad << "}";
            break;
        }
        case json::value_t::array: {
            // Arrays of scalars stay on one line (table rows).
            const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
            if (flat) {
                os << "[";
                for (std::size_t k = 0; k < j.size(); ++k) {
                    if (k) os << ", ";
                    dump(j[k], os, depth + 1);
                }
                os << "]";
            } else {
                os << "[\n";
                for (std::size_t k = 0; k < j.size(); ++k) {
                    os << pad << "  ";
                    dump(j[k], os, depth + 1);
                    os << (k + 1 < j.size() ? ",\n" : "\n");
                }
                os << pad << "]";
            }
            break;
        }
        case json::value_t::number_float:
            os << format_number(j.get<double>());
            break;
        default:
            os << j.dump();
    }
}

std::string csv_cell(const json& v) {
    if (v.is_number_float()) return format_number(v.get<double>());
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_structured()) return csv_cell(json(v.dump()));
    return v.dump();
}

// Tabular commands carry "columns" and "rows"; anything else flattens to key,value.
void write_csv(const json& doc, std::ostream& os) {
    if (doc.contains("columns")) {
        const auto& cols = doc["columns"];
        for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k].get<std::string>();
        os << "\n";
        for (const auto& row : doc["rows"]) {
            for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
            os << "\n";
        }
        return;
    }
    os << "key,value\n";
    const json flat = doc.flatten();
    for (auto it = flat.begin(); it != flat.end(); ++it) os << csv_cell(json(it.key())) << "," << csv_cell(it.value()) << "\n";
}

std::vector<int> parse_sigma(const std::string& text) {
    try {
        auto levels = parse_levels(text);
        check_levels(levels);
        return levels;
    } catch (const SequenceError& e) {
        throw UsageError(e.what());
    }
}

std::vector<double> grid_points(const GridText& g) {
    std::vector<double> p;
    for (int k = 0; k < g.n; ++k) p.push_back(g.n == 1 ? g.lo : g.lo + (g.hi - g.lo) * k / (g.n - 1));
    return p;
}

GridText positive_grid(const std::string& text) {
    const GridText g = parse_grid(text);
    if (!(g.lo > 0)) throw UsageError("grid must start above 0 (the singular point)");
    return g;
}

Rational parse_exact(const std::string& text, const char* what) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(what) + " must be a number or fraction, got '" + text + "'");
    }
}

json sigma_json(const GapSequence& s) { return s.elements(); }

json poly_json(const UniPoly& p) { return serialize(p); }

// ------------------------------------------------------------------ commands

int cmd_validate(const RunConfig& cfg, json& doc) {
    const auto levels = parse_sigma(cfg.sigma);
    doc["sigma"] = levels;
    bool ok = true;
    std::optional<GapSequence> sigma;
    try {
        sigma = GapSequence::validate(levels);
        const auto& d = sigma->decomposition();
        doc["structure"] = {{"valid", true},
                            {"decomposition", {{"singular", d.sing}, {"singular_adler", d.sing_adler}, {"adler", d.adler}}}};
    } catch (const SequenceError& e) {
        ok = false;
        doc["structure"] = {{"valid", false}, {"reason", e.what()}};
    }
    doc["l_number"] = sigma ? sigma->l_number()
                            : static_cast<int>(std::count_if(levels.begin(), levels.end(), [](int n) { return n % 2; })) -
                                  static_cast<int>(std::count_if(levels.begin(), levels.end(), [](int n) { return n % 2 == 0; }));

    const auto cert = certify_regular(levels);
    json c = {{"ord0", cert.ord0},
              {"expected_ord0", cert.expected_ord0},
              {"positive_roots", cert.positive_roots},
              {"passes", cert.passes()}};
    if (cert.first_root) c["first_root"] = {to_string(cert.first_root->lo), to_string(cert.first_root->hi)};
    doc["certificate"] = c;
    ok = ok && cert.passes();

    if (sigma) {
        const auto sp = spectrum(*sigma, 6);
        doc["spectrum_head"] = sp.levels;
        if (auto pred = predicted_wells(*sigma)) doc["predicted_wells"] = {{"wells", pred->wells}, {"heuristic", pred->heuristic}};
        if (cert.passes()) {
            const auto report = analyze_wells(build_potential(*sigma));
            doc["wells"] = report.minima;
            doc["stationary_points"] = report.points.size();
            doc["degenerate_points"] = report.degenerate;
        }
    }
    doc["pass"] = ok;
    return ok ? 0 : 1;
}

GapSequence admissible(const RunConfig& cfg) {
    const auto levels = parse_sigma(cfg.sigma);
    return GapSequence::validate(levels);  // SequenceError -> exit 1
}

int cmd_potential(const RunConfig& cfg, json& doc) {
    const auto sigma = admissible(cfg);
    const auto grid = positive_grid(cfg.grid);
    const auto model = build_potential(sigma);
    doc["sigma"] = sigma_json(sigma);
    doc["numerator"] = poly_json(model.v.num());
    doc["denominator"] = poly_json(model.v.den());
    doc["singular_coeff"] = model.singular_coeff;
    doc["columns"] = {"x", "V"};
    json rows = json::array();
    for (double x : grid_points(grid)) rows.push_back({x, model(x)});
    doc["rows"] = rows;
    return 0;
}

int cmd_spectrum(const RunConfig& cfg, json& doc) {
    const auto sigma = admissible(cfg);
    if (cfg.terms < 1) throw UsageError("--terms must be positive");
    const auto sp = spectrum(sigma, cfg.terms);
    doc["sigma"] = sigma_json(sigma);
    json gaps = json::array();
    for (std::size_t k = 1; k < sp.levels.size(); ++k) gaps.push_back(sp.levels[k] - sp.levels[k - 1]);
    doc["gaps"] = gaps;
    doc["columns"] = {"k", "n", "E"};
    json rows = json::array();
    for (std::size_t k = 0; k < sp.levels.size(); ++k) rows.push_back({static_cast<int>(k), sp.quanta[k], sp.levels[k]});
    doc["rows"] = rows;
    return 0;
}

int cmd_eigenfunction(const RunConfig& cfg, json& doc) {
    const auto sigma = admissible(cfg);
    const auto grid = positive_grid(cfg.grid);
    const int n = cfg.level >= 0 ? cfg.level : spectrum(sigma, 1).quanta.front();
    const auto state = eigenfunction(build_potential(sigma), n);
    doc["sigma"] = sigma_json(sigma);
    doc["n"] = n;
    doc["energy"] = state.energy;
    doc["columns"] = {"x", "psi"};
    json rows = json::array();
    for (double x : grid_points(grid)) rows.push_back({x, state(x)});
    doc["rows"] = rows;
    return 0;
}

int cmd_propagator(const RunConfig& cfg, json& doc) {
    const auto sigma = admissible(cfg);
    const auto grid = positive_grid(cfg.grid);
    const ComplexTime t(parse_time(cfg.time));
    const PropagatorModel k(sigma);
    doc["sigma"] = sigma_json(sigma);
    doc["time"] = {t.re(), t.im()};
    doc["columns"] = {"x", "y", "re", "im", "abs2"};
    json rows = json::array();
    const auto pts = grid_points(grid);
    for (double x : pts)
        for (double y : pts) {
            const Complex v = k(x, y, t);
            rows.push_back({x, y, v.real(), v.imag(), std::norm(v)});
        }
    doc["rows"] = rows;
    return 0;
}

std::vector<Rational> parse_ereg(const std::string& text) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_exact(item, "--ereg"));
    if (out.empty()) throw UsageError("--ereg needs at least one value");
    return out;
}

// sqrt(q) as a rational when q is a perfect square.
std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    const Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    return Rational(Integer(sqrt(n)), Integer(sqrt(d)));
}

int cmd_field(const RunConfig& cfg, json& doc) {
    const auto sigma = admissible(cfg);
    const GridText grid = parse_grid(cfg.grid);
    if (grid.lo < 0) throw UsageError("field grid must start at rho >= 0");
    const auto energies = parse_ereg(cfg.ereg);
    const Rational mu = parse_exact(cfg.mu, "--mu");
    const auto model = build_potential(sigma);
    const int l = cfg.l.value_or(sigma.l_number());

    const auto report = singularity_match_report(model, l, mu);
    doc["sigma"] = sigma_json(sigma);
    doc["l"] = l;
    doc["mu"] = to_string(mu);
    doc["singularity"] = {{"singular_coeff", report.singular_coeff},
                          {"l_s", report.l_s},
                          {"l_c", report.l_c},
                          {"residual", to_string(report.residual)},
                          {"matches", report.matches()}};
    json origin = json::array();
    json rows = json::array();
    for (const auto& e : energies) {
        const auto f = build_field(model, l, mu, e);
        json o = {{"e_reg", to_string(e)}, {"bz", f.bz(0.0)}};
        if (auto root = exact_sqrt(f.s(Rational(0)))) o["bz_exact"] = to_string(f.bz_num(Rational(0)) / *root);
        origin.push_back(o);
        for (double r : grid_points(grid)) rows.push_back({e.get_d(), r, f.f2(r), f.bz(r)});
    }
    doc["origin"] = origin;
    doc["columns"] = {"e_reg", "rho", "f2", "bz"};
    doc["rows"] = rows;
    return 0;
}

// ------------------------------------------------------------------ verify

struct Report {
    json checks = json::array();
    bool all = true;
    void add(const std::string& name, double value, json tolerance, bool pass) {
        checks.push_back({{"name", name}, {"value", value}, {"tolerance", std::move(tolerance)}, {"pass", pass}});
        all = all && pass;
    }
};

double identity_error(const std::vector<std::vector<double>>& g) {
    double e = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) e = std::max(e, std::abs(g[i][j] - (i == j ? 1.0 : 0.0)));
    return e;
}

Tolerances tolerances(const RunConfig& cfg) {
    Tolerances tol;
    for (const auto& item : cfg.tol) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + item + "'");
        double v = 0;
        try {
            v = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("--tol value is not a number in '" + item + "'");
        }
        try {
            tol.set(item.substr(0, eq), v);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return tol;
}

int cmd_verify(const RunConfig& cfg, json& doc) {
    if (cfg.suite != "fast" && cfg.suite != "full") throw UsageError("--suite must be fast or full");
    const bool full = cfg.suite == "full";
    const Tolerances tol = tolerances(cfg);
    const auto levels = parse_sigma(cfg.sigma);
    doc["sigma"] = levels;
    doc["suite"] = cfg.suite;
    doc["tolerances"] = tol.as_map();
    Report rep;

    std::optional<GapSequence> sigma;
    try {
        sigma = GapSequence::validate(levels);
    } catch (const SequenceError&) {
    }
    rep.add("structure", sigma ? 1 : 0, 1, sigma.has_value());
    const auto cert = certify_regular(levels);
    rep.add("regularity_positive_roots", cert.positive_roots, 0, cert.passes());
    if (!sigma || !cert.passes()) {
        doc["checks"] = rep.checks;
        doc["pass"] = false;
        return 1;
    }

    const auto model = build_potential(*sigma);
    const int l = sigma->l_number();
    rep.add("singular_coeff", std::abs(model.singular_coeff - l * (l + 1)), 0, model.singular_coeff == l * (l + 1));

    const auto table = build_qtable(*sigma);
    int mismatches = 0;
    const SeedSet& seed = *model.seed;
    for (const auto& [a, b] : {std::pair{Rational(3, 2), Rational(5, 7)}, std::pair{Rational(2), Rational(1, 3)}}) {
        if (table.sum(a, b) != table.c * seed.what()(a) * seed.what()(b)) ++mismatches;
    }
    rep.add("q_sum_factorization", mismatches, 0, mismatches == 0);

    const PropagatorModel k(table, model.seed);
    const SpectralBasis basis(*sigma);
    const ComplexTime t_cmp(0.6, -0.25, tol.time_floor);
    const int side = full ? 5 : 3;
    double agree = 0;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            const double x = 0.4 + 2.6 * i / (side - 1), y = 0.4 + 2.6 * j / (side - 1);
            const Complex a = k(x, y, t_cmp);
            agree = std::max(agree, std::abs(a - spectral_propagator(basis, x, y, t_cmp.value(), 100).value) / std::abs(a));
        }
    rep.add("spectral_agreement", agree, tol.spectral_agreement, agree <= tol.spectral_agreement);

    double at_zero = 0, near_zero = 0;
    for (double y : {0.5, 1.0, 2.0}) {
        at_zero = std::max(at_zero, std::abs(k(0.0, y, t_cmp)));
        near_zero = std::max(near_zero, std::abs(k(1e-6, y, t_cmp)) / std::abs(k(y, y, t_cmp)));
    }
    rep.add("boundary_zero", at_zero, 0, at_zero == 0);
    rep.add("boundary", near_zero, tol.boundary, near_zero <= tol.boundary);

    const double gram = identity_error(gram_matrix(model, full ? 6 : 4));
    rep.add("gram", gram, tol.gram, gram <= tol.gram);

    const auto quanta = spectrum(*sigma, 3).quanta;
    const UniformGrid susy_grid{0.5, 4.0, 3501};
    for (std::size_t s = 0; s < (full ? 2u : 1u); ++s) {
        const double r = susy_check(model, quanta[s], susy_grid);
        rep.add("susy_n" + std::to_string(quanta[s]), r, tol.susy, r <= tol.susy);
    }

    if (full) {
        const GridSpec grid(0.5, 4.0, 8);
        for (int n : quanta) {
            const double d = evolve_eigenfunction(k, model, n, Complex(0.7, -0.2), grid);
            rep.add("evolution_n" + std::to_string(n), d, tol.evolution, d <= tol.evolution);
        }
        const double d0 = evolve_eigenfunction(k, model, quanta[0], Complex(0.0, -1e-3), grid);
        rep.add("evolution_t0", d0, tol.evolution_t0, d0 <= tol.evolution_t0);

        const GridSpec inner(0.5, 3.0, 8);
        const double r1 = schrodinger_residual(k, model, inner, Complex(0.7, -0.2), 1e-3, 1e-3);
        const double r2 = schrodinger_residual(k, model, inner, Complex(0.7, -0.2), 5e-4, 5e-4);
        rep.add("schrodinger", r1, tol.schrodinger, r1 <= tol.schrodinger);
        rep.add("schrodinger_order_ratio", r1 / r2, {tol.order_ratio_min, tol.order_ratio_max},
                r1 / r2 >= tol.order_ratio_min && r1 / r2 <= tol.order_ratio_max);

        if (auto pred = predicted_wells(*sigma); pred && !pred->heuristic) {
            const int wells = count_wells(model);
            rep.add("wells", wells, pred->wells, wells == pred->wells);
        }
        try {
            const auto f = build_field(model, l);
            const bool roundtrip = forward_check(f) == model.v;
            rep.add("field_roundtrip", roundtrip ? 0 : 1, 0, roundtrip);
            const double b0 = f.bz(0.0);
            rep.add("field_origin_finite", b0, json(), std::isfinite(b0));
        } catch (const PositivityError&) {
            // Field needs a positive E_reg shift for this potential; nothing to check at E_reg = 0.
        }
    }
    doc["checks"] = rep.checks;
    doc["pass"] = rep.all;
    return rep.all ? 0 : 1;
}

void common_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Rationally extended oscillators: potentials, propagators and fields", "rext"};
    app.require_subcommand(1);

    auto* validate = app.add_subcommand("validate", "check a gap sequence and its regularity certificate");
    auto* potential = app.add_subcommand("potential", "tabulate V on a grid");
    auto* spectrum_cmd = app.add_subcommand("spectrum", "list the lowest energy levels");
    auto* eigen = app.add_subcommand("eigenfunction", "tabulate a normalized bound state");
    auto* propagator = app.add_subcommand("propagator", "tabulate K(x, y; t) on a square grid");
    auto* field = app.add_subcommand("field", "tabulate f2 and B_z for one or more E_reg values");
    auto* verify = app.add_subcommand("verify", "run the verification checks for a gap sequence");

    for (auto* sub : {validate, potential, spectrum_cmd, eigen, propagator, field, verify}) {
        sub->add_option("--sigma", cfg.sigma, "gap sequence, e.g. 1,6,7")->required();
        common_options(sub, cfg);
    }
    for (auto* sub : {potential, eigen, propagator, field}) sub->add_option("--grid", cfg.grid, "min:max:n");
    propagator->add_option("--time", cfg.time, "re,im with Im <= 0");
    spectrum_cmd->add_option("--terms", cfg.terms, "number of levels");
    eigen->add_option("--n", cfg.level, "oscillator level (default: ground state)");
    field->add_option("--ereg", cfg.ereg, "E_reg values, comma separated");
    field->add_option("--l", cfg.l, "angular momentum (default l_N)");
    field->add_option("--mu", cfg.mu, "flux mantissa");
    verify->add_option("--suite", cfg.suite, "fast or full");
    verify->add_option("--tol", cfg.tol, "override a tolerance, name=value");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    json doc;
    int code = 0;
    try {
        CLI::App* sub = app.get_subcommands().front();
        doc["command"] = sub->get_name();
        if (sub == validate) code = cmd_validate(cfg, doc);
        else if (sub == potential) code = cmd_potential(cfg, doc);
        else if (sub == spectrum_cmd) code = cmd_spectrum(cfg, doc);
        else if (sub == eigen) code = cmd_eigenfunction(cfg, doc);
        else if (sub == propagator) code = cmd_propagator(cfg, doc);
        else if (sub == field) code = cmd_field(cfg, doc);
        else code = cmd_verify(cfg, doc);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
        file.open(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write " << cfg.out << "\n";
            return 1;
        }
    }
    std::ostream& os = cfg.out.empty() ? out : file;
    if (cfg.format == "csv") {
        write_csv(doc, os);
    } else {
        dump(doc, os);
        os << "\n";
    }
    return code;
}

}  // namespace rext::cli
