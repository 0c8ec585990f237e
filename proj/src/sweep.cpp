#include "carl/sweep.hpp"

#include "carl/dynamics.hpp"
#include "carl/entanglement.hpp"
#include "carl/errors.hpp"
#include "carl/observables.hpp"
#include "carl/regimes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

namespace carl {

namespace {

constexpr int kMaxPoints = 1'000'000;

bool starts_with(const std::string& s, const char* prefix) { return s.rfind(prefix, 0) == 0; }

bool needs_covariance(const std::vector<std::string>& outputs)
{
    return std::any_of(outputs.begin(), outputs.end(), [](const std::string& o) { return o != "gain"; });
}

bool needs_separability(const std::vector<std::string>& outputs)
{
    return std::any_of(outputs.begin(), outputs.end(),
                       [](const std::string& o) { return starts_with(o, "mineig_") || o == "class"; });
}

// Pair index (0: 12, 1: 13, 2: 23) and 1-based modes from a two-digit suffix.
std::pair<int, int> pair_modes(const std::string& digits) { return {digits[0] - '0', digits[1] - '0'}; }

std::size_t pair_slot(int i, int j) { return i == 1 ? static_cast<std::size_t>(j - 2) : 2; }

double parse_double(const std::string& text, const char* what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidSpec(std::string("cannot parse ") + what + " '" + text + "'");
    }
    if (used != text.size()) throw InvalidSpec(std::string("cannot parse ") + what + " '" + text + "'");
    return v;
}

Json cell_to_json(const Cell& cell)
{
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    return nullptr;
}

Json optional_array(const std::array<std::optional<double>, 3>& values)
{
    Json out = Json::array();
    for (const auto& v : values) out.push_back(v ? Json(*v) : Json(nullptr));
    return out;
}

} // namespace

std::string to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::delta: return "delta";
    case SweepAxis::tau: return "tau";
    case SweepAxis::gamma: return "gamma";
    case SweepAxis::kappa: return "kappa";
    }
    return "tau";
}

SweepAxis parse_axis(const std::string& name)
{
    if (name == "delta") return SweepAxis::delta;
    if (name == "tau") return SweepAxis::tau;
    if (name == "gamma") return SweepAxis::gamma;
    if (name == "kappa") return SweepAxis::kappa;
    throw InvalidSpec("unknown sweep axis '" + name + "' (expected delta, tau, gamma or kappa)");
}

const std::vector<std::string>& output_vocabulary()
{
    static const std::vector<std::string> vocabulary{
        "n1", "n2", "n3", "xi12", "xi13", "xi23", "g2_12", "g2_13", "g2_23", "bunching", "gain",
        "mineig_gamma1", "mineig_gamma2", "mineig_gamma3", "mineig_s12", "mineig_s13", "mineig_s23", "class",
    };
    return vocabulary;
}

void validate(const SweepSpec& spec)
{
    if (!std::isfinite(spec.start) || !std::isfinite(spec.stop)) throw InvalidSpec("sweep bounds must be finite");
    if (!(spec.start < spec.stop)) throw InvalidSpec("sweep start must be below stop");
    if (spec.points < 2 || spec.points > kMaxPoints) throw InvalidSpec("sweep points must be in [2, 1000000]");
    if (!std::isfinite(spec.tau) || spec.tau < 0.0) throw InvalidSpec("tau must be finite and non-negative");
    if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon)) throw InvalidSpec("epsilon must be finite and >= 0");
    if (!(spec.atom_number > 0.0) || !std::isfinite(spec.atom_number)) throw InvalidSpec("atom number must be positive");
    if (spec.axis != SweepAxis::delta && spec.start < 0.0)
        throw InvalidSpec(to_string(spec.axis) + " sweeps must start at a non-negative value");
    if (spec.outputs.empty()) throw InvalidSpec("no outputs requested");

    const auto& vocab = output_vocabulary();
    std::set<std::string> seen;
    for (const auto& o : spec.outputs) {
        if (std::find(vocab.begin(), vocab.end(), o) == vocab.end()) throw InvalidSpec("unknown output '" + o + "'");
        if (!seen.insert(o).second) throw InvalidSpec("output '" + o + "' requested twice");
    }
}

void parse_sweep_argument(const std::string& text, SweepSpec& spec)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 4) throw InvalidSpec("sweep must look like axis:start:stop:points, got '" + text + "'");

    spec.axis = parse_axis(parts[0]);
    spec.start = parse_double(parts[1], "sweep start");
    spec.stop = parse_double(parts[2], "sweep stop");
    const double points = parse_double(parts[3], "sweep points");
    if (points != std::floor(points) || points < 2 || points > kMaxPoints)
        throw InvalidSpec("sweep points must be an integer in [2, 1000000]");
    spec.points = static_cast<int>(points);
}

std::vector<double> grid(const SweepSpec& spec)
{
    std::vector<double> xs(static_cast<std::size_t>(spec.points));
    const double span = spec.stop - spec.start;
    for (int i = 0; i < spec.points; ++i)
        xs[static_cast<std::size_t>(i)] = spec.start + span * i / (spec.points - 1);
    xs.back() = spec.stop;
    return xs;
}

ModelParams point_params(const SweepSpec& spec, double x)
{
    switch (spec.axis) {
    case SweepAxis::delta: return spec.fixed.with_delta(x);
    case SweepAxis::gamma: return spec.fixed.with_gamma(x);
    case SweepAxis::kappa: return spec.fixed.with_kappa(x);
    case SweepAxis::tau: return spec.fixed;
    }
    return spec.fixed;
}

double point_tau(const SweepSpec& spec, double x) { return spec.axis == SweepAxis::tau ? x : spec.tau; }

Row evaluate_row(const SweepSpec& spec, double x)
{
    Row row{"", x, std::vector<Cell>(spec.outputs.size()), "ok"};
    try {
        const ModelParams params = point_params(spec, x);
        const double tau = point_tau(spec, x);

        std::optional<Mat3> c;
        std::array<double, 3> n{};
        if (needs_covariance(spec.outputs)) {
            c = evolve(params, tau).state.c;
            n = occupations(*c);
        }
        std::optional<SeparabilityReport> sep;
        if (needs_separability(spec.outputs)) sep = separability(*c, spec.epsilon);

        for (std::size_t k = 0; k < spec.outputs.size(); ++k) {
            const std::string& o = spec.outputs[k];
            Cell& cell = row.cells[k];
            if (o.size() == 2 && o[0] == 'n') {
                cell = n[static_cast<std::size_t>(o[1] - '1')];
            } else if (starts_with(o, "xi")) {
                const auto [i, j] = pair_modes(o.substr(2));
                if (const auto v = number_squeezing(*c, i, j)) cell = *v;
            } else if (starts_with(o, "g2_")) {
                const auto [i, j] = pair_modes(o.substr(3));
                if (n[static_cast<std::size_t>(i - 1)] > 1e-12 && n[static_cast<std::size_t>(j - 1)] > 1e-12)
                    cell = g2_cross(*c, i, j);
            } else if (o == "bunching") {
                cell = bunching(*c, spec.atom_number);
            } else if (o == "gain") {
                cell = gain_at(params);
            } else if (starts_with(o, "mineig_gamma")) {
                cell = sep->min_eig_gamma[static_cast<std::size_t>(o.back() - '1')];
            } else if (starts_with(o, "mineig_s")) {
                const auto [i, j] = pair_modes(o.substr(8));
                cell = sep->min_eig_s[pair_slot(i, j)];
            } else if (o == "class") {
                cell = sep->label_string();
            }
        }
    } catch (const Error& e) {
        std::fill(row.cells.begin(), row.cells.end(), Cell{});
        row.status = std::string(to_string(e.code()));
    } catch (const std::exception&) {
        std::fill(row.cells.begin(), row.cells.end(), Cell{});
        row.status = "internal_error";
    }
    return row;
}

SweepTable run_sweep(const SweepSpec& spec, unsigned workers)
{
    validate(spec);
    const std::vector<double> xs = grid(spec);

    SweepTable table{to_string(spec.axis), spec.outputs, false, std::vector<Row>(xs.size())};
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, xs.size()));

    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < xs.size(); i = next++) table.rows[i] = evaluate_row(spec, xs[i]);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return table;
}

// --- figure presets ---------------------------------------------------------

namespace {

SweepSpec make_spec(SweepAxis axis, double start, double stop, int points, const ModelParams& fixed,
                    double tau, std::vector<std::string> outputs)
{
    SweepSpec s;
    s.axis = axis;
    s.start = start;
    s.stop = stop;
    s.points = points;
    s.fixed = fixed;
    s.tau = tau;
    s.outputs = std::move(outputs);
    return s;
}

std::string curve_label(const char* panel, double gamma, double kappa)
{
    return std::string(panel) + " gamma=" + format_number(gamma) + " kappa=" + format_number(kappa);
}

// Panel (a): kappa = 0 with a gamma ladder; panel (b): gamma = 0 with a kappa ladder.
// Each ladder starts with the lossless reference curve.
std::vector<PresetCurve> ladders(SweepAxis axis, double start, double stop, int points, double rho, double delta,
                                 double tau, const std::vector<double>& gammas, const std::vector<double>& kappas,
                                 const std::vector<std::string>& outputs)
{
    std::vector<PresetCurve> curves;
    for (double g : gammas)
        curves.push_back({curve_label("a", g, 0.0),
                          make_spec(axis, start, stop, points, ModelParams(rho, delta, g, g, 0.0), tau, outputs)});
    for (double k : kappas)
        curves.push_back({curve_label("b", 0.0, k),
                          make_spec(axis, start, stop, points, ModelParams(rho, delta, 0.0, 0.0, k), tau, outputs)});
    return curves;
}

std::vector<PresetCurve> loss_curves(SweepAxis axis, double start, double stop, int points, double rho, double delta,
                                     double tau, const std::vector<std::pair<double, double>>& losses,
                                     const std::vector<std::string>& outputs)
{
    std::vector<PresetCurve> curves;
    for (const auto& [g, k] : losses)
        curves.push_back({curve_label("", g, k).substr(1),
                          make_spec(axis, start, stop, points, ModelParams(rho, delta, g, g, k), tau, outputs)});
    return curves;
}

const std::vector<double> kSemiGammas{0.0, 0.5, 1.0, 2.0};
const std::vector<double> kSemiKappas{0.0, 1.0, 5.0};
const std::vector<double> kQuantumGammas{0.0, 0.05, 0.1, 0.2};
const std::vector<double> kQuantumKappas{0.0, 0.5, 1.0};

} // namespace

std::vector<std::string> preset_ids()
{
    std::vector<std::string> ids;
    for (int i = 1; i <= 15; ++i) ids.push_back("fig" + std::to_string(i));
    return ids;
}

FigurePreset figure_preset(const std::string& id)
{
    using A = SweepAxis;
    const std::vector<std::string> gain{"gain"};

    if (id == "fig1") {
        return {id, "growth rate vs delta, rho=100",
                ladders(A::delta, -2.0, 4.0, 601, 100.0, 0.0, 0.0, {0.0, 0.5, 1.0, 2.0}, {1.0, 5.0, 10.0}, gain)};
    }
    if (id == "fig2") {
        FigurePreset p{id, "growth rate vs delta, quantum regime", {}};
        for (double g : {0.0, 0.2, 0.5, 1.0})
            p.curves.push_back({curve_label("a", g, 0.0) + " rho=0.2",
                                make_spec(A::delta, 3.0, 7.0, 801, ModelParams(0.2, 0.0, g, g, 0.0), 0.0, gain)});
        for (double k : {0.0, 0.5, 1.0, 5.0})
            p.curves.push_back({curve_label("b", 0.0, k) + " rho=1",
                                make_spec(A::delta, -1.0, 3.0, 801, ModelParams(1.0, 0.0, 0.0, 0.0, k), 0.0, gain)});
        return p;
    }
    if (id == "fig3")
        return {id, "n1 and xi12 vs delta, rho=100, tau=2, kappa=0",
                ladders(A::delta, -2.0, 4.0, 301, 100.0, 0.0, 2.0, {0.0, 0.5, 1.0}, {}, {"n1", "xi12"})};
    if (id == "fig4")
        return {id, "n1 and xi12 vs delta, rho=100, tau=2, gamma=0",
                ladders(A::delta, -2.0, 4.0, 301, 100.0, 0.0, 2.0, {}, {0.0, 1.0, 5.0}, {"n1", "xi12"})};
    if (id == "fig5")
        return {id, "n1 and xi12 vs tau, rho=100, delta=3.5",
                loss_curves(A::tau, 0.0, 10.0, 201, 100.0, 3.5, 0.0, {{0.0, 0.0}, {0.2, 0.0}, {0.5, 0.5}},
                            {"n1", "xi12"})};
    if (id == "fig6")
        return {id, "n1 and xi13 vs tau, rho=0.2, delta=5",
                loss_curves(A::tau, 0.0, 40.0, 201, 0.2, 5.0, 0.0, {{0.0, 0.0}, {0.15, 0.0}, {0.15, 0.15}},
                            {"n1", "xi13"})};
    if (id == "fig7" || id == "fig8" || id == "fig9") {
        const std::string out = "mineig_gamma" + std::string(1, static_cast<char>(id.back() - 6));
        return {id, "min eigenvalue of " + out.substr(7) + " vs tau, rho=100, delta=0.01",
                ladders(A::tau, 0.0, 5.0, 201, 100.0, 0.01, 0.0, kSemiGammas, kSemiKappas, {out})};
    }
    if (id == "fig10" || id == "fig11") {
        const std::string out = id == "fig10" ? "mineig_gamma1" : "mineig_gamma2";
        const std::vector<std::string> outputs =
            id == "fig10" ? std::vector<std::string>{out, "mineig_gamma3"} : std::vector<std::string>{out};
        return {id, "min eigenvalue of " + out.substr(7) + " vs tau, rho=0.2, delta=5",
                ladders(A::tau, 0.0, 20.0, 201, 0.2, 5.0, 0.0, kQuantumGammas, kQuantumKappas, outputs)};
    }
    if (id == "fig12" || id == "fig13") {
        const std::string out = id == "fig12" ? "mineig_s12" : "mineig_s13";
        return {id, "min eigenvalue of " + out.substr(7) + " vs tau, rho=100, delta=0",
                ladders(A::tau, 0.0, 5.0, 201, 100.0, 0.0, 0.0, kSemiGammas, kSemiKappas, {out})};
    }
    if (id == "fig14" || id == "fig15") {
        const std::string out = id == "fig14" ? "mineig_s12" : "mineig_s13";
        return {id, "min eigenvalue of " + out.substr(7) + " vs tau, rho=0.2, delta=5",
                ladders(A::tau, 0.0, 20.0, 201, 0.2, 5.0, 0.0, kQuantumGammas, kQuantumKappas, {out})};
    }
    throw InvalidSpec("unknown preset '" + id + "' (expected fig1 .. fig15)");
}

SweepTable run_preset(const FigurePreset& preset, unsigned workers)
{
    SweepTable out;
    out.has_curve_column = true;
    for (const auto& curve : preset.curves) {
        SweepTable t = run_sweep(curve.spec, workers);
        if (out.columns.empty()) {
            out.axis = t.axis;
            out.columns = t.columns;
        }
        for (auto& row : t.rows) {
            row.curve = curve.label;
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

// --- output -----------------------------------------------------------------

void write_csv(std::ostream& out, const SweepTable& table, const std::vector<std::string>& metadata)
{
    for (const auto& line : metadata) out << "# " << line << '\n';
    if (table.has_curve_column) out << "curve,";
    out << table.axis;
    for (const auto& c : table.columns) out << ',' << c;
    out << ",status\n";

    for (const auto& row : table.rows) {
        if (table.has_curve_column) out << row.curve << ',';
        out << format_number(row.x);
        for (const auto& cell : row.cells) {
            out << ',';
            if (const auto* d = std::get_if<double>(&cell)) out << format_number(*d);
            else if (const auto* s = std::get_if<std::string>(&cell)) out << *s;
        }
        out << ',' << row.status << '\n';
    }
}

Json table_to_json(const SweepTable& table)
{
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json values = Json::object();
        for (std::size_t k = 0; k < table.columns.size(); ++k) values[table.columns[k]] = cell_to_json(row.cells[k]);
        Json r{{table.axis, row.x}, {"values", values}, {"status", row.status}};
        if (table.has_curve_column) r["curve"] = row.curve;
        rows.push_back(std::move(r));
    }
    return Json{{"axis", table.axis}, {"columns", table.columns}, {"rows", rows}};
}

Json sweep_spec_to_json(const SweepSpec& spec)
{
    return Json{{"axis", to_string(spec.axis)}, {"start", spec.start}, {"stop", spec.stop},
                {"points", spec.points}, {"params", params_to_json(spec.fixed)}, {"tau", spec.tau},
                {"outputs", spec.outputs}, {"epsilon", spec.epsilon}, {"atom_number", spec.atom_number}};
}

SweepSpec sweep_spec_from_json(const Json& j)
{
    try {
        SweepSpec s;
        s.axis = parse_axis(j.at("axis").get<std::string>());
        s.start = j.at("start").get<double>();
        s.stop = j.at("stop").get<double>();
        s.points = j.at("points").get<int>();
        s.fixed = params_from_json(j.at("params"));
        s.tau = j.value("tau", 0.0);
        s.outputs = j.at("outputs").get<std::vector<std::string>>();
        s.epsilon = j.value("epsilon", 1e-9);
        s.atom_number = j.value("atom_number", 1.0);
        validate(s);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidSpec(std::string("malformed sweep record: ") + e.what());
    }
}

Json evolve_point(const ModelParams& params, double tau, const PointOptions& options)
{
    const DerivedParams dp = derive(params);
    const Roots roots = cubic_roots(dp, params.rho());
    const Evolution ev = evolve(params, tau);
    const Mat3& c = ev.state.c;
    const ModeObservables obs = mode_observables(c, options.atom_number);
    const SeparabilityReport sep = separability(c, options.epsilon);

    Json roots_json = Json::array();
    for (const cd& w : roots) roots_json.push_back({w.real(), w.imag()});

    Json report{
        {"params", params_to_json(params)},
        {"tau", tau},
        {"regime", to_string(classify_regime(params))},
        {"roots", roots_json},
        {"gain", gain(roots, dp.gamma_plus)},
        {"path", ev.path == EvolutionPath::closed_form ? "closed_form" : "quadrature"},
        {"root_separation", ev.root_separation},
        {"covariance", matrix_to_json(c)},
        {"observables",
         {{"n", obs.n},
          {"var_n", obs.var_n},
          {"g2_auto", optional_array(obs.g2_auto)},
          {"g2_cross", optional_array(obs.g2_cross)},
          {"xi", optional_array(obs.xi)},
          {"bunching", obs.bunching},
          {"atom_number", options.atom_number}}},
        {"separability",
         {{"min_eig_gamma", sep.min_eig_gamma},
          {"min_eig_s", sep.min_eig_s},
          {"class", sep.label_string()},
          {"epsilon", sep.epsilon}}},
        {"physicality_min_eig", physicality(build_v(c))},
    };

    if (options.oracle) {
        const int steps = oracle_steps(params, tau);
        const Mat3 reference = ode_oracle(params, tau, steps).c;
        report["oracle"] = {{"steps", steps}, {"max_abs_diff", (c - reference).cwiseAbs().maxCoeff()}};
    }
    return report;
}

} // namespace carl
