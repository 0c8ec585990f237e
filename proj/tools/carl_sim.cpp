// carl-sim: single-point evolution, parameter sweeps and figure presets.
//
// Exit codes: 0 success, 2 invalid input, 3 numerical failure.

#include "carl/errors.hpp"
#include "carl/serialization.hpp"
#include "carl/sweep.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

constexpr const char* kVersion = "carl-sim 1.0.0";

struct Options {
    std::optional<double> rho, delta, gamma1, gamma2, kappa, tau;
    std::string sweep;
    std::vector<std::string> outputs;
    std::string preset;
    std::string format = "csv";
    std::string out;
    std::string params_file;
    bool oracle = false;
    unsigned workers = 0;
    double epsilon = 1e-9;
    double atoms = 1.0;
};

std::vector<std::string> split_outputs(const std::vector<std::string>& raw)
{
    std::vector<std::string> out;
    for (const auto& item : raw) {
        std::stringstream ss(item);
        for (std::string name; std::getline(ss, name, ',');)
            if (!name.empty()) out.push_back(name);
    }
    return out;
}

carl::Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw carl::InvalidSpec("cannot open '" + path + "'");
    try {
        return carl::Json::parse(in);
    } catch (const carl::Json::exception& e) {
        throw carl::InvalidSpec("'" + path + "' is not valid JSON: " + e.what());
    }
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream ss;
    ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return ss.str();
}

std::vector<std::string> sweep_metadata(const carl::SweepSpec& s)
{
    using carl::format_number;
    const auto& p = s.fixed;
    return {
        kVersion,
        "params rho=" + format_number(p.rho()) + " delta=" + format_number(p.delta()) +
            " gamma1=" + format_number(p.gamma1()) + " gamma2=" + format_number(p.gamma2()) +
            " kappa=" + format_number(p.kappa()),
        "sweep " + carl::to_string(s.axis) + " start=" + format_number(s.start) + " stop=" + format_number(s.stop) +
            " points=" + std::to_string(s.points),
        "tau=" + format_number(s.tau) + " epsilon=" + format_number(s.epsilon) +
            " atom_number=" + format_number(s.atom_number),
    };
}

class Runner {
public:
    explicit Runner(Options o) : opt_(std::move(o)) {}

    void run(std::ostream& out)
    {
        if (opt_.format != "csv" && opt_.format != "json")
            throw carl::InvalidSpec("format must be csv or json");
        if (!opt_.params_file.empty()) loaded_ = read_json_file(opt_.params_file);

        if (!opt_.preset.empty()) {
            if (!opt_.sweep.empty()) throw carl::InvalidSpec("--preset and --sweep are mutually exclusive");
            run_preset(out);
        } else if (!opt_.sweep.empty() || (loaded_ && loaded_->contains("sweep"))) {
            run_sweep(out);
        } else {
            run_point(out);
        }
    }

private:
    carl::ModelParams params(const carl::ModelParams& base) const
    {
        return carl::ModelParams(opt_.rho.value_or(base.rho()), opt_.delta.value_or(base.delta()),
                                 opt_.gamma1.value_or(base.gamma1()), opt_.gamma2.value_or(base.gamma2()),
                                 opt_.kappa.value_or(base.kappa()));
    }

    carl::ModelParams base_params() const
    {
        if (loaded_) return carl::params_from_json(*loaded_);
        if (!opt_.rho) throw carl::InvalidSpec("--rho is required unless --params or --preset is given");
        return carl::ModelParams(*opt_.rho, 0.0, 0.0, 0.0, 0.0);
    }

    double base_tau() const
    {
        if (loaded_ && loaded_->contains("tau") && (*loaded_)["tau"].is_number()) return (*loaded_)["tau"].get<double>();
        return 0.0;
    }

    void run_preset(std::ostream& out)
    {
        const carl::FigurePreset preset = carl::figure_preset(opt_.preset);
        const carl::SweepTable table = carl::run_preset(preset, opt_.workers);
        if (opt_.format == "csv") {
            carl::write_csv(out, table, {kVersion, "preset " + preset.id + ": " + preset.description});
        } else {
            carl::Json curves = carl::Json::array();
            for (const auto& c : preset.curves)
                curves.push_back({{"label", c.label}, {"sweep", carl::sweep_spec_to_json(c.spec)}});
            out << carl::Json{{"preset", preset.id}, {"description", preset.description}, {"curves", curves},
                              {"table", carl::table_to_json(table)}}
                       .dump(2)
                << '\n';
        }
    }

    void run_sweep(std::ostream& out)
    {
        carl::SweepSpec spec;
        if (loaded_ && loaded_->contains("sweep")) spec = carl::sweep_spec_from_json(loaded_->at("sweep"));
        else spec.fixed = base_params();
        spec.fixed = params(spec.fixed);
        if (!opt_.sweep.empty()) carl::parse_sweep_argument(opt_.sweep, spec);
        if (opt_.tau) spec.tau = *opt_.tau;
        else if (!(loaded_ && loaded_->contains("sweep"))) spec.tau = base_tau();
        if (!opt_.outputs.empty()) spec.outputs = split_outputs(opt_.outputs);
        if (spec.outputs.empty()) spec.outputs = default_outputs(spec.axis);
        if (epsilon_set_) spec.epsilon = opt_.epsilon;
        if (atoms_set_) spec.atom_number = opt_.atoms;
        carl::validate(spec);

        const carl::SweepTable table = carl::run_sweep(spec, opt_.workers);
        if (opt_.format == "csv") {
            carl::write_csv(out, table, sweep_metadata(spec));
        } else {
            out << carl::Json{{"sweep", carl::sweep_spec_to_json(spec)}, {"table", carl::table_to_json(table)}}.dump(2)
                << '\n';
        }
    }

    void run_point(std::ostream& out)
    {
        const carl::ModelParams p = params(base_params());
        const double tau = opt_.tau.value_or(base_tau());
        if (!std::isfinite(tau) || tau < 0.0) throw carl::InvalidSpec("tau must be finite and non-negative");

        if (opt_.format == "json") {
            carl::PointOptions po;
            po.epsilon = opt_.epsilon;
            po.atom_number = opt_.atoms;
            po.oracle = opt_.oracle;
            out << carl::evolve_point(p, tau, po).dump(2) << '\n';
            return;
        }

        carl::SweepSpec spec;
        spec.axis = carl::SweepAxis::tau;
        spec.fixed = p;
        spec.outputs = opt_.outputs.empty() ? carl::output_vocabulary() : split_outputs(opt_.outputs);
        spec.epsilon = opt_.epsilon;
        spec.atom_number = opt_.atoms;
        spec.start = tau;
        spec.stop = tau + 1.0;
        spec.points = 2;
        carl::validate(spec);

        carl::SweepTable table{"tau", spec.outputs, false, {carl::evaluate_row(spec, tau)}};
        point_failed = table.rows.front().status != "ok";
        auto meta = sweep_metadata(spec);
        meta.erase(meta.begin() + 2);
        carl::write_csv(out, table, meta);
    }

    static std::vector<std::string> default_outputs(carl::SweepAxis axis)
    {
        if (axis == carl::SweepAxis::delta) return {"gain", "n1", "n2", "n3", "xi12"};
        return {"n1", "n2", "n3", "xi12", "xi13", "xi23", "class"};
    }

public:
    bool point_failed = false;
    bool epsilon_set_ = false;
    bool atoms_set_ = false;

private:
    Options opt_;
    std::optional<carl::Json> loaded_;
};

void write_sidecar(const std::string& path, int argc, char** argv, const Options& opt, double seconds)
{
    std::string command;
    for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);
    const unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
    std::ofstream meta(path + ".meta.json");
    meta << carl::Json{{"tool", kVersion}, {"generated_at", utc_timestamp()}, {"command", command},
                       {"workers", workers}, {"elapsed_seconds", seconds}, {"data_file", path}}
                .dump(2)
         << '\n';
}

int report_error(const carl::Error& e)
{
    std::cerr << carl::Json{{"error", std::string(carl::to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return carl::is_input_error(e.code()) ? 2 : 3;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Closed-form simulator of the dissipative three-mode CARL dynamics"};
    app.set_version_flag("--version", kVersion);

    Options opt;
    app.add_option("--rho", opt.rho, "CARL parameter rho (> 0)");
    app.add_option("--delta", opt.delta, "pump-probe detuning in units of rho*omega_r");
    app.add_option("--gamma1", opt.gamma1, "decoherence rate of atomic mode 1");
    app.add_option("--gamma2", opt.gamma2, "decoherence rate of atomic mode 2");
    app.add_option("--kappa", opt.kappa, "cavity decay rate");
    app.add_option("--tau", opt.tau, "scaled interaction time");
    app.add_option("--sweep", opt.sweep, "axis:start:stop:points with axis in delta, tau, gamma, kappa");
    app.add_option("--outputs", opt.outputs, "comma-separated observable names")->delimiter(',');
    app.add_option("--preset", opt.preset, "figure preset fig1 .. fig15");
    app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out, "output file (default: stdout)");
    app.add_option("--params", opt.params_file, "JSON parameter record or a previous JSON output");
    app.add_flag("--oracle", opt.oracle, "compare against the RK4 moment-equation oracle (point mode)");
    app.add_option("--workers", opt.workers, "worker threads for sweeps (0 = all cores)");
    auto* eps = app.add_option("--epsilon", opt.epsilon, "separability sign tolerance");
    auto* atoms = app.add_option("--atoms", opt.atoms, "atom number N used for the bunching output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Runner runner(opt);
        runner.epsilon_set_ = eps->count() > 0;
        runner.atoms_set_ = atoms->count() > 0;
        const auto t0 = std::chrono::steady_clock::now();
        if (opt.out.empty()) {
            runner.run(std::cout);
        } else {
            std::ostringstream buffer;
            runner.run(buffer);
            std::ofstream file(opt.out, std::ios::binary);
            if (!file) throw carl::InvalidSpec("cannot write '" + opt.out + "'");
            file << buffer.str();
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            write_sidecar(opt.out, argc, argv, opt, seconds);
        }
        if (runner.point_failed) return 3;
    } catch (const carl::Error& e) {
        return report_error(e);
    } catch (const std::exception& e) {
        std::cerr << carl::Json{{"error", "internal_error"}, {"message", e.what()}}.dump() << '\n';
        return 3;
    }
    return 0;
}
