// sweep.hpp  Parameter sweeps, figure presets, single-point reports and table output

#pragma once

#include "carl/covariance.hpp"
#include "carl/model.hpp"
#include "carl/serialization.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace carl {

enum class SweepAxis { delta, tau, gamma, kappa };

std::string to_string(SweepAxis axis);
SweepAxis parse_axis(const std::string& name);  // throws InvalidSpec

// n1 n2 n3 xi12 xi13 xi23 g2_12 g2_13 g2_23 bunching gain
// mineig_gamma1 mineig_gamma2 mineig_gamma3 mineig_s12 mineig_s13 mineig_s23 class
const std::vector<std::string>& output_vocabulary();

struct SweepSpec {
    SweepAxis axis = SweepAxis::tau;
    double start = 0.0;
    double stop = 1.0;
    int points = 2;
    ModelParams fixed{1.0, 0.0, 0.0, 0.0, 0.0};
    double tau = 0.0;              // used when the axis is not tau
    std::vector<std::string> outputs;
    double epsilon = 1e-9;         // separability sign tolerance
    double atom_number = 1.0;      // N in <B^dag B>
};

// Throws InvalidSpec unless start < stop, 2 <= points <= 1e6, all values finite, outputs
// non-empty, unique and from the vocabulary, and the swept range stays in the valid domain.
void validate(const SweepSpec& spec);

// "axis:start:stop:points"
void parse_sweep_argument(const std::string& text, SweepSpec& spec);

std::vector<double> grid(const SweepSpec& spec);

// Parameter point and time of grid value x.
ModelParams point_params(const SweepSpec& spec, double x);
double point_tau(const SweepSpec& spec, double x);

// Empty cell: undefined value or failed row.
using Cell = std::variant<std::monostate, double, std::string>;

struct Row {
    std::string curve;
    double x;
    std::vector<Cell> cells;
    std::string status;  // "ok" or an error code
};

struct SweepTable {
    std::string axis;
    std::vector<std::string> columns;  // output names
    bool has_curve_column = false;
    std::vector<Row> rows;
};

// Evaluate the requested outputs at one parameter point. Numerical failures become
// a row with empty cells and the error code as status.
Row evaluate_row(const SweepSpec& spec, double x);

// All rows in grid order. Points are evaluated by `workers` threads (0 = hardware).
SweepTable run_sweep(const SweepSpec& spec, unsigned workers = 0);

struct PresetCurve {
    std::string label;
    SweepSpec spec;
};

struct FigurePreset {
    std::string id;
    std::string description;
    std::vector<PresetCurve> curves;
};

// fig1 .. fig15; throws InvalidSpec for unknown ids.
FigurePreset figure_preset(const std::string& id);
std::vector<std::string> preset_ids();

SweepTable run_preset(const FigurePreset& preset, unsigned workers = 0);

// CSV: '#'-prefixed metadata lines, one header row, shortest round-trip numbers.
void write_csv(std::ostream& out, const SweepTable& table, const std::vector<std::string>& metadata);

Json table_to_json(const SweepTable& table);
Json sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const Json& j);

struct PointOptions {
    double epsilon = 1e-9;
    double atom_number = 1.0;
    bool oracle = false;
};

// Full single-point report: covariance, observables, separability, physicality and,
// with `oracle`, the max-abs deviation from the RK4 moment-equation oracle.
Json evolve_point(const ModelParams& params, double tau, const PointOptions& options = {});

} // namespace carl
