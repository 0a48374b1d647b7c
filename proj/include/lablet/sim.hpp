#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lablet/fsm.hpp"
#include "lablet/pattern.hpp"
#include "lablet/variant.hpp"

namespace lablet {

// Sensor comparator thresholds, potential difference vs the reference
// electrode in millivolts.
inline constexpr double kSens0ThresholdMv = -15.0;
inline constexpr double kSens1ThresholdMv = 85.0;
inline constexpr double kEclThresholdV = 0.8;

struct SensorBits {
    bool s0 = false;
    bool s1 = false;
};

SensorBits sensor_bits(double delta_mv);

// Nernst slope for stimulus authoring: millivolts per pH unit.
double mv_per_ph();

struct SupercapModel {
    double capacitance = 8.5e-9;      // 850 mF/m^2 over 100x100 um
    double voltage = 0.0;             // V, 0..1.8
    double leakage_current = 1.5e-9;  // A
    double por_rising = 0.30;
    double brownout_falling = 0.25;
    bool power_good = false;

    friend bool operator==(const SupercapModel&, const SupercapModel&) = default;
};

// Linear charge/discharge over dt with rail clamping and POR/brown-out
// hysteresis. The rectifier admits no reverse current, so charge_current
// is floored at zero.
SupercapModel power_step(SupercapModel cap, double load_current, double charge_current,
                         double dt);

// Electrodes lit by electrochemiluminescence: driven high at or above the
// redox threshold. Low and released electrodes never emit.
std::array<bool, kElectrodes> ecl_mask(const ActuationFrame& frame, double drive_voltage);

struct LabletSetup {
    VariantParams variant;
    std::optional<LabletProgram> program;  // replaces the compiled-in default
    double clock_offset = 0.0;             // fractional frequency offset
    bool offset_explicit = false;          // else seeded from the scenario rng
    std::uint8_t start_phase = 0;          // 1..3: power on straight into RUN
    double v0 = 1.0;                       // initial supercap voltage
    double capacitance = 8.5e-9;
    double leakage_current = 0.0;          // A; logic tests default to lossless
    double charge_current = 0.0;           // A while below the rail
    double load_per_electrode = 0.0;       // A per driven electrode
};

// One directed line: src's data-out couples into dst's data-in. src -1 is
// the dock broadcast line. Optional active window and per-sample flip noise.
struct Coupling {
    int src = -1;
    int dst = 0;
    double t_on = 0.0;
    double t_off = 1e300;
    double flip_prob = 0.0;
};

struct StimulusPoint {
    double t = 0.0;
    double mv = 0.0;
};

// A dock-side injection: either a command byte or a whole program frame.
struct DockEntry {
    double t = 0.0;
    bool is_program = false;
    Command cmd{};
    Word58 word{};
    std::optional<std::uint8_t> record;
    std::string using_variant;  // timing source; defaults to lablet 0's variant
};

struct Scenario {
    std::uint64_t seed = 0;
    double duration_s = 0.0;    // wall-clock horizon, or
    long duration_ticks = 0;    // exact per-lablet tick count
    double jitter_fraction = 0.10;  // seeded offset bound when offset= is absent
    std::vector<LabletSetup> lablets;
    std::vector<Coupling> couplings;
    std::vector<std::vector<StimulusPoint>> stimuli;  // per lablet, times ascending
    std::vector<DockEntry> dock_script;
};

class ScenarioError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parses the scenario text format (see docs/formats.md).
Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_file(const std::string& path);

// Variant parameter file: key=value pairs overriding an id0 baseline.
VariantParams parse_variant_params(std::istream& in);
VariantParams parse_variant_file(const std::string& path);

struct TraceRecord {
    double time_s = 0.0;
    int lablet = 0;
    Mode mode = Mode::Idle;
    std::uint8_t phase = 0;
    ActuationFrame frame;
    bool s0 = false;
    bool s1 = false;
    double vdd_mv = 0.0;
    std::array<bool, kElectrodes> ecl{};
    std::string events;  // ';'-separated event strings
};

struct SimResult {
    std::vector<TraceRecord> records;  // time-ordered, ties by lablet index
    std::vector<LabletState> final_states;
    std::vector<double> clock_offsets;
    std::vector<double> periods;                  // per lablet, seconds
    std::vector<double> nominal_periods;          // per lablet, seconds
    std::vector<ActuationFrame> initial_frames;   // drive held before tick 1
};

// Runs the scenario to completion. Sequential event-driven advance; a given
// scenario and seed always produce the same records byte for byte.
SimResult run(const Scenario& scenario, const PatternRom& rom = default_rom());

// Runs a program-replication scenario: at least two lablets with a
// lablet-to-lablet coupling over which the sender's SEND can reach a
// receiver. Construction error otherwise.
SimResult replicate_program_demo(const Scenario& scenario,
                                 const PatternRom& rom = default_rom());

// Trace CSV with the documented column set.
std::string trace_csv(const SimResult& result);

struct DivergenceEntry {
    int a = 0;
    int b = 0;
    long sample = -1;  // nominal-grid index of first frame disagreement, -1 = none
};

// First actuation disagreement per lablet pair, sampled mid-interval on the
// shared nominal tick grid.
std::vector<DivergenceEntry> divergence_summary(const SimResult& result);
std::string divergence_csv(const std::vector<DivergenceEntry>& entries);

}  // namespace lablet
