#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lablet/comm.hpp"
#include "lablet/pattern.hpp"
#include "lablet/program.hpp"
#include "lablet/variant.hpp"

namespace lablet {

enum class Mode : std::uint8_t { Idle = 0, Prog = 1, Send = 2, Run = 3 };

std::string_view mode_name(Mode m);

// Per-phase recording memory written at inner-loop boundaries when TSDAT is
// set; the byte form rides along in SEND frames.
struct RecordLog {
    std::array<std::uint8_t, 4> mem_s0{};  // indexed by phase P0..P3
    std::array<std::uint8_t, 4> mem_s1{};
    std::array<std::int32_t, 4> event_step{-1, -1, -1, -1};

    friend bool operator==(const RecordLog&, const RecordLog&) = default;
};

std::uint8_t record_byte(const RecordLog& rec);
void apply_record_byte(RecordLog& rec, std::uint8_t byte);

struct TickInputs {
    bool din = false;    // data line (line0)
    bool din_b = false;  // complement line, bipolar variants only
    bool s0 = false;     // sensor comparator outputs, sampled this tick
    bool s1 = false;
    bool power_good = true;
};

enum class EventKind : std::uint8_t {
    Reset,
    PhaseEntered,     // a = phase (0 = idle)
    ConditionFired,   // a = condition code, b = next phase
    Recorded,         // a = phase, b = (s1<<1)|s0
    SendStarted,      // a = payload bit count
    SendCompleted,    // a = payload bit count
    ProgramLoaded,    // a = frame bit count (58 or 66)
    ProgramRejected,  // a = received bit count (0 = reception timeout)
    CommandReceived,  // a = opcode, b = target id
    CommandIgnored,   // a = raw byte, b = reason (0 checksum, 1 opcode, 2 address)
    AutorunStarted,
};

struct Event {
    EventKind kind;
    int a = 0;
    int b = 0;

    friend bool operator==(const Event&, const Event&) = default;
};

std::string event_to_string(const Event& e);

struct TickOutputs {
    ActuationFrame frame;      // actuator drive this tick
    Tri dout = Tri::Z;         // data-out line
    Tri dout_b = Tri::Z;       // complement line while a bipolar send is active
    std::vector<Event> events;
};

// Outbound transmission in flight.
struct TxState {
    LineWaveform wave;
    std::size_t seg = 0;
    int remaining = 0;
    std::uint8_t pending_next = 0;  // phase entered on completion, 0 = idle
    int payload_bits = 0;
    bool active = false;

    friend bool operator==(const TxState&, const TxState&) = default;
};

struct LabletState {
    Mode mode = Mode::Idle;
    std::uint8_t phase = 0;
    std::uint8_t patterncnt = 0;    // 3-bit inner-loop slot
    std::uint8_t repeatcnt = 0;     // 7-bit remaining inner loops
    std::uint16_t clkdivider = 0;   // 12-bit step divider / idle timeout
    std::uint8_t pulsecnt = 0;      // rx high-run counter
    std::uint8_t commandin = 0;     // 8-bit command shift register
    std::uint8_t cmd_bits = 0;      // bits shifted into commandin
    bool trigd = false;
    bool din1 = false;
    bool din2 = false;
    bool comd = false;
    bool dout = false;
    bool doutact = false;
    // Actuator drive registers: act bits 0-4 hold the value for
    // [A0,DO,A2,DI,A1], bit 5 the PWR2 open-drain sink enable; actenab bits
    // 0-4 are the per-electrode output enables.
    std::uint8_t act = 0;
    std::uint8_t actenab = 0;
    LabletProgram prog{};
    RecordLog rec{};

    // Program-frame reception (PROG mode).
    std::array<std::uint8_t, 66> rx_buf{};
    std::uint8_t rx_count = 0;
    std::uint16_t lo_run = 0;  // consecutive Lo ticks, for frame-gap detection

    TxState tx{};
    std::uint32_t step_count = 0;  // cumulative run steps, stamps the record log
    bool in_reset = false;

    friend bool operator==(const LabletState&, const LabletState&) = default;
};

// Power-on state: idle, counters clear, the variant's compiled-in program.
LabletState reset(const VariantParams& variant);

// Advances the controller by one slow-clock tick. Deterministic and total.
TickOutputs tick(LabletState& state, const TickInputs& in, const VariantParams& variant,
                 const PatternRom& rom);

// Condition table, codes 0..15. Without longcond the code is truncated to
// its low three bits, mirroring the hardware option.
bool eval_condition(std::uint8_t se, bool s0, bool s1, bool trigd, bool comd,
                    bool mem_s0_p, bool mem_s1_p, bool longcond);

// Records the sampled sensor bits into the phase slot of the record log.
// No-op unless the program's TSDAT bit is set.
void record_sample(LabletState& state, bool s0, bool s1, std::vector<Event>* events);

// Inner-loop boundary branch. A fired condition sends (when CA says so) and
// proceeds to the programmed next phase; an exhausted repeat count proceeds
// without sending; otherwise the same phase continues. Assumes repeatcnt has
// already been decremented for the completed loop.
void apply_condition(LabletState& state, bool fired, const VariantParams& variant,
                     std::vector<Event>& events);

// Applies an accepted, address-matched command to the controller.
void handle_command(LabletState& state, const Command& cmd, const VariantParams& variant,
                    std::vector<Event>& events);

// The frame encoded by the actuator registers.
ActuationFrame drive_frame(std::uint8_t act, std::uint8_t actenab);

// Counter widths stay inside the declared flip-flop budget.
bool state_bounds_ok(const LabletState& state, const VariantParams& variant);

inline constexpr std::uint8_t kTestPattern = 0xA5;  // played by the TEST command
inline constexpr int kIdleTimeoutTicks = 4096;      // full 12-bit divider wrap

}  // namespace lablet
