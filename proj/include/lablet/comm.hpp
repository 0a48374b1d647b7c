#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lablet/program.hpp"
#include "lablet/variant.hpp"

namespace lablet {

using BitVec = std::vector<std::uint8_t>;  // elements 0/1

// One constant-level stretch of the data line(s). `line0` is the data line;
// `line1` carries the complement while a bipolar transmission is active.
struct WaveSegment {
    bool line0 = false;
    bool line1 = false;
    int ticks = 1;  // duration in sender slow-clock ticks

    friend bool operator==(const WaveSegment&, const WaveSegment&) = default;
};

using LineWaveform = std::vector<WaveSegment>;

// Pulse-length encoding: a 1 is a Hi run of pulselong ticks, a 0 a run of
// pulseshort; separators are Lo runs of pulsepause ticks, or of the preceding
// pulse length in DC-free mode. Bipolar variants drive line1 with the
// complement of line0.
LineWaveform encode_bits(const BitVec& bits, const VariantParams& variant);

// Expands a waveform into one line0 sample per tick (line1 is its complement
// while active).
std::vector<bool> waveform_levels(const LineWaveform& wave);

// Run-length pulse decoder, stepped once per receiver tick.
class PulseDecoder {
  public:
    explicit PulseDecoder(const VariantParams& variant)
        : threshold_(variant.pulsethreshold), max_(variant.pulsecnt_max()) {}

    // Feeds one sampled line level; returns a decoded bit on the Hi->Lo edge.
    // Runs strictly longer than the threshold decode as 1; the run counter
    // saturates at the variant's pulse counter width.
    std::optional<int> tick(bool level);

    int run() const { return run_; }

  private:
    int threshold_;
    int max_;
    int run_ = 0;
};

// Decodes an entire sampled level stream.
BitVec decode_levels(const std::vector<bool>& levels, const VariantParams& variant);

enum class Opcode : std::uint8_t { Prog = 0, Run = 1, Send = 2, Trig = 3, Test = 4, Stop = 5 };

std::string_view opcode_name(Opcode op);

struct Command {
    Opcode opcode = Opcode::Stop;
    std::uint8_t target_id = 7;  // 7 = broadcast

    friend bool operator==(const Command&, const Command&) = default;
};

// Command byte layout, MSB first: [target_id:3 | opcode:3 | check:2] where
// check is the sum of the six payload bits mod 4.
std::uint8_t encode_command(const Command& cmd);
BitVec command_bits(const Command& cmd);

// Rejects bad checksums and unknown opcodes with a reason.
struct CommandParse {
    std::optional<Command> command;
    std::string reject_reason;
};
CommandParse parse_command(std::uint8_t byte);

inline constexpr int kRecordBits = 8;  // memS0[P0..P3] then memS1[P0..P3]

// Program frame payload: the 58 program bits MSB first, optionally followed
// by the 8-bit record block.
BitVec frame_program(Word58 word, std::optional<std::uint8_t> record = std::nullopt);

struct ProgramFrame {
    Word58 word;
    std::optional<std::uint8_t> record;
};

// Inverse of frame_program; frames of any other length are errors.
ProgramFrame deframe_program(const BitVec& bits);

}  // namespace lablet
