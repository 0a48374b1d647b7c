#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lablet {

// Packed program word geometry. The word is [REP|DAT|TIM|P1|P2|P3] with each
// phase packed [TI|EC|SC|EP|CA|PA|NE|SE], MSB first. CA is next_phase in the
// two high bits, send in the low bit. See docs/formats.md for the bit-exact
// table.
inline constexpr int kRepBits = 2;
inline constexpr int kDatBits = 1;
inline constexpr int kTimBits = 1;
inline constexpr int kTiBits = 1;
inline constexpr int kEcBits = 1;
inline constexpr int kScBits = 2;
inline constexpr int kEpBits = 3;
inline constexpr int kCaBits = 3;
inline constexpr int kPaBits = 3;
inline constexpr int kNeBits = 1;
inline constexpr int kSeBits = 4;

inline constexpr int kPhaseBits =
    kTiBits + kEcBits + kScBits + kEpBits + kCaBits + kPaBits + kNeBits + kSeBits;
inline constexpr int kProgramBits = kRepBits + kDatBits + kTimBits + 3 * kPhaseBits;

static_assert(kPhaseBits == 18, "phase configuration must pack to 18 bits");
static_assert(kProgramBits == 58, "program word must pack to 58 bits");

// Condition/action pair: where to go next and whether to transmit first.
struct ConditionAction {
    std::uint8_t next_phase = 0;  // 0 = halt to idle, 1..3 = run phases
    std::uint8_t send = 0;

    friend bool operator==(const ConditionAction&, const ConditionAction&) = default;
};

struct PhaseConfig {
    std::uint8_t ti = 0;  // step-time MSB for this phase
    std::uint8_t ec = 0;  // group select (0 = pair table, 1 = multi table)
    std::uint8_t sc = 0;  // saturation count select
    std::uint8_t ep = 0;  // polarity/pattern column select
    ConditionAction ca{};
    std::uint8_t pa = 0;  // pattern address
    std::uint8_t ne = 0;  // pattern inversion
    std::uint8_t se = 0;  // exit condition code

    friend bool operator==(const PhaseConfig&, const PhaseConfig&) = default;
};

struct LabletProgram {
    std::uint8_t rep = 0;  // repeat selector, counts {1,4,16,64}
    std::uint8_t dat = 0;  // TSDAT: record sensor data at loop boundaries
    std::uint8_t tim = 0;  // global timestep LSB
    std::array<PhaseConfig, 3> phases{};  // P1, P2, P3

    friend bool operator==(const LabletProgram&, const LabletProgram&) = default;
};

class CodecError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A packed 58-bit program word. Bit 0 is the MSB (the high REP bit).
class Word58 {
  public:
    Word58() = default;
    explicit Word58(std::uint64_t raw) : raw_(raw) {
        if (raw >> kProgramBits)
            throw CodecError("word value exceeds 58 bits");
    }

    std::uint64_t raw() const { return raw_; }
    // Bit by position from the MSB end, pos in [0, 58).
    int bit(int pos) const { return int(raw_ >> (kProgramBits - 1 - pos)) & 1; }

    // 15 hex digits, the 58 bits left-padded with two zero bits to 60.
    std::string to_hex() const;
    static Word58 from_hex(std::string_view hex);

    // "0"/"1" string of length 58, MSB first.
    std::string to_bit_string() const;
    static Word58 from_bit_string(std::string_view bits);

    friend bool operator==(const Word58&, const Word58&) = default;

  private:
    std::uint64_t raw_ = 0;
};

// Packs a program into the 58-bit word. Throws CodecError naming the field
// when a value does not fit its declared width.
Word58 encode(const LabletProgram& program);

// Inverse of encode; total over all 2^58 words.
LabletProgram decode(Word58 word);

// Repeat selector to inner-loop count, ascending {1,4,16,64}.
int rep_count(std::uint8_t rep);

// Step period in slow-clock ticks: (tim ? 4 : 1) * (ti ? 16 : 1).
int step_multiplier(std::uint8_t tim_global, std::uint8_t ti_phase);

// Human-readable description of a condition code (0..15).
std::string_view condition_name(std::uint8_t se);

}  // namespace lablet
