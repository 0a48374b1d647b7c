#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "lablet/program.hpp"

namespace lablet {

// Build-variant parameter set: clock rate, identity, protocol timing and the
// feature switches of the five fabricated logic configurations id0-id4.
struct VariantParams {
    std::string name;
    int sysclk_hz = 200;          // nominal slow clock, 20 or 200
    std::uint8_t def_id = 0;      // 3-bit lablet identity
    bool with_id = true;          // commands are address-filtered
    LabletProgram default_program{};
    bool longcond = false;        // condition codes 8-15 enabled
    bool autorun = false;         // start running after idle timeout
    bool ddinchan = false;        // DI/DO placed inside the channel
    bool data_bipo = false;       // two-line complementary signalling
    bool data_dcfree = false;     // Lo separators as long as Hi pulses
    int pulsecntbits = 5;         // width of the rx high-run counter
    int pulsethreshold = 4;       // runs above this decode as 1
    int pulselong = 7;            // Hi ticks for a 1 bit
    int pulseshort = 2;           // Hi ticks for a 0 bit
    int pulsepause = 3;           // Lo ticks between pulses when not DC-free

    double clock_period_s() const { return 1.0 / sysclk_hz; }
    int pulsecnt_max() const { return (1 << pulsecntbits) - 1; }
    // Lo run that terminates a frame; longer than any in-frame separator.
    int gap_limit() const {
        int sep = pulsepause > pulselong ? pulsepause : pulselong;
        return 2 * sep + 2;
    }
};

// Checks the timing relations a usable parameter set must satisfy.
std::vector<std::string> variant_violations(const VariantParams& v);

// The five built-in presets (Table values verbatim).
const VariantParams& variant_preset(std::string_view name);
const std::vector<std::string>& variant_names();

// Compiled-in default programs referenced by the presets. Placeholders: the
// fabricated words live in the silicon Verilog defs and can be overridden
// per scenario.
const LabletProgram& builtin_program(std::string_view name);  // DEF_PROG, PROG_02/03/04

}  // namespace lablet
