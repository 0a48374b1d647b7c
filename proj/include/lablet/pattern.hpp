#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lablet/program.hpp"

namespace lablet {

// Tristate drive level for one electrode. Z = high impedance (disconnected).
enum class Tri : std::uint8_t { Lo = 0, Hi = 1, Z = 2 };

// Actuator electrodes in frame order.
enum Electrode : int { A0 = 0, DO = 1, A2 = 2, DI = 3, A1 = 4, PWR2 = 5 };

inline constexpr int kElectrodes = 6;
inline constexpr int kSlots = 8;  // inner-loop length

std::string_view electrode_name(int e);

// One tristate drive assignment to the six electrodes [A0,DO,A2,DI,A1,PWR2].
struct ActuationFrame {
    std::array<Tri, kElectrodes> drive{Tri::Z, Tri::Z, Tri::Z, Tri::Z, Tri::Z, Tri::Z};

    Tri& operator[](int e) { return drive[std::size_t(e)]; }
    Tri operator[](int e) const { return drive[std::size_t(e)]; }

    bool is_rest() const;
    // 6 chars over {0,1,Z}, electrode order.
    std::string to_string() const;
    static ActuationFrame from_string(std::string_view s);

    friend bool operator==(const ActuationFrame&, const ActuationFrame&) = default;
};

ActuationFrame rest_frame();

// Drive validity as enforced by the engine: PWR2 is never driven high, and
// any frame that sources current (has a Hi) must also sink it, either on
// another electrode or on PWR2's low-only driver. Frames with no Hi at all
// source nothing and pass (the NE-inverted form of a PWR2 pair degrades to a
// lone sink, see resolve_frame).
bool frame_ok(const ActuationFrame& frame);

// Signed pattern choice for one slot; 0 = rest, sign flips NE.
struct PatternSelector {
    std::int8_t po = 0;

    friend bool operator==(const PatternSelector&, const PatternSelector&) = default;
};

// Pattern tables: a sequence table mapping (pa, sc) to 8 slot selectors and a
// frame table mapping (|po|, ep, ec) to an electrode drive pattern.
struct PatternRom {
    std::array<std::array<std::array<PatternSelector, kSlots>, 4>, 8> seq{};
    std::array<std::array<std::array<ActuationFrame, 2>, 8>, 3> frame{};

    const std::array<PatternSelector, kSlots>& sequence(int pa, int sc) const {
        return seq[std::size_t(pa)][std::size_t(sc)];
    }
    const ActuationFrame& pattern(int mag, int ep, int ec) const {
        return frame[std::size_t(mag - 1)][std::size_t(ep)][std::size_t(ec)];
    }
};

// The built-in tables. Deterministic: the ec=0 half walks the pair catalogue,
// the ec=1 half walks 3- and 4-electrode subsets; sequences deploy one, two
// or three pattern magnitudes at duty 2/4/6/8 of 8 depending on pa and sc.
const PatternRom& default_rom();

// Checks all PatternRom invariants; returns human-readable violations.
std::vector<std::string> rom_violations(const PatternRom& rom);

// Parses a ROM override file (see docs/formats.md), applied over the default
// tables. Throws CodecError on syntax errors or if the result violates the
// ROM invariants.
PatternRom parse_rom_overrides(std::istream& in);
PatternRom parse_rom_file(const std::string& path);

// The C(6,2)=15 unordered electrode pairs in canonical order.
const std::vector<std::pair<int, int>>& pair_catalogue();

// Slot selectors for one phase configuration.
const std::array<PatternSelector, kSlots>& sequence_select(int pa, int sc,
                                                           const PatternRom& rom);

// Resolves one slot selector to a frame. po=0 gives the rest frame; otherwise
// the table frame, polarity-inverted when (ne XOR (po<0)), with Z substituted
// at PWR2 wherever the inversion would drive it high.
ActuationFrame resolve_frame(PatternSelector sel, int ep, int ec, int ne,
                             const PatternRom& rom);

// Frame the inner loop drives at slot idx for this phase configuration.
ActuationFrame frame_at(const PhaseConfig& phase, int idx, const PatternRom& rom);

}  // namespace lablet
