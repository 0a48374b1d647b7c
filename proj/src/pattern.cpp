#include "lablet/pattern.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace lablet {

namespace {

constexpr std::string_view kElectrodeNames[kElectrodes] = {"A0", "DO", "A2",
                                                           "DI", "A1", "PWR2"};

// Active slot count per saturation select, "light" to "heavy".
constexpr int kDuty[4] = {2, 4, 6, 8};

std::array<bool, kSlots> active_slots(int sc) {
    std::array<bool, kSlots> act{};
    int duty = kDuty[sc & 3];
    for (int j = 0; j < duty; ++j)
        act[std::size_t(j * kSlots / duty)] = true;
    return act;
}

ActuationFrame pair_frame(int hi, int lo) {
    ActuationFrame f;
    f[hi] = Tri::Hi;
    f[lo] = Tri::Lo;
    return f;
}

// Members of `subset` get alternating Hi/Lo in electrode order; PWR2, when
// present, always takes Lo and does not consume an alternation step.
ActuationFrame subset_frame(const std::vector<int>& subset) {
    ActuationFrame f;
    int alt = 0;
    for (int e : subset) {
        if (e == PWR2)
            f[e] = Tri::Lo;
        else
            f[e] = (alt++ % 2 == 0) ? Tri::Hi : Tri::Lo;
    }
    return f;
}

PatternRom build_default_rom() {
    PatternRom rom;

    // Sequence table. pa 0-2 deploy one magnitude, 3-5 two magnitudes with
    // alternating sign, 6-7 three magnitudes (7 with alternating sign).
    constexpr int kTwin[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (int pa = 0; pa < 8; ++pa) {
        for (int sc = 0; sc < 4; ++sc) {
            auto act = active_slots(sc);
            int j = 0;  // index among active slots
            for (int slot = 0; slot < kSlots; ++slot) {
                if (!act[std::size_t(slot)])
                    continue;
                std::int8_t po = 0;
                if (pa < 3) {
                    po = std::int8_t(pa + 1);
                } else if (pa < 6) {
                    const auto& tw = kTwin[pa - 3];
                    po = std::int8_t(j % 2 == 0 ? tw[0] : -tw[1]);
                } else if (pa == 6) {
                    po = std::int8_t(j % 3 + 1);
                } else {
                    int mag = j % 3 + 1;
                    po = std::int8_t(j % 2 == 0 ? mag : -mag);
                }
                rom.seq[std::size_t(pa)][std::size_t(sc)][std::size_t(slot)] = {po};
                ++j;
            }
        }
    }

    // Frame table, ec=0: walk the pair catalogue so that all 15 pairs occur.
    const auto& pairs = pair_catalogue();
    for (int mag = 1; mag <= 3; ++mag) {
        for (int ep = 0; ep < 8; ++ep) {
            const auto& pr = pairs[std::size_t(((mag - 1) * 8 + ep) % 15)];
            rom.frame[std::size_t(mag - 1)][std::size_t(ep)][0] =
                pair_frame(pr.first, pr.second);
        }
    }

    // Frame table, ec=1: 3-electrode subsets in lexicographic order, then
    // 4-electrode subsets to fill the remaining slots.
    std::vector<std::vector<int>> subsets;
    for (int a = 0; a < kElectrodes; ++a)
        for (int b = a + 1; b < kElectrodes; ++b)
            for (int c = b + 1; c < kElectrodes; ++c)
                subsets.push_back({a, b, c});
    for (int a = 0; a < kElectrodes && subsets.size() < 24; ++a)
        for (int b = a + 1; b < kElectrodes; ++b)
            for (int c = b + 1; c < kElectrodes; ++c)
                for (int d = c + 1; d < kElectrodes; ++d)
                    if (subsets.size() < 24)
                        subsets.push_back({a, b, c, d});
    for (int mag = 1; mag <= 3; ++mag)
        for (int ep = 0; ep < 8; ++ep)
            rom.frame[std::size_t(mag - 1)][std::size_t(ep)][1] =
                subset_frame(subsets[std::size_t((mag - 1) * 8 + ep)]);

    return rom;
}

int non_z_count(const ActuationFrame& f) {
    int n = 0;
    for (int e = 0; e < kElectrodes; ++e)
        if (f[e] != Tri::Z)
            ++n;
    return n;
}

}  // namespace

std::string_view electrode_name(int e) {
    return kElectrodeNames[std::size_t(e)];
}

bool ActuationFrame::is_rest() const {
    for (auto d : drive)
        if (d != Tri::Z)
            return false;
    return true;
}

std::string ActuationFrame::to_string() const {
    std::string s(kElectrodes, 'Z');
    for (int e = 0; e < kElectrodes; ++e)
        s[std::size_t(e)] = drive[std::size_t(e)] == Tri::Z
                                ? 'Z'
                                : (drive[std::size_t(e)] == Tri::Hi ? '1' : '0');
    return s;
}

ActuationFrame ActuationFrame::from_string(std::string_view s) {
    if (s.size() != kElectrodes)
        throw CodecError("frame string must have 6 characters");
    ActuationFrame f;
    for (int e = 0; e < kElectrodes; ++e) {
        switch (s[std::size_t(e)]) {
            case '0': f[e] = Tri::Lo; break;
            case '1': f[e] = Tri::Hi; break;
            case 'Z': case 'z': f[e] = Tri::Z; break;
            default:
                throw CodecError(std::string("invalid frame character '") +
                                 s[std::size_t(e)] + "'");
        }
    }
    return f;
}

ActuationFrame rest_frame() {
    return ActuationFrame{};
}

bool frame_ok(const ActuationFrame& frame) {
    if (frame[PWR2] == Tri::Hi)
        return false;
    bool has_hi = false, has_lo_non_pwr2 = false;
    for (int e = 0; e < kElectrodes; ++e) {
        if (frame[e] == Tri::Hi)
            has_hi = true;
        else if (frame[e] == Tri::Lo && e != PWR2)
            has_lo_non_pwr2 = true;
    }
    if (!has_hi)
        return true;  // nothing sources current
    return has_lo_non_pwr2 || frame[PWR2] == Tri::Lo;
}

const PatternRom& default_rom() {
    static const PatternRom rom = build_default_rom();
    return rom;
}

std::vector<std::string> rom_violations(const PatternRom& rom) {
    std::vector<std::string> out;

    for (int pa = 0; pa < 8; ++pa) {
        int prev_duty = -1;
        for (int sc = 0; sc < 4; ++sc) {
            int duty = 0;
            for (const auto& sel : rom.sequence(pa, sc)) {
                if (sel.po < -3 || sel.po > 3)
                    out.push_back("seq pa=" + std::to_string(pa) + " sc=" +
                                  std::to_string(sc) + ": |po| exceeds 3");
                if (sel.po != 0)
                    ++duty;
            }
            if (duty < prev_duty)
                out.push_back("seq pa=" + std::to_string(pa) +
                              ": active slot count not monotone in sc");
            prev_duty = duty;
        }
    }

    std::array<bool, 15> covered{};
    const auto& pairs = pair_catalogue();
    for (int mag = 1; mag <= 3; ++mag) {
        for (int ep = 0; ep < 8; ++ep) {
            auto tag = [&](int ec) {
                return "frame po=" + std::to_string(mag) + " ep=" + std::to_string(ep) +
                       " ec=" + std::to_string(ec);
            };
            const auto& pf = rom.pattern(mag, ep, 0);
            if (!frame_ok(pf) || pf.is_rest())
                out.push_back(tag(0) + ": invalid frame " + pf.to_string());
            if (non_z_count(pf) != 2) {
                out.push_back(tag(0) + ": not a two-electrode pattern");
            } else {
                for (std::size_t i = 0; i < pairs.size(); ++i) {
                    auto [a, b] = pairs[i];
                    if (pf[a] != Tri::Z && pf[b] != Tri::Z)
                        covered[i] = true;
                }
            }
            const auto& mf = rom.pattern(mag, ep, 1);
            if (!frame_ok(mf) || mf.is_rest())
                out.push_back(tag(1) + ": invalid frame " + mf.to_string());
            if (non_z_count(mf) < 3)
                out.push_back(tag(1) + ": fewer than 3 driven electrodes");
        }
    }
    for (std::size_t i = 0; i < covered.size(); ++i)
        if (!covered[i])
            out.push_back(std::string("pair ") +
                          std::string(electrode_name(pairs[i].first)) + "-" +
                          std::string(electrode_name(pairs[i].second)) +
                          " missing from ec=0 table");
    return out;
}

PatternRom parse_rom_overrides(std::istream& in) {
    PatternRom rom = default_rom();
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw CodecError("rom line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind))
            continue;
        if (kind == "seq") {
            int pa, sc;
            char colon;
            if (!(ls >> pa >> sc >> colon) || colon != ':')
                fail("expected 'seq <pa> <sc> : <8 slot values>'");
            if (pa < 0 || pa > 7 || sc < 0 || sc > 3)
                fail("seq index out of range");
            for (int slot = 0; slot < kSlots; ++slot) {
                int po;
                if (!(ls >> po))
                    fail("expected 8 slot values");
                if (po < -3 || po > 3)
                    fail("slot value out of range -3..3");
                rom.seq[std::size_t(pa)][std::size_t(sc)][std::size_t(slot)] = {
                    std::int8_t(po)};
            }
        } else if (kind == "frame") {
            int mag, ep, ec;
            char colon;
            std::string pat;
            if (!(ls >> mag >> ep >> ec >> colon >> pat) || colon != ':')
                fail("expected 'frame <po> <ep> <ec> : <6 chars of 0|1|Z>'");
            if (mag < 1 || mag > 3 || ep < 0 || ep > 7 || ec < 0 || ec > 1)
                fail("frame index out of range");
            rom.frame[std::size_t(mag - 1)][std::size_t(ep)][std::size_t(ec)] =
                ActuationFrame::from_string(pat);
        } else {
            fail("unknown directive '" + kind + "'");
        }
    }
    auto violations = rom_violations(rom);
    if (!violations.empty()) {
        std::string msg = "rom overrides violate pattern invariants:";
        for (const auto& v : violations)
            msg += "\n  " + v;
        throw CodecError(msg);
    }
    return rom;
}

PatternRom parse_rom_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CodecError("cannot open rom file " + path);
    return parse_rom_overrides(in);
}

const std::vector<std::pair<int, int>>& pair_catalogue() {
    static const std::vector<std::pair<int, int>> pairs = [] {
        std::vector<std::pair<int, int>> v;
        for (int a = 0; a < kElectrodes; ++a)
            for (int b = a + 1; b < kElectrodes; ++b)
                v.emplace_back(a, b);
        return v;
    }();
    return pairs;
}

const std::array<PatternSelector, kSlots>& sequence_select(int pa, int sc,
                                                           const PatternRom& rom) {
    return rom.sequence(pa & 7, sc & 3);
}

ActuationFrame resolve_frame(PatternSelector sel, int ep, int ec, int ne,
                             const PatternRom& rom) {
    if (sel.po == 0)
        return rest_frame();
    int mag = sel.po < 0 ? -sel.po : sel.po;
    bool invert = (ne != 0) != (sel.po < 0);
    ActuationFrame f = rom.pattern(mag, ep & 7, ec & 1);
    if (!invert)
        return f;
    for (int e = 0; e < kElectrodes; ++e) {
        if (f[e] == Tri::Z)
            continue;
        Tri flipped = f[e] == Tri::Hi ? Tri::Lo : Tri::Hi;
        if (e == PWR2 && flipped == Tri::Hi)
            flipped = Tri::Z;  // PWR2 drives low only
        f[e] = flipped;
    }
    return f;
}

ActuationFrame frame_at(const PhaseConfig& phase, int idx, const PatternRom& rom) {
    const auto& seq = sequence_select(phase.pa, phase.sc, rom);
    return resolve_frame(seq[std::size_t(idx & 7)], phase.ep, phase.ec, phase.ne, rom);
}

}  // namespace lablet
