#include "lablet/variant.hpp"

#include <map>
#include <stdexcept>

namespace lablet {

namespace {

LabletProgram make_def_prog() {
    return LabletProgram{};  // all-zero word: one light solo loop in P1, halt
}

// Endless three-magnitude actuation in P1 at full duty, base time step.
LabletProgram make_prog_02() {
    LabletProgram p;
    p.rep = 3;  // 64 inner loops per phase entry
    p.phases[0].pa = 6;
    p.phases[0].sc = 3;
    p.phases[0].se = 0;
    p.phases[0].ca = {1, 0};  // exhaustion re-enters P1
    return p;
}

// Sensor-gated sequence with recording: pair pattern in P1 until sensor 0,
// then a heavy burst in P2 and halt.
LabletProgram make_prog_03() {
    LabletProgram p;
    p.rep = 1;
    p.dat = 1;
    p.phases[0].pa = 0;
    p.phases[0].sc = 1;
    p.phases[0].ep = 3;
    p.phases[0].se = 1;       // sensor 0
    p.phases[0].ca = {2, 0};
    p.phases[1].pa = 6;
    p.phases[1].sc = 3;
    p.phases[1].se = 0;
    p.phases[1].ca = {0, 0};  // halt
    return p;
}

// Trigger-gated: twin pattern in P1 until a trig command, then report and
// run P2 to exhaustion.
LabletProgram make_prog_04() {
    LabletProgram p;
    p.rep = 2;
    p.phases[0].pa = 3;
    p.phases[0].sc = 2;
    p.phases[0].ep = 1;
    p.phases[0].se = 5;       // trig received
    p.phases[0].ca = {2, 1};  // send, then P2
    p.phases[1].pa = 7;
    p.phases[1].sc = 3;
    p.phases[1].se = 0;
    p.phases[1].ca = {0, 0};
    return p;
}

std::vector<VariantParams> make_presets() {
    std::vector<VariantParams> v(5);
    // Define           id0        id1        id2        id3        id4
    // SYSCLK           200        200        200        200        20
    // DEF_ID           0          1          2          3          4
    // THE_PROG         PROG_02    PROG_02    DEF_PROG   PROG_03    PROG_04
    // LONGCOND         -          -          +          -          +
    // AUTORUN          +          +          -          +          +
    // DDINCHAN         +          +          -          -          -
    // DATA_BIPO        +          +          -          +          +
    // DATA_DCFREE      -          +          -          +          +
    // PULSECNTBITS     5          5          5          4          5
    // PULSETHRESHOLD   4          9          9          3          3
    // PULSELONG        7          16         16         5          5
    // PULSESHORT       2          2          3          2          2
    // PULSEPAUSE       3          7          7          1          1
    for (int i = 0; i < 5; ++i) {
        v[std::size_t(i)].name = "id" + std::to_string(i);
        v[std::size_t(i)].def_id = std::uint8_t(i);
        v[std::size_t(i)].with_id = true;
    }
    v[0].sysclk_hz = 200; v[1].sysclk_hz = 200; v[2].sysclk_hz = 200;
    v[3].sysclk_hz = 200; v[4].sysclk_hz = 20;

    v[0].default_program = builtin_program("PROG_02");
    v[1].default_program = builtin_program("PROG_02");
    v[2].default_program = builtin_program("DEF_PROG");
    v[3].default_program = builtin_program("PROG_03");
    v[4].default_program = builtin_program("PROG_04");

    v[0].longcond = false; v[1].longcond = false; v[2].longcond = true;
    v[3].longcond = false; v[4].longcond = true;

    v[0].autorun = true; v[1].autorun = true; v[2].autorun = false;
    v[3].autorun = true; v[4].autorun = true;

    v[0].ddinchan = true; v[1].ddinchan = true; v[2].ddinchan = false;
    v[3].ddinchan = false; v[4].ddinchan = false;

    v[0].data_bipo = true; v[1].data_bipo = true; v[2].data_bipo = false;
    v[3].data_bipo = true; v[4].data_bipo = true;

    v[0].data_dcfree = false; v[1].data_dcfree = true; v[2].data_dcfree = false;
    v[3].data_dcfree = true; v[4].data_dcfree = true;

    const int cntbits[5] = {5, 5, 5, 4, 5};
    const int thresh[5] = {4, 9, 9, 3, 3};
    const int longp[5] = {7, 16, 16, 5, 5};
    const int shortp[5] = {2, 2, 3, 2, 2};
    const int pause[5] = {3, 7, 7, 1, 1};
    for (int i = 0; i < 5; ++i) {
        v[std::size_t(i)].pulsecntbits = cntbits[i];
        v[std::size_t(i)].pulsethreshold = thresh[i];
        v[std::size_t(i)].pulselong = longp[i];
        v[std::size_t(i)].pulseshort = shortp[i];
        v[std::size_t(i)].pulsepause = pause[i];
    }
    return v;
}

}  // namespace

std::vector<std::string> variant_violations(const VariantParams& v) {
    std::vector<std::string> out;
    if (v.sysclk_hz != 20 && v.sysclk_hz != 200)
        out.push_back("sysclk_hz must be 20 or 200");
    if (v.def_id > 7)
        out.push_back("def_id must fit 3 bits");
    if (v.pulsecntbits != 4 && v.pulsecntbits != 5)
        out.push_back("pulsecntbits must be 4 or 5");
    if (!(v.pulseshort < v.pulsethreshold))
        out.push_back("pulseshort must be below pulsethreshold");
    if (!(v.pulsethreshold <= v.pulselong))
        out.push_back("pulsethreshold must not exceed pulselong");
    if (!(v.pulselong < (1 << v.pulsecntbits)))
        out.push_back("pulselong must fit the pulse counter");
    if (v.pulseshort < 1 || v.pulsepause < 1)
        out.push_back("pulse durations must be at least one tick");
    return out;
}

const VariantParams& variant_preset(std::string_view name) {
    static const std::vector<VariantParams> presets = make_presets();
    for (const auto& v : presets)
        if (v.name == name)
            return v;
    throw std::out_of_range("unknown variant preset '" + std::string(name) + "'");
}

const std::vector<std::string>& variant_names() {
    static const std::vector<std::string> names = {"id0", "id1", "id2", "id3", "id4"};
    return names;
}

const LabletProgram& builtin_program(std::string_view name) {
    static const std::map<std::string, LabletProgram, std::less<>> programs = {
        {"DEF_PROG", make_def_prog()},
        {"PROG_02", make_prog_02()},
        {"PROG_03", make_prog_03()},
        {"PROG_04", make_prog_04()},
    };
    auto it = programs.find(name);
    if (it == programs.end())
        throw std::out_of_range("unknown builtin program '" + std::string(name) + "'");
    return it->second;
}

}  // namespace lablet
