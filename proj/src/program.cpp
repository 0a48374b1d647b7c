#include "lablet/program.hpp"

#include <cctype>
#include <cstdio>

namespace lablet {

namespace {

struct FieldRef {
    const char* name;
    int width;
    std::uint8_t (*get)(const LabletProgram&, int phase);
    void (*set)(LabletProgram&, int phase, std::uint8_t v);
};

// Global fields use phase = -1.
constexpr FieldRef kGlobalFields[] = {
    {"rep", kRepBits, [](const LabletProgram& p, int) { return p.rep; },
     [](LabletProgram& p, int, std::uint8_t v) { p.rep = v; }},
    {"dat", kDatBits, [](const LabletProgram& p, int) { return p.dat; },
     [](LabletProgram& p, int, std::uint8_t v) { p.dat = v; }},
    {"tim", kTimBits, [](const LabletProgram& p, int) { return p.tim; },
     [](LabletProgram& p, int, std::uint8_t v) { p.tim = v; }},
};

constexpr FieldRef kPhaseFields[] = {
    {"ti", kTiBits, [](const LabletProgram& p, int i) { return p.phases[i].ti; },
     [](LabletProgram& p, int i, std::uint8_t v) { p.phases[i].ti = v; }},
    {"ec", kEcBits, [](const LabletProgram& p, int i) { return p.phases[i].ec; },
     [](LabletProgram& p, int i, std::uint8_t v) { p.phases[i].ec = v; }},
    {"sc", kScBits, [](const LabletProgram& p, int i) { return p.phases[i].sc; },
     [](LabletProgram& p, int i, std::uint8_t v) { p.phases[i].sc = v; }},
    {"ep", kEpBits, [](const LabletProgram& p, int i) { return p.phases[i].ep; },
     [](LabletProgram& p, int i, std::uint8_t v) { p.phases[i].ep = v; }},
    {"ca", kCaBits,
     [](const LabletProgram& p, int i) {
         const auto& ca = p.phases[i].ca;
         return std::uint8_t((ca.next_phase << 1) | ca.send);
     },
     [](LabletProgram& p, int i, std::uint8_t v) {
         p.phases[i].ca.next_phase = std::uint8_t(v >> 1);
         p.phases[i].ca.send = std::uint8_t(v & 1);
     }},
    {"pa", kPaBits, [](const LabletProgram& p, int i) { return p.phases[i].pa; },
     [](LabletProgram& p, int i, std::uint8_t v) { p.phases[i].pa = v; }},
    {"ne", kNeBits, [](const LabletProgram& p, int i) { return p.phases[i].ne; },
     [](LabletProgram& p, int i, std::uint8_t v) { p.phases[i].ne = v; }},
    {"se", kSeBits, [](const LabletProgram& p, int i) { return p.phases[i].se; },
     [](LabletProgram& p, int i, std::uint8_t v) { p.phases[i].se = v; }},
};

constexpr std::string_view kConditionNames[16] = {
    "Default, no action", "Sensor 0",          "Sensor 1",          "Both sensors",
    "Sensors differ",     "Trig cmd received", "Trig and sensor 0", "Trig and sensor 1",
    "Not sensor 0",       "Not sensor 1",      "Command rec'vd",    "No command rec'vd",
    "Sensor 0 new val",   "Sensor 1 new val",  "New sensor value",  "Sensor 0 only",
};

}  // namespace

std::string Word58::to_hex() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%015llX", static_cast<unsigned long long>(raw_));
    return std::string(buf);
}

Word58 Word58::from_hex(std::string_view hex) {
    if (hex.size() != 15)
        throw CodecError("program word must be 15 hex digits, got " +
                         std::to_string(hex.size()));
    std::uint64_t raw = 0;
    for (char c : hex) {
        int digit;
        if (c >= '0' && c <= '9')
            digit = c - '0';
        else if (c >= 'a' && c <= 'f')
            digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            digit = c - 'A' + 10;
        else
            throw CodecError(std::string("invalid hex digit '") + c + "'");
        raw = (raw << 4) | std::uint64_t(digit);
    }
    if (raw >> kProgramBits)
        throw CodecError("hex word sets one of the two pad bits above bit 58");
    return Word58(raw);
}

std::string Word58::to_bit_string() const {
    std::string s(kProgramBits, '0');
    for (int i = 0; i < kProgramBits; ++i)
        s[i] = char('0' + bit(i));
    return s;
}

Word58 Word58::from_bit_string(std::string_view bits) {
    if (bits.size() != kProgramBits)
        throw CodecError("bit string must have length 58, got " +
                         std::to_string(bits.size()));
    std::uint64_t raw = 0;
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw CodecError(std::string("invalid bit character '") + c + "'");
        raw = (raw << 1) | std::uint64_t(c - '0');
    }
    return Word58(raw);
}

Word58 encode(const LabletProgram& program) {
    std::uint64_t raw = 0;
    auto push = [&](const FieldRef& f, int phase) {
        std::uint8_t v = f.get(program, phase);
        if (v >> f.width) {
            std::string where = f.name;
            if (phase >= 0)
                where = "phase " + std::to_string(phase + 1) + " " + where;
            throw CodecError("field " + where + " value " + std::to_string(v) +
                             " exceeds " + std::to_string(f.width) + " bits");
        }
        raw = (raw << f.width) | v;
    };
    for (const auto& f : kGlobalFields)
        push(f, -1);
    for (int i = 0; i < 3; ++i)
        for (const auto& f : kPhaseFields)
            push(f, i);
    return Word58(raw);
}

LabletProgram decode(Word58 word) {
    LabletProgram program;
    std::uint64_t raw = word.raw();
    int shift = kProgramBits;
    auto pull = [&](const FieldRef& f, int phase) {
        shift -= f.width;
        auto v = std::uint8_t((raw >> shift) & ((1u << f.width) - 1));
        f.set(program, phase, v);
    };
    for (const auto& f : kGlobalFields)
        pull(f, -1);
    for (int i = 0; i < 3; ++i)
        for (const auto& f : kPhaseFields)
            pull(f, i);
    return program;
}

int rep_count(std::uint8_t rep) {
    static constexpr int counts[4] = {1, 4, 16, 64};
    return counts[rep & 3];
}

int step_multiplier(std::uint8_t tim_global, std::uint8_t ti_phase) {
    return (tim_global ? 4 : 1) * (ti_phase ? 16 : 1);
}

std::string_view condition_name(std::uint8_t se) {
    return kConditionNames[se & 15];
}

}  // namespace lablet
