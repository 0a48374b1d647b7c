#include "lablet/comm.hpp"

#include <bit>

namespace lablet {

LineWaveform encode_bits(const BitVec& bits, const VariantParams& variant) {
    if (bits.empty())
        throw CodecError("cannot encode an empty bit sequence");
    LineWaveform wave;
    wave.reserve(bits.size() * 2);
    for (auto b : bits) {
        int hi = b ? variant.pulselong : variant.pulseshort;
        int lo = variant.data_dcfree ? hi : variant.pulsepause;
        if (variant.data_bipo) {
            wave.push_back({true, false, hi});
            wave.push_back({false, true, lo});
        } else {
            wave.push_back({true, false, hi});
            wave.push_back({false, false, lo});
        }
    }
    return wave;
}

std::vector<bool> waveform_levels(const LineWaveform& wave) {
    std::vector<bool> levels;
    for (const auto& seg : wave)
        levels.insert(levels.end(), std::size_t(seg.ticks), seg.line0);
    return levels;
}

std::optional<int> PulseDecoder::tick(bool level) {
    if (level) {
        if (run_ < max_)
            ++run_;
        return std::nullopt;
    }
    if (run_ == 0)
        return std::nullopt;
    int bit = run_ > threshold_ ? 1 : 0;
    run_ = 0;
    return bit;
}

BitVec decode_levels(const std::vector<bool>& levels, const VariantParams& variant) {
    PulseDecoder dec(variant);
    BitVec bits;
    for (bool level : levels)
        if (auto b = dec.tick(level))
            bits.push_back(std::uint8_t(*b));
    if (auto b = dec.tick(false))  // flush a trailing Hi run
        bits.push_back(std::uint8_t(*b));
    return bits;
}

std::string_view opcode_name(Opcode op) {
    switch (op) {
        case Opcode::Prog: return "PROG";
        case Opcode::Run: return "RUN";
        case Opcode::Send: return "SEND";
        case Opcode::Trig: return "TRIG";
        case Opcode::Test: return "TEST";
        case Opcode::Stop: return "STOP";
    }
    return "?";
}

std::uint8_t encode_command(const Command& cmd) {
    auto payload =
        std::uint8_t(((cmd.target_id & 7) << 3) | (std::uint8_t(cmd.opcode) & 7));
    auto check = std::uint8_t(std::popcount(unsigned(payload)) & 3);
    return std::uint8_t((payload << 2) | check);
}

BitVec command_bits(const Command& cmd) {
    std::uint8_t byte = encode_command(cmd);
    BitVec bits(8);
    for (int i = 0; i < 8; ++i)
        bits[std::size_t(i)] = std::uint8_t((byte >> (7 - i)) & 1);
    return bits;
}

CommandParse parse_command(std::uint8_t byte) {
    auto payload = std::uint8_t(byte >> 2);
    auto check = std::uint8_t(byte & 3);
    if ((std::popcount(unsigned(payload)) & 3) != check)
        return {std::nullopt, "checksum mismatch"};
    auto op = std::uint8_t(payload & 7);
    if (op > std::uint8_t(Opcode::Stop))
        return {std::nullopt, "unknown opcode " + std::to_string(op)};
    return {Command{Opcode(op), std::uint8_t(payload >> 3)}, ""};
}

BitVec frame_program(Word58 word, std::optional<std::uint8_t> record) {
    BitVec bits(std::size_t(kProgramBits), 0);
    for (int i = 0; i < kProgramBits; ++i)
        bits[std::size_t(i)] = std::uint8_t(word.bit(i));
    if (record)
        for (int i = 0; i < kRecordBits; ++i)
            bits.push_back(std::uint8_t((*record >> (kRecordBits - 1 - i)) & 1));
    return bits;
}

ProgramFrame deframe_program(const BitVec& bits) {
    if (bits.size() != kProgramBits && bits.size() != kProgramBits + kRecordBits)
        throw CodecError("program frame must be 58 or 66 bits, got " +
                         std::to_string(bits.size()));
    std::uint64_t raw = 0;
    for (int i = 0; i < kProgramBits; ++i)
        raw = (raw << 1) | bits[std::size_t(i)];
    ProgramFrame frame{Word58(raw), std::nullopt};
    if (bits.size() == kProgramBits + kRecordBits) {
        std::uint8_t rec = 0;
        for (int i = 0; i < kRecordBits; ++i)
            rec = std::uint8_t((rec << 1) | bits[std::size_t(kProgramBits + i)]);
        frame.record = rec;
    }
    return frame;
}

}  // namespace lablet
