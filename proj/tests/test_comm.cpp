#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lablet/comm.hpp"

using namespace lablet;

namespace {

BitVec random_bits(std::mt19937_64& rng, std::size_t n) {
    BitVec bits(n);
    for (auto& b : bits)
        b = std::uint8_t(rng() & 1);
    return bits;
}

// Worst-case and random pulse-length jitter: stretch or shrink every Hi
// segment by one receiver tick.
std::vector<bool> perturbed_levels(const LineWaveform& wave, int short_delta,
                                   int long_delta, const VariantParams& v) {
    std::vector<bool> levels;
    for (const auto& seg : wave) {
        int ticks = seg.ticks;
        if (seg.line0)
            ticks += (seg.ticks >= v.pulselong) ? long_delta : short_delta;
        if (ticks < 1)
            ticks = 1;
        levels.insert(levels.end(), std::size_t(ticks), seg.line0);
    }
    return levels;
}

}  // namespace

TEST_CASE("pulse timing per preset") {
    SUBCASE("id0: mark lengths and pause") {
        auto w = encode_bits({1}, variant_preset("id0"));
        REQUIRE(w.size() == 2);
        CHECK(w[0].line0);
        CHECK(w[0].ticks == 7);
        CHECK(!w[1].line0);
        CHECK(w[1].ticks == 3);
    }
    SUBCASE("id1 dc-free: separator as long as the pulse") {
        auto w = encode_bits({1}, variant_preset("id1"));
        REQUIRE(w.size() == 2);
        CHECK(w[0].ticks == 16);
        CHECK(w[1].ticks == 16);
    }
    SUBCASE("id3: zero bit (dc-free, so the pause column is unused)") {
        auto w = encode_bits({0}, variant_preset("id3"));
        REQUIRE(w.size() == 2);
        CHECK(w[0].ticks == 2);
        CHECK(w[1].ticks == 2);
    }
    SUBCASE("pause column applies to the non-dc-free presets") {
        auto w = encode_bits({0}, variant_preset("id0"));
        REQUIRE(w.size() == 2);
        CHECK(w[0].ticks == 2);
        CHECK(w[1].ticks == 3);
    }
    SUBCASE("bipolar complement on line1") {
        auto w = encode_bits({1, 0}, variant_preset("id0"));  // id0 is bipolar
        for (const auto& seg : w)
            CHECK(seg.line1 == !seg.line0);
        auto u = encode_bits({1, 0}, variant_preset("id2"));  // id2 is not
        for (const auto& seg : u)
            CHECK(!seg.line1);
    }
    SUBCASE("empty input rejected") {
        CHECK_THROWS_AS(encode_bits({}, variant_preset("id0")), CodecError);
    }
}

TEST_CASE("decoder discriminates runs against the threshold") {
    const auto& id0 = variant_preset("id0");
    PulseDecoder dec(id0);
    std::optional<int> bit;
    for (int i = 0; i < 7; ++i) {
        bit = dec.tick(true);
        CHECK(!bit);
    }
    bit = dec.tick(false);
    REQUIRE(bit);
    CHECK(*bit == 1);  // run of 7 with threshold 4

    for (int i = 0; i < 2; ++i)
        dec.tick(true);
    bit = dec.tick(false);
    REQUIRE(bit);
    CHECK(*bit == 0);  // run of 2

    // Long silence emits nothing.
    for (int i = 0; i < 100; ++i)
        CHECK(!dec.tick(false));
}

TEST_CASE("decoder counter saturates without wrapping") {
    const auto& id0 = variant_preset("id0");  // 5-bit counter
    PulseDecoder dec(id0);
    for (int i = 0; i < 500; ++i) {
        dec.tick(true);
        CHECK(dec.run() <= 31);
    }
    CHECK(dec.run() == 31);
    auto bit = dec.tick(false);
    REQUIRE(bit);
    CHECK(*bit == 1);

    const auto& id3 = variant_preset("id3");  // 4-bit counter
    PulseDecoder dec3(id3);
    for (int i = 0; i < 40; ++i)
        dec3.tick(true);
    CHECK(dec3.run() == 15);
}

TEST_CASE("codec soundness: decode(encode(bits)) for all presets") {
    std::mt19937_64 rng(13);
    for (const auto& name : variant_names()) {
        const auto& v = variant_preset(name);
        for (std::size_t len : {std::size_t(1), std::size_t(8), std::size_t(58),
                                std::size_t(66)}) {
            for (int trial = 0; trial < 50; ++trial) {
                BitVec bits = random_bits(rng, len);
                auto levels = waveform_levels(encode_bits(bits, v));
                CHECK(decode_levels(levels, v) == bits);
            }
        }
    }
}

TEST_CASE("timing margin: +-1 tick pulse perturbation decodes losslessly") {
    std::mt19937_64 rng(31);
    for (const auto& name : variant_names()) {
        const auto& v = variant_preset(name);
        BitVec bits = random_bits(rng, 66);
        auto wave = encode_bits(bits, v);
        // Worst case in both directions: shorts stretched, longs shrunk, and
        // the reverse.
        CHECK(decode_levels(perturbed_levels(wave, +1, -1, v), v) == bits);
        CHECK(decode_levels(perturbed_levels(wave, -1, +1, v), v) == bits);
        CHECK(decode_levels(perturbed_levels(wave, +1, +1, v), v) == bits);
        CHECK(decode_levels(perturbed_levels(wave, -1, -1, v), v) == bits);
    }
}

TEST_CASE("dc-free coding balances Hi and Lo time over a frame") {
    for (const auto& name : variant_names()) {
        const auto& v = variant_preset(name);
        if (!v.data_dcfree)
            continue;
        std::mt19937_64 rng(5);
        BitVec bits = random_bits(rng, 58);
        long hi = 0, lo = 0;
        for (const auto& seg : encode_bits(bits, v))
            (seg.line0 ? hi : lo) += seg.ticks;
        CHECK(hi == lo);
    }
}

TEST_CASE("command byte roundtrip, all opcodes and ids") {
    for (int op = 0; op <= int(Opcode::Stop); ++op) {
        for (int id = 0; id < 8; ++id) {
            Command cmd{Opcode(op), std::uint8_t(id)};
            auto parsed = parse_command(encode_command(cmd));
            REQUIRE(parsed.command);
            CHECK(*parsed.command == cmd);
        }
    }
}

TEST_CASE("any single flipped bit is rejected by the checksum") {
    for (int op = 0; op <= int(Opcode::Stop); ++op) {
        for (int id = 0; id < 8; ++id) {
            std::uint8_t byte = encode_command(Command{Opcode(op), std::uint8_t(id)});
            for (int bit = 0; bit < 8; ++bit) {
                auto corrupted = std::uint8_t(byte ^ (1 << bit));
                auto parsed = parse_command(corrupted);
                // A payload flip breaks the sum; a check-bit flip mismatches.
                CHECK(!parsed.command);
                CHECK(!parsed.reject_reason.empty());
            }
        }
    }
}

TEST_CASE("unknown opcodes are rejected with a reason") {
    // Craft bytes with valid checksum but opcode 6 or 7.
    for (std::uint8_t op : {std::uint8_t(6), std::uint8_t(7)}) {
        auto payload = std::uint8_t((2 << 3) | op);
        int ones = 0;
        for (int i = 0; i < 6; ++i)
            ones += (payload >> i) & 1;
        auto byte = std::uint8_t((payload << 2) | (ones & 3));
        auto parsed = parse_command(byte);
        CHECK(!parsed.command);
        CHECK(parsed.reject_reason.find("opcode") != std::string::npos);
    }
}

TEST_CASE("program frames with and without the record block") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        Word58 w(rng() & ((1ull << 58) - 1));
        auto plain = frame_program(w);
        CHECK(plain.size() == 58);
        auto back = deframe_program(plain);
        CHECK(back.word == w);
        CHECK(!back.record);

        auto rec = std::uint8_t(rng() & 0xFF);
        auto full = frame_program(w, rec);
        CHECK(full.size() == 66);
        auto back2 = deframe_program(full);
        CHECK(back2.word == w);
        REQUIRE(back2.record);
        CHECK(*back2.record == rec);
    }
}

TEST_CASE("truncated frames are length errors") {
    BitVec bits(57, 0);
    CHECK_THROWS_AS(deframe_program(bits), CodecError);
    bits.assign(59, 0);
    CHECK_THROWS_AS(deframe_program(bits), CodecError);
    bits.assign(65, 1);
    CHECK_THROWS_AS(deframe_program(bits), CodecError);
}

TEST_CASE("full pipeline: frame -> waveform -> decode -> deframe per preset") {
    std::mt19937_64 rng(23);
    for (const auto& name : variant_names()) {
        const auto& v = variant_preset(name);
        for (int trial = 0; trial < 1000; ++trial) {
            Word58 w(rng() & ((1ull << 58) - 1));
            auto levels = waveform_levels(encode_bits(frame_program(w), v));
            auto frame = deframe_program(decode_levels(levels, v));
            CHECK(frame.word == w);
        }
    }
}
