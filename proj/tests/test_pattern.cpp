#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lablet/pattern.hpp"

using namespace lablet;

namespace {

int non_rest_slots(const std::array<PatternSelector, kSlots>& seq) {
    int n = 0;
    for (const auto& s : seq)
        if (s.po != 0)
            ++n;
    return n;
}

ActuationFrame flip_non_pwr2(ActuationFrame f) {
    for (int e = 0; e < kElectrodes; ++e) {
        if (f[e] == Tri::Z)
            continue;
        Tri flipped = f[e] == Tri::Hi ? Tri::Lo : Tri::Hi;
        if (e == PWR2 && flipped == Tri::Hi)
            flipped = Tri::Z;
        f[e] = flipped;
    }
    return f;
}

}  // namespace

TEST_CASE("pair catalogue") {
    const auto& pairs = pair_catalogue();
    CHECK(pairs.size() == 15);
    bool has_a0_pwr2 = false;
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : pairs) {
        CHECK(a != b);
        CHECK(a < b);
        seen.insert({a, b});
        if (a == A0 && b == PWR2)
            has_a0_pwr2 = true;
    }
    CHECK(has_a0_pwr2);
    CHECK(seen.size() == 15);
}

TEST_CASE("default rom is deterministic and satisfies its invariants") {
    const PatternRom& a = default_rom();
    PatternRom b = default_rom();
    CHECK(rom_violations(a).empty());
    for (int pa = 0; pa < 8; ++pa)
        for (int sc = 0; sc < 4; ++sc)
            CHECK(a.sequence(pa, sc) == b.sequence(pa, sc));
    for (int mag = 1; mag <= 3; ++mag)
        for (int ep = 0; ep < 8; ++ep)
            for (int ec = 0; ec < 2; ++ec)
                CHECK(a.pattern(mag, ep, ec) == b.pattern(mag, ep, ec));
}

TEST_CASE("ec=0 half covers all 15 pairs with two-electrode frames") {
    const auto& rom = default_rom();
    const auto& pairs = pair_catalogue();
    std::set<std::pair<int, int>> covered;
    for (int mag = 1; mag <= 3; ++mag) {
        for (int ep = 0; ep < 8; ++ep) {
            const auto& f = rom.pattern(mag, ep, 0);
            std::vector<int> driven;
            for (int e = 0; e < kElectrodes; ++e)
                if (f[e] != Tri::Z)
                    driven.push_back(e);
            REQUIRE(driven.size() == 2);
            covered.insert({driven[0], driven[1]});
        }
    }
    for (const auto& p : pairs)
        CHECK(covered.count(p) == 1);
}

TEST_CASE("ec=1 half drives at least three electrodes per frame") {
    const auto& rom = default_rom();
    int min_driven = kElectrodes;
    for (int mag = 1; mag <= 3; ++mag) {
        for (int ep = 0; ep < 8; ++ep) {
            const auto& f = rom.pattern(mag, ep, 1);
            int driven = 0;
            for (int e = 0; e < kElectrodes; ++e)
                if (f[e] != Tri::Z)
                    ++driven;
            min_driven = std::min(min_driven, driven);
        }
    }
    CHECK(min_driven == 3);
}

TEST_CASE("sequence select: duty and magnitude deployment") {
    const auto& rom = default_rom();

    auto seq00 = sequence_select(0, 0, rom);
    CHECK(non_rest_slots(seq00) == 2);
    for (const auto& s : seq00)
        if (s.po != 0)
            CHECK((s.po == 1 || s.po == -1));

    CHECK(non_rest_slots(sequence_select(0, 3, rom)) == 8);

    auto seq63 = sequence_select(6, 3, rom);
    CHECK(non_rest_slots(seq63) == 8);
    for (int slot = 0; slot < kSlots; ++slot) {
        int mag = seq63[std::size_t(slot)].po;
        CHECK(mag == slot % 3 + 1);  // cycles 1,2,3
    }

    // Distinct magnitude count per deployment class: solo 1, twin 2, tri 3.
    for (int pa = 0; pa < 8; ++pa) {
        std::set<int> mags;
        for (const auto& s : sequence_select(pa, 3, rom))
            if (s.po != 0)
                mags.insert(s.po < 0 ? -s.po : s.po);
        int expect = pa < 3 ? 1 : pa < 6 ? 2 : 3;
        CHECK(int(mags.size()) == expect);
    }
}

TEST_CASE("duty is monotone in sc for every pa") {
    const auto& rom = default_rom();
    for (int pa = 0; pa < 8; ++pa) {
        int prev = 0;
        for (int sc = 0; sc < 4; ++sc) {
            int duty = non_rest_slots(sequence_select(pa, sc, rom));
            CHECK(duty >= prev);
            prev = duty;
        }
    }
}

TEST_CASE("resolve_frame: rest, inversion, negation identity") {
    const auto& rom = default_rom();
    for (int ep = 0; ep < 8; ++ep)
        for (int ec = 0; ec < 2; ++ec)
            for (int ne = 0; ne < 2; ++ne)
                CHECK(resolve_frame({0}, ep, ec, ne, rom) == rest_frame());

    for (int mag = 1; mag <= 3; ++mag) {
        for (int ep = 0; ep < 8; ++ep) {
            for (int ec = 0; ec < 2; ++ec) {
                auto plain = resolve_frame({std::int8_t(mag)}, ep, ec, 0, rom);
                auto inverted = resolve_frame({std::int8_t(mag)}, ep, ec, 1, rom);
                CHECK(inverted == flip_non_pwr2(plain));
                // PO<0 with ne is PO>0 with 1-ne.
                for (int ne = 0; ne < 2; ++ne)
                    CHECK(resolve_frame({std::int8_t(-mag)}, ep, ec, ne, rom) ==
                          resolve_frame({std::int8_t(mag)}, ep, ec, 1 - ne, rom));
            }
        }
    }
}

TEST_CASE("pair (A0,A1) resolves to the expected drive string") {
    // Catalogue index 3 is (A0, A1); it occupies frame slot mag=1, ep=3.
    const auto& rom = default_rom();
    PhaseConfig cfg;
    cfg.pa = 0;  // solo |po|=1
    cfg.sc = 3;  // every slot active
    cfg.ep = 3;
    auto f = frame_at(cfg, 0, rom);
    CHECK(f.to_string() == "1ZZZ0Z");
    CHECK(f[A0] == Tri::Hi);
    CHECK(f[A1] == Tri::Lo);
}

TEST_CASE("all-zero phase config frames are fixed by the rom") {
    const auto& rom = default_rom();
    PhaseConfig zero;
    // pa=0 sc=0: light solo, slots 0 and 4 drive pair (A0, DO).
    for (int idx = 0; idx < kSlots; ++idx) {
        auto f = frame_at(zero, idx, rom);
        if (idx == 0 || idx == 4)
            CHECK(f.to_string() == "10ZZZZ");
        else
            CHECK(f.is_rest());
    }
}

TEST_CASE("frames repeat exactly each inner-loop cycle") {
    const auto& rom = default_rom();
    PhaseConfig cfg;
    cfg.pa = 5;
    cfg.sc = 2;
    cfg.ep = 4;
    cfg.ne = 1;
    for (int idx = 0; idx < kSlots; ++idx)
        CHECK(frame_at(cfg, idx, rom) == frame_at(cfg, idx + 8, rom));
}

TEST_CASE("exhaustive frame validity over all 4096 combinations") {
    const auto& rom = default_rom();
    for (int pa = 0; pa < 8; ++pa)
        for (int sc = 0; sc < 4; ++sc)
            for (int ep = 0; ep < 8; ++ep)
                for (int ec = 0; ec < 2; ++ec)
                    for (int ne = 0; ne < 2; ++ne)
                        for (int idx = 0; idx < 8; ++idx) {
                            PhaseConfig cfg;
                            cfg.pa = std::uint8_t(pa);
                            cfg.sc = std::uint8_t(sc);
                            cfg.ep = std::uint8_t(ep);
                            cfg.ec = std::uint8_t(ec);
                            cfg.ne = std::uint8_t(ne);
                            auto f = frame_at(cfg, idx, rom);
                            CHECK(f[PWR2] != Tri::Hi);
                            CHECK(frame_ok(f));
                        }
}

TEST_CASE("frame string round trip and rejection") {
    ActuationFrame f = ActuationFrame::from_string("1Z0Z1Z");
    CHECK(f.to_string() == "1Z0Z1Z");
    CHECK_THROWS_AS(ActuationFrame::from_string("10"), CodecError);
    CHECK_THROWS_AS(ActuationFrame::from_string("10ZZX1"), CodecError);
}

TEST_CASE("rom override file: apply, validate, reject") {
    std::istringstream good(
        "# move the light solo duty slots\n"
        "seq 0 0 : 1 0 0 0 -1 0 0 0\n"
        "frame 1 0 0 : Z1ZZ0Z\n");
    PatternRom rom = parse_rom_overrides(good);
    CHECK(rom.sequence(0, 0)[4].po == -1);
    CHECK(rom.pattern(1, 0, 0).to_string() == "Z1ZZ0Z");
    CHECK(rom_violations(rom).empty());

    // Clobbering the only (A0, DO) entry breaks pair coverage.
    std::istringstream bad("frame 1 0 0 : ZZZZZZ\n");
    CHECK_THROWS_AS(parse_rom_overrides(bad), CodecError);

    std::istringstream syntax("seq 0 0 : 1 2 3\n");
    CHECK_THROWS_AS(parse_rom_overrides(syntax), CodecError);

    std::istringstream pwr2_hi("frame 1 0 0 : 0ZZZZ1\n");
    CHECK_THROWS_AS(parse_rom_overrides(pwr2_hi), CodecError);
}
