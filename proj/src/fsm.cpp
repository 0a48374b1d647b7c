#include "lablet/fsm.hpp"

namespace lablet {

namespace {

void clear_tx(LabletState& s) {
    s.tx = TxState{};
    s.doutact = false;
    s.dout = false;
}

void to_idle(LabletState& s) {
    clear_tx(s);
    s.mode = Mode::Idle;
    s.phase = 0;
    s.patterncnt = 0;
    s.clkdivider = 0;
    s.rx_count = 0;
}

void enter_phase(LabletState& s, std::uint8_t phase, std::vector<Event>& events) {
    if (phase == 0) {
        to_idle(s);
        events.push_back({EventKind::PhaseEntered, 0, 0});
        return;
    }
    clear_tx(s);
    s.mode = Mode::Run;
    s.phase = phase;
    s.patterncnt = 0;
    s.clkdivider = 0;
    s.repeatcnt = std::uint8_t(rep_count(s.prog.rep));
    events.push_back({EventKind::PhaseEntered, phase, 0});
}

void start_send(LabletState& s, const BitVec& payload, std::uint8_t pending_next,
                const VariantParams& v, std::vector<Event>& events) {
    clear_tx(s);
    s.mode = Mode::Send;
    s.tx.wave.push_back({false, false, v.gap_limit()});  // settle the line first
    auto data = encode_bits(payload, v);
    s.tx.wave.insert(s.tx.wave.end(), data.begin(), data.end());
    s.tx.seg = 0;
    s.tx.remaining = s.tx.wave[0].ticks;
    s.tx.pending_next = pending_next;
    s.tx.payload_bits = int(payload.size());
    s.tx.active = true;
    s.doutact = true;
    events.push_back({EventKind::SendStarted, int(payload.size()), 0});
}

BitVec program_payload(const LabletState& s) {
    return frame_program(encode(s.prog),
                         s.prog.dat ? std::optional<std::uint8_t>(record_byte(s.rec))
                                    : std::nullopt);
}

bool condition_uses_trig(std::uint8_t se, bool longcond) {
    std::uint8_t code = longcond ? se : std::uint8_t(se & 7);
    return code >= 5 && code <= 7;
}

// End of one 8-slot inner loop: evaluate the exit condition against the
// previous boundary's record, then record, then branch.
void loop_boundary(LabletState& s, const TickInputs& in, const VariantParams& v,
                   std::vector<Event>& events) {
    const PhaseConfig& cfg = s.prog.phases[std::size_t(s.phase - 1)];
    bool fired = eval_condition(cfg.se, in.s0, in.s1, s.trigd, s.comd,
                                s.rec.mem_s0[s.phase] != 0, s.rec.mem_s1[s.phase] != 0,
                                v.longcond);
    record_sample(s, in.s0, in.s1, &events);
    s.comd = false;  // consumed by this evaluation
    if (s.repeatcnt > 0)
        --s.repeatcnt;
    apply_condition(s, fired, v, events);
}

void finish_program_frame(LabletState& s, std::vector<Event>& events) {
    if (s.rx_count == kProgramBits || s.rx_count == kProgramBits + kRecordBits) {
        BitVec bits(s.rx_buf.begin(), s.rx_buf.begin() + s.rx_count);
        ProgramFrame frame = deframe_program(bits);
        s.prog = decode(frame.word);
        if (frame.record)
            apply_record_byte(s.rec, *frame.record);
        events.push_back({EventKind::ProgramLoaded, s.rx_count, 0});
    } else {
        events.push_back({EventKind::ProgramRejected, s.rx_count, 0});
    }
    to_idle(s);
}

void process_command_byte(LabletState& s, const VariantParams& v,
                          std::vector<Event>& events) {
    auto parsed = parse_command(s.commandin);
    if (!parsed.command) {
        int reason = parsed.reject_reason == "checksum mismatch" ? 0 : 1;
        events.push_back({EventKind::CommandIgnored, s.commandin, reason});
        return;
    }
    handle_command(s, *parsed.command, v, events);
}

}  // namespace

std::string_view mode_name(Mode m) {
    switch (m) {
        case Mode::Idle: return "IDLE";
        case Mode::Prog: return "PROG";
        case Mode::Send: return "SEND";
        case Mode::Run: return "RUN";
    }
    return "?";
}

std::uint8_t record_byte(const RecordLog& rec) {
    std::uint8_t byte = 0;
    for (int p = 0; p < 4; ++p)
        byte = std::uint8_t((byte << 1) | (rec.mem_s0[std::size_t(p)] & 1));
    for (int p = 0; p < 4; ++p)
        byte = std::uint8_t((byte << 1) | (rec.mem_s1[std::size_t(p)] & 1));
    return byte;
}

void apply_record_byte(RecordLog& rec, std::uint8_t byte) {
    for (int p = 0; p < 4; ++p)
        rec.mem_s0[std::size_t(p)] = std::uint8_t((byte >> (7 - p)) & 1);
    for (int p = 0; p < 4; ++p)
        rec.mem_s1[std::size_t(p)] = std::uint8_t((byte >> (3 - p)) & 1);
}

std::string event_to_string(const Event& e) {
    switch (e.kind) {
        case EventKind::Reset: return "Reset";
        case EventKind::PhaseEntered: return "PhaseEntered:" + std::to_string(e.a);
        case EventKind::ConditionFired:
            return "ConditionFired:" + std::to_string(e.a) + ":" + std::to_string(e.b);
        case EventKind::Recorded:
            return "Recorded:" + std::to_string(e.a) + ":" + std::to_string(e.b);
        case EventKind::SendStarted: return "SendStarted:" + std::to_string(e.a);
        case EventKind::SendCompleted: return "SendCompleted:" + std::to_string(e.a);
        case EventKind::ProgramLoaded: return "ProgramLoaded:" + std::to_string(e.a);
        case EventKind::ProgramRejected:
            return "ProgramRejected:" + std::to_string(e.a);
        case EventKind::CommandReceived:
            return "CommandReceived:" +
                   std::string(opcode_name(Opcode(e.a))) + ":" + std::to_string(e.b);
        case EventKind::CommandIgnored:
            return "CommandIgnored:" + std::to_string(e.a) + ":" + std::to_string(e.b);
        case EventKind::AutorunStarted: return "AutorunStarted";
    }
    return "?";
}

LabletState reset(const VariantParams& variant) {
    LabletState s;
    s.prog = variant.default_program;
    return s;
}

bool eval_condition(std::uint8_t se, bool s0, bool s1, bool trigd, bool comd,
                    bool mem_s0_p, bool mem_s1_p, bool longcond) {
    std::uint8_t code = longcond ? std::uint8_t(se & 15) : std::uint8_t(se & 7);
    switch (code) {
        case 0: return false;
        case 1: return s0;
        case 2: return s1;
        case 3: return s0 && s1;
        case 4: return s0 != s1;
        case 5: return trigd;
        case 6: return trigd && s0;
        case 7: return trigd && s1;
        case 8: return !s0;
        case 9: return !s1;
        case 10: return comd;
        case 11: return !comd;
        case 12: return s0 != mem_s0_p;
        case 13: return s1 != mem_s1_p;
        case 14: return s0 != mem_s0_p || s1 != mem_s1_p;
        case 15: return s0 && !s1;
    }
    return false;
}

void apply_condition(LabletState& s, bool fired, const VariantParams& v,
                     std::vector<Event>& events) {
    const PhaseConfig& cfg = s.prog.phases[std::size_t(s.phase - 1)];
    if (fired) {
        events.push_back({EventKind::ConditionFired, cfg.se, cfg.ca.next_phase});
        if (condition_uses_trig(cfg.se, v.longcond))
            s.trigd = false;
        if (cfg.ca.send)
            start_send(s, program_payload(s), cfg.ca.next_phase, v, events);
        else
            enter_phase(s, cfg.ca.next_phase, events);
    } else if (s.repeatcnt == 0) {
        enter_phase(s, cfg.ca.next_phase, events);  // exhaustion: no send
    }
}

void record_sample(LabletState& s, bool s0, bool s1, std::vector<Event>* events) {
    if (!s.prog.dat)
        return;
    s.rec.mem_s0[s.phase] = std::uint8_t(s0);
    s.rec.mem_s1[s.phase] = std::uint8_t(s1);
    s.rec.event_step[s.phase] = std::int32_t(s.step_count);
    if (events)
        events->push_back({EventKind::Recorded, s.phase, (int(s1) << 1) | int(s0)});
}

void handle_command(LabletState& s, const Command& cmd, const VariantParams& v,
                    std::vector<Event>& events) {
    if (v.with_id && cmd.target_id != v.def_id && cmd.target_id != 7) {
        events.push_back({EventKind::CommandIgnored, encode_command(cmd), 2});
        return;
    }
    events.push_back(
        {EventKind::CommandReceived, int(cmd.opcode), int(cmd.target_id)});
    s.comd = true;
    s.clkdivider = 0;  // any accepted command restarts the idle timeout
    switch (cmd.opcode) {
        case Opcode::Prog:
            clear_tx(s);
            s.mode = Mode::Prog;
            s.phase = 0;
            s.rx_count = 0;
            s.clkdivider = 0;
            break;
        case Opcode::Run:
            enter_phase(s, 1, events);
            break;
        case Opcode::Send:
            start_send(s, program_payload(s), 0, v, events);
            break;
        case Opcode::Trig:
            s.trigd = true;
            break;
        case Opcode::Test: {
            BitVec bits(8);
            for (int i = 0; i < 8; ++i)
                bits[std::size_t(i)] = std::uint8_t((kTestPattern >> (7 - i)) & 1);
            start_send(s, bits, 0, v, events);
            break;
        }
        case Opcode::Stop:
            to_idle(s);
            s.trigd = false;
            break;
    }
}

TickOutputs tick(LabletState& s, const TickInputs& in, const VariantParams& v,
                 const PatternRom& rom) {
    TickOutputs out;

    if (!in.power_good) {
        bool first = !s.in_reset;
        s = reset(v);
        s.in_reset = true;
        if (first)
            out.events.push_back({EventKind::Reset, 0, 0});
        return out;
    }
    s.in_reset = false;

    // Receive path: sample the line, run-length decode, assemble bits.
    bool level;
    if (v.data_bipo) {
        s.din1 = in.din;
        s.din2 = in.din_b;
        level = in.din && !in.din_b;  // mark = HL on the pair
    } else {
        s.din2 = s.din1;  // two-stage synchronizer
        s.din1 = in.din;
        level = s.din2;
    }

    int run = s.pulsecnt;
    std::optional<int> bit;
    if (level) {
        if (run < v.pulsecnt_max())
            ++run;
    } else if (run > 0) {
        bit = run > v.pulsethreshold ? 1 : 0;
        run = 0;
    }
    s.pulsecnt = std::uint8_t(run);

    bool gap_elapsed = false;
    if (level) {
        s.lo_run = 0;
    } else if (s.lo_run < 0xFFF0) {
        ++s.lo_run;
        gap_elapsed = s.lo_run == v.gap_limit();
    }

    if (bit) {
        if (s.mode == Mode::Prog) {
            if (s.rx_count < s.rx_buf.size())
                s.rx_buf[s.rx_count] = std::uint8_t(*bit);
            if (s.rx_count < 200)
                ++s.rx_count;
            s.clkdivider = 0;
        } else {
            s.commandin = std::uint8_t((s.commandin << 1) | *bit);
            if (++s.cmd_bits == 8) {
                s.cmd_bits = 0;
                process_command_byte(s, v, out.events);
            }
        }
    }

    if (gap_elapsed) {
        if (s.mode == Mode::Prog && s.rx_count > 0)
            finish_program_frame(s, out.events);
        else
            s.cmd_bits = 0;  // resync a partial command
    }

    // Idle timeout / reception timeout.
    if (s.mode == Mode::Idle) {
        s.clkdivider = std::uint16_t((s.clkdivider + 1) & 0xFFF);
        if (s.clkdivider == 0 && v.autorun) {
            out.events.push_back({EventKind::AutorunStarted, 0, 0});
            enter_phase(s, 1, out.events);
        }
    } else if (s.mode == Mode::Prog && s.rx_count == 0) {
        s.clkdivider = std::uint16_t((s.clkdivider + 1) & 0xFFF);
        if (s.clkdivider == 0) {
            out.events.push_back({EventKind::ProgramRejected, 0, 0});
            to_idle(s);
        }
    }

    // Transmit path.
    if (s.mode == Mode::Send && s.tx.active) {
        const WaveSegment& seg = s.tx.wave[s.tx.seg];
        s.dout = seg.line0;
        out.dout = seg.line0 ? Tri::Hi : Tri::Lo;
        out.dout_b = v.data_bipo ? (seg.line1 ? Tri::Hi : Tri::Lo) : Tri::Z;
        if (--s.tx.remaining == 0) {
            ++s.tx.seg;
            if (s.tx.seg == s.tx.wave.size()) {
                int bits = s.tx.payload_bits;
                std::uint8_t next = s.tx.pending_next;
                out.events.push_back({EventKind::SendCompleted, bits, 0});
                enter_phase(s, next, out.events);
            } else {
                s.tx.remaining = s.tx.wave[s.tx.seg].ticks;
            }
        }
    }

    // Pattern engine.
    if (s.mode == Mode::Run) {
        const PhaseConfig& cfg = s.prog.phases[std::size_t(s.phase - 1)];
        out.frame = frame_at(cfg, s.patterncnt, rom);
        int mult = step_multiplier(s.prog.tim, cfg.ti);
        s.clkdivider = std::uint16_t(s.clkdivider + 1);
        if (s.clkdivider >= mult) {
            s.clkdivider = 0;
            ++s.step_count;
            s.patterncnt = std::uint8_t((s.patterncnt + 1) & 7);
            if (s.patterncnt == 0)
                loop_boundary(s, in, v, out.events);
        }
    }

    // Latch the frame into the actuator registers.
    s.act = 0;
    s.actenab = 0;
    for (int e = 0; e < 5; ++e) {
        if (out.frame[e] != Tri::Z)
            s.actenab = std::uint8_t(s.actenab | (1 << e));
        if (out.frame[e] == Tri::Hi)
            s.act = std::uint8_t(s.act | (1 << e));
    }
    if (out.frame[PWR2] == Tri::Lo)
        s.act = std::uint8_t(s.act | (1 << 5));  // open-drain sink on

    return out;
}

ActuationFrame drive_frame(std::uint8_t act, std::uint8_t actenab) {
    ActuationFrame f;
    for (int e = 0; e < 5; ++e)
        if (actenab & (1 << e))
            f[e] = (act & (1 << e)) ? Tri::Hi : Tri::Lo;
    if (act & (1 << 5))
        f[PWR2] = Tri::Lo;
    return f;
}

bool state_bounds_ok(const LabletState& s, const VariantParams& v) {
    if (s.patterncnt >= 8 || s.phase > 3)
        return false;
    if (s.repeatcnt > rep_count(s.prog.rep))
        return false;
    if (s.clkdivider >= 4096)
        return false;
    if (s.pulsecnt > v.pulsecnt_max())
        return false;
    if (s.cmd_bits > 8 || s.rx_count > 200)
        return false;
    if (s.mode == Mode::Run && (s.phase < 1 || s.phase > 3))
        return false;
    if (s.act >= 64 || s.actenab >= 32)
        return false;
    return true;
}

}  // namespace lablet
