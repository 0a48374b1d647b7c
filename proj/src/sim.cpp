#include "lablet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <queue>
#include <random>
#include <sstream>

namespace lablet {

namespace {

double uniform_pm1(std::mt19937_64& rng) {
    // 53-bit mantissa draw in [0,1), mapped to [-1,1); identical on all hosts.
    return 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
}

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return std::string(buf);
}

// Absolute-time level segments of one dock transmission.
struct DockWave {
    double t0 = 0.0;
    std::vector<WaveSegment> segs;
    double tick_s = 0.0;

    void levels_at(double t, bool& line0, bool& line1) const {
        if (t < t0)
            return;
        double off = t - t0;
        for (const auto& seg : segs) {
            double span = seg.ticks * tick_s;
            if (off < span) {
                line0 = line0 || seg.line0;
                line1 = line1 || seg.line1;
                return;
            }
            off -= span;
        }
    }
};

struct KeyValueLine {
    std::map<std::string, std::string> kv;
    std::vector<std::string> positional;

    void check_known(std::initializer_list<const char*> known, int lineno) const {
        for (const auto& [key, value] : kv) {
            bool found = false;
            for (const char* k : known)
                found = found || key == k;
            if (!found)
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": unknown option '" + key + "'");
        }
    }
};

KeyValueLine split_line(const std::vector<std::string>& tokens, std::size_t from) {
    KeyValueLine out;
    for (std::size_t i = from; i < tokens.size(); ++i) {
        auto eq = tokens[i].find('=');
        if (eq == std::string::npos)
            out.positional.push_back(tokens[i]);
        else
            out.kv[tokens[i].substr(0, eq)] = tokens[i].substr(eq + 1);
    }
    return out;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#')
            break;
        out.push_back(tok);
    }
    return out;
}

double to_double(const std::string& s, int lineno, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ScenarioError("line " + std::to_string(lineno) + ": bad " +
                            std::string(what) + " '" + s + "'");
    }
}

long to_long(const std::string& s, int lineno, const char* what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ScenarioError("line " + std::to_string(lineno) + ": bad " +
                            std::string(what) + " '" + s + "'");
    }
}

Opcode opcode_from_name(const std::string& name, int lineno) {
    for (int op = 0; op <= int(Opcode::Stop); ++op)
        if (name == opcode_name(Opcode(op)))
            return Opcode(op);
    throw ScenarioError("line " + std::to_string(lineno) + ": unknown command '" +
                        name + "'");
}

}  // namespace

SensorBits sensor_bits(double delta_mv) {
    return {delta_mv >= kSens0ThresholdMv, delta_mv >= kSens1ThresholdMv};
}

double mv_per_ph() {
    return 59.0;
}

SupercapModel power_step(SupercapModel cap, double load_current, double charge_current,
                         double dt) {
    if (charge_current < 0)
        charge_current = 0;  // rectifier blocks reverse flow
    double v = cap.voltage + (charge_current - load_current) * dt / cap.capacitance;
    cap.voltage = std::clamp(v, 0.0, 1.8);
    if (!cap.power_good && cap.voltage >= cap.por_rising)
        cap.power_good = true;
    else if (cap.power_good && cap.voltage < cap.brownout_falling)
        cap.power_good = false;
    return cap;
}

std::array<bool, kElectrodes> ecl_mask(const ActuationFrame& frame,
                                       double drive_voltage) {
    std::array<bool, kElectrodes> mask{};
    for (int e = 0; e < kElectrodes; ++e)
        mask[std::size_t(e)] = frame[e] == Tri::Hi && drive_voltage >= kEclThresholdV;
    return mask;
}

Scenario parse_scenario(std::istream& in) {
    Scenario sc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokens_of(line);
        if (toks.empty())
            continue;
        const std::string& kind = toks[0];
        if (kind == "seed") {
            if (toks.size() != 2)
                throw ScenarioError("line " + std::to_string(lineno) + ": seed <n>");
            sc.seed = std::uint64_t(to_long(toks[1], lineno, "seed"));
        } else if (kind == "duration") {
            if (toks.size() != 2)
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": duration <seconds>");
            sc.duration_s = to_double(toks[1], lineno, "duration");
        } else if (kind == "ticks") {
            if (toks.size() != 2)
                throw ScenarioError("line " + std::to_string(lineno) + ": ticks <n>");
            sc.duration_ticks = to_long(toks[1], lineno, "ticks");
        } else if (kind == "jitter") {
            if (toks.size() != 2)
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": jitter <fraction>");
            sc.jitter_fraction = to_double(toks[1], lineno, "jitter");
            if (sc.jitter_fraction < 0 || sc.jitter_fraction > 0.5)
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": jitter must lie in [0, 0.5]");
        } else if (kind == "lablet") {
            if (toks.size() < 2)
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": lablet <index> ...");
            long idx = to_long(toks[1], lineno, "lablet index");
            if (idx != long(sc.lablets.size()))
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": lablets must be declared in order 0,1,2,...");
            auto kv = split_line(toks, 2);
            kv.check_known({"variant", "program", "offset", "start", "v0", "cap",
                            "leak", "charge", "load"},
                           lineno);
            LabletSetup setup;
            std::string vspec = kv.kv.count("variant") ? kv.kv["variant"] : "id0";
            bool preset = false;
            for (const auto& name : variant_names())
                preset = preset || vspec == name;
            setup.variant = preset ? variant_preset(vspec) : parse_variant_file(vspec);
            if (kv.kv.count("program")) {
                const std::string& p = kv.kv["program"];
                setup.program = decode(Word58::from_hex(p));
            }
            if (kv.kv.count("offset")) {
                setup.clock_offset = to_double(kv.kv["offset"], lineno, "offset");
                setup.offset_explicit = true;
                if (std::abs(setup.clock_offset) > 0.5)
                    throw ScenarioError("line " + std::to_string(lineno) +
                                        ": |offset| must not exceed 0.5");
            }
            if (kv.kv.count("start")) {
                const std::string& s = kv.kv["start"];
                if (s == "idle")
                    setup.start_phase = 0;
                else if (s == "p1" || s == "p2" || s == "p3")
                    setup.start_phase = std::uint8_t(s[1] - '0');
                else
                    throw ScenarioError("line " + std::to_string(lineno) +
                                        ": start must be idle|p1|p2|p3");
            }
            if (kv.kv.count("v0"))
                setup.v0 = to_double(kv.kv["v0"], lineno, "v0");
            if (kv.kv.count("cap"))
                setup.capacitance = to_double(kv.kv["cap"], lineno, "cap");
            if (kv.kv.count("leak"))
                setup.leakage_current = to_double(kv.kv["leak"], lineno, "leak");
            if (kv.kv.count("charge"))
                setup.charge_current = to_double(kv.kv["charge"], lineno, "charge");
            if (kv.kv.count("load"))
                setup.load_per_electrode = to_double(kv.kv["load"], lineno, "load");
            sc.lablets.push_back(std::move(setup));
            sc.stimuli.emplace_back();
        } else if (kind == "couple") {
            if (toks.size() < 3)
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": couple <src|dock> <dst> ...");
            Coupling c;
            c.src = toks[1] == "dock" ? -1 : int(to_long(toks[1], lineno, "src"));
            c.dst = int(to_long(toks[2], lineno, "dst"));
            auto kv = split_line(toks, 3);
            kv.check_known({"from", "until", "noise"}, lineno);
            if (kv.kv.count("from"))
                c.t_on = to_double(kv.kv["from"], lineno, "from");
            if (kv.kv.count("until"))
                c.t_off = to_double(kv.kv["until"], lineno, "until");
            if (kv.kv.count("noise"))
                c.flip_prob = to_double(kv.kv["noise"], lineno, "noise");
            sc.couplings.push_back(c);
        } else if (kind == "stim") {
            if (toks.size() != 4)
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": stim <lablet> <time_s> <mv>");
            long idx = to_long(toks[1], lineno, "lablet index");
            if (idx < 0 || idx >= long(sc.lablets.size()))
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": stim targets undeclared lablet");
            StimulusPoint pt{to_double(toks[2], lineno, "time"),
                             to_double(toks[3], lineno, "mv")};
            auto& track = sc.stimuli[std::size_t(idx)];
            if (!track.empty() && pt.t <= track.back().t)
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": stimulus times must be strictly increasing");
            track.push_back(pt);
        } else if (kind == "dock") {
            if (toks.size() < 3)
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": dock <time_s> cmd|prog ...");
            DockEntry entry;
            entry.t = to_double(toks[1], lineno, "time");
            const std::string& what = toks[2];
            auto kv = split_line(toks, 3);
            kv.check_known({"record", "using"}, lineno);
            if (what == "cmd") {
                if (kv.positional.size() < 1 || kv.positional.size() > 2)
                    throw ScenarioError("line " + std::to_string(lineno) +
                                        ": dock <t> cmd <OPCODE> [target]");
                entry.cmd.opcode = opcode_from_name(kv.positional[0], lineno);
                entry.cmd.target_id =
                    kv.positional.size() == 2
                        ? std::uint8_t(to_long(kv.positional[1], lineno, "target"))
                        : 7;
            } else if (what == "prog") {
                if (kv.positional.size() != 1)
                    throw ScenarioError("line " + std::to_string(lineno) +
                                        ": dock <t> prog <hex15>");
                entry.is_program = true;
                entry.word = Word58::from_hex(kv.positional[0]);
                if (kv.kv.count("record")) {
                    const std::string& r = kv.kv["record"];
                    entry.record = std::uint8_t(std::stoul(r, nullptr, 16) & 0xFF);
                }
            } else {
                throw ScenarioError("line " + std::to_string(lineno) +
                                    ": dock entry must be cmd or prog");
            }
            if (kv.kv.count("using"))
                entry.using_variant = kv.kv["using"];
            sc.dock_script.push_back(entry);
        } else {
            throw ScenarioError("line " + std::to_string(lineno) +
                                ": unknown directive '" + kind + "'");
        }
    }
    if (sc.lablets.empty())
        throw ScenarioError("scenario declares no lablets");
    if (sc.duration_s <= 0 && sc.duration_ticks <= 0)
        throw ScenarioError("scenario needs duration <seconds> or ticks <n>");
    for (const auto& c : sc.couplings) {
        if (c.dst < 0 || c.dst >= int(sc.lablets.size()) ||
            c.src >= int(sc.lablets.size()) || c.src < -1 || c.src == c.dst)
            throw ScenarioError("coupling references an invalid lablet index");
    }
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("cannot open scenario file " + path);
    return parse_scenario(in);
}

VariantParams parse_variant_params(std::istream& in) {
    VariantParams v = variant_preset("id0");
    v.name = "custom";
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ScenarioError("variant file: expected key=value, got '" + tok + "'");
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        auto as_int = [&] { return int(to_long(val, 0, key.c_str())); };
        auto as_bool = [&] { return as_int() != 0; };
        if (key == "name") v.name = val;
        else if (key == "sysclk_hz") v.sysclk_hz = as_int();
        else if (key == "def_id") v.def_id = std::uint8_t(as_int());
        else if (key == "with_id") v.with_id = as_bool();
        else if (key == "longcond") v.longcond = as_bool();
        else if (key == "autorun") v.autorun = as_bool();
        else if (key == "ddinchan") v.ddinchan = as_bool();
        else if (key == "data_bipo") v.data_bipo = as_bool();
        else if (key == "data_dcfree") v.data_dcfree = as_bool();
        else if (key == "pulsecntbits") v.pulsecntbits = as_int();
        else if (key == "pulsethreshold") v.pulsethreshold = as_int();
        else if (key == "pulselong") v.pulselong = as_int();
        else if (key == "pulseshort") v.pulseshort = as_int();
        else if (key == "pulsepause") v.pulsepause = as_int();
        else if (key == "default_program") {
            if (val.size() == 15)
                v.default_program = decode(Word58::from_hex(val));
            else
                v.default_program = builtin_program(val);
        } else {
            throw ScenarioError("variant file: unknown key '" + key + "'");
        }
    }
    auto bad = variant_violations(v);
    if (!bad.empty()) {
        std::string msg = "variant file invalid:";
        for (const auto& b : bad)
            msg += "\n  " + b;
        throw ScenarioError(msg);
    }
    return v;
}

VariantParams parse_variant_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("cannot open variant file " + path);
    return parse_variant_params(in);
}

SimResult run(const Scenario& scenario, const PatternRom& rom) {
    const std::size_t n = scenario.lablets.size();
    SimResult result;
    result.clock_offsets.resize(n);
    result.periods.resize(n);
    result.nominal_periods.resize(n);
    result.initial_frames.resize(n);

    // Clock offsets: explicit or seeded.
    for (std::size_t i = 0; i < n; ++i) {
        const auto& setup = scenario.lablets[i];
        double eps = setup.clock_offset;
        if (!setup.offset_explicit && scenario.jitter_fraction != 0.0) {
            std::mt19937_64 rng(scenario.seed * 0x9E3779B97F4A7C15ull + i + 1);
            eps = scenario.jitter_fraction * uniform_pm1(rng);
        }
        result.clock_offsets[i] = eps;
        double nominal = setup.variant.clock_period_s();
        result.nominal_periods[i] = nominal;
        result.periods[i] = nominal / (1.0 + eps);
    }

    // Dock waveforms, absolute time.
    std::vector<DockWave> dock_waves;
    for (const auto& entry : scenario.dock_script) {
        std::string vname = entry.using_variant;
        if (vname.empty()) {
            vname = scenario.lablets[0].variant.name;
            for (const auto& c : scenario.couplings)
                if (c.src == -1) {
                    vname = scenario.lablets[std::size_t(c.dst)].variant.name;
                    break;
                }
        }
        const VariantParams& enc = variant_preset(vname);
        BitVec bits = entry.is_program ? frame_program(entry.word, entry.record)
                                       : command_bits(entry.cmd);
        DockWave wave;
        wave.t0 = entry.t;
        wave.segs = encode_bits(bits, enc);
        wave.tick_s = enc.clock_period_s();
        dock_waves.push_back(std::move(wave));
    }

    // Per-lablet live state.
    std::vector<LabletState> states(n);
    std::vector<SupercapModel> caps(n);
    std::vector<bool> out_line0(n, false), out_line1(n, false);
    std::vector<double> last_time(n, 0.0);
    std::vector<int> frame_load(n, 0);
    std::vector<long> tick_index(n, 0);
    std::vector<std::size_t> stim_pos(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        const auto& setup = scenario.lablets[i];
        states[i] = reset(setup.variant);
        if (setup.program)
            states[i].prog = *setup.program;
        if (setup.start_phase >= 1 && setup.start_phase <= 3) {
            states[i].mode = Mode::Run;
            states[i].phase = setup.start_phase;
            states[i].repeatcnt = std::uint8_t(rep_count(states[i].prog.rep));
        }
        caps[i].capacitance = setup.capacitance;
        caps[i].voltage = setup.v0;
        caps[i].leakage_current = setup.leakage_current;
        caps[i].power_good = setup.v0 >= caps[i].por_rising;
        if (states[i].mode == Mode::Run && caps[i].power_good)
            result.initial_frames[i] =
                frame_at(states[i].prog.phases[states[i].phase - 1], 0, rom);
        else
            result.initial_frames[i] = rest_frame();
        frame_load[i] = 0;
        for (int e = 0; e < kElectrodes; ++e)
            if (result.initial_frames[i][e] != Tri::Z)
                ++frame_load[i];
    }

    // Per-coupling noise streams, advanced once per destination sample.
    std::vector<std::mt19937_64> noise_rng;
    for (std::size_t c = 0; c < scenario.couplings.size(); ++c)
        noise_rng.emplace_back(scenario.seed * 0xD1B54A32D192ED03ull + c + 1);

    using QItem = std::pair<double, std::size_t>;  // (time, lablet)
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> queue;
    for (std::size_t i = 0; i < n; ++i) {
        double t1 = result.periods[i];
        if (scenario.duration_ticks > 0 || t1 <= scenario.duration_s)
            queue.push({t1, i});
    }

    while (!queue.empty()) {
        auto [t, i] = queue.top();
        queue.pop();
        const auto& setup = scenario.lablets[i];
        ++tick_index[i];

        // Power first: the tick sees the supply as charged/drained up to now.
        double dt = t - last_time[i];
        last_time[i] = t;
        double load = setup.leakage_current + setup.load_per_electrode * frame_load[i];
        caps[i] = power_step(caps[i], load, setup.charge_current, dt);

        // Sample coupled lines.
        bool din = false, din_b = false;
        for (std::size_t c = 0; c < scenario.couplings.size(); ++c) {
            const auto& cpl = scenario.couplings[c];
            if (cpl.dst != int(i))
                continue;
            bool active = t >= cpl.t_on && t < cpl.t_off;
            bool l0 = false, l1 = false;
            if (active) {
                if (cpl.src == -1) {
                    for (const auto& wave : dock_waves)
                        wave.levels_at(t, l0, l1);
                } else {
                    l0 = out_line0[std::size_t(cpl.src)];
                    l1 = out_line1[std::size_t(cpl.src)];
                }
                if (cpl.flip_prob > 0.0) {
                    double u = double(noise_rng[c]() >> 11) * 0x1.0p-53;
                    if (u < cpl.flip_prob)
                        l0 = !l0;
                }
            }
            din = din || l0;
            din_b = din_b || l1;
        }

        // Sample the stimulus track (piecewise constant, 0 mV before the
        // first point).
        double mv = 0.0;
        const auto& track = scenario.stimuli[i];
        auto& pos = stim_pos[i];
        while (pos < track.size() && track[pos].t <= t)
            ++pos;
        if (pos > 0)
            mv = track[pos - 1].mv;
        SensorBits sens = sensor_bits(mv);

        TickInputs in;
        in.din = din;
        in.din_b = din_b;
        in.s0 = sens.s0;
        in.s1 = sens.s1;
        in.power_good = caps[i].power_good;

        TickOutputs out = tick(states[i], in, setup.variant, rom);

        // Hold this lablet's line levels until its next tick. Actuation on
        // the DO electrode rides the same physical line as data-out.
        out_line0[i] = out.dout == Tri::Hi || out.frame[DO] == Tri::Hi;
        out_line1[i] = out.dout_b == Tri::Hi;
        frame_load[i] = 0;
        for (int e = 0; e < kElectrodes; ++e)
            if (out.frame[e] != Tri::Z)
                ++frame_load[i];

        TraceRecord rec;
        rec.time_s = t;
        rec.lablet = int(i);
        rec.mode = states[i].mode;
        rec.phase = states[i].phase;
        rec.frame = out.frame;
        rec.s0 = sens.s0;
        rec.s1 = sens.s1;
        rec.vdd_mv = caps[i].voltage * 1e3;
        rec.ecl = ecl_mask(out.frame, caps[i].voltage);
        std::string joined;
        for (const auto& e : out.events) {
            if (!joined.empty())
                joined += ';';
            joined += event_to_string(e);
        }
        rec.events = std::move(joined);
        result.records.push_back(std::move(rec));

        double t_next = double(tick_index[i] + 1) * result.periods[i];
        bool more = scenario.duration_ticks > 0
                        ? tick_index[i] < scenario.duration_ticks
                        : t_next <= scenario.duration_s;
        if (more)
            queue.push({t_next, i});
    }

    result.final_states = std::move(states);
    return result;
}

SimResult replicate_program_demo(const Scenario& scenario, const PatternRom& rom) {
    if (scenario.lablets.size() < 2)
        throw ScenarioError("replication needs at least two lablets");
    bool coupled = false;
    for (const auto& c : scenario.couplings)
        coupled = coupled || c.src >= 0;
    if (!coupled)
        throw ScenarioError("replication needs a lablet-to-lablet coupling");
    return run(scenario, rom);
}

std::string trace_csv(const SimResult& result) {
    std::string out =
        "time_s,lablet,mode,phase,a0,do,a2,di,a1,pwr2,s0,s1,vdd_mv,ecl_mask,event\n";
    for (const auto& r : result.records) {
        out += format_fixed(r.time_s, 6);
        out += ',' + std::to_string(r.lablet);
        out += ',';
        out += mode_name(r.mode);
        out += ',' + std::to_string(int(r.phase));
        std::string frame = r.frame.to_string();
        for (char c : frame) {
            out += ',';
            out += c;
        }
        out += ',' + std::to_string(int(r.s0));
        out += ',' + std::to_string(int(r.s1));
        out += ',' + format_fixed(r.vdd_mv, 3);
        out += ',';
        for (bool b : r.ecl)
            out += b ? '1' : '0';
        out += ',' + r.events + '\n';
    }
    return out;
}

std::vector<DivergenceEntry> divergence_summary(const SimResult& result) {
    const std::size_t n = result.periods.size();
    // Per-lablet record indices in time order.
    std::vector<std::vector<std::size_t>> by_lablet(n);
    for (std::size_t k = 0; k < result.records.size(); ++k)
        by_lablet[std::size_t(result.records[k].lablet)].push_back(k);

    std::vector<DivergenceEntry> entries;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            DivergenceEntry entry{int(a), int(b), -1};
            if (result.nominal_periods[a] != result.nominal_periods[b]) {
                entries.push_back(entry);  // different clock families: no grid
                continue;
            }
            double grid = result.nominal_periods[a];
            double t_end = 0.0;
            if (!by_lablet[a].empty())
                t_end = result.records[by_lablet[a].back()].time_s;
            if (!by_lablet[b].empty())
                t_end = std::min(t_end,
                                 result.records[by_lablet[b].back()].time_s);
            long samples = long(t_end / grid);
            std::size_t ia = 0, ib = 0;
            const ActuationFrame* fa = &result.initial_frames[a];
            const ActuationFrame* fb = &result.initial_frames[b];
            for (long s = 0; s < samples; ++s) {
                double ts = (double(s) + 0.5) * grid;
                while (ia < by_lablet[a].size() &&
                       result.records[by_lablet[a][ia]].time_s <= ts)
                    fa = &result.records[by_lablet[a][ia++]].frame;
                while (ib < by_lablet[b].size() &&
                       result.records[by_lablet[b][ib]].time_s <= ts)
                    fb = &result.records[by_lablet[b][ib++]].frame;
                if (!(*fa == *fb)) {
                    entry.sample = s;
                    break;
                }
            }
            entries.push_back(entry);
        }
    }
    return entries;
}

std::string divergence_csv(const std::vector<DivergenceEntry>& entries) {
    std::string out = "lablet_a,lablet_b,first_divergence_sample\n";
    for (const auto& e : entries) {
        out += std::to_string(e.a) + ',' + std::to_string(e.b) + ',';
        out += e.sample < 0 ? std::string("none") : std::to_string(e.sample);
        out += '\n';
    }
    return out;
}

}  // namespace lablet
