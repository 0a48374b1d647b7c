#include "lablet/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lablet/asm.hpp"
#include "lablet/sim.hpp"
#include "lablet/vcd.hpp"

namespace lablet {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

bool looks_like_hex_word(const std::string& s) {
    if (s.size() != 15)
        return false;
    for (char c : s)
        if (!std::isxdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

VariantParams load_variant(const std::string& spec) {
    for (const auto& name : variant_names())
        if (spec == name)
            return variant_preset(spec);
    return parse_variant_file(spec);
}

LabletProgram load_program(const std::string& spec, const VariantParams& variant,
                           const PatternRom& rom) {
    LabletProgram prog;
    if (looks_like_hex_word(spec)) {
        prog = decode(Word58::from_hex(spec));
    } else {
        prog = assemble(read_file(spec));
    }
    auto diags = validate(prog, variant, rom);
    for (const auto& d : diags)
        std::cerr << format_diagnostic(d) << "\n";
    if (has_errors(diags))
        throw std::runtime_error("program is invalid for variant " + variant.name);
    return prog;
}

std::vector<StimulusPoint> load_stimuli(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open stimuli file " + path);
    std::vector<StimulusPoint> points;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("stimuli line " + std::to_string(lineno) +
                                     ": expected time_s,mv");
        try {
            StimulusPoint pt{std::stod(line.substr(0, comma)),
                             std::stod(line.substr(comma + 1))};
            if (!points.empty() && pt.t <= points.back().t)
                throw std::runtime_error("stimuli line " + std::to_string(lineno) +
                                         ": times must be strictly increasing");
            points.push_back(pt);
        } catch (const std::invalid_argument&) {
            if (lineno == 1)
                continue;  // header row
            throw std::runtime_error("stimuli line " + std::to_string(lineno) +
                                     ": expected time_s,mv");
        }
    }
    return points;
}

int cmd_asm(const std::string& path, const std::string& variant_spec,
            const std::string& rom_path) {
    const PatternRom& rom = rom_path.empty() ? default_rom() : parse_rom_file(rom_path);
    LabletProgram prog = assemble(read_file(path));
    if (variant_spec != "none") {
        VariantParams variant = load_variant(variant_spec);
        auto diags = validate(prog, variant, rom);
        for (const auto& d : diags)
            std::cerr << format_diagnostic(d) << "\n";
        if (has_errors(diags))
            return 1;
    }
    std::cout << encode(prog).to_hex() << "\n";
    return 0;
}

int cmd_disasm(const std::string& hex) {
    std::cout << disassemble(decode(Word58::from_hex(hex)));
    return 0;
}

int cmd_run(const std::string& variant_spec, const std::string& program_spec,
            const std::string& stimuli_path, long ticks, std::uint64_t seed,
            double offset, const std::string& start, const std::string& out_dir,
            const std::string& rom_path, bool vcd) {
    if (ticks <= 0)
        throw std::runtime_error("--ticks must be positive");
    const PatternRom& rom = rom_path.empty() ? default_rom() : parse_rom_file(rom_path);
    Scenario sc;
    sc.seed = seed;
    sc.duration_ticks = ticks;
    LabletSetup setup;
    setup.variant = load_variant(variant_spec);
    if (!program_spec.empty())
        setup.program = load_program(program_spec, setup.variant, rom);
    setup.clock_offset = offset;
    setup.offset_explicit = true;
    if (start == "p1" || start == "p2" || start == "p3")
        setup.start_phase = std::uint8_t(start[1] - '0');
    else if (start != "idle")
        throw std::runtime_error("--start must be idle, p1, p2 or p3");
    sc.lablets.push_back(setup);
    sc.stimuli.emplace_back();
    if (!stimuli_path.empty())
        sc.stimuli[0] = load_stimuli(stimuli_path);

    SimResult result = run(sc, rom);
    std::filesystem::create_directories(out_dir);
    std::string csv = trace_csv(result);
    write_file(out_dir + "/trace.csv", csv);
    if (vcd) {
        std::istringstream in(csv);
        write_file(out_dir + "/trace.vcd", trace_to_vcd(parse_trace_csv(in)));
    }
    return 0;
}

int cmd_array(const std::string& scenario_path, const std::string& out_dir,
              const std::string& rom_path, bool vcd) {
    const PatternRom& rom = rom_path.empty() ? default_rom() : parse_rom_file(rom_path);
    Scenario sc = parse_scenario_file(scenario_path);
    SimResult result = run(sc, rom);
    std::filesystem::create_directories(out_dir);
    std::string csv = trace_csv(result);
    write_file(out_dir + "/trace.csv", csv);
    write_file(out_dir + "/divergence.csv", divergence_csv(divergence_summary(result)));
    // Per-lablet trace files alongside the combined one.
    for (std::size_t i = 0; i < sc.lablets.size(); ++i) {
        SimResult single;
        for (const auto& rec : result.records)
            if (rec.lablet == int(i))
                single.records.push_back(rec);
        write_file(out_dir + "/lablet" + std::to_string(i) + ".csv",
                   trace_csv(single));
    }
    if (vcd) {
        std::istringstream in(csv);
        write_file(out_dir + "/trace.vcd", trace_to_vcd(parse_trace_csv(in)));
    }
    return 0;
}

int cmd_export_vcd(const std::string& trace_path, std::string out_path) {
    auto rows = parse_trace_csv_file(trace_path);
    if (out_path.empty()) {
        out_path = trace_path;
        auto dot = out_path.rfind(".csv");
        if (dot == out_path.size() - 4)
            out_path.erase(dot);
        out_path += ".vcd";
    }
    write_file(out_path, trace_to_vcd(rows));
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"lablet controller emulator and multi-lablet simulator"};
    app.require_subcommand(1);

    std::string asm_path, asm_variant = "id0", asm_rom;
    auto* asm_cmd = app.add_subcommand("asm", "assemble a program to its hex word");
    asm_cmd->add_option("file", asm_path, "assembly source")->required();
    asm_cmd->add_option("--variant", asm_variant,
                        "preset, parameter file, or 'none' to skip checks");
    asm_cmd->add_option("--rom", asm_rom, "pattern rom override file");

    std::string disasm_hex;
    auto* disasm_cmd = app.add_subcommand("disasm", "disassemble a 15-digit hex word");
    disasm_cmd->add_option("hex", disasm_hex, "packed program word")->required();

    std::string run_variant = "id0", run_program, run_stimuli, run_out = "out",
                run_rom, run_start = "idle";
    long run_ticks = 1000;
    std::uint64_t run_seed = 0;
    double run_offset = 0.0;
    bool run_vcd = false;
    auto* run_cmd = app.add_subcommand("run", "simulate a single lablet");
    run_cmd->add_option("--variant", run_variant, "preset name or parameter file");
    run_cmd->add_option("--program", run_program,
                        "hex word or assembly path (default: variant program)");
    run_cmd->add_option("--stimuli", run_stimuli, "sensor stimulus csv (time_s,mv)");
    run_cmd->add_option("--ticks", run_ticks, "slow-clock ticks to simulate");
    run_cmd->add_option("--seed", run_seed, "scenario seed");
    run_cmd->add_option("--offset", run_offset, "fractional clock offset");
    run_cmd->add_option("--start", run_start,
                        "power-on mode: idle (default) or p1|p2|p3 to run at once");
    run_cmd->add_option("--out", run_out, "output directory");
    run_cmd->add_option("--rom", run_rom, "pattern rom override file");
    run_cmd->add_flag("--vcd", run_vcd, "also write trace.vcd");

    std::string array_scenario, array_out = "out", array_rom;
    bool array_vcd = false;
    auto* array_cmd = app.add_subcommand("array", "simulate a multi-lablet scenario");
    array_cmd->add_option("--scenario", array_scenario, "scenario file")->required();
    array_cmd->add_option("--out", array_out, "output directory");
    array_cmd->add_option("--rom", array_rom, "pattern rom override file");
    array_cmd->add_flag("--vcd", array_vcd, "also write trace.vcd");

    std::string vcd_trace, vcd_out;
    auto* vcd_cmd = app.add_subcommand("export-vcd", "convert a trace csv to vcd");
    vcd_cmd->add_option("trace", vcd_trace, "trace.csv path")->required();
    vcd_cmd->add_option("--out", vcd_out, "output path (default: trace.vcd)");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(asm_cmd))
            return cmd_asm(asm_path, asm_variant, asm_rom);
        if (app.got_subcommand(disasm_cmd))
            return cmd_disasm(disasm_hex);
        if (app.got_subcommand(run_cmd))
            return cmd_run(run_variant, run_program, run_stimuli, run_ticks, run_seed,
                           run_offset, run_start, run_out, run_rom, run_vcd);
        if (app.got_subcommand(array_cmd))
            return cmd_array(array_scenario, array_out, array_rom, array_vcd);
        if (app.got_subcommand(vcd_cmd))
            return cmd_export_vcd(vcd_trace, vcd_out);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace lablet
