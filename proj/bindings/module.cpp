#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lablet/asm.hpp"
#include "lablet/sim.hpp"
#include "lablet/vcd.hpp"

namespace py = pybind11;
using namespace lablet;

namespace {

std::string severity_name(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

// Single stepped controller for interactive use.
class LabletSim {
  public:
    explicit LabletSim(const std::string& variant)
        : variant_(variant_preset(variant)), state_(reset(variant_)) {}

    py::tuple step(bool din, bool din_b, bool s0, bool s1, bool power_good) {
        TickInputs in{din, din_b, s0, s1, power_good};
        TickOutputs out = tick(state_, in, variant_, default_rom());
        std::vector<std::string> events;
        for (const auto& e : out.events)
            events.push_back(event_to_string(e));
        std::string dout = out.dout == Tri::Z ? "Z" : (out.dout == Tri::Hi ? "1" : "0");
        return py::make_tuple(out.frame.to_string(), dout, events);
    }

    std::string mode() const { return std::string(mode_name(state_.mode)); }
    int phase() const { return state_.phase; }
    LabletProgram program() const { return state_.prog; }
    void load_program(const LabletProgram& p) { state_.prog = p; }

    std::vector<std::string> command(const std::string& opcode, int target_id) {
        std::vector<Event> events;
        for (int op = 0; op <= int(Opcode::Stop); ++op) {
            if (opcode == opcode_name(Opcode(op))) {
                handle_command(state_, Command{Opcode(op), std::uint8_t(target_id)},
                               variant_, events);
                std::vector<std::string> out;
                for (const auto& e : events)
                    out.push_back(event_to_string(e));
                return out;
            }
        }
        throw std::invalid_argument("unknown opcode '" + opcode + "'");
    }

  private:
    VariantParams variant_;
    LabletState state_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lablet controller emulator: program codec, pattern engine, "
              "pulse-coded link and multi-lablet simulation";

    py::class_<ConditionAction>(m, "ConditionAction")
        .def(py::init<>())
        .def_readwrite("next_phase", &ConditionAction::next_phase)
        .def_readwrite("send", &ConditionAction::send)
        .def("__eq__", [](const ConditionAction& a, const ConditionAction& b) {
            return a == b;
        });

    py::class_<PhaseConfig>(m, "PhaseConfig")
        .def(py::init<>())
        .def_readwrite("ti", &PhaseConfig::ti)
        .def_readwrite("ec", &PhaseConfig::ec)
        .def_readwrite("sc", &PhaseConfig::sc)
        .def_readwrite("ep", &PhaseConfig::ep)
        .def_readwrite("ca", &PhaseConfig::ca)
        .def_readwrite("pa", &PhaseConfig::pa)
        .def_readwrite("ne", &PhaseConfig::ne)
        .def_readwrite("se", &PhaseConfig::se)
        .def("__eq__", [](const PhaseConfig& a, const PhaseConfig& b) { return a == b; });

    py::class_<LabletProgram>(m, "LabletProgram")
        .def(py::init<>())
        .def_readwrite("rep", &LabletProgram::rep)
        .def_readwrite("dat", &LabletProgram::dat)
        .def_readwrite("tim", &LabletProgram::tim)
        .def_property_readonly(
            "phases", [](LabletProgram& p) { return py::make_tuple(&p.phases[0], &p.phases[1], &p.phases[2]); },
            py::return_value_policy::reference_internal)
        .def("__eq__",
             [](const LabletProgram& a, const LabletProgram& b) { return a == b; });

    m.def("encode_hex", [](const LabletProgram& p) { return encode(p).to_hex(); },
          "Pack a program into its 15-digit hex word");
    m.def("decode_hex",
          [](const std::string& hex) { return decode(Word58::from_hex(hex)); },
          "Unpack a 15-digit hex word");
    m.def("encode_bits_string",
          [](const LabletProgram& p) { return encode(p).to_bit_string(); });
    m.def("rep_count", &rep_count);
    m.def("step_multiplier", &step_multiplier);
    m.def("condition_name",
          [](std::uint8_t se) { return std::string(condition_name(se)); });

    m.def("assemble", &assemble, "Parse assembly text into a program");
    m.def("disassemble", &disassemble, "Canonical annotated assembly text");
    m.def("validate",
          [](const LabletProgram& p, const std::string& variant) {
              std::vector<std::tuple<std::string, std::string, std::string>> out;
              for (const auto& d : validate(p, variant_preset(variant)))
                  out.emplace_back(severity_name(d.severity), d.path, d.message);
              return out;
          },
          "Diagnostics as (severity, path, message) tuples");

    m.def("variant_names", [] { return variant_names(); });
    m.def("pair_catalogue", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto [a, b] : pair_catalogue())
            out.emplace_back(std::string(electrode_name(a)),
                             std::string(electrode_name(b)));
        return out;
    });
    m.def("sequence_select", [](int pa, int sc) {
        std::vector<int> out;
        for (const auto& sel : sequence_select(pa, sc, default_rom()))
            out.push_back(sel.po);
        return out;
    });
    m.def("frame_at",
          [](const PhaseConfig& phase, int idx) {
              return frame_at(phase, idx, default_rom()).to_string();
          },
          "Six-character drive string over {0,1,Z} in order A0,DO,A2,DI,A1,PWR2");
    m.def("eval_condition", &eval_condition, py::arg("se"), py::arg("s0"),
          py::arg("s1"), py::arg("trigd"), py::arg("comd"), py::arg("mem_s0_p"),
          py::arg("mem_s1_p"), py::arg("longcond"));
    m.def("sensor_bits", [](double mv) {
        auto s = sensor_bits(mv);
        return py::make_tuple(s.s0, s.s1);
    });
    m.def("mv_per_ph", &mv_per_ph);

    py::class_<LabletSim>(m, "Lablet")
        .def(py::init<const std::string&>(), py::arg("variant") = "id0")
        .def("tick", &LabletSim::step, py::arg("din") = false,
             py::arg("din_b") = false, py::arg("s0") = false, py::arg("s1") = false,
             py::arg("power_good") = true,
             "Advance one slow-clock tick; returns (frame, dout, events)")
        .def_property_readonly("mode", &LabletSim::mode)
        .def_property_readonly("phase", &LabletSim::phase)
        .def_property_readonly("program", &LabletSim::program)
        .def("load_program", &LabletSim::load_program)
        .def("command", &LabletSim::command, py::arg("opcode"),
             py::arg("target_id") = 7,
             "Apply a decoded command directly (bypasses the serial link)");

    m.def("run_scenario",
          [](const std::string& text) {
              std::istringstream in(text);
              return trace_csv(run(parse_scenario(in)));
          },
          "Run a scenario description and return the trace CSV");
    m.def("divergence_csv_of",
          [](const std::string& text) {
              std::istringstream in(text);
              return divergence_csv(divergence_summary(run(parse_scenario(in))));
          },
          "Run a scenario and return the pairwise divergence summary CSV");
    m.def("trace_to_vcd", [](const std::string& csv) {
        std::istringstream in(csv);
        return trace_to_vcd(parse_trace_csv(in));
    });
}
