#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lablet/sim.hpp"

namespace lablet {

// Rows of a trace CSV as written by trace_csv(); enough of each record to
// re-emit waveforms.
struct TraceRow {
    double time_s = 0.0;
    int lablet = 0;
    Mode mode = Mode::Idle;
    int phase = 0;
    ActuationFrame frame;
    bool s0 = false;
    bool s1 = false;
};

std::vector<TraceRow> parse_trace_csv(std::istream& in);
std::vector<TraceRow> parse_trace_csv_file(const std::string& path);

// Value-change dump at 1 ms resolution: per lablet the six electrode drives,
// the two sensor bits, and the 2-bit mode vector.
std::string trace_to_vcd(const std::vector<TraceRow>& rows);

}  // namespace lablet
