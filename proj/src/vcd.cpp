#include "lablet/vcd.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace lablet {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

Mode mode_from_name(const std::string& name) {
    for (int m = 0; m < 4; ++m)
        if (name == mode_name(Mode(m)))
            return Mode(m);
    throw CodecError("unknown mode '" + name + "' in trace");
}

char tri_to_vcd(Tri t) {
    switch (t) {
        case Tri::Lo: return '0';
        case Tri::Hi: return '1';
        case Tri::Z: return 'z';
    }
    return 'x';
}

// Compact printable VCD identifier for signal index k.
std::string vcd_id(int k) {
    std::string id;
    do {
        id += char('!' + k % 94);
        k /= 94;
    } while (k > 0);
    return id;
}

}  // namespace

std::vector<TraceRow> parse_trace_csv(std::istream& in) {
    std::vector<TraceRow> rows;
    std::string line;
    bool first = true;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (first) {
            first = false;
            if (line.rfind("time_s,", 0) == 0)
                continue;  // header
        }
        auto fields = split_csv(line);
        if (fields.size() < 13)
            throw CodecError("trace line " + std::to_string(lineno) +
                             ": expected at least 13 columns");
        TraceRow row;
        try {
            row.time_s = std::stod(fields[0]);
            row.lablet = std::stoi(fields[1]);
            row.mode = mode_from_name(fields[2]);
            row.phase = std::stoi(fields[3]);
            std::string frame;
            for (int e = 0; e < kElectrodes; ++e)
                frame += fields[std::size_t(4 + e)];
            row.frame = ActuationFrame::from_string(frame);
            row.s0 = std::stoi(fields[10]) != 0;
            row.s1 = std::stoi(fields[11]) != 0;
        } catch (const CodecError&) {
            throw;
        } catch (const std::exception&) {
            throw CodecError("trace line " + std::to_string(lineno) +
                             ": malformed field");
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<TraceRow> parse_trace_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw CodecError("cannot open trace file " + path);
    return parse_trace_csv(in);
}

std::string trace_to_vcd(const std::vector<TraceRow>& rows) {
    int max_lablet = -1;
    for (const auto& r : rows)
        max_lablet = std::max(max_lablet, r.lablet);
    int n = max_lablet + 1;

    // Signal layout per lablet: 6 electrodes, s0, s1, mode.
    constexpr int kPerLablet = kElectrodes + 3;
    std::ostringstream out;
    out << "$timescale 1 ms $end\n";
    for (int i = 0; i < n; ++i) {
        out << "$scope module lablet" << i << " $end\n";
        for (int e = 0; e < kElectrodes; ++e) {
            std::string name(electrode_name(e));
            for (auto& c : name)
                c = char(std::tolower(static_cast<unsigned char>(c)));
            out << "$var wire 1 " << vcd_id(i * kPerLablet + e) << " " << name
                << " $end\n";
        }
        out << "$var wire 1 " << vcd_id(i * kPerLablet + kElectrodes) << " s0 $end\n";
        out << "$var wire 1 " << vcd_id(i * kPerLablet + kElectrodes + 1)
            << " s1 $end\n";
        out << "$var wire 2 " << vcd_id(i * kPerLablet + kElectrodes + 2)
            << " mode $end\n";
    }
    out << "$enddefinitions $end\n";
    if (rows.empty())
        return out.str();

    std::vector<std::string> last(std::size_t(n) * kPerLablet);
    long current_ms = -1;
    std::string pending;
    auto flush = [&](long ms) {
        if (!pending.empty()) {
            out << "#" << current_ms << "\n" << pending;
            pending.clear();
        }
        current_ms = ms;
    };
    auto emit = [&](int sig, const std::string& value) {
        if (last[std::size_t(sig)] == value)
            return;
        last[std::size_t(sig)] = value;
        pending += value + "\n";
    };
    for (const auto& r : rows) {
        long ms = std::lround(r.time_s * 1000.0);
        if (ms != current_ms)
            flush(ms);
        int base = r.lablet * kPerLablet;
        for (int e = 0; e < kElectrodes; ++e)
            emit(base + e, std::string(1, tri_to_vcd(r.frame[e])) +
                               vcd_id(base + e));
        emit(base + kElectrodes,
             std::string(r.s0 ? "1" : "0") + vcd_id(base + kElectrodes));
        emit(base + kElectrodes + 1,
             std::string(r.s1 ? "1" : "0") + vcd_id(base + kElectrodes + 1));
        int m = int(r.mode);
        std::string mode_bits = std::string("b") + char('0' + ((m >> 1) & 1)) +
                                char('0' + (m & 1)) + " " +
                                vcd_id(base + kElectrodes + 2);
        emit(base + kElectrodes + 2, mode_bits);
    }
    flush(current_ms);
    return out.str();
}

}  // namespace lablet
