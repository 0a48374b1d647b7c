#include "lablet/asm.hpp"

#include <charconv>
#include <sstream>

namespace lablet {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#')
            break;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), int(start) + 1});
    }
    return out;
}

int parse_int(const Token& tok, const std::string& text, int line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw AsmError(line, tok.column, "expected a number, got '" + text + "'");
    return value;
}

struct KeyValue {
    std::string key;
    int value;
    Token tok;
};

KeyValue parse_kv(const Token& tok, int line) {
    auto eq = tok.text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= tok.text.size())
        throw AsmError(line, tok.column, "expected key=value, got '" + tok.text + "'");
    return {tok.text.substr(0, eq), parse_int(tok, tok.text.substr(eq + 1), line), tok};
}

void check_range(const KeyValue& kv, int line, int lo, int hi) {
    if (kv.value < lo || kv.value > hi)
        throw AsmError(line, kv.tok.column,
                       kv.key + "=" + std::to_string(kv.value) + " out of range " +
                           std::to_string(lo) + ".." + std::to_string(hi));
}

}  // namespace

bool has_errors(const Diagnostics& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error)
            return true;
    return false;
}

std::string format_diagnostic(const Diagnostic& d) {
    return std::string(d.severity == Severity::Error ? "error" : "warning") + ": " +
           d.path + ": " + d.message;
}

AsmError::AsmError(int line_, int column_, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line_) + ":" +
                         std::to_string(column_) + ": " + msg),
      line(line_),
      column(column_) {}

LabletProgram assemble(const std::string& text) {
    LabletProgram program;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (tokens.empty())
            continue;
        if (tokens[0].text == "global") {
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                auto kv = parse_kv(tokens[i], lineno);
                if (kv.key == "rep") {
                    int sel = -1;
                    for (int s = 0; s < 4; ++s)
                        if (rep_count(std::uint8_t(s)) == kv.value)
                            sel = s;
                    if (sel < 0)
                        throw AsmError(lineno, kv.tok.column,
                                       "rep must be one of 1, 4, 16, 64");
                    program.rep = std::uint8_t(sel);
                } else if (kv.key == "dat") {
                    check_range(kv, lineno, 0, 1);
                    program.dat = std::uint8_t(kv.value);
                } else if (kv.key == "tim") {
                    check_range(kv, lineno, 0, 1);
                    program.tim = std::uint8_t(kv.value);
                } else {
                    throw AsmError(lineno, kv.tok.column,
                                   "unknown global keyword '" + kv.key + "'");
                }
            }
        } else if (tokens[0].text == "phase") {
            if (tokens.size() < 2)
                throw AsmError(lineno, tokens[0].column, "phase number missing");
            std::string num = tokens[1].text;
            bool colon = !num.empty() && num.back() == ':';
            if (colon)
                num.pop_back();
            int idx = parse_int(tokens[1], num, lineno);
            if (idx < 1 || idx > 3)
                throw AsmError(lineno, tokens[1].column, "phase number must be 1..3");
            PhaseConfig& ph = program.phases[std::size_t(idx - 1)];
            std::size_t first = 2;
            if (!colon) {
                if (first >= tokens.size() || tokens[first].text != ":")
                    throw AsmError(lineno, tokens[1].column,
                                   "expected ':' after phase number");
                ++first;
            }
            for (std::size_t i = first; i < tokens.size(); ++i) {
                auto kv = parse_kv(tokens[i], lineno);
                if (kv.key == "ti") {
                    check_range(kv, lineno, 0, 1);
                    ph.ti = std::uint8_t(kv.value);
                } else if (kv.key == "ec") {
                    check_range(kv, lineno, 0, 1);
                    ph.ec = std::uint8_t(kv.value);
                } else if (kv.key == "sc") {
                    check_range(kv, lineno, 0, 3);
                    ph.sc = std::uint8_t(kv.value);
                } else if (kv.key == "ep") {
                    check_range(kv, lineno, 0, 7);
                    ph.ep = std::uint8_t(kv.value);
                } else if (kv.key == "pa") {
                    check_range(kv, lineno, 0, 7);
                    ph.pa = std::uint8_t(kv.value);
                } else if (kv.key == "ne") {
                    check_range(kv, lineno, 0, 1);
                    ph.ne = std::uint8_t(kv.value);
                } else if (kv.key == "se") {
                    check_range(kv, lineno, 0, 15);
                    ph.se = std::uint8_t(kv.value);
                } else if (kv.key == "next") {
                    check_range(kv, lineno, 0, 3);
                    ph.ca.next_phase = std::uint8_t(kv.value);
                } else if (kv.key == "send") {
                    check_range(kv, lineno, 0, 1);
                    ph.ca.send = std::uint8_t(kv.value);
                } else {
                    throw AsmError(lineno, kv.tok.column,
                                   "unknown phase keyword '" + kv.key + "'");
                }
            }
        } else {
            throw AsmError(lineno, tokens[0].column,
                           "expected 'global' or 'phase', got '" + tokens[0].text + "'");
        }
    }
    return program;
}

std::string disassemble(const LabletProgram& program) {
    std::ostringstream out;
    out << "global rep=" << rep_count(program.rep) << " dat=" << int(program.dat)
        << " tim=" << int(program.tim) << "\n";
    for (int i = 0; i < 3; ++i) {
        const auto& ph = program.phases[std::size_t(i)];
        out << "phase " << (i + 1) << ": ti=" << int(ph.ti) << " ec=" << int(ph.ec)
            << " sc=" << int(ph.sc) << " ep=" << int(ph.ep) << " pa=" << int(ph.pa)
            << " ne=" << int(ph.ne) << " se=" << int(ph.se)
            << " next=" << int(ph.ca.next_phase) << " send=" << int(ph.ca.send)
            << "  # " << condition_name(ph.se) << "\n";
    }
    return out.str();
}

Diagnostics validate(const LabletProgram& program, const VariantParams& variant,
                     const PatternRom& rom) {
    Diagnostics diags;
    for (int i = 0; i < 3; ++i) {
        const auto& ph = program.phases[std::size_t(i)];
        std::string base = "phases[" + std::to_string(i) + "]";
        if (!variant.longcond && ph.se > 7)
            diags.push_back({Severity::Error, base + ".se",
                             "condition code " + std::to_string(ph.se) +
                                 " needs LONGCOND, which " + variant.name +
                                 " does not enable (codes 0-7 only)"});
        // Flag slots where inversion would ask for PWR2 high.
        for (int idx = 0; idx < kSlots; ++idx) {
            auto sel = sequence_select(ph.pa, ph.sc, rom)[std::size_t(idx)];
            if (sel.po == 0)
                continue;
            bool invert = (ph.ne != 0) != (sel.po < 0);
            if (!invert)
                continue;
            int mag = sel.po < 0 ? -sel.po : sel.po;
            if (rom.pattern(mag, ph.ep, ph.ec)[PWR2] == Tri::Lo) {
                diags.push_back(
                    {Severity::Warning, base,
                     "inverted pattern at slot " + std::to_string(idx) +
                         " would drive PWR2 high; the engine substitutes Z"});
                break;
            }
        }
    }
    return diags;
}

}  // namespace lablet
