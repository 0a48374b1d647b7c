#pragma once

#include <string>
#include <vector>

#include "lablet/pattern.hpp"
#include "lablet/program.hpp"
#include "lablet/variant.hpp"

namespace lablet {

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity;
    std::string path;  // field path, e.g. "phases[0].se"
    std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_errors(const Diagnostics& diags);
std::string format_diagnostic(const Diagnostic& d);

class AsmError : public std::runtime_error {
  public:
    AsmError(int line, int column, const std::string& msg);
    int line;
    int column;
};

// Parses assembly text (see docs/formats.md). Unspecified fields stay zero.
// Range and syntax problems throw AsmError with position; variant-dependent
// restrictions are left to validate().
LabletProgram assemble(const std::string& text);

// Canonical text for a program; stable, and assemble(disassemble(p)) == p.
// Condition codes are annotated with their description in a trailing comment.
std::string disassemble(const LabletProgram& program);

// Variant-aware checks: condition codes above 7 without LONGCOND are errors;
// phases whose resolved pattern sequence would need PWR2 driven high get a
// warning (the engine substitutes Z there).
Diagnostics validate(const LabletProgram& program, const VariantParams& variant,
                     const PatternRom& rom = default_rom());

}  // namespace lablet
