#pragma once

#include <memalg/machine.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace memalg {

/// Parses the machine text format:
///
///     machine <name>
///     states s0 s1 ...
///     fn <fname>: s0->s1, s1->s0, ...
///     output <fname> ...
///
/// Every fn line must give exactly one clause per state. Throws ParseError.
Machine parse_machine(std::string_view text);

Machine read_machine_file(const std::filesystem::path & path);

/// Canonical rendering; parse_machine(format_machine(m)) == m.
std::string format_machine(const Machine & m);

/// Reads a whole file, throwing InvalidArgument if it cannot be opened.
std::string read_text_file(const std::filesystem::path & path);

} // namespace memalg
