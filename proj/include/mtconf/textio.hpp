// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mtconf {

/// True iff the byte sequence is well-formed UTF-8 (rejects overlong forms,
/// surrogates and out-of-range code points).
bool valid_utf8(std::string_view bytes);

/// Splits on runs of ASCII whitespace; never returns empty tokens.
std::vector<std::string> split_tokens(std::string_view line);

/// Reads a whole text file, normalizing CRLF to LF. Throws Error(io) when the
/// file cannot be opened and Error(format) on invalid UTF-8.
std::string read_text_file(const std::string& path);

/// Splits file contents into lines. A trailing newline does not produce an
/// extra empty line.
std::vector<std::string> split_lines(std::string_view text);

/// Writes text to a file, throwing Error(io) on failure.
void write_text_file(const std::string& path, std::string_view text);

/// Fixed-format double rendering ("%.12g"); used wherever output files must be
/// byte-reproducible across runs.
std::string format_double(double value);

/// Lossless double rendering ("%.17g") for round-trip critical files.
std::string format_double_exact(double value);

/// Strict full-string double parse; returns false on trailing garbage.
bool parse_double(std::string_view text, double& out);

/// Strict full-string non-negative integer parse.
bool parse_long(std::string_view text, long& out);

}  // namespace mtconf
