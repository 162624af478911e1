#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "lenc/netlist.hpp"

namespace lenc {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string &what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the ISCAS BENCH dialect:
///
///   # comment
///   INPUT(a)
///   OUTPUT(y)
///   y = NAND(a, b)
///
/// NOT/INV and BUF/BUFF are synonyms. AND/NAND/OR/NOR/XOR/XNOR with more than
/// two inputs are decomposed into left-deep two-input trees. A repeated
/// OUTPUT declaration of the same net is ignored.
///
/// Throws ParseError for syntax, arity, duplicate, undefined-net and cycle
/// errors.
Netlist parse_bench(std::string_view text, std::string name = "top");
Netlist read_bench_file(const std::filesystem::path &path);

/// Emits NOT and BUFF spellings. Throws NetlistError if a MUX2 gate is present.
std::string write_bench(const Netlist &n);
void write_bench_file(const Netlist &n, const std::filesystem::path &path);

}  // namespace lenc
