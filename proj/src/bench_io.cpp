#include "lenc/bench_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lenc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::toupper(static_cast<unsigned char>(a[i])) != std::toupper(static_cast<unsigned char>(b[i]))) return false;
  return true;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

struct ParsedGate {
  std::string output;
  std::string kind_text;
  GateKind kind;
  std::vector<std::string> inputs;
  std::size_t line;
};

/// Splits "KIND(a, b, c)" into the keyword and the argument list.
std::pair<std::string_view, std::vector<std::string>> split_call(std::string_view text, std::size_t line) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
      !trim(text.substr(close + 1)).empty())
    throw ParseError(line, "expected KIND(args) in '" + std::string(text) + "'");
  std::string_view keyword = trim(text.substr(0, open));
  std::string_view body = trim(text.substr(open + 1, close - open - 1));
  std::vector<std::string> args;
  if (!body.empty()) {
    std::size_t start = 0;
    while (true) {
      auto comma = body.find(',', start);
      std::string_view arg = trim(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start));
      if (!is_identifier(arg)) throw ParseError(line, "invalid net name '" + std::string(arg) + "'");
      args.emplace_back(arg);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return {keyword, args};
}

bool decomposable(GateKind k) {
  return k == GateKind::AND || k == GateKind::NAND || k == GateKind::OR || k == GateKind::NOR || k == GateKind::XOR ||
         k == GateKind::XNOR;
}

/// The associative core used for the inner nodes of a wide gate.
GateKind inner_kind(GateKind k) {
  switch (k) {
    case GateKind::NAND: return GateKind::AND;
    case GateKind::NOR: return GateKind::OR;
    case GateKind::XNOR: return GateKind::XOR;
    default: return k;
  }
}

}  // namespace

Netlist parse_bench(std::string_view text, std::string name) {
  RawNetlist raw;
  raw.name = std::move(name);
  std::vector<ParsedGate> parsed;
  std::unordered_map<std::string, std::size_t> defined_at;  // net -> line
  std::unordered_map<std::string, std::size_t> output_line;

  auto define = [&](const std::string &net, std::size_t line) {
    auto [it, fresh] = defined_at.emplace(net, line);
    if (!fresh)
      throw ParseError(line, "duplicate definition of net '" + net + "' (first defined on line " +
                                 std::to_string(it->second) + ")");
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (auto eq = line.find('='); eq != std::string_view::npos) {
      std::string_view lhs = trim(line.substr(0, eq));
      if (!is_identifier(lhs)) throw ParseError(line_no, "invalid net name '" + std::string(lhs) + "'");
      auto [keyword, args] = split_call(trim(line.substr(eq + 1)), line_no);
      if (iequals(keyword, "DFF")) throw ParseError(line_no, "sequential element DFF is not supported");
      auto kind = gate_kind_from_string(keyword);
      if (!kind) throw ParseError(line_no, "unknown gate kind '" + std::string(keyword) + "'");
      const int need = arity(*kind);
      const bool wide_ok = decomposable(*kind) && args.size() > 2;
      if (static_cast<int>(args.size()) != need && !wide_ok) {
        std::ostringstream os;
        os << to_string(*kind) << " expects " << need << " input" << (need == 1 ? "" : "s") << ", got "
           << args.size();
        throw ParseError(line_no, os.str());
      }
      define(std::string(lhs), line_no);
      parsed.push_back({std::string(lhs), std::string(keyword), *kind, std::move(args), line_no});
      continue;
    }

    auto [keyword, args] = split_call(line, line_no);
    if (args.size() != 1) throw ParseError(line_no, "expected exactly one net in " + std::string(keyword));
    if (iequals(keyword, "INPUT")) {
      define(args[0], line_no);
      raw.inputs.push_back(args[0]);
    } else if (iequals(keyword, "OUTPUT")) {
      if (output_line.emplace(args[0], line_no).second) raw.outputs.push_back(args[0]);
    } else {
      throw ParseError(line_no, "unknown declaration '" + std::string(keyword) + "'");
    }
  }

  for (const auto &g : parsed)
    for (const auto &in : g.inputs)
      if (!defined_at.contains(in)) throw ParseError(g.line, "undefined net '" + in + "'");
  for (const auto &po : raw.outputs)
    if (!defined_at.contains(po)) throw ParseError(output_line[po], "output '" + po + "' is never driven");

  // Decompose wide gates. Fresh names must not collide with any file net.
  auto fresh_name = [&](const std::string &base, std::size_t k) {
    std::string candidate = base + "_d" + std::to_string(k);
    while (defined_at.contains(candidate)) candidate += "_";
    defined_at.emplace(candidate, 0);
    return candidate;
  };
  for (auto &g : parsed) {
    if (static_cast<int>(g.inputs.size()) == arity(g.kind)) {
      raw.gates.push_back({std::move(g.output), g.kind, std::move(g.inputs)});
      continue;
    }
    std::string acc = g.inputs[0];
    for (std::size_t k = 1; k + 1 < g.inputs.size(); ++k) {
      std::string t = fresh_name(g.output, k);
      raw.gates.push_back({t, inner_kind(g.kind), {acc, g.inputs[k]}});
      acc = std::move(t);
    }
    raw.gates.push_back({std::move(g.output), g.kind, {acc, g.inputs.back()}});
  }

  auto diags = validate(raw);
  if (!diags.empty()) {
    std::size_t line = 0;
    for (const auto &g : parsed)
      if (diags.front().message.find("'" + g.output + "'") != std::string::npos) line = g.line;
    throw ParseError(line, diags.front().message);
  }
  return Netlist::build(std::move(raw));
}

Netlist read_bench_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bench(ss.str(), path.stem().string());
}

std::string write_bench(const Netlist &n) {
  std::ostringstream os;
  for (const auto &in : n.inputs()) os << "INPUT(" << in << ")\n";
  os << "\n";
  for (const auto &out : n.outputs()) os << "OUTPUT(" << out << ")\n";
  os << "\n";
  for (const auto &g : n.gates()) {
    if (g.kind == GateKind::MUX2)
      throw NetlistError("cannot write MUX2 gate '" + g.output + "' as BENCH; lower it first");
    os << g.output << " = " << to_string(g.kind) << "(";
    for (std::size_t i = 0; i < g.inputs.size(); ++i) os << (i ? ", " : "") << g.inputs[i];
    os << ")\n";
  }
  return os.str();
}

void write_bench_file(const Netlist &n, const std::filesystem::path &path) {
  std::string text = write_bench(n);
  std::ofstream out(path);
  if (!out) throw NetlistError("cannot write " + path.string());
  out << text;
}

}  // namespace lenc
