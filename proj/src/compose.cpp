#include "lenc/compose.hpp"

#include <stdexcept>
#include <unordered_map>

namespace lenc {

std::string free_prefix(std::string base, const std::vector<const Netlist *> &netlists) {
  auto clashes = [&](const std::string &p) {
    for (const Netlist *n : netlists) {
      for (const auto &in : n->inputs())
        if (in.starts_with(p)) return true;
      for (const auto &g : n->gates())
        if (g.output.starts_with(p)) return true;
    }
    return false;
  };
  while (clashes(base + "_")) base += "x";
  return base + "_";
}

std::vector<std::string> append_copy(RawNetlist &dst, const Netlist &src, const std::string &prefix) {
  std::unordered_map<std::string, std::string> name;
  for (const auto &in : src.inputs()) name.emplace(in, in);
  for (const auto &g : src.gates()) name.emplace(g.output, prefix + g.output);
  for (const auto &g : src.gates()) {
    Gate copy{name.at(g.output), g.kind, {}};
    for (const auto &in : g.inputs) copy.inputs.push_back(name.at(in));
    dst.gates.push_back(std::move(copy));
  }
  std::vector<std::string> outs;
  for (const auto &po : src.outputs()) outs.push_back(name.at(po));
  return outs;
}

void rename_net(RawNetlist &raw, const std::string &from, const std::string &to) {
  for (auto &in : raw.inputs)
    if (in == from) in = to;
  for (auto &g : raw.gates) {
    if (g.output == from) g.output = to;
    for (auto &in : g.inputs)
      if (in == from) in = to;
  }
}

void require_same_interface(const Netlist &a, const Netlist &b, const char *what) {
  if (a.inputs() != b.inputs()) throw std::invalid_argument(std::string(what) + ": primary inputs differ");
  if (a.outputs() != b.outputs()) throw std::invalid_argument(std::string(what) + ": primary outputs differ");
}

}  // namespace lenc
