#pragma once

#include <string>
#include <vector>

#include "lenc/netlist.hpp"

namespace lenc {

/// Returns `base` extended until no existing net of any listed netlist starts
/// with it, so that prefixed copies cannot collide.
std::string free_prefix(std::string base, const std::vector<const Netlist *> &netlists);

/// Appends the gates of `src` to `dst`, renaming every gate net to
/// `prefix + name`. Primary inputs are shared by name and must already be
/// declared in `dst`. Returns the net in `dst` carrying each of src's POs, in
/// src output order.
std::vector<std::string> append_copy(RawNetlist &dst, const Netlist &src, const std::string &prefix);

/// Renames a net everywhere it appears (driver and readers, not the PO list).
void rename_net(RawNetlist &raw, const std::string &from, const std::string &to);

/// Throws std::invalid_argument unless both netlists declare the same PIs and
/// POs in the same order.
void require_same_interface(const Netlist &a, const Netlist &b, const char *what);

}  // namespace lenc
