#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "osort/core.hpp"

namespace osort {

// A finite item stream plus where it came from.
struct InputSequence {
  ItemKind kind = ItemKind::Real;
  std::size_t dim = 1;  // only meaningful for points
  std::vector<Item> items;
  std::string adversary;
  std::uint64_t seed = 0;

  std::size_t size() const { return items.size(); }
};

// Checks the per-sequence invariants (single kind, fixed dimension, finite
// values). Throws MixedItemKinds or DomainViolation.
void validate(const InputSequence& seq);

// Trace files: a header line `kind=real|point:<d>|label n=<count>` followed
// by one item per line.
void write_trace(std::ostream& out, const InputSequence& seq);
InputSequence read_trace(std::istream& in);

void write_trace_file(const std::string& path, const InputSequence& seq);
InputSequence read_trace_file(const std::string& path);

}  // namespace osort
