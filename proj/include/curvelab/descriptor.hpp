#pragma once

// Textual curve descriptors such as
//   hyperbolic_clelia(lo=0.1,hi=0.4)
//   constructed(sphere=hyperbolic_clelia,a=1,t0=0.3)
// A descriptor is a name with optional keyed arguments; each argument is a
// number or a nested descriptor. Every curve the toolkit can build carries
// one, which is how constructed and synthesized curves are re-addressed
// from later command invocations.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace curvelab {

struct Descriptor {
  std::string name;
  std::vector<std::pair<std::string, double>> numbers;
  std::vector<std::string> child_keys;
  std::vector<Descriptor> children;

  std::optional<double> number(std::string_view key) const;
  const Descriptor* child(std::string_view key) const;
  void set_number(const std::string& key, double value);
  void set_child(const std::string& key, Descriptor value);

  /// Canonical text: children first, then numbers, each in insertion order.
  std::string str() const;
};

/// Throws InvalidArgument on malformed text.
Descriptor parse_descriptor(std::string_view text);

}  // namespace curvelab
