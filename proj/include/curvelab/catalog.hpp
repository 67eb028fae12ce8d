#pragma once

#include <string_view>

#include "curvelab/curve.hpp"
#include "curvelab/descriptor.hpp"

namespace curvelab {

/// Rebuilds a curve from its descriptor. Accepts the built-in ids plus
///   constructed(sphere=<curve>,a=,t0=,profile=sech|sine)
///   synthesized(profile=<profile>,eps=,s0=,s1=,ds=[,reproject=1])
///   translated(curve=<curve>,d0=,d1=,d2=,d3=)
/// and an optional lo/hi domain override on any of them.
CurveSpec resolve_curve(const Descriptor& d);
CurveSpec resolve_curve(std::string_view text);

}  // namespace curvelab
