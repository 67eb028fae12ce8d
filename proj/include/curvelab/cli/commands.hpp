#pragma once

#include <iosfwd>
#include <string>

#include "curvelab/cli/config.hpp"
#include "curvelab/errors.hpp"

namespace curvelab::cli {

/// InvalidArgument -> 64, FrameDriftExceeded -> 1, everything else -> 2.
int exit_code(ErrorKind kind);

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_frenet(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_rectify_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_synthesize(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, bool inject_sign_flip, std::ostream& out, std::ostream& err);

/// Full command line: `curvelab <command> [options]`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curvelab::cli
