#pragma once

#include <iosfwd>

namespace ocraug {

/// Entry point of the `ocraug` executable. Exit codes: 0 success, 1 bad
/// input (arguments, config, manifest, images), 2 internal failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ocraug
