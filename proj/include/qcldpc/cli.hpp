#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qcldpc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;

/// Entry point of the decode-bench tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qcldpc
