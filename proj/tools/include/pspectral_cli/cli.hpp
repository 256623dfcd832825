#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace pspectral::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line. Output goes to `out` unless --output is given;
/// diagnostics go to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Worker count from PSPECTRAL_THREADS, else the hardware concurrency.
std::size_t thread_limit();

/// Calls body(i) for i in [0, count) on up to `threads` workers. If any call
/// throws, the exception of the smallest index is rethrown.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace pspectral::cli
