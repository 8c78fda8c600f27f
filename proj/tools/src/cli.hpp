#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace collider::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `collider` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 on domain errors, 2 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace collider::cli
