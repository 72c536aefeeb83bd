#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace edge::service {
class HttpServer;
}

namespace edge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitLimit = 2;
inline constexpr int kExitUsage = 64;

struct Hooks {
  /// Called by `serve` once the port is bound, before blocking.
  std::function<void(service::HttpServer&)> on_serving;
};

/// Runs the `edge` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const Hooks& hooks = {});

}  // namespace edge::cli
