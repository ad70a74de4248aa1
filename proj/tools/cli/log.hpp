#pragma once

#include <iostream>
#include <string>

namespace cli {

enum class LogLevel { quiet, info, debug };

// UMBILIC_LOG in {quiet, info, debug}; defaults to info.
LogLevel log_level();

inline void info(const std::string& msg) {
  if (log_level() != LogLevel::quiet) std::cout << msg << '\n';
}

inline void debug(const std::string& msg) {
  if (log_level() == LogLevel::debug) std::cerr << "[debug] " << msg << '\n';
}

}  // namespace cli
