#include "trade/log.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace trade {

void init_logging() {
  auto logger = spdlog::get("trade");
  if (!logger) logger = spdlog::stderr_color_mt("trade");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("TRADE_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; only honor real ones.
    if (level != spdlog::level::off || std::string(env) == "off") {
      spdlog::set_level(level);
    } else {
      spdlog::warn("ignoring unknown TRADE_LOG level '{}'", env);
    }
  }
}

}  // namespace trade
