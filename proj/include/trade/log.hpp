#pragma once

namespace trade {

/// Points the default logger at stderr and reads the level from TRADE_LOG
/// (trace, debug, info, warn, error, off). Unset means warn.
void init_logging();

}  // namespace trade
