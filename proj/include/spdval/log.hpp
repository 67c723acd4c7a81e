#pragma once

#include <sstream>
#include <string>

namespace spdval::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold comes from SPDVAL_LOG={error,warn,info,debug}; default warn.
Level threshold() noexcept;
bool enabled(Level lv) noexcept;
void write(Level lv, const std::string& msg);

template <typename... Ts>
void emit(Level lv, Ts&&... parts) {
    if (!enabled(lv)) return;
    std::ostringstream os;
    (os << ... << parts);
    write(lv, os.str());
}

template <typename... Ts> void error(Ts&&... p) { emit(Level::error, std::forward<Ts>(p)...); }
template <typename... Ts> void warn(Ts&&... p)  { emit(Level::warn,  std::forward<Ts>(p)...); }
template <typename... Ts> void info(Ts&&... p)  { emit(Level::info,  std::forward<Ts>(p)...); }
template <typename... Ts> void debug(Ts&&... p) { emit(Level::debug, std::forward<Ts>(p)...); }

} // namespace spdval::log
