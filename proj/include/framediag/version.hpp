#ifndef FRAMEDIAG_VERSION_HPP
#define FRAMEDIAG_VERSION_HPP

namespace framediag {

inline constexpr const char* tool_name = "framediag";
inline constexpr const char* version = "1.0.0";

}  // namespace framediag

#endif  // FRAMEDIAG_VERSION_HPP
