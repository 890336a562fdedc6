#ifndef VHRD_VERSION_HPP
#define VHRD_VERSION_HPP

namespace vhrd {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

}  // namespace vhrd

#endif
