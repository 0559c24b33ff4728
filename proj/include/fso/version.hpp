#ifndef FSO_VERSION_HPP
#define FSO_VERSION_HPP

namespace fso {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
