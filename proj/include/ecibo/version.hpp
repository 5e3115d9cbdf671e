#ifndef ECIBO_VERSION_HPP
#define ECIBO_VERSION_HPP

namespace ecibo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ecibo

#endif
