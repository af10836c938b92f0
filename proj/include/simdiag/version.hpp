#ifndef SIMDIAG_VERSION_HPP
#define SIMDIAG_VERSION_HPP

namespace simdiag {

inline constexpr const char* kVersion = "0.1.0";

} // namespace simdiag

#endif
