#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qmix {

/// Thrown when an operation would exceed a configured enumeration or size cap.
class CapExceeded : public std::runtime_error {
  public:
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct Caps {
    /// Max number of elements any single enumeration may visit.
    std::size_t enumeration = std::size_t(1) << 24;
    /// Max vertex count for the dense spectral oracle.
    std::size_t dense = 1024;
};

/// Process-wide caps.  QMIX_CAP in the environment overrides the enumeration
/// cap at startup; the CLI may also override it per invocation.
Caps& caps();

}  // namespace qmix
