#ifndef SPINRING_IO_HPP
#define SPINRING_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace spinring {

// Shortest round-trippable decimal rendering of a double (%.17g), used for
// every numeric field in CSV/JSON outputs so that reruns are byte-identical.
std::string format_g17(double v);

// FNV-1a, 64-bit; applied to the canonical (sorted-key) JSON dump of a run
// configuration to stamp outputs with a reproducible config hash.
uint64_t fnv1a(std::string_view s);

}  // namespace spinring

#endif  // SPINRING_IO_HPP
