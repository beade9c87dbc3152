#ifndef IFOSIM_IO_HPP
#define IFOSIM_IO_HPP

#include <cstdint>
#include <string>

namespace ifo {

// Shortest decimal string that round-trips the exact double. All numeric
// file output goes through this so reruns are byte-identical.
std::string fmt_double(double v);

// FNV-1a 64-bit over a file's bytes, as 16 hex digits. Used for the
// simulate manifest.
std::string fnv1a64_file(const std::string& path);

} // namespace ifo

#endif
